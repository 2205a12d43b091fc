"""Finite-temperature thermodynamics of interacting quantum gases from
exact two-body S-matrix data: pseudo-energy integral equation, scattering
kernels in d = 1, 2, 3, the 2D Bose-gas critical point, and the exact 1D
Yang-Yang cross-check."""

from .core import (ModelParams, free_density_2d, free_filling,
                   free_gas_free_energy_2d)
from .critical import (CriticalPointResult, closed_form_critical,
                       critical_mu_attractive, cutoff_roots,
                       figure1_curves, fit_asymptotic_constant,
                       numeric_critical_mu)
from .diagrams import (FoamShape, RingSumCheck, coefficient_sum, random_foam,
                       ring_sum_check, verify_suite)
from .errors import (BranchError, ConfigError, DomainError, FugacityError,
                     InvariantViolation, NonConvergence, NoRoot,
                     PseudogasError, QuadratureError)
from .grid import (KernelMatrix, MomentumGrid, angular_average, build_grid,
                   build_kernel_matrix, constant_kernel_matrix)
from .kernels import (amplitude, g2_kernel, g2_kernel_log_form,
                      phase_space_volume, renormalize_coupling_3d,
                      running_coupling_2d)
from .pseudo import (Observables, PseudoEnergyField, observables,
                     solve_linearized, solve_pseudo_energy)
from .tba import (LeadingOrderComparison, TbaField, leading_order_comparison,
                  solve_yang_yang, tba_free_energy, tba_kernel)

__version__ = "0.1.0"

"""Self-consistent pseudo-energy equation and thermodynamic observables.

The interacting filling fraction is f(k) = 1/(e^{beta eps(k)} - s) with the
pseudo-energy eps solving

    eps(k) = w_k - mu - (1/beta) log( 1 + beta int (dk') G2(k,k') ftilde(k') )

where ftilde = e^{beta (eps - w + mu)} f is the dressed filling.  The free
energy in the same two-body resummation is

    F = -(1/beta) int (dk) [ s log(1 + s f) - (1/2) (f - f0)/(1 + s f0) ].
"""

from dataclasses import dataclass

import numpy as np

from .core import TRUE_BOSON, _free_filling_nodes
from .errors import ConfigError, DomainError, NonConvergence
from .grid import MomentumGrid, _check_grid, _check_kernel

OCCUPANCY_CAP = 1e-12


@dataclass(frozen=True)
class PseudoEnergyField:
    grid: MomentumGrid
    epsilon: np.ndarray
    iterations: int
    residual: float
    converged: bool


@dataclass(frozen=True)
class Observables:
    density: float
    free_energy: float
    filling: np.ndarray
    dressed_filling: np.ndarray


def _dressed_filling(params, omega, epsilon):
    """f and ftilde at the current pseudo-energy; guards the Bose divergence.

    For bosons e^{beta eps} - 1 is floored at OCCUPANCY_CAP: crossing it
    means the zero-momentum occupancy is diverging (condensation proximity)
    and is reported as DomainError rather than extrapolated through.
    """
    beta = params.beta
    s = params.statistics
    if s == TRUE_BOSON:
        den = np.expm1(beta * epsilon)
        if np.min(den) < OCCUPANCY_CAP:
            raise DomainError(
                "pseudo-energy occupancy denominator e^{beta eps} - 1 below "
                "cap: zero-momentum occupancy diverging (condensation "
                "proximity)")
    else:
        den = np.exp(beta * epsilon) + 1.0
    f = 1.0 / den
    ftilde = np.exp(beta * (epsilon - omega + params.chemical_potential)) * f
    return f, ftilde


def _rhs(params, kernel, grid, omega, epsilon):
    _, ftilde = _dressed_filling(params, omega, epsilon)
    arg = 1.0 + params.beta * (kernel.entries @ (grid.weights * ftilde))
    if np.min(arg) <= 0.0:
        raise DomainError("pseudo-energy log argument nonpositive: two-body "
                          "resummation breaks down at this coupling/density")
    return omega - params.chemical_potential - np.log(arg) / params.beta


def solve_pseudo_energy(params, kernel, grid, damping=0.5, tolerance=1e-10,
                        max_iter=500, initial=None):
    """Damped fixed-point solution of the pseudo-energy equation.

    Starts from the free solution eps = w - mu and iterates
    eps <- (1 - a) eps + a RHS(eps).  Convergence is measured by the
    dimensionless fixed-point defect max |beta (RHS(eps) - eps)|, which is
    also the stored residual, so a converged field reinserted into the
    right-hand side reproduces itself to tolerance.
    """
    if not 0.0 < damping <= 1.0:
        raise ConfigError("damping must lie in (0, 1]")
    if tolerance < 1e-12:
        raise ConfigError("tolerance below 1e-12 is not resolvable here")
    _check_grid(params, grid)
    _check_kernel(params, grid, kernel)

    omega = params.omega(grid.nodes)
    epsilon = omega - params.chemical_potential if initial is None \
        else np.array(initial, dtype=float)
    defect = np.inf
    for iteration in range(1, max_iter + 1):
        rhs = _rhs(params, kernel, grid, omega, epsilon)
        defect = float(np.max(np.abs(params.beta * (rhs - epsilon))))
        if defect <= tolerance:
            return PseudoEnergyField(grid=grid, epsilon=epsilon,
                                     iterations=iteration, residual=defect,
                                     converged=True)
        epsilon = epsilon + damping * (rhs - epsilon)
    raise NonConvergence(
        f"pseudo-energy iteration exceeded {max_iter} iterations "
        f"(residual {defect:.3e})", iterations=max_iter, residual=defect)


def solve_linearized(params, kernel, grid):
    """Weak-coupling linearization: one explicit evaluation, no iteration.

    eps(k) = w_k - mu - int (dk') G2(k,k') f0(k') with the free filling on
    the right-hand side, valid when the kernel is small.
    """
    if params.statistics != TRUE_BOSON:
        raise ConfigError("linearized form is defined for bosons")
    _check_grid(params, grid)
    _check_kernel(params, grid, kernel)
    omega = params.omega(grid.nodes)
    f0 = _free_filling_nodes(params, grid.nodes)
    epsilon = omega - params.chemical_potential \
        - kernel.entries @ (grid.weights * f0)
    if np.min(params.beta * epsilon) <= 0.0:
        raise DomainError("linearized pseudo-energy nonpositive on the grid "
                          "(past criticality)")
    return PseudoEnergyField(grid=grid, epsilon=epsilon, iterations=1,
                             residual=0.0, converged=True)


def observables(params, field):
    """Density, free energy, filling and dressed filling of a solved field."""
    if not field.converged:
        raise ConfigError("observables require a converged field")
    grid = field.grid
    _check_grid(params, grid)
    omega = params.omega(grid.nodes)
    f, ftilde = _dressed_filling(params, omega, field.epsilon)
    f0 = _free_filling_nodes(params, grid.nodes)
    s = params.statistics
    density = float(grid.weights @ f)
    integrand = s * np.log1p(s * f) - 0.5 * (f - f0) / (1.0 + s * f0)
    free_energy = float(-(grid.weights @ integrand) / params.beta)
    return Observables(density=density, free_energy=free_energy,
                       filling=f, dressed_filling=ftilde)

"""Physical parameters and free-gas quantities.

Natural units throughout: hbar = k_B = 1, dispersion w(k) = k^2/(2m).
The statistics sign s is +1 for bosons and -1 for fermions; it controls
every +/- in fillings and free energies.
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad

from .errors import ConfigError, FugacityError, QuadratureError

TRUE_BOSON = +1
TRUE_FERMION = -1


@dataclass(frozen=True)
class ModelParams:
    """Inputs of the interacting gas: (d, m, g, T, mu, Lambda, k0, s).

    In two dimensions the product mass*coupling is the dimensionless
    interaction strength.  One-dimensional mode uses the fixed convention
    mass = 1/2, and construction fails otherwise.
    """

    dimension: int
    mass: float
    coupling: float
    temperature: float
    chemical_potential: float
    uv_cutoff: float
    ir_cutoff: float = 0.0
    statistics: int = TRUE_BOSON

    def __post_init__(self):
        if self.dimension not in (1, 2, 3):
            raise ConfigError(f"dimension must be 1, 2 or 3, got {self.dimension}")
        if not self.mass > 0:
            raise ConfigError("mass must be positive")
        if self.dimension == 1 and self.mass != 0.5:
            raise ConfigError("one-dimensional mode requires mass = 1/2")
        if not self.temperature > 0:
            raise ConfigError("temperature must be positive")
        if self.ir_cutoff < 0:
            raise ConfigError("ir_cutoff must be nonnegative")
        if not self.uv_cutoff > self.ir_cutoff:
            raise ConfigError("uv_cutoff must exceed ir_cutoff")
        if self.statistics not in (TRUE_BOSON, TRUE_FERMION):
            raise ConfigError("statistics must be +1 (boson) or -1 (fermion)")

    @classmethod
    def from_dimensionless_2d(cls, mg, beta_mu, uv_cutoff=None, ir_cutoff=0.0,
                              statistics=TRUE_BOSON):
        """2D constructor from the dimensionless pair (m*g, beta*mu), m = T = 1.

        The default UV cutoff is 100*sqrt(2mT), far above the thermal scale.
        """
        if uv_cutoff is None:
            uv_cutoff = 100.0 * np.sqrt(2.0)
        return cls(dimension=2, mass=1.0, coupling=float(mg), temperature=1.0,
                   chemical_potential=float(beta_mu), uv_cutoff=float(uv_cutoff),
                   ir_cutoff=float(ir_cutoff), statistics=statistics)

    @property
    def beta(self):
        return 1.0 / self.temperature

    @property
    def fugacity(self):
        return float(np.exp(self.beta * self.chemical_potential))

    def omega(self, k):
        """Single-particle energy w(k) = k^2/(2m)."""
        k = np.asarray(k, dtype=float)
        return k * k / (2.0 * self.mass)

    def thermal_wavelength(self):
        """lambda = sqrt(2 pi beta / m)."""
        return float(np.sqrt(2.0 * np.pi * self.beta / self.mass))

    def with_chemical_potential(self, mu):
        return replace(self, chemical_potential=float(mu))


def free_filling(params, k):
    """Free occupation number f0(k) = z / (e^{beta w} - s z), z = e^{beta mu}.

    Positive, finite and strictly decreasing in |k| on its domain.  For
    bosons the guard lives here: mu >= 0 is rejected because the
    denominator can vanish on a momentum grid.
    """
    if params.statistics == TRUE_BOSON and params.chemical_potential >= 0:
        raise FugacityError(
            "free Bose occupancy requires mu < 0 (denominator can vanish)")
    x = params.beta * (params.omega(k) - params.chemical_potential)
    with np.errstate(over="ignore"):
        out = 1.0 / (np.exp(x) - params.statistics)
    return out if np.ndim(k) else float(out)


def _free_filling_nodes(params, k):
    """f0 on explicit nodes, guarded pointwise instead of by sign of mu.

    Used by solvers on infrared-cutoff grids where mu may exceed zero but
    stays below the lowest grid mode energy.
    """
    x = params.beta * (params.omega(k) - params.chemical_potential)
    if params.statistics == TRUE_BOSON and np.min(x) <= 0:
        raise FugacityError(
            "chemical potential reaches the lowest grid mode energy")
    with np.errstate(over="ignore"):
        return 1.0 / (np.exp(x) - params.statistics)


def free_density_2d(params):
    """Closed-form 2D free density  n0 = -(s m / 2 pi beta) log(1 - s z)."""
    if params.dimension != 2:
        raise ConfigError("free_density_2d requires dimension = 2")
    if params.statistics == TRUE_BOSON and params.chemical_potential >= 0:
        raise FugacityError("free Bose density requires mu < 0")
    s = params.statistics
    z = params.fugacity
    return -s * params.mass / (2.0 * np.pi * params.beta) * np.log1p(-s * z)


def free_gas_free_energy_2d(params, rel_tol=1e-9):
    """Free-gas free energy density in 2D.

    F0 = (s/beta) int d^2k/(2pi)^2 log(1 - s z e^{-beta w_k}), evaluated by
    adaptive quadrature after the exact substitution u = beta*w.  Agrees
    with the dilogarithm closed form -(s m / 2 pi beta^2) Li2(s z).
    """
    if params.dimension != 2:
        raise ConfigError("free_gas_free_energy_2d requires dimension = 2")
    if params.statistics == TRUE_BOSON and params.chemical_potential >= 0:
        raise FugacityError("free Bose gas requires mu < 0")
    s = params.statistics
    z = params.fugacity
    if z == 0.0:
        return 0.0
    pref = s * params.mass / (2.0 * np.pi * params.beta ** 2)
    val, err = quad(lambda u: np.log1p(-s * z * np.exp(-u)), 0.0, np.inf,
                    epsabs=1e-14, epsrel=1e-12, limit=200)
    if err > max(rel_tol * abs(val), 1e-13):
        raise QuadratureError(
            f"free-energy quadrature error {err:.2e} exceeds tolerance")
    return pref * val

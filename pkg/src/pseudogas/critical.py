"""Critical point of the two-dimensional Bose gas.

At weak coupling the zero-momentum occupancy diverges when

    beta mu = (mg/2pi) [ beta eps0 - beta mu - log(e^{beta(eps0 - mu)} - 1) ]

with an infrared cutoff energy eps0 = k0^2/2m regulating the repulsive
branch.  In the variable x = beta (eps0 - mu) the defect

    H(x) = (mg/2pi) (x - log(e^x - 1)) + x - beta eps0

is unimodal with its minimum at x_c = log(1 + mg/2pi) and minimum value
H(x_c) = beta (eps_c - eps0), so roots exist exactly when eps0 >= eps_c,
coalescing at the tangency eps0 = eps_c.  Closed forms at tangency:

    beta mu_c   = (mg/2pi) log(1 + 2 pi/mg)
    beta eps_c  = (1 + mg/2pi) log(1 + mg/2pi) + (mg/2pi) log(2 pi/mg)
    n_c lambda^2 = log(1 + 2 pi/mg)
"""

from dataclasses import dataclass, field

import numpy as np

from ._rootfind import bisect_root, golden_min
from .core import TRUE_BOSON
from .errors import ConfigError, DomainError, NoRoot
from .grid import _check_grid, _check_kernel

TANGENCY_ATOL = 1e-9


@dataclass(frozen=True)
class CriticalPointResult:
    beta_mu_c: float
    beta_eps_c: float
    nc_lambda2: float
    method: str
    diagnostics: dict = field(default_factory=dict)


def _rhs_cutoff(mg, x):
    """Right-hand side of the cutoff criticality condition, as a function
    of x = beta (eps0 - mu):  (mg/2pi) (x - log(e^x - 1))."""
    x = np.asarray(x, dtype=float)
    return mg / (2.0 * np.pi) * (x - np.log(np.expm1(x)))


def critical_mu_attractive(mg):
    """beta mu_c < 0 for attractive coupling: root of
    beta mu = -(mg/2pi) log(1 - e^{beta mu}), found by bisection."""
    if mg >= 0:
        raise DomainError("attractive branch requires mg < 0")

    def defect(x):
        return x + mg / (2.0 * np.pi) * np.log1p(-np.exp(x))

    hi = -1e-15
    lo = -0.05
    expansions = 0
    while defect(lo) > 0:
        lo *= 2.0
        expansions += 1
        if expansions > 60:
            raise NoRoot("attractive criticality bracket not found")
    return bisect_root(defect, lo, hi, tol=1e-15)


def closed_form_critical(mg):
    """Tangency closed forms for repulsive coupling (see module docstring).

    Diagnostics carry the tangency residual and the constant C fitted from
    the small-coupling asymptotics beta mu_c ~ (mg/2pi) log(2C/mg).
    """
    if mg <= 0:
        raise DomainError("closed-form criticality requires mg > 0")
    r = mg / (2.0 * np.pi)
    beta_mu_c = r * np.log1p(2.0 * np.pi / mg)
    beta_eps_c = (1.0 + r) * np.log1p(r) + r * np.log(2.0 * np.pi / mg)
    nc_lambda2 = np.log1p(2.0 * np.pi / mg)
    residual = (beta_eps_c - beta_mu_c) - np.log1p(r)
    return CriticalPointResult(
        beta_mu_c=float(beta_mu_c), beta_eps_c=float(beta_eps_c),
        nc_lambda2=float(nc_lambda2), method="closed_form",
        diagnostics={
            "tangency_residual": float(residual),
            "fitted_asymptotic_constant": fit_asymptotic_constant(),
        })


def fit_asymptotic_constant(mg_lo=1e-4, mg_hi=1e-2, n_points=21):
    """Constant C in beta mu_c ~ (mg/2pi) log(2C/mg), least-squares fitted
    over a logarithmic grid of small couplings."""
    mgs = np.geomspace(mg_lo, mg_hi, n_points)
    beta_mu = mgs / (2.0 * np.pi) * np.log1p(2.0 * np.pi / mgs)
    log_2c = np.mean(2.0 * np.pi / mgs * beta_mu + np.log(mgs))
    return float(np.exp(log_2c) / 2.0)


def cutoff_roots(mg, beta_eps0):
    """All solutions beta mu of the cutoff criticality condition, sorted.

    Classified through the unimodal defect H(x): no roots below tangency,
    a coalesced pair (returned as two equal values) at tangency, and one
    root on each monotone branch above it.  The branch bisections run in
    x = beta (eps0 - mu) because the upper root sits exponentially close
    to the domain edge in beta mu.
    """
    if mg <= 0:
        raise DomainError("cutoff construction applies to repulsive coupling")
    if beta_eps0 <= 0:
        raise DomainError("beta_eps0 must be positive")
    x_c = np.log1p(mg / (2.0 * np.pi))
    beta_eps_c = closed_form_critical(mg).beta_eps_c

    def defect(x):
        return float(_rhs_cutoff(mg, x)) + x - beta_eps0

    gap = beta_eps_c - beta_eps0
    tol = TANGENCY_ATOL * max(1.0, abs(beta_eps0))
    if gap > tol:
        return []
    if abs(gap) <= tol:
        r = float(beta_eps0 - x_c)
        return [r, r]

    # Left branch: H decreases from +inf to H(x_c) < 0 on (0, x_c];
    # bisect in log x for uniform relative resolution.
    t_hi = np.log(x_c)
    t_lo = t_hi - 5.0
    expansions = 0
    while defect(np.exp(t_lo)) < 0:
        t_lo -= 5.0
        expansions += 1
        if expansions > 200:
            raise NoRoot("left criticality bracket not found")
    x_left = np.exp(bisect_root(lambda t: defect(np.exp(t)), t_lo, t_hi,
                                tol=1e-15))
    # Right branch: H increases through zero on [x_c, inf); H(x) > x - eps0.
    x_right = bisect_root(defect, x_c, beta_eps0 + 1.0, tol=1e-15)
    return sorted([float(beta_eps0 - x_right), float(beta_eps0 - x_left)])


def figure1_curves(mg, beta_eps0, mu_range, n_points):
    """Tabulate both sides of the cutoff criticality condition.

    Returns an (n_points, 3) array of (beta_mu, lhs, rhs) with lhs the
    identity map; the roots of lhs = rhs are the cutoff_roots.
    """
    if n_points < 2:
        raise ConfigError("n_points must be at least 2")
    mu_lo, mu_hi = float(mu_range[0]), float(mu_range[1])
    if not mu_lo < mu_hi:
        raise ConfigError("mu_range must be increasing")
    if mu_hi >= beta_eps0:
        raise DomainError("scan range must stay below beta_eps0 "
                          "(occupancy undefined beyond it)")
    beta_mu = np.linspace(mu_lo, mu_hi, n_points)
    rhs = _rhs_cutoff(mg, beta_eps0 - beta_mu)
    return np.column_stack([beta_mu, beta_mu, rhs])


def _extrapolated_zero_mode(params, kernel, grid, mu):
    """Linearized pseudo-energy at k -> 0, Richardson-extrapolated in k^2
    from the two smallest grid nodes (the grid excludes k = 0)."""
    k = grid.nodes
    omega = params.omega(k)
    x = params.beta * (omega - mu)
    if x[0] <= 0:
        return np.inf
    f0 = 1.0 / np.expm1(x)
    wf0 = grid.weights * f0
    e1 = omega[0] - mu - kernel.entries[0] @ wf0
    e2 = omega[1] - mu - kernel.entries[1] @ wf0
    k1sq, k2sq = k[0] ** 2, k[1] ** 2
    return (k2sq * e1 - k1sq * e2) / (k2sq - k1sq)


def numeric_critical_mu(params, kernel, grid):
    """Critical chemical potential from the tabulated kernel.

    Uses the full criticality definition: the linearized zero-momentum
    pseudo-energy eps(0; mu) must vanish together with its mu-derivative
    (tangency).  eps(0; mu) is convex in mu, so the returned beta_mu_c is
    its golden-section argmin; NoRoot if the minimum stays positive (the
    infrared cutoff is below critical).  When the cutoff is not exactly
    self-consistent for this kernel the minimum dips below zero; the two
    nearby strict zeros are then reported in the diagnostics and the
    tangency point remains the quoted critical value.
    """
    if params.dimension != 2:
        raise ConfigError("numeric criticality is a 2D construction")
    if params.statistics != TRUE_BOSON:
        raise ConfigError("numeric criticality requires bosons")
    if grid.ir_cutoff <= 0:
        raise ConfigError("numeric criticality requires an infrared cutoff")
    _check_grid(params, grid)
    _check_kernel(params, grid, kernel)

    T = params.temperature
    beta = params.beta
    mu_hi = params.omega(grid.nodes[0]) * (1.0 - 1e-12)

    def zero_mode(mu):
        return _extrapolated_zero_mode(params, kernel, grid, mu)

    mu_star = golden_min(zero_mode, -10.0 * T, mu_hi)
    minimum = zero_mode(mu_star)
    closed = closed_form_critical(params.mass * params.coupling)
    diagnostics = {
        "tangency_residual": float(beta * minimum),
        "closed_form_beta_mu_c": closed.beta_mu_c,
        "beta_eps0": float(beta * params.omega(grid.ir_cutoff)),
    }
    if beta * minimum > 1e-6:
        raise NoRoot("zero-momentum pseudo-energy stays positive: infrared "
                     "cutoff below its critical value for this kernel")
    if beta * minimum < -1e-6:
        diagnostics["root_low"] = beta * bisect_root(
            zero_mode, -10.0 * T, mu_star, tol=1e-15)
        diagnostics["root_high"] = beta * bisect_root(
            zero_mode, mu_star, mu_hi, tol=1e-15)

    beta_mu_c = float(beta * mu_star)
    diagnostics["relative_deviation_from_closed_form"] = float(
        (beta_mu_c - closed.beta_mu_c) / closed.beta_mu_c)

    x = beta * (params.omega(grid.nodes) - mu_star)
    density = float(grid.weights @ (1.0 / np.expm1(x)))
    return CriticalPointResult(
        beta_mu_c=beta_mu_c,
        beta_eps_c=float(beta * params.omega(grid.ir_cutoff)),
        nc_lambda2=float(density * params.thermal_wavelength() ** 2),
        method="full_kernel",
        diagnostics=diagnostics)

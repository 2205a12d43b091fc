"""Exact two-body scattering data: amplitude, phase-space volume, kernel.

The ladder-resummed on-shell amplitude M depends only on dk = |k1 - k2|.
Unitarity makes 1 + i*I*M a pure phase, so the kernel

    G2 = (-i / I) * log(1 + i I M)

is real; its closed arctan forms per dimension are implemented directly
and the log form is exposed separately so both routes can be compared.
"""

import numpy as np

from .errors import BranchError, DomainError


def phase_space_volume(dimension, mass, dk):
    """On-shell two-particle phase-space volume I(dk).

    d=1: m/dk (with the 1D convention m = 1/2 this is 1/(2 dk));
    d=2: m/4, independent of dk;  d=3: m*dk/(8 pi).
    """
    dk = np.asarray(dk, dtype=float)
    scalar = dk.ndim == 0
    if dimension == 1:
        if np.any(dk == 0.0):
            raise DomainError("phase-space volume diverges at dk = 0 in d = 1")
        out = mass / dk
    elif dimension == 2:
        out = np.full_like(dk, mass / 4.0)
    elif dimension == 3:
        out = mass * dk / (8.0 * np.pi)
    else:
        raise DomainError(f"unsupported dimension {dimension}")
    return float(out) if scalar else out


def renormalize_coupling_3d(bare_g, mass, uv_cutoff):
    """3D renormalized coupling: 1/g_R = 1/g + m*Lambda/(4 pi^2)."""
    if bare_g == 0.0:
        return 0.0
    denom = 1.0 / bare_g + mass * uv_cutoff / (4.0 * np.pi ** 2)
    if denom == 0.0:
        raise DomainError("renormalized coupling has a pole at these inputs")
    return 1.0 / denom


def running_coupling_2d(g0, mass, lambda0, lam):
    """Run the 2D coupling from scale lambda0 to lam:

    2 pi / (m g(L)) = (2 pi / (m g0)) * (1 + (m g0 / 4 pi) log(L0/L)).
    """
    if lambda0 <= 0 or lam <= 0:
        raise DomainError("cutoff scales must be positive")
    if g0 == 0.0:
        return 0.0
    corr = 1.0 + mass * g0 / (4.0 * np.pi) * np.log(lambda0 / lam)
    if corr <= 0.0:
        raise DomainError("running coupling crossed its pole scale")
    return g0 / corr


def _denominator_2d(params, dk):
    """Real part of the 2D amplitude denominator, 1 + (mg/8pi) log(4 L^2/dk^2)."""
    mg = params.mass * params.coupling
    with np.errstate(divide="ignore"):
        logterm = np.log(4.0 * params.uv_cutoff ** 2 / (dk * dk))
    return 1.0 + mg / (8.0 * np.pi) * logterm


def amplitude(params, dk):
    """On-shell two-body amplitude M(dk), complex.

    d=2: M = -g / (1 + (mg/8pi)(log(4 L^2/dk^2) + i pi)), principal branch
         valid while the real denominator stays positive;
    d=3: M = -g_R / (1 + i (m g_R/16 pi) dk) with the renormalized coupling;
    d=1: M = -g / (1 + i g/(4 dk)) at m = 1/2.
    """
    dk = np.asarray(dk, dtype=float)
    scalar = dk.ndim == 0
    g = params.coupling
    m = params.mass
    if params.dimension == 2:
        den_re = _denominator_2d(params, dk)
        if g != 0.0 and np.any(den_re[dk > 0] <= 0 if not scalar else
                               (den_re <= 0 and dk > 0)):
            raise BranchError("2D amplitude denominator nonpositive "
                              "(bound-state pole region)")
        with np.errstate(invalid="ignore"):
            out = np.where(np.isinf(den_re), 0.0 + 0.0j,
                           -g / (den_re + 1j * m * g / 8.0))
        if g < 0.0 and np.any(dk == 0.0):
            raise BranchError("attractive 2D amplitude has no dk -> 0 limit")
    elif params.dimension == 3:
        g_r = renormalize_coupling_3d(g, m, params.uv_cutoff)
        out = -g_r / (1.0 + 1j * m * g_r * dk / (16.0 * np.pi))
    elif params.dimension == 1:
        with np.errstate(divide="ignore"):
            out = np.where(dk == 0.0, 0.0 + 0.0j,
                           -g / (1.0 + 1j * g / (4.0 * dk)))
    else:
        raise DomainError(f"unsupported dimension {params.dimension}")
    return complex(out) if scalar else out


def g2_kernel(params, dk):
    """Two-body kernel G2(dk), real; even under k1 <-> k2 exchange.

    Closed forms (all reduce to -g, or -g_R in d=3, at weak coupling):

      d=1: -4 dk arctan(g / (4 dk))
      d=2: -(8/m) arctan[ (mg/8) / (1 + (mg/8pi) log(4 L^2/dk^2)) ]
      d=3: -(16 pi / (m dk)) arctan(m g_R dk / (16 pi))

    The dk = 0 entries are the analytic limits: 0 in d=1; 0 in d=2 for
    repulsive coupling (BranchError for attractive); -g_R in d=3.
    """
    dk = np.asarray(dk, dtype=float)
    scalar = dk.ndim == 0
    g = params.coupling
    m = params.mass
    if g == 0.0 and params.dimension != 3:
        out = np.zeros_like(dk)
        return float(out) if scalar else out
    if params.dimension == 1:
        with np.errstate(divide="ignore"):
            out = np.where(dk == 0.0, 0.0,
                           -4.0 * dk * np.arctan(g / (4.0 * np.where(dk == 0.0, 1.0, dk))))
    elif params.dimension == 2:
        den = _denominator_2d(params, dk)
        zero = dk == 0.0
        if g < 0.0 and np.any(zero):
            raise BranchError("attractive 2D kernel has no dk -> 0 limit")
        if np.any(den[~zero] <= 0 if not scalar else (den <= 0 and not zero)):
            raise BranchError("2D kernel denominator nonpositive "
                              "(bound-state pole region)")
        with np.errstate(invalid="ignore"):
            out = np.where(zero, 0.0,
                           -(8.0 / m) * np.arctan((m * g / 8.0) / np.where(zero, 1.0, den)))
    elif params.dimension == 3:
        g_r = renormalize_coupling_3d(g, m, params.uv_cutoff)
        a = m * g_r / (16.0 * np.pi)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(dk == 0.0, -g_r,
                           -np.arctan(a * dk) / (a * np.where(dk == 0.0, 1.0, dk)))
        if g_r == 0.0:
            out = np.zeros_like(dk)
    else:
        raise DomainError(f"unsupported dimension {params.dimension}")
    return float(out) if scalar else out


def g2_kernel_log_form(params, dk):
    """G2 through the logarithm route, (-i/I) log(1 + i I M), real part.

    Equals the arctan closed forms of g2_kernel wherever both are defined;
    kept as an independent route for cross-checks.  Requires dk > 0.
    """
    dk = np.asarray(dk, dtype=float)
    if np.any(dk <= 0.0):
        raise DomainError("log-form kernel requires dk > 0")
    vol = phase_space_volume(params.dimension, params.mass, dk)
    amp = amplitude(params, dk)
    val = -1j / vol * np.log(1.0 + 1j * vol * amp)
    return float(np.real(val)) if np.ndim(dk) == 0 else np.real(val)

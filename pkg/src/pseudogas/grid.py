"""Radial momentum grids, angular averaging, and kernel matrix assembly.

A MomentumGrid packs Gauss-Legendre nodes on [ir_cutoff, k_max] with
weights that absorb the angular measure k^{d-1} S_{d-1}/(2 pi)^d, so any
isotropic integral int d^dk/(2pi)^d F(k) is just weights @ F(nodes).
k_max carries a certified Boltzmann tail bound, and every grid verifies
itself against the Gaussian closed form on construction.
"""

import hashlib
import json
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaincc

from .errors import BranchError, ConfigError, QuadratureError
from .kernels import g2_kernel, _denominator_2d

TAIL_TOLERANCE = 1e-10
GAUSSIAN_CHECK_RTOL = 1e-6
UV_MARGIN = 10.0

_SPHERE_AREA = {1: 2.0, 2: 2.0 * np.pi, 3: 4.0 * np.pi}


def _hash_floats(*values):
    parts = [v.hex() if isinstance(v, float) else repr(v) for v in values]
    return hashlib.sha256("|".join(parts).encode()).hexdigest()[:16]


def _grid_hash(params, k_max, n_radial, n_angular):
    return _hash_floats("grid", params.dimension, float(params.mass),
                        float(params.temperature), float(params.ir_cutoff),
                        float(k_max), n_radial, n_angular)


def _kernel_params_hash(params):
    """Hash over the fields the kernel depends on (not mu, T or statistics),
    so one cached matrix serves a whole chemical-potential scan."""
    return _hash_floats("kernel", params.dimension, float(params.mass),
                        float(params.coupling), float(params.uv_cutoff))


@dataclass(frozen=True)
class MomentumGrid:
    dimension: int
    nodes: np.ndarray
    weights: np.ndarray
    k_max: float
    n_angular: int
    mass: float
    temperature: float
    ir_cutoff: float
    params_hash: str

    def __len__(self):
        return self.nodes.size


@dataclass(frozen=True)
class KernelMatrix:
    """Angular-averaged kernel tabulated on a grid; exactly symmetric."""
    entries: np.ndarray
    params_hash: str
    grid_hash: str


def build_grid(params, n_radial, n_angular=64, k_max_factor=1.0,
               require_uv_margin=True):
    """Gauss-Legendre radial grid on [ir_cutoff, k_max].

    k_max = c*sqrt(2 m T log(1/tail)) with tail = 1e-10 and c >= 1, so the
    Boltzmann weight at the edge is below the tail tolerance.  The finished
    grid must reproduce int (dk) e^{-beta w} = (m/2 pi beta)^{d/2} (times
    the regularized upper incomplete gamma Q(d/2, beta*eps0) when an
    infrared cutoff is present) to 1e-6 relative, else QuadratureError.
    """
    if n_radial < 16:
        raise ConfigError("n_radial must be at least 16")
    if params.dimension >= 2 and n_angular < 16:
        raise ConfigError("n_angular must be at least 16 for d >= 2")
    if k_max_factor < 1.0:
        raise ConfigError("k_max_factor must be >= 1")
    d = params.dimension
    k_max = k_max_factor * np.sqrt(
        2.0 * params.mass * params.temperature * np.log(1.0 / TAIL_TOLERANCE))
    if k_max <= params.ir_cutoff:
        raise ConfigError("ir_cutoff at or above the thermal grid extent")
    if d == 2 and require_uv_margin and params.uv_cutoff < UV_MARGIN * k_max:
        raise ConfigError(
            f"uv_cutoff {params.uv_cutoff:g} below {UV_MARGIN:g} * k_max "
            f"= {UV_MARGIN * k_max:g}; pass require_uv_margin=False to allow")

    x, w = np.polynomial.legendre.leggauss(n_radial)
    lo, hi = params.ir_cutoff, k_max
    nodes = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    gl_w = 0.5 * (hi - lo) * w
    weights = gl_w * nodes ** (d - 1) * _SPHERE_AREA[d] / (2.0 * np.pi) ** d

    grid = MomentumGrid(
        dimension=d, nodes=nodes, weights=weights, k_max=float(k_max),
        n_angular=int(n_angular), mass=float(params.mass),
        temperature=float(params.temperature),
        ir_cutoff=float(params.ir_cutoff),
        params_hash=_grid_hash(params, k_max, n_radial, n_angular))
    _gaussian_self_check(params, grid)
    return grid


def _gaussian_self_check(params, grid):
    quad_val = float(grid.weights @ np.exp(-params.beta * params.omega(grid.nodes)))
    beta_eps0 = params.beta * params.omega(params.ir_cutoff)
    closed = (params.mass / (2.0 * np.pi * params.beta)) ** (grid.dimension / 2.0)
    closed *= gammaincc(grid.dimension / 2.0, beta_eps0)
    rel = abs(quad_val - closed) / closed
    if rel > GAUSSIAN_CHECK_RTOL:
        raise QuadratureError(
            f"grid failed its Gaussian self-check: relative error {rel:.2e}")


def _check_grid(params, grid):
    if (grid.dimension != params.dimension or grid.mass != params.mass
            or grid.temperature != params.temperature
            or grid.ir_cutoff != params.ir_cutoff):
        raise ConfigError("grid was built for different physical parameters")


def _orientation_nodes(dimension, n_angular):
    """Quadrature rule for the relative-orientation average.

    Returns (t, w) with sum(w) = 1; the pair separation is
    dk = sqrt(k^2 + kp^2 - 2 k kp t) at cos(angle) = t.  Open rules never
    sample t = 1, which sidesteps the dk -> 0 kernel limit at k = kp.
    """
    if dimension == 1:
        return np.array([-1.0, 1.0]), np.array([0.5, 0.5])
    if dimension == 2:
        th, w = np.polynomial.legendre.leggauss(n_angular)
        th = 0.5 * np.pi * (th + 1.0)
        return np.cos(th), 0.5 * w
    u, w = np.polynomial.legendre.leggauss(n_angular)
    return u, 0.5 * w


def _pair_separations(k, kp, t):
    """dk over orientation nodes, stable near t -> 1 (k close to kp)."""
    k = np.asarray(k, dtype=float)[..., None]
    kp = np.asarray(kp, dtype=float)[..., None]
    dk2 = (k - kp) ** 2 + 2.0 * k * kp * (1.0 - t)
    return np.sqrt(np.maximum(dk2, 0.0))


def angular_average(params, k, kp, n_angular):
    """Mean of G2 over the relative orientation of two momenta.

    (1/Omega) oint dOmega G2(|k - kp|): the two-point mean in d=1, dtheta/pi
    on [0, pi] in d=2, and sin(theta) dtheta / 2 in d=3.  At k = 0 the
    separation has no angular dependence and the result is G2(kp) exactly.
    """
    t, w = _orientation_nodes(params.dimension, n_angular)
    dk = _pair_separations(k, kp, t)
    return float(g2_kernel(params, dk) @ w)


def build_kernel_matrix(params, grid):
    """Tabulate the angular-averaged kernel on all unordered node pairs."""
    _check_grid(params, grid)
    k = grid.nodes
    n = k.size
    iu, ju = np.triu_indices(n)
    t, w = _orientation_nodes(grid.dimension, grid.n_angular)
    dk = _pair_separations(k[iu], k[ju], t)
    try:
        flat = g2_kernel(params, dk) @ w
    except BranchError:
        raise _locate_branch_failure(params, grid, k, iu, ju, t) from None
    entries = np.empty((n, n))
    entries[iu, ju] = flat
    entries[ju, iu] = flat
    return KernelMatrix(entries=entries,
                        params_hash=_kernel_params_hash(params),
                        grid_hash=grid.params_hash)


def _locate_branch_failure(params, grid, k, iu, ju, t):
    dk = _pair_separations(k[iu], k[ju], t)
    bad = np.nonzero(np.any(_denominator_2d(params, dk) <= 0, axis=-1))[0]
    if bad.size:
        i, j = int(iu[bad[0]]), int(ju[bad[0]])
        return BranchError(
            f"kernel branch failure at grid pair (i={i}, j={j}), "
            f"k=({k[i]:.6g}, {k[j]:.6g})")
    return BranchError("kernel branch failure while assembling the matrix")


def constant_kernel_matrix(params, grid, value=None):
    """Momentum-independent kernel G2 = value (default -g) on this grid.

    Isolates the leading weak-coupling behaviour; used to cross-check the
    full machinery against closed forms.
    """
    _check_grid(params, grid)
    if value is None:
        value = -params.coupling
    n = len(grid)
    return KernelMatrix(entries=np.full((n, n), float(value)),
                        params_hash=f"const({float(value)!r})",
                        grid_hash=grid.params_hash)


def _check_kernel(params, grid, kernel):
    if kernel.grid_hash != grid.params_hash:
        raise ConfigError("kernel matrix was built on a different grid")
    if kernel.entries.shape != (len(grid), len(grid)):
        raise ConfigError("kernel matrix shape does not match the grid")
    if (not kernel.params_hash.startswith("const(")
            and kernel.params_hash != _kernel_params_hash(params)):
        raise ConfigError("kernel matrix was built for different parameters")


def kernel_matrix_to_json(kernel):
    """Lossless JSON text (decimal floats round-trip exactly)."""
    return json.dumps({
        "params_hash": kernel.params_hash,
        "grid_hash": kernel.grid_hash,
        "entries": kernel.entries.tolist(),
    })


def kernel_matrix_from_json(text):
    data = json.loads(text)
    return KernelMatrix(entries=np.array(data["entries"], dtype=float),
                        params_hash=data["params_hash"],
                        grid_hash=data["grid_hash"])

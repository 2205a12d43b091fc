"""Machine checks of the combinatoric backbone of the two-body resummation.

A foam shape is a tree of loops: loop i carries n_i two-body vertices,
with sum n_i = 2N - 2 for N loops (tree degree sum).  The per-diagram
coefficient assembled from binomial regroupings of ring insertions must
equal exactly 1 for every shape with N >= 2, and the scalarized ring
series must resum to its logarithm closed form.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import ConfigError, DomainError, InvariantViolation


@dataclass(frozen=True)
class FoamShape:
    loop_count: int
    vertices_per_loop: tuple

    def __post_init__(self):
        if self.loop_count < 1:
            raise ConfigError("a foam shape needs at least one loop")
        if len(self.vertices_per_loop) != self.loop_count:
            raise ConfigError("vertex list length must equal loop_count")
        if sum(self.vertices_per_loop) != 2 * self.loop_count - 2:
            raise ConfigError("vertex counts must sum to 2N - 2 "
                              "(tree-of-loops degree sum)")


def random_foam(n_loops, seed):
    """Uniform random tree of loops via a Pruefer sequence.

    Loop i gets n_i = (degree of node i in the tree), so the 2N - 2
    invariant holds by construction.
    """
    if n_loops < 1:
        raise ConfigError("n_loops must be at least 1")
    if n_loops == 1:
        return FoamShape(1, (0,))
    if n_loops == 2:
        return FoamShape(2, (1, 1))
    rng = random.Random(seed)
    degrees = [1] * n_loops
    for _ in range(n_loops - 2):
        degrees[rng.randrange(n_loops)] += 1
    return FoamShape(n_loops, tuple(degrees))


def coefficient_sum(shape):
    """Per-diagram coefficient sum_i [ C(n_i,1)/2 - sum_{m>=2} (-1)^m C(n_i,m) ].

    Exact rational arithmetic; equals 1 for every valid shape with at
    least two loops, and any other outcome raises InvariantViolation.
    """
    total = Fraction(0)
    for n in shape.vertices_per_loop:
        term = Fraction(comb(n, 1), 2)
        for m in range(2, n + 1):
            term -= (-1) ** m * comb(n, m)
        total += term
    if shape.loop_count >= 2 and total != 1:
        raise InvariantViolation(
            f"foam coefficient {total} != 1 for shape {shape.vertices_per_loop}")
    return float(total)


@dataclass(frozen=True)
class RingSumCheck:
    truncated: float
    closed: float
    gap: float


def ring_sum_check(a, b, s, n_max):
    """Scalarized ring resummation check.

    With a standing in for the base-loop occupancy and b for the inserted
    loop integral, the series  ab/2 + sum_{N>=2} s^{N+1} (ab)^N / N  must
    approach the closed form  -s log(1 - s ab) - ab/2  geometrically.
    """
    if s not in (1, -1):
        raise ConfigError("statistics sign must be +1 or -1")
    if n_max < 10:
        raise ConfigError("n_max must be at least 10")
    ab = a * b
    if abs(ab) >= 1.0:
        raise DomainError("ring series requires |a*b| < 1")
    orders = np.arange(2, n_max + 1)
    truncated = 0.5 * ab + float(np.sum(s ** (orders + 1) * ab ** orders / orders))
    closed = -s * np.log1p(-s * ab) - 0.5 * ab
    return RingSumCheck(truncated=truncated, closed=float(closed),
                        gap=abs(truncated - closed))


def verify_suite(n_shapes=100, loops_min=2, loops_max=50, seed=0):
    """Run the full combinatoric suite; returns a summary dict.

    Raises InvariantViolation on any failure, so a clean return certifies
    the identities.
    """
    rng = random.Random(seed)
    checked = []
    for _ in range(n_shapes):
        n = rng.randint(loops_min, loops_max)
        shape = random_foam(n, rng.randrange(2 ** 31))
        coefficient_sum(shape)
        checked.append(n)
    ring_cases = [(0.5, 0.2, 1, 60), (0.5, -1.0, -1, 80), (0.25, 0.4, 1, 60),
                  (0.9, 0.5, -1, 100)]
    worst_gap = 0.0
    for a, b, s, n_max in ring_cases:
        result = ring_sum_check(a, b, s, n_max)
        worst_gap = max(worst_gap, result.gap)
        if result.gap > 1e-10:
            raise InvariantViolation(
                f"ring resummation gap {result.gap:.3e} at ab={a * b}, s={s}")
    return {
        "foam_shapes_checked": n_shapes,
        "loop_counts": [min(checked), max(checked)],
        "ring_cases_checked": len(ring_cases),
        "worst_ring_gap": worst_gap,
        "seed": seed,
    }

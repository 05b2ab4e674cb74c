"""Pless power moments and the sphere-packing and Griesmer bounds, in exact arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from puncodes.codegen import WeightDistribution


def _moment_rhs(p: int, n: int, k: int, dual: list[int]) -> Fraction:
    """Right-hand side of the p-th moment, sum_i i^p A_i, for p = 0..4."""
    a1, a2, a3, a4 = (dual + [0, 0, 0, 0, 0])[1:5]
    scale = Fraction(2) ** (k - p)
    if p == 0:
        inner = 1
    elif p == 1:
        inner = n - a1
    elif p == 2:
        inner = n * (n + 1) - 2 * n * a1 + 2 * a2
    elif p == 3:
        inner = n * n * (n + 3) - (3 * n * n + 3 * n - 2) * a1 + 6 * n * a2 - 6 * a3
    elif p == 4:
        inner = (n * (n + 1) * (n * n + 5 * n - 2) - 4 * n * (n * n + 3 * n - 2) * a1
                 + 4 * (3 * n * n + 3 * n - 4) * a2 - 24 * n * a3 + 24 * a4)
    else:
        raise ValueError("moment index must be 0..4")
    return scale * inner


def power_sum(wd: WeightDistribution, p: int) -> int:
    return sum(w ** p * c for w, c in wd.as_dict().items())


@dataclass
class PlessResult:
    residuals: list[Fraction]
    dual_a5: Fraction | None

    @property
    def ok(self) -> bool:
        return all(r == 0 for r in self.residuals)


def sixth_moment_a5(n: int, k: int, wd: WeightDistribution) -> Fraction:
    """A'_5 solved from the sixth moment, assuming A'_1 = ... = A'_4 = 0."""
    rhs = (Fraction(2) ** (k - 5) * n ** 5 + 5 * Fraction(2) ** (k - 4) * n ** 4
           + 15 * Fraction(2) ** (k - 5) * n ** 3 - 5 * Fraction(2) ** (k - 4) * n ** 2)
    return (rhs - power_sum(wd, 5)) / (120 * Fraction(2) ** (k - 5))


def pless_check(n: int, k: int, wd: WeightDistribution, depth: int = 5,
                dual_low: list[int] | None = None) -> PlessResult:
    """Residuals of the first ``depth`` moment identities (zero = satisfied).

    ``dual_low`` gives [A'_0, A'_1, ..., A'_4]; by default the low dual counts
    are taken as zero.  When they are all zero the sixth moment is solved for A'_5.
    """
    if not 1 <= depth <= 5:
        raise ValueError("depth must be 1..5")
    dual = list(dual_low) if dual_low is not None else [1, 0, 0, 0, 0]
    res = [power_sum(wd, p) - _moment_rhs(p, n, k, dual) for p in range(depth)]
    a5 = sixth_moment_a5(n, k, wd) if not any((dual + [0] * 5)[1:5]) else None
    return PlessResult(res, a5)


# ---------------------------------------------------------------------------
# bounds


def sphere_packing_ok(n: int, k: int, d: int) -> bool:
    """2^n >= 2^k * sum_{i <= (d-1)//2} C(n, i)."""
    if n < 1 or k < 0 or d < 1:
        raise ValueError("need n >= 1, k >= 0, d >= 1")
    return (1 << n) >= (1 << k) * sum(comb(n, i) for i in range((d - 1) // 2 + 1))


def sphere_packing_distance_optimal(n: int, k: int, d: int, even_weight_dual: bool = False) -> bool:
    """True if [n, k, d] meets the bound and [n, k, d + step] violates it.

    The step is 2 when the code is known to have only even weights (the dual of
    a code containing the all-one vector), otherwise 1.
    """
    step = 2 if even_weight_dual else 1
    return sphere_packing_ok(n, k, d) and not sphere_packing_ok(n, k, d + step)


def griesmer_bound(k: int, d: int) -> int:
    """sum_{i < k} ceil(d / 2^i)."""
    return sum(-(-d // (1 << i)) for i in range(k))


def griesmer_ok(n: int, k: int, d: int) -> bool:
    return n >= griesmer_bound(k, d)


def griesmer_optimal(n: int, k: int, d: int) -> bool:
    """The Griesmer bound holds with equality."""
    return n == griesmer_bound(k, d)

"""Integral of F, sampling of the digit random variable, and singularity checks."""

from __future__ import annotations

import enum
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._series import periodic_sum
from .function import cylinder_words, eval_F_at, f_range, graph_points
from .matrix_spec import SystemSpec

__all__ = [
    "IntegralResult",
    "SingularityKind",
    "SingularityVerdict",
    "SampleBatch",
    "NotApplicableError",
    "GENERATOR_ID",
    "integral_closed_form",
    "integral_oracle",
    "sample",
    "cdf_distance",
    "singularity_check",
]

GENERATOR_ID = "philox4x64-10/key=seed/raw64-row-major"


class NotApplicableError(ValueError):
    """The operation's hypothesis fails for this spec (e.g. negative p entries)."""


@dataclass(frozen=True)
class IntegralResult:
    value: Fraction
    error_bound: Fraction
    terms_used: int


def integral_closed_form(spec: SystemSpec) -> IntegralResult:
    """``z_1 + sum_{n>=2} z_n prod_{k<n} sigma_k`` summed exactly over the periodic tail.

    ``z_n = sum_i beta_{i,n} q_{i,n}`` and ``sigma_n = sum_i p_{i,n} q_{i,n}``.
    """

    def z(n):
        col = spec.column(n)
        return sum((b * q for b, q in zip(col.beta, col.q)), Fraction(0))

    def sigma(n):
        col = spec.column(n)
        return sum((p * q for p, q in zip(col.p, col.q)), Fraction(0))

    value = periodic_sum(z, sigma, spec.L + 1, spec.period)
    return IntegralResult(value, Fraction(0), spec.L + spec.period)


def integral_oracle(spec: SystemSpec, depth: int, cap: int | None = None) -> tuple[Fraction, Fraction]:
    """Lower and upper sums over the rank-``depth`` cylinders.

    On a cylinder with left end ``x0`` F equals ``F(x0) + P * G`` where ``P``
    is the product of p~ over the base and ``G`` ranges over the values of the
    solution for the shifted spec, bounded by :func:`f_range`.
    """
    if cap is not None and spec.alphabet_count(depth) > cap:
        raise ValueError(f"depth {depth} exceeds the cylinder cap {cap}")
    lo_g, hi_g = f_range(spec.shifted(depth))
    low = Fraction(0)
    high = Fraction(0)
    for _, y, length, prod in cylinder_words(spec, depth):
        a, b = prod * lo_g, prod * hi_g
        if a > b:
            a, b = b, a
        low += length * (y + a)
        high += length * (y + b)
    return low, high


def singularity_check_applicable(spec: SystemSpec) -> bool:
    return all(p >= 0 for p in spec.all_p())


class SingularityKind(enum.Enum):
    CANTOR_TYPE_CONDITION1 = "CantorType_Condition1"
    CANTOR_TYPE_CONDITION2 = "CantorType_Condition2"
    NOT_CANTOR_TYPE = "NotCantorType"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class SingularityVerdict:
    kind: SingularityKind
    reason: str = ""

    def __str__(self):
        return self.kind.value


def singularity_check(spec: SystemSpec) -> SingularityVerdict:
    """Cantor-type singularity test for non-negative P on a periodic spec.

    Reflection permutes each column, so the per-column sums over digits with
    ``p > 0`` (or ``p = 0``) are the same for twisted and untwisted columns.
    """
    if not singularity_check_applicable(spec):
        return SingularityVerdict(SingularityKind.NOT_APPLICABLE, "some p_{i,n} < 0")
    positive_mass = [sum((q for q, p in zip(c.q, c.p) if p > 0), Fraction(0)) for c in spec.block]
    zero_mass = [sum((q for q, p in zip(c.q, c.p) if p == 0), Fraction(0)) for c in spec.block]
    # the block repeats forever: a factor < 1 drives the product to 0
    if math.prod(positive_mass, start=Fraction(1)) < 1:
        return SingularityVerdict(
            SingularityKind.CANTOR_TYPE_CONDITION1,
            f"block product of positive-p mass is {math.prod(positive_mass, start=Fraction(1))}",
        )
    if sum(zero_mass) > 0:
        return SingularityVerdict(
            SingularityKind.CANTOR_TYPE_CONDITION2, "zero-p mass recurs in every period"
        )
    return SingularityVerdict(SingularityKind.NOT_CANTOR_TYPE, "no zero p in the block")


# -- sampling -----------------------------------------------------------------


@dataclass(frozen=True)
class SampleBatch:
    seed: int
    depth: int
    values: tuple[Fraction, ...]
    generator: str = GENERATOR_ID


def _thresholds(spec: SystemSpec, n: int) -> np.ndarray:
    """Integer cut points ``ceil(2**64 * (p_0 + ... + p_i))`` for ``i < m_n``."""
    col = spec.column(n)
    cuts = []
    for s in col.beta[1:]:
        t = -((-s.numerator << 64) // s.denominator)
        cuts.append(min(t, (1 << 64) - 1))
    return np.array(cuts, dtype=np.uint64)


def sample(spec: SystemSpec, seed: int, count: int, depth: int) -> SampleBatch:
    """``count`` draws of ``eta = Delta^{Q~}_{xi_1 xi_2 ...}`` with independent digits.

    Digit ``xi_n`` takes value ``i`` with probability ``p_{i,n}``.  Draw ``j``
    uses raw words ``j*depth .. (j+1)*depth - 1`` of a Philox stream keyed by
    ``seed``, so any sub-range can be regenerated on its own.  Each value is the
    midpoint of the rank-``depth`` Q~ cylinder of the drawn digits.
    """
    if not singularity_check_applicable(spec):
        raise NotApplicableError("sampling needs p_{i,n} >= 0 for every entry")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if seed < 0 or count < 0:
        raise ValueError("seed and count must be non-negative")
    raw = np.random.Philox(key=seed).random_raw(count * depth).reshape(count, depth)
    digits = np.empty((count, depth), dtype=np.int64)
    for n in range(1, depth + 1):
        digits[:, n - 1] = np.searchsorted(_thresholds(spec, n), raw[:, n - 1], side="right")

    # Horner in integers: value of tail from n is num_n / prod_{j>=n} D_j
    cols = [spec.column(n) for n in range(1, depth + 1)]
    dens = [c.common_denominator for c in cols]
    a_num = [[int(v * d) for v in c.a] for c, d in zip(cols, dens)]
    q_num = [[int(v * d) for v in c.q] for c, d in zip(cols, dens)]
    suffix = [1] * (depth + 1)
    for n in range(depth - 1, -1, -1):
        suffix[n] = suffix[n + 1] * dens[n]
    total_den = suffix[0]
    values = []
    for row in digits.tolist():
        num = 0
        width = 1
        for n in range(depth - 1, -1, -1):
            i = row[n]
            num = a_num[n][i] * suffix[n + 1] + q_num[n][i] * num
            width *= q_num[n][i]
        values.append(Fraction(2 * num + width, 2 * total_den))
    return SampleBatch(seed, depth, tuple(values))


def _grid_rank(spec: SystemSpec, grid: int) -> int:
    rank = 0
    while spec.alphabet_count(rank) < grid:
        rank += 1
    return rank


def cdf_distance(spec: SystemSpec, batch: SampleBatch, grid: int, tol=Fraction(1, 10**9)) -> Fraction:
    """Two-sided sup distance between the empirical CDF of ``batch`` and F.

    Compared at every endpoint of the coarsest cylinder partition with at
    least ``grid`` cells, and at ``grid`` evenly spaced order statistics of
    the sample.  Both one-sided limits of the empirical CDF are checked.
    """
    count = len(batch.values)
    points = graph_points(spec, _grid_rank(spec, grid))
    if count == 0:
        return max(abs(y) for _, y in points)
    common = math.lcm(*{v.denominator for v in batch.values})
    scaled_values = [v.numerator * (common // v.denominator) for v in batch.values]
    order = sorted(range(count), key=scaled_values.__getitem__)
    keys = [scaled_values[j] for j in order]
    picks = {order[min(count - 1, (j * count) // grid)] for j in range(grid)}
    stats = sorted(batch.values[j] for j in picks)
    checks = list(points) + [(s, eval_F_at(spec, s, tol).value) for s in stats]
    worst = Fraction(0)
    for g, fg in checks:
        scaled = g * common
        at_most = bisect_right(keys, math.floor(scaled))
        below = bisect_left(keys, math.ceil(scaled))
        worst = max(worst, abs(Fraction(at_most, count) - fg), abs(Fraction(below, count) - fg))
    return worst

"""The bounded solution F of the shift functional equations, and its analysis.

For ``x`` with nega digits ``i_1 i_2 ...`` the solution is

    F(x) = beta~_{i_1,1} + sum_{k>=2} beta~_{i_k,k} prod_{j<k} p~_{i_j,j}

which on the reflected (plus) digits ``xi`` reads ``sum_k beta_{xi_k,k} prod_{j<k}
p_{xi_j,j}``.  All evaluation runs on symbolic digit strings in exact rationals.
"""

from __future__ import annotations

import enum
import math
import os
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple

from .matrix_spec import ColumnPair, SystemSpec, tilde_values
from .representation import (
    DigitError,
    DigitString,
    EvalResult,
    RepKind,
    TailKind,
    decode,
    encode,
    endpoint_tails,
    other_representation,
    plus_partial,
    plus_series,
    signed_series,
    to_nega,
    to_plus,
)

__all__ = [
    "MonotonicityClass",
    "AffineMap",
    "eval_F",
    "eval_F_at",
    "zeta_form",
    "residual",
    "increment",
    "endpoint_increment",
    "f_range",
    "classify_monotonicity",
    "derivative_quotients",
    "check_nowhere_differentiability",
    "nondiff_witness",
    "ifs_maps",
    "graph_points",
    "max_points",
]

DEFAULT_MAX_POINTS = 2_000_000


def _beta(col: ColumnPair, i: int) -> Fraction:
    return col.beta[i]


def _p(col: ColumnPair, i: int) -> Fraction:
    return col.p[i]


@lru_cache(maxsize=256)
def f_range(spec: SystemSpec) -> tuple[Fraction, Fraction]:
    """Certified ``(lo, hi)`` with ``lo <= F(x) <= hi`` on [0, 1].

    Non-negative P makes F a distribution function, so the range is [0, 1].
    Otherwise a crude bound ``max beta / (1 - max |p|)`` is pushed backwards
    through a few periods of ``range_n = U_i (beta_i + p_i * range_{n+1})``.
    """
    cols = spec.columns()
    if all(p >= 0 for c in cols for p in c.p):
        return Fraction(0), Fraction(1)
    rho = max(abs(p) for c in cols for p in c.p)
    g = max(b for c in cols for b in c.beta) / (1 - rho)
    lo, hi = -g, g
    horizon = spec.L + 4 * spec.period
    for n in range(horizon, 0, -1):
        col = spec.column(n)
        cands = [b + p * v for b, p in zip(col.beta, col.p) for v in (lo, hi)]
        lo, hi = min(cands), max(cands)
    return lo, hi


def eval_F(spec: SystemSpec, d: DigitString) -> EvalResult:
    """F at the point denoted by ``d`` (either representation kind).

    A truncated string gives the partial sum over its prefix, i.e. F at the
    left end of its cylinder, with error bound ``prod |p~| * sup |F_N|`` where
    ``F_N`` is the solution for the spec shifted past the prefix.
    """
    d.check(spec)
    xi = to_plus(spec, d)
    if d.symbolic:
        return EvalResult(plus_series(spec, xi, _beta, _p), Fraction(0), d.depth)
    total, prod = plus_partial(spec, xi, _beta, _p)
    lo, hi = f_range(spec.shifted(d.depth))
    return EvalResult(total, abs(prod) * max(abs(lo), abs(hi)), d.depth)


def zeta_form(spec: SystemSpec, d: DigitString) -> Fraction:
    """F written as a formal nega expansion over P; agrees with :func:`eval_F`."""
    return signed_series(spec, to_nega(spec, d), "p")


def eval_F_at(spec: SystemSpec, x, tol) -> EvalResult:
    """F(x) for a rational ``x``, exact at cylinder endpoints, else within ``tol``."""
    x = Fraction(x)
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    depth = 8
    while True:
        d = encode(spec, RepKind.NEGA, x, depth)
        res = eval_F(spec, d)
        if res.error_bound < tol:
            return res
        depth *= 2
        if depth > 1 << 16:
            raise RuntimeError("tolerance not reached; is some |p| too close to 1?")


def residual(spec: SystemSpec, d: DigitString, k: int) -> Fraction:
    """``F_k - (beta~ + p~ F_{k+1})`` at digit ``k + 1``; zero for the true solution.

    ``F_j`` is F of the ``j``-times shifted Q~ string against the ``j``-times
    shifted spec, so both sides are evaluated independently.
    """
    if not d.symbolic:
        raise DigitError("residual needs a symbolic tail")
    d.check(spec)
    xi = to_plus(spec, d).extend(spec, k + 1)

    def f_shift(j: int) -> Fraction:
        rest = DigitString(RepKind.PLUS, xi.prefix[j:], xi.tail)
        return eval_F(spec.shifted(j), rest).value

    i = d.digit(spec, k + 1)
    if d.kind is RepKind.NEGA:
        tv = tilde_values(spec, k + 1, i)
        b, p = tv.beta, tv.p
    else:
        col = spec.column(k + 1)
        b, p = col.beta[i], col.p[i]
    return f_shift(k) - (b + p * f_shift(k + 1))


def increment(spec: SystemSpec, base) -> Fraction:
    """Increment of F over the nega cylinder ``base``: the product of p~."""
    out = Fraction(1)
    for n, c in enumerate(base, start=1):
        out *= tilde_values(spec, n, c).p
    return out


def endpoint_increment(spec: SystemSpec, base) -> Fraction:
    """``F(sup) - F(inf)`` of the nega cylinder ``base``, from its endpoint tails."""
    base = tuple(base)
    inf_tail, sup_tail = endpoint_tails(RepKind.NEGA, len(base))
    hi = eval_F(spec, DigitString(RepKind.NEGA, base, sup_tail)).value
    lo = eval_F(spec, DigitString(RepKind.NEGA, base, inf_tail)).value
    return hi - lo


class MonotonicityClass(enum.Enum):
    NON_DECREASING = "NonDecreasing"
    STRICTLY_INCREASING = "StrictlyIncreasing"
    NON_MONOTONE_WITH_MONOTONE_INTERVAL = "NonMonotoneWithMonotoneInterval"
    NOWHERE_MONOTONE = "NowhereMonotone"
    CONSTANT_ALMOST_EVERYWHERE = "ConstantAlmostEverywhere"

    def __str__(self):
        return self.value


def classify_monotonicity(spec: SystemSpec) -> MonotonicityClass:
    """Monotonicity class; "infinitely many columns" means "in the repeating block"."""
    block = [p for c in spec.block for p in c.p]
    everything = list(spec.all_p())
    if any(p == 0 for p in block):
        return MonotonicityClass.CONSTANT_ALMOST_EVERYWHERE
    if all(p > 0 for p in everything):
        return MonotonicityClass.STRICTLY_INCREASING
    if all(p >= 0 for p in everything):
        return MonotonicityClass.NON_DECREASING
    if any(p < 0 for p in block) and all(p != 0 for p in everything):
        return MonotonicityClass.NOWHERE_MONOTONE
    # negatives only in the preamble, or zeros in the preamble next to
    # negatives: some cylinder carries a zero or positive increment forever
    return MonotonicityClass.NON_MONOTONE_WITH_MONOTONE_INTERVAL


def derivative_quotients(spec: SystemSpec, d: DigitString, depth: int) -> list[Fraction]:
    """Partial products ``prod_{j<=n} p~/q~`` for ``n = 1..depth``."""
    xi = to_plus(spec, d)
    out = []
    acc = Fraction(1)
    for n in range(1, depth + 1):
        col = spec.column(n)
        i = xi.digit(spec, n)
        acc *= col.p[i] / col.q[i]
        out.append(acc)
    return out


class NondiffVerdict(NamedTuple):
    holds: bool
    detail: str


def check_nowhere_differentiability(spec: SystemSpec) -> NondiffVerdict:
    """Decide the sign-alternation and edge-ratio hypotheses on a periodic spec.

    "The product of edge ratios does not tend to 0" is read as ``|rho| >= 1``
    for the product ``rho`` over one block.
    """
    for n, col in enumerate(spec.columns(), start=1):
        for i in range(1, col.m + 1):
            if col.p[i] * col.p[i - 1] >= 0:
                return NondiffVerdict(
                    False, f"column {n}: p_{i} * p_{i - 1} = {col.p[i] * col.p[i - 1]} >= 0"
                )
    notes = []
    for label, pick in (("p_0/q_0", lambda c: 0), ("p_m/q_m", lambda c: c.m)):
        rho = math.prod((c.p[pick(c)] / c.q[pick(c)] for c in spec.block), start=Fraction(1))
        if abs(rho) < 1:
            return NondiffVerdict(False, f"block product of {label} is {rho}, |rho| < 1")
        if rho < 0:
            notes.append(f"block product of {label} is {rho}: sign oscillates")
        else:
            notes.append(f"block product of {label} is {rho}")
    return NondiffVerdict(True, "; ".join(notes))


def _rational_split(spec: SystemSpec, d: DigitString):
    """``(n, upper, lower)``: the plus forms ``... u 0 0 ...`` and ``... u-1 m m ...``."""
    d.check(spec)
    xi = to_plus(spec, d)
    if xi.tail not in (TailKind.ZEROS, TailKind.MAXES):
        raise ValueError(f"{d} is not a nega-rational point")
    other = to_plus(spec, other_representation(spec, d))
    upper, lower = (xi, other) if xi.tail is TailKind.ZEROS else (other, xi)
    n = max(t for t, c in enumerate(upper.prefix, start=1) if c != 0)
    return n, upper, lower


def nondiff_witness(spec: SystemSpec, d: DigitString, k_max: int):
    """Difference quotients ``(B'_k, B''_k)`` for ``k = 1..k_max`` at a nega-rational point.

    ``x'_k`` approaches from the right: the terminating representation with
    the digit 1 placed ``k`` positions past the last nonzero one.  ``x''_k``
    approaches from the left: the other representation cut to zeros after
    ``k`` maximal digits.
    """
    n, upper, lower = _rational_split(spec, d)
    x0 = decode(spec, upper).value
    f0 = eval_F(spec, upper).value
    out = []
    for k in range(1, k_max + 1):
        right = DigitString(
            RepKind.PLUS, upper.prefix[:n] + (0,) * (k - 1) + (1,), TailKind.ZEROS
        )
        left = DigitString(
            RepKind.PLUS,
            lower.prefix[:n] + tuple(spec.m(t) for t in range(n + 1, n + k + 1)),
            TailKind.ZEROS,
        )
        right, left = to_nega(spec, right), to_nega(spec, left)
        b1 = (eval_F(spec, right).value - f0) / (decode(spec, right).value - x0)
        b2 = (f0 - eval_F(spec, left).value) / (x0 - decode(spec, left).value)
        out.append((b1, b2))
    return out


@dataclass(frozen=True)
class AffineMap:
    """``(x, y) -> (x_offset + x_scale x, y_offset + y_scale y)``."""

    x_offset: Fraction
    x_scale: Fraction
    y_offset: Fraction
    y_scale: Fraction

    def __call__(self, x, y):
        return self.x_offset + self.x_scale * x, self.y_offset + self.y_scale * y

    def then(self, outer: "AffineMap") -> "AffineMap":
        """``outer`` applied after ``self``."""
        return AffineMap(
            outer.x_offset + outer.x_scale * self.x_offset,
            outer.x_scale * self.x_scale,
            outer.y_offset + outer.y_scale * self.y_offset,
            outer.y_scale * self.y_scale,
        )


def ifs_maps(spec: SystemSpec, n: int) -> list[AffineMap]:
    """Maps ``psi_{i,n}`` for every digit ``i`` of column ``n``."""
    col = spec.column(n)
    if any(p == 0 for p in col.p):
        warnings.warn(
            f"column {n} has a zero p entry; the graph theorem assumes none",
            stacklevel=2,
        )
    maps = []
    for i in range(col.m + 1):
        tv = tilde_values(spec, n, i)
        maps.append(AffineMap(tv.a, tv.q, tv.beta, tv.p))
    return maps


def max_points() -> int:
    raw = os.environ.get("QTILDE_MAX_POINTS")
    return int(raw) if raw else DEFAULT_MAX_POINTS


def cylinder_words(spec: SystemSpec, depth: int) -> Iterator[tuple[Fraction, Fraction, Fraction, Fraction]]:
    """``(x_inf, F(x_inf), length, prod p~)`` for every rank-``depth`` cylinder, left to right."""
    level = [(Fraction(0), Fraction(0), Fraction(1), Fraction(1))]
    for n in range(1, depth + 1):
        col = spec.column(n)
        level = [
            (x + a * ln, y + b * pp, ln * q, pp * p)
            for x, y, ln, pp in level
            for a, q, b, p in zip(col.a, col.q, col.beta, col.p)
        ]
    return iter(level)


def graph_points(spec: SystemSpec, depth: int, cap: int | None = None) -> list[tuple[Fraction, Fraction]]:
    """``(x, F(x))`` at every endpoint of the rank-``depth`` cylinders, sorted by x."""
    cap = max_points() if cap is None else cap
    count = spec.alphabet_count(depth) + 1
    if count > cap:
        raise ValueError(f"depth {depth} gives {count} points, above the cap of {cap}")
    pts = [(x, y) for x, y, _, _ in cylinder_words(spec, depth)]
    one = DigitString(RepKind.PLUS, (), TailKind.MAXES)
    pts.append((decode(spec, one).value, eval_F(spec, one).value))
    return pts

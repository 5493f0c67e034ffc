"""Q~- and nega-Q~-digit strings: decoding, encoding, shifts and cylinders.

A nega-Q~ digit string ``i_1 i_2 ...`` denotes the same number as the Q~
string obtained by reflecting every even-position digit, ``i_n -> m_n - i_n``.
Internally everything is evaluated on that reflected ("plus") form, where
cylinders are always ordered left to right.

Infinite digit strings are carried symbolically: a finite prefix plus one of
four two-periodic tails (all zeros, all maxima, or maxima and zeros
alternating).  Because the spec is eventually periodic, every such string is
eventually periodic too and decodes to an exact rational.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ._series import partial_sum, periodic_sum
from .matrix_spec import ColumnPair, SystemSpec, twist

__all__ = [
    "RepKind",
    "TailKind",
    "DigitString",
    "EvalResult",
    "Cylinder",
    "DigitError",
    "to_plus",
    "to_nega",
    "decode",
    "decode_eq3",
    "encode",
    "other_representation",
    "shift",
    "cylinder",
]


class DigitError(ValueError):
    """A digit lies outside its column's alphabet, or a digit string is malformed."""


class RepKind(enum.Enum):
    PLUS = "plus"
    NEGA = "nega"


class TailKind(enum.Enum):
    ZEROS = "zeros"
    MAXES = "maxes"
    ALT_MAX_ZERO = "altmaxzero"
    ALT_ZERO_MAX = "altzeromax"
    TRUNCATED = "truncated"


# Which of the first two tail positions hold the column maximum (True) or 0.
# Every symbolic tail repeats this pair.
_PATTERN = {
    TailKind.ZEROS: (False, False),
    TailKind.MAXES: (True, True),
    TailKind.ALT_MAX_ZERO: (True, False),
    TailKind.ALT_ZERO_MAX: (False, True),
}
_FROM_PATTERN = {v: k for k, v in _PATTERN.items()}


@dataclass(frozen=True)
class DigitString:
    kind: RepKind
    prefix: tuple[int, ...]
    tail: TailKind = TailKind.TRUNCATED

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(c) for c in self.prefix))
        if any(c < 0 for c in self.prefix):
            raise DigitError("digits are non-negative")

    @property
    def depth(self) -> int:
        return len(self.prefix)

    @property
    def symbolic(self) -> bool:
        return self.tail is not TailKind.TRUNCATED

    def __str__(self):
        return f"{self.kind.value}:{','.join(map(str, self.prefix))}:{self.tail.value}"

    @classmethod
    def parse(cls, text: str) -> "DigitString":
        """Read ``kind:d1,d2,...:tail``, e.g. ``nega:1,0,2:altmaxzero``."""
        parts = text.strip().split(":")
        if len(parts) != 3:
            raise DigitError(f"expected kind:digits:tail, got {text!r}")
        kind, digits, tail = (s.strip().lower() for s in parts)
        try:
            rk = RepKind(kind)
            tk = TailKind(tail)
        except ValueError as exc:
            raise DigitError(str(exc)) from None
        try:
            prefix = tuple(int(s) for s in digits.split(",") if s.strip())
        except ValueError:
            raise DigitError(f"bad digit list {digits!r}") from None
        return cls(rk, prefix, tk)

    def check(self, spec: SystemSpec) -> None:
        for t, c in enumerate(self.prefix, start=1):
            if c > spec.m(t):
                raise DigitError(f"digit {c} at position {t} exceeds m_{t} = {spec.m(t)}")

    def digit(self, spec: SystemSpec, t: int) -> int:
        """Digit at position ``t >= 1``, reading into the tail if needed."""
        n = self.depth
        if t <= n:
            return self.prefix[t - 1]
        if self.tail is TailKind.TRUNCATED:
            raise DigitError(f"position {t} lies beyond a truncated string of depth {n}")
        return spec.m(t) if _PATTERN[self.tail][(t - n - 1) % 2] else 0

    def extend(self, spec: SystemSpec, length: int) -> "DigitString":
        """Same digit sequence with the prefix materialized to ``length`` digits."""
        if length <= self.depth:
            return self
        digits = self.prefix + tuple(
            self.digit(spec, t) for t in range(self.depth + 1, length + 1)
        )
        tail = self.tail
        if (length - self.depth) % 2:
            a, b = _PATTERN[tail]
            tail = _FROM_PATTERN[(b, a)]
        return DigitString(self.kind, digits, tail)

    def truncated(self, length: int) -> "DigitString":
        return DigitString(self.kind, self.prefix[:length], TailKind.TRUNCATED)


def _reflect(spec: SystemSpec, d: DigitString, kind: RepKind) -> DigitString:
    if d.kind is kind:
        return d
    n = d.depth
    prefix = tuple(twist(spec, t, c) for t, c in enumerate(d.prefix, start=1))
    tail = d.tail
    if tail is not TailKind.TRUNCATED:
        pattern = _PATTERN[tail]
        flipped = tuple(
            (not pattern[j]) if (n + 1 + j) % 2 == 0 else pattern[j] for j in (0, 1)
        )
        tail = _FROM_PATTERN[flipped]
    return DigitString(kind, prefix, tail)


def to_plus(spec: SystemSpec, d: DigitString) -> DigitString:
    """The Q~ digit string of the number ``d`` denotes."""
    return _reflect(spec, d, RepKind.PLUS)


def to_nega(spec: SystemSpec, d: DigitString) -> DigitString:
    """The nega-Q~ digit string of the number ``d`` denotes."""
    return _reflect(spec, d, RepKind.NEGA)


@dataclass(frozen=True)
class EvalResult:
    """An exact value, or a value with a certified bound on its truncation error."""

    value: Fraction
    error_bound: Fraction = Fraction(0)
    depth_used: int = 0

    @property
    def exact(self) -> bool:
        return self.error_bound == 0

    @property
    def low(self) -> Fraction:
        return self.value - self.error_bound

    @property
    def high(self) -> Fraction:
        return self.value + self.error_bound

    def __contains__(self, x) -> bool:
        return self.low <= x <= self.high


Weight = Callable[[ColumnPair, int], Fraction]


def plus_series(spec: SystemSpec, xi: DigitString, coef: Weight, ratio: Weight) -> Fraction:
    """``sum_n coef(col_n, xi_n) prod_{j<n} ratio(col_j, xi_j)`` for a symbolic plus string."""
    digit = xi.digit
    column = spec.column
    start = max(xi.depth, spec.L) + 1
    period = math.lcm(2, spec.period)
    return periodic_sum(
        lambda n: coef(column(n), digit(spec, n)),
        lambda n: ratio(column(n), digit(spec, n)),
        start,
        period,
    )


def plus_partial(spec: SystemSpec, xi: DigitString, coef: Weight, ratio: Weight):
    """Prefix-only version of :func:`plus_series`: ``(partial sum, product)``."""
    column = spec.column
    prefix = xi.prefix
    return partial_sum(
        lambda n: coef(column(n), prefix[n - 1]),
        lambda n: ratio(column(n), prefix[n - 1]),
        xi.depth,
    )


def _a(col: ColumnPair, i: int) -> Fraction:
    return col.a[i]


def _q(col: ColumnPair, i: int) -> Fraction:
    return col.q[i]


def decode(spec: SystemSpec, d: DigitString, exact: bool = False) -> EvalResult:
    """Value of a digit string.

    Symbolic tails give an exact rational.  A truncated string gives the
    midpoint of its cylinder, with half the cylinder length as error bound;
    pass ``exact=True`` to refuse that.
    """
    d.check(spec)
    xi = to_plus(spec, d)
    if d.symbolic:
        return EvalResult(plus_series(spec, xi, _a, _q), Fraction(0), d.depth)
    if exact:
        raise DigitError("truncated digit string has no exact value")
    low, length = plus_partial(spec, xi, _a, _q)
    half = length / 2
    return EvalResult(low + half, half, d.depth)


def signed_series(spec: SystemSpec, d: DigitString, weights: str) -> Fraction:
    """Sign-alternating nega expansion taken term by term from its definition.

    With ``weights="q"`` this is the value of the nega digit string; with
    ``weights="p"`` it is the same expression over P, i.e. F at that point.
    It never reflects digits into plus form, so it checks the reflected path.
    """
    if d.kind is not RepKind.NEGA:
        raise DigitError("signed_series takes a nega digit string")
    if not d.symbolic:
        raise DigitError("signed_series needs a symbolic tail")
    d.check(spec)

    def w(col: ColumnPair):
        return col.q if weights == "q" else col.p

    def w_tilde(n: int) -> Fraction:
        col = spec.column(n)
        i = d.digit(spec, n)
        return w(col)[i] if n % 2 else w(col)[col.m - i]

    def delta_tilde(n: int) -> Fraction:
        col = spec.column(n)
        i = d.digit(spec, n)
        ws = w(col)
        if n % 2 == 0:
            return Fraction(1) if i == col.m else sum(ws[col.m - i:], Fraction(0))
        return Fraction(0) if i == 0 else sum(ws[:i], Fraction(0))

    # the n = 1 term is special, so the periodic part starts at n >= 2
    start = max(d.depth, spec.L, 1) + 1
    period = math.lcm(2, spec.period)
    first_col = spec.column(1)
    head = sum(w(first_col)[: d.digit(spec, 1)], Fraction(0))
    alternating = periodic_sum(
        lambda n: (-1) ** (n - 1) * delta_tilde(n) if n >= 2 else Fraction(0),
        w_tilde,
        start,
        period,
    )
    # sum over k of prod_{j <= 2k-1}: the n = 2k terms of sum_n prod_{j<n}
    odd_products = periodic_sum(
        lambda n: Fraction(1) if n % 2 == 0 else Fraction(0),
        w_tilde,
        start,
        period,
    )
    return head + alternating + odd_products


def decode_eq3(spec: SystemSpec, d: DigitString) -> Fraction:
    """Exact value of a nega digit string from the signed-delta expansion."""
    return signed_series(spec, d, "q")


# -- encoding ----------------------------------------------------------------


def _encode_plus(spec: SystemSpec, x: Fraction, depth: int, kind: RepKind):
    """Digits of ``x`` in plus form and the detected tail (or TRUNCATED)."""
    digits: list[int] = []
    if x == 0:
        tail = TailKind.ZEROS
    elif x == 1:
        tail = TailKind.MAXES
    else:
        tail = TailKind.TRUNCATED
    lo = Fraction(0)
    length = Fraction(1)
    for n in range(1, depth + 1):
        col = spec.column(n)
        if tail is TailKind.ZEROS:
            digits.append(0)
            continue
        if tail is TailKind.MAXES:
            digits.append(col.m)
            continue
        rel = (x - lo) / length
        hits = [i for i in range(col.m + 1) if col.a[i] <= rel <= col.a[i] + col.q[i]]
        if len(hits) == 1:
            i = hits[0]
        elif kind is RepKind.PLUS:
            i = hits[-1]
        else:
            # smaller nega digit: smaller plus digit at odd n, larger at even n
            i = hits[0] if n % 2 else hits[-1]
        digits.append(i)
        lo += col.a[i] * length
        length *= col.q[i]
        if x == lo:
            tail = TailKind.ZEROS
        elif x == lo + length:
            tail = TailKind.MAXES
    return DigitString(RepKind.PLUS, tuple(digits), tail)


def encode(spec: SystemSpec, kind: RepKind, x, depth: int) -> DigitString:
    """First ``depth`` digits of ``x``; the tail is symbolic when ``x`` is an endpoint.

    At a point shared by two cylinders the nega form takes the smaller digit.
    The plus form takes the larger one, which gives the usual terminating
    expansion ``... i_n 0 0 0 ...`` for rational points.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"x = {x} lies outside [0, 1]")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    xi = _encode_plus(spec, x, depth, kind)
    return xi if kind is RepKind.PLUS else to_nega(spec, xi)


def other_representation(spec: SystemSpec, d: DigitString) -> DigitString:
    """The second digit string of a point that has two."""
    d.check(spec)
    xi = to_plus(spec, d)
    if xi.tail not in (TailKind.ZEROS, TailKind.MAXES):
        raise ValueError(f"{d} has a unique representation")
    from_zeros = xi.tail is TailKind.ZEROS
    prefix = list(xi.prefix)
    # last position n whose digit differs from the tail digit
    for n in range(len(prefix), 0, -1):
        if prefix[n - 1] != (0 if from_zeros else spec.m(n)):
            break
    else:
        raise ValueError(f"{d} is an endpoint of [0, 1] and has a unique representation")
    prefix[n - 1] += -1 if from_zeros else 1
    for t in range(n + 1, len(prefix) + 1):
        prefix[t - 1] = spec.m(t) if from_zeros else 0
    new_tail = TailKind.MAXES if from_zeros else TailKind.ZEROS
    alt = DigitString(RepKind.PLUS, tuple(prefix), new_tail)
    return alt if d.kind is RepKind.PLUS else to_nega(spec, alt)


def shift(spec: SystemSpec, d: DigitString, k: int) -> tuple[DigitString, Fraction]:
    """Drop the first ``k`` digits of a Q~ string; value against ``spec.shifted(k)``."""
    if d.kind is not RepKind.PLUS:
        raise DigitError("shift acts on Q~ (plus) digit strings; convert with to_plus")
    if k < 0:
        raise ValueError("k must be non-negative")
    d.check(spec)
    if d.depth < k:
        d = d.extend(spec, k)
    rest = DigitString(RepKind.PLUS, d.prefix[k:], d.tail)
    return rest, decode(spec.shifted(k), rest, exact=True).value


# -- cylinders -----------------------------------------------------------------


@dataclass(frozen=True)
class Cylinder:
    kind: RepKind
    base: tuple[int, ...]
    inf: Fraction
    sup: Fraction
    length: Fraction

    @property
    def rank(self) -> int:
        return len(self.base)

    def __contains__(self, x) -> bool:
        return self.inf <= x <= self.sup


def endpoint_tails(kind: RepKind, rank: int) -> tuple[TailKind, TailKind]:
    """Tails giving the (inf, sup) of a rank-``rank`` cylinder."""
    if kind is RepKind.PLUS:
        return TailKind.ZEROS, TailKind.MAXES
    if rank % 2:
        return TailKind.ALT_MAX_ZERO, TailKind.ALT_ZERO_MAX
    return TailKind.ALT_ZERO_MAX, TailKind.ALT_MAX_ZERO


def cylinder(spec: SystemSpec, kind: RepKind, base) -> Cylinder:
    base = tuple(base)
    inf_tail, sup_tail = endpoint_tails(kind, len(base))
    lo = decode(spec, DigitString(kind, base, inf_tail)).value
    hi = decode(spec, DigitString(kind, base, sup_tail)).value
    length = Fraction(1)
    for n, c in enumerate(base, start=1):
        j = twist(spec, n, c) if kind is RepKind.NEGA else c
        length *= spec.column(n).q[j]
    return Cylinder(kind, base, lo, hi, length)

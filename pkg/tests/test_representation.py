import random
from fractions import Fraction as Fr

import pytest
from hypothesis import assume, given, strategies as st

from catalog import ID2, MIXED, NEGA2, PRE2, S3NEG, SYMBOLIC, spec_and_string, specs, words
from qtilde import (
    DigitError,
    DigitString,
    RepKind,
    TailKind,
    cylinder,
    decode,
    decode_eq3,
    encode,
    other_representation,
    shift,
    tilde_values,
    to_nega,
    to_plus,
)

NEGA, PLUS = RepKind.NEGA, RepKind.PLUS
Z, M, AMZ, AZM, T = (
    TailKind.ZEROS,
    TailKind.MAXES,
    TailKind.ALT_MAX_ZERO,
    TailKind.ALT_ZERO_MAX,
    TailKind.TRUNCATED,
)


def ds(kind, prefix, tail):
    return DigitString(kind, tuple(prefix), tail)


def tilde_bracket(spec, d, depth):
    """Literal nega sum over ``depth`` digits, remainder bounded by the cylinder length."""
    d = d.extend(spec, depth)
    x, prod = Fr(0), Fr(1)
    for n in range(1, depth + 1):
        tv = tilde_values(spec, n, d.prefix[n - 1])
        x += tv.a * prod
        prod *= tv.q
    return x, x + prod


def test_decode_examples():
    assert decode(S3NEG, ds(PLUS, [0], Z)).value == 0
    assert decode(NEGA2, ds(NEGA, [0], AMZ)).value == 0
    assert decode(NEGA2, ds(NEGA, [1], AZM)).value == 1
    assert decode_eq3(NEGA2, ds(NEGA, [0], AMZ)) == 0
    assert decode_eq3(NEGA2, ds(NEGA, [1], AZM)) == 1


def test_s3neg_endpoint_against_depth60_bracket():
    d = ds(NEGA, [1, 1], AMZ)
    value = decode(S3NEG, d).value
    lo, hi = tilde_bracket(S3NEG, d, 60)
    assert lo <= value <= hi
    assert hi - lo < Fr(1, 10**28)
    # rank 2 is even, so this tail gives the right end of cylinder (1, 1)
    c = cylinder(S3NEG, NEGA, (1, 1))
    assert (c.inf, c.sup) == (Fr(4, 9), Fr(5, 9))
    assert value == c.sup


@given(spec_and_string(tails=SYMBOLIC))
def test_closed_form_tail_inside_depth60_bracket(case):
    spec, d = case
    value = decode(spec, d).value
    lo, hi = tilde_bracket(spec, d, d.depth + 60)
    assert lo <= value <= hi


@given(spec_and_string(tails=SYMBOLIC))
def test_signed_delta_form_agrees_with_tilde_decode(case):
    spec, d = case
    assert decode_eq3(spec, d) == decode(spec, d).value


@given(spec_and_string(kind=NEGA, tails=SYMBOLIC))
def test_reflection_preserves_value(case):
    spec, d = case
    plus = to_plus(spec, d)
    assert plus.kind is PLUS
    assert decode(spec, plus).value == decode(spec, d).value
    assert to_nega(spec, plus) == d


def test_truncated_decode_brackets():
    d = ds(NEGA, [1, 0, 1], T)
    res = decode(NEGA2, d)
    c = cylinder(NEGA2, NEGA, d.prefix)
    assert (res.low, res.high) == (c.inf, c.sup)
    assert res.error_bound == c.length / 2
    with pytest.raises(DigitError):
        decode(NEGA2, d, exact=True)


def test_digit_out_of_alphabet():
    with pytest.raises(DigitError):
        decode(NEGA2, ds(NEGA, [2], Z))
    with pytest.raises(DigitError):
        DigitString.parse("nega:1,x:zeros")
    with pytest.raises(DigitError):
        DigitString.parse("minus:1:zeros")


def test_digit_string_text_roundtrip():
    d = DigitString.parse("nega:1,0,2:altmaxzero")
    assert d == ds(NEGA, [1, 0, 2], AMZ)
    assert str(d) == "nega:1,0,2:altmaxzero"
    assert DigitString.parse("plus::zeros").prefix == ()


def test_encode_examples():
    assert encode(NEGA2, NEGA, 0, 3) == ds(NEGA, [0, 1, 0], AMZ)
    half = encode(NEGA2, NEGA, Fr(1, 2), 1)
    assert half.prefix == (0,)
    assert decode(NEGA2, half).value == Fr(1, 2)
    assert encode(ID2, PLUS, Fr(3, 4), 2) == ds(PLUS, [1, 1], Z)
    assert encode(NEGA2, NEGA, 1, 2).prefix == (1, 0)
    with pytest.raises(ValueError):
        encode(NEGA2, NEGA, Fr(3, 2), 4)


def test_nega_tie_takes_smaller_digit():
    # 1/2 is the right end of (0,) and the left end of (1,)
    for depth in (1, 2, 5):
        assert encode(NEGA2, NEGA, Fr(1, 2), depth).prefix[0] == 0
    # 1/4 sits between (0, 1) = [0, 1/4] and (0, 0) = [1/4, 1/2]: pick 0
    assert encode(NEGA2, NEGA, Fr(1, 4), 2).prefix == (0, 0)


@given(specs(), st.fractions(0, 1, max_denominator=500), st.integers(1, 14))
def test_encode_nests_x_in_every_cylinder(spec, x, depth):
    for kind in (NEGA, PLUS):
        d = encode(spec, kind, x, depth)
        d.check(spec)
        assert x in decode(spec, d)
        for n in range(0, min(d.depth, depth) + 1):
            assert x in cylinder(spec, kind, d.prefix[:n])
        if d.symbolic:
            assert decode(spec, d).value == x
        else:
            c = cylinder(spec, kind, d.prefix)
            assert decode(spec, d).high - decode(spec, d).low == c.length


def test_other_representation_examples():
    d = ds(NEGA, [1, 1, 1], AMZ)
    alt = other_representation(NEGA2, d)
    assert alt == ds(NEGA, [1, 1, 0], AZM)
    assert decode(NEGA2, alt).value == decode(NEGA2, d).value
    assert other_representation(ID2, ds(PLUS, [1], Z)) == ds(PLUS, [0], M)
    assert other_representation(ID2, ds(PLUS, [0], M)) == ds(PLUS, [1], Z)


def test_other_representation_rejects_unique_points():
    with pytest.raises(ValueError):
        other_representation(NEGA2, ds(NEGA, [0], AMZ))
    with pytest.raises(ValueError):
        other_representation(NEGA2, ds(NEGA, [1, 1], T))


@given(spec_and_string(kind=NEGA, tails=(AMZ, AZM)))
def test_other_representation_is_an_involution(case):
    spec, d = case
    try:
        alt = other_representation(spec, d)
    except ValueError:
        assume(False)
    assert alt != d.extend(spec, alt.depth)
    assert decode(spec, alt).value == decode(spec, d).value
    back = other_representation(spec, alt)
    assert decode(spec, back).value == decode(spec, d).value


def test_shift_examples():
    rest, value = shift(ID2, ds(PLUS, [1, 1], Z), 1)
    assert value == Fr(1, 2)
    assert rest == ds(PLUS, [1], Z)
    d = ds(PLUS, [1, 0, 2], AZM)
    assert shift(S3NEG, d, 0)[1] == decode(S3NEG, d).value
    for k in range(6):
        assert shift(PRE2, ds(PLUS, [0], Z), k)[1] == 0
    with pytest.raises(DigitError):
        shift(NEGA2, ds(NEGA, [1], Z), 1)


@given(spec_and_string(kind=PLUS), st.integers(1, 12))
def test_shift_identity(case, k):
    spec, d = case
    d = d.extend(spec, k)
    prev = shift(spec, d, k - 1)[1]
    cur = shift(spec, d, k)[1]
    c = spec.column(k)
    i = d.prefix[k - 1]
    assert prev == c.a[i] + c.q[i] * cur


def test_cylinder_examples():
    c = cylinder(NEGA2, NEGA, (0,))
    assert (c.inf, c.sup, c.length) == (0, Fr(1, 2), Fr(1, 2))
    c2 = cylinder(NEGA2, NEGA, (0, 0))
    assert c2.length == Fr(1, 4)
    assert (c2.inf, c2.sup) == (Fr(1, 4), Fr(1, 2))
    # even rank runs right to left: digit 1 sits left of digit 0
    assert cylinder(NEGA2, NEGA, (0, 1)).sup == c2.inf
    for spec in (NEGA2, S3NEG, PRE2):
        e = cylinder(spec, NEGA, ())
        assert (e.inf, e.sup, e.length) == (0, 1, 1)


def check_children(spec, kind, base):
    parent = cylinder(spec, kind, base)
    n = len(base) + 1
    kids = [cylinder(spec, kind, base + (c,)) for c in range(spec.m(n) + 1)]
    for k in kids:
        assert parent.inf <= k.inf < k.sup <= parent.sup
        assert k.sup - k.inf == k.length
    assert sum(k.length for k in kids) == parent.length
    ordered = kids if (kind is PLUS or n % 2) else kids[::-1]
    assert ordered[0].inf == parent.inf
    assert ordered[-1].sup == parent.sup
    for left, right in zip(ordered, ordered[1:]):
        assert left.sup == right.inf
    for c, k in enumerate(kids):
        q = tilde_values(spec, n, c).q if kind is NEGA else spec.column(n).q[c]
        assert k.length == parent.length * q


@pytest.mark.parametrize("kind", [NEGA, PLUS])
def test_tiling_exhaustive_mixed_alphabets(kind):
    for depth in range(0, 5):
        for base in words(MIXED, depth):
            check_children(MIXED, kind, base)


@given(specs(), st.data())
def test_tiling_random_bases(spec, data):
    depth = data.draw(st.integers(0, 12))
    base = tuple(data.draw(st.integers(0, spec.m(n))) for n in range(1, depth + 1))
    for kind in (NEGA, PLUS):
        check_children(spec, kind, base)


def test_plus_and_nega_cylinders_are_the_same_intervals():
    rng = random.Random(7)
    for _ in range(50):
        depth = rng.randint(0, 8)
        base = tuple(rng.randint(0, PRE2.m(n)) for n in range(1, depth + 1))
        nega = cylinder(PRE2, NEGA, base)
        plus = cylinder(PRE2, PLUS, to_plus(PRE2, DigitString(NEGA, base, T)).prefix)
        assert (nega.inf, nega.sup) == (plus.inf, plus.sup)

"""Command line interface: ``qtilde SUBCOMMAND --spec FILE ...``.

Exit codes: 0 success, 1 I/O or parse error, 2 spec fails validation,
3 an operation's precondition fails (e.g. sampling with negative p).
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction

from .classify import classify
from .function import eval_F, eval_F_at, graph_points, ifs_maps, increment
from .integral import (
    GENERATOR_ID,
    NotApplicableError,
    cdf_distance,
    integral_closed_form,
    integral_oracle,
    sample,
)
from .matrix_spec import SpecParseError, load_spec, parse_rational, validate
from .representation import (
    DigitError,
    DigitString,
    RepKind,
    decode,
    encode,
    shift,
    to_plus,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_PRECONDITION = 3


class UsageError(Exception):
    """Bad argument text; reported with exit code 1."""


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_decimal(x: Fraction, places: int) -> str:
    """``x`` rounded to ``places`` decimals, trailing zeros dropped."""
    x = Fraction(x)
    scaled = round(abs(x) * 10**places)
    sign = "-" if x < 0 and scaled else ""
    whole, frac = divmod(scaled, 10**places)
    if places == 0 or frac == 0:
        return f"{sign}{whole}"
    digits = str(frac).rjust(places, "0").rstrip("0")
    return f"{sign}{whole}.{digits}"


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _digits(text: str) -> DigitString:
    try:
        return DigitString.parse(text)
    except DigitError as exc:
        raise UsageError(str(exc)) from None


def _base(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise UsageError(f"bad digit list {text!r}") from None


def _load(args, out_err):
    spec = load_spec(args.spec)
    report = validate(spec)
    hard = report.conditions() - {"P4"}
    if hard:
        print(f"invalid spec {args.spec}:", file=out_err)
        print(report, file=out_err)
        raise SystemExit(EXIT_INVALID)
    if "P4" in report.conditions():
        print("warning: partial sums of some p column leave (0, 1)", file=out_err)
    return spec


def _emit_value(out, label: str, value: Fraction, places: int):
    print(f"{label}: {fmt_rational(value)}", file=out)
    print(f"decimal: {fmt_decimal(value, places)}", file=out)


def _emit_result(out, res, places: int):
    if res.exact:
        _emit_value(out, "value", res.value, places)
    else:
        print(f"bracket: {fmt_rational(res.low)} {fmt_rational(res.high)}", file=out)
        print(f"decimal: {fmt_decimal(res.value, places)}", file=out)
        print(f"error_bound: {fmt_rational(res.error_bound)}", file=out)


# -- subcommands ------------------------------------------------------------------


def cmd_validate(args, out, err):
    report = validate(load_spec(args.spec))
    print(report, file=out)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_encode(args, out, err):
    spec = _load(args, err)
    d = encode(spec, RepKind(args.rep), _rational(args.x), args.depth)
    print(f"digits: {d}", file=out)
    _emit_result(out, decode(spec, d), args.precision)
    return EXIT_OK


def cmd_decode(args, out, err):
    spec = _load(args, err)
    d = _digits(args.digits)
    _emit_result(out, decode(spec, d), args.precision)
    return EXIT_OK


def cmd_eval(args, out, err):
    spec = _load(args, err)
    if args.digits is not None:
        res = eval_F(spec, _digits(args.digits))
    else:
        res = eval_F_at(spec, _rational(args.x), _rational(args.tol))
    _emit_result(out, res, args.precision)
    return EXIT_OK


def cmd_shift(args, out, err):
    spec = _load(args, err)
    d = to_plus(spec, _digits(args.digits))
    rest, value = shift(spec, d, args.k)
    print(f"digits: {rest}", file=out)
    _emit_value(out, "value", value, args.precision)
    return EXIT_OK


def cmd_increment(args, out, err):
    spec = _load(args, err)
    _emit_value(out, "increment", increment(spec, _base(args.base)), args.precision)
    return EXIT_OK


def cmd_classify(args, out, err):
    spec = _load(args, err)
    report = classify(spec)
    print(report.summary(), file=out)
    print(f"# {report.nowhere_differentiable.detail}", file=out)
    return EXIT_OK


def cmd_integral(args, out, err):
    spec = _load(args, err)
    res = integral_closed_form(spec)
    _emit_value(out, "value", res.value, args.precision)
    if args.oracle_depth is not None:
        lo, hi = integral_oracle(spec, args.oracle_depth)
        print(f"bracket: {fmt_rational(lo)} {fmt_rational(hi)}", file=out)
        print(
            f"bracket_decimal: {fmt_decimal(lo, args.precision)} {fmt_decimal(hi, args.precision)}",
            file=out,
        )
    return EXIT_OK


def cmd_sample(args, out, err):
    spec = _load(args, err)
    batch = sample(spec, args.seed, args.count, args.depth)
    print(
        f"# seed={batch.seed} count={len(batch.values)} depth={batch.depth} "
        f"generator={GENERATOR_ID}",
        file=out,
    )
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["index", "value_num/den", "value_decimal"])
    for j, v in enumerate(batch.values):
        writer.writerow([j, fmt_rational(v), fmt_decimal(v, args.precision)])
    return EXIT_OK


def cmd_cdf_test(args, out, err):
    spec = _load(args, err)
    batch = sample(spec, args.seed, args.count, args.depth)
    dist = cdf_distance(spec, batch, args.grid)
    print(f"# seed={args.seed} count={args.count} depth={args.depth} generator={GENERATOR_ID}", file=out)
    print(f"distance: {fmt_decimal(dist, args.precision)}", file=out)
    return EXIT_OK


def cmd_graph(args, out, err):
    spec = _load(args, err)
    pts = graph_points(spec, args.depth)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x_num/x_den", "y_num/y_den", "x_decimal", "y_decimal"])
    for x, y in pts:
        writer.writerow(
            [fmt_rational(x), fmt_rational(y), fmt_decimal(x, args.precision), fmt_decimal(y, args.precision)]
        )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
        print(f"wrote {len(pts)} points to {args.out}", file=out)
    else:
        out.write(buf.getvalue())
    return EXIT_OK


def cmd_ifs(args, out, err):
    spec = _load(args, err)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "digit", "a", "q", "beta", "p"])
    for i, m in enumerate(ifs_maps(spec, args.n)):
        writer.writerow(
            [args.n, i]
            + [fmt_rational(v) for v in (m.x_offset, m.x_scale, m.y_offset, m.y_scale)]
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtilde", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--precision", type=int, default=12, help="decimal places in decimal renderings"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--spec", required=True, help="spec file (JSON)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the matrix conditions")

    p = add("encode", cmd_encode, "digits of a rational x")
    p.add_argument("--rep", choices=["plus", "nega"], default="nega")
    p.add_argument("--x", required=True)
    p.add_argument("--depth", type=int, required=True)

    p = add("decode", cmd_decode, "value of a digit string")
    p.add_argument("--digits", required=True, help="kind:d1,d2,...:tail")

    p = add("eval", cmd_eval, "F at a digit string or a rational point")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--digits")
    g.add_argument("--x")
    p.add_argument("--tol", default="1e-12")

    p = add("shift", cmd_shift, "apply the digit shift k times")
    p.add_argument("--digits", required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("increment", cmd_increment, "increment of F on a nega cylinder")
    p.add_argument("--base", required=True, help="comma-separated nega digits")

    add("classify", cmd_classify, "monotonicity, differentiability and singularity verdicts")

    p = add("integral", cmd_integral, "integral of F over [0, 1]")
    p.add_argument("--oracle-depth", type=int, default=None)

    p = add("sample", cmd_sample, "draw the random variable with independent digits")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)

    p = add("cdf-test", cmd_cdf_test, "sup distance between empirical CDF and F")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--grid", type=int, required=True)
    p.add_argument("--depth", type=int, default=40)

    p = add("graph", cmd_graph, "points of the graph of F as CSV")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out", default=None)

    p = add("ifs", cmd_ifs, "affine maps of column n")
    p.add_argument("--n", type=int, required=True)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code else EXIT_OK
    try:
        return args.func(args, out, err)
    except SystemExit as exc:
        return int(exc.code)
    except (OSError, SpecParseError, UsageError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO
    except (NotApplicableError, DigitError, ValueError) as exc:
        print(f"precondition failed: {exc}", file=err)
        return EXIT_PRECONDITION


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

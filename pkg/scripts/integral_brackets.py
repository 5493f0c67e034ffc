"""Closed-form integral of F next to the cylinder-sum brackets at growing depth.

    python scripts/integral_brackets.py --spec specs/s3neg.json --max-depth 9
"""

import argparse

from qtilde import integral_closed_form, integral_oracle, load_spec


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--spec", required=True)
    parser.add_argument("--max-depth", type=int, default=10)
    args = parser.parse_args()
    spec = load_spec(args.spec)

    exact = integral_closed_form(spec).value
    print(f"# closed form {exact} = {float(exact):.12f}")
    print("depth,low,high,width,contains")
    for depth in range(args.max_depth + 1):
        lo, hi = integral_oracle(spec, depth)
        print(f"{depth},{float(lo):.12f},{float(hi):.12f},{float(hi - lo):.3e},{lo <= exact <= hi}")


if __name__ == "__main__":
    main()

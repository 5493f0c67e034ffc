"""Draw the graph of F as an SVG polyline, with no plotting library.

    python scripts/graph_svg.py --spec specs/s3neg.json --depth 9 --out s3neg.svg

The same points come out of ``qtilde graph`` as CSV for any other plotting
tool, e.g. in gnuplot::

    set datafile separator ','
    plot 'graph.csv' every ::1 using 3:4 with lines
"""

import argparse

from qtilde import graph_points, load_spec


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--spec", required=True)
    parser.add_argument("--depth", type=int, default=8)
    parser.add_argument("--out", required=True)
    parser.add_argument("--size", type=int, default=800)
    args = parser.parse_args()

    pts = [(float(x), float(y)) for x, y in graph_points(load_spec(args.spec), args.depth)]
    ys = [y for _, y in pts]
    lo, hi = min(ys + [0.0]), max(ys + [1.0])
    s, pad = args.size, 20

    def to_px(x, y):
        return pad + x * (s - 2 * pad), s - pad - (y - lo) / (hi - lo) * (s - 2 * pad)

    path = " ".join(f"{px:.2f},{py:.2f}" for px, py in (to_px(x, y) for x, y in pts))
    x0, y0 = to_px(0, 0)
    x1, y1 = to_px(1, 1)
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}">\n'
        f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" fill="none" stroke="#bbb"/>\n'
        f'<polyline points="{path}" fill="none" stroke="#1f4e8c" stroke-width="1"/>\n'
        "</svg>\n"
    )
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"{len(pts)} points, F ranges over [{lo:.4f}, {hi:.4f}], wrote {args.out}")


if __name__ == "__main__":
    main()

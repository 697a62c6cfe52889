import argparse
import sys

from .aggregate import STATISTICS, SchemaError
from .render import PlotSpec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plots",
        description="Render line charts (selected weight vs prediction error) "
                    "from a benchmark sweep CSV, one figure per dataset group.",
    )
    parser.add_argument("--csv", required=True, help="sweep CSV produced by the benchmark harness")
    parser.add_argument("--out", required=True, help="output directory for figures")
    parser.add_argument("--stat", choices=sorted(STATISTICS), default="mean")
    parser.add_argument("--fmt", default="png", help="image format (default png)")
    args = parser.parse_args(argv)

    try:
        written = render(PlotSpec(args.csv, args.out, args.stat, args.fmt))
    except (OSError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())

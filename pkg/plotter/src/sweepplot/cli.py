"""Render simulation sweep CSV files into figures.

Exit codes: 0 success, 1 validation/usage error, 3 input/output failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ValidationError
from .figures import KINDS, PlotSpec, render


class _Parser(argparse.ArgumentParser):
    # keep usage errors on the same exit code as other validation failures
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plot", description=__doc__)
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--input", required=True, help="CSV file to read")
    parser.add_argument("--output", required=True, help="image file to write")
    parser.add_argument("--x", help="abscissa column (default: first CSV column)")
    parser.add_argument("--y", help="ordinate column (kind-specific default)")
    parser.add_argument("--z", help="heatmap color / upper-panel / second-curve column")
    parser.add_argument("--series", help="group rows into one curve per value")
    parser.add_argument("--diagonal", action="store_true",
                        help="draw the y = x line on a heatmap")
    parser.add_argument("--zero-line", action="store_true", dest="zero_line",
                        help="draw a horizontal zero line")
    parser.add_argument("--arrows", action="store_true",
                        help="mark sign changes of the curve with arrows")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = PlotSpec(
            input=args.input, output=args.output, kind=args.kind,
            x=args.x, y=args.y, z=args.z, series=args.series,
            diagonal=args.diagonal, zero_line=args.zero_line, arrows=args.arrows,
        )
        render(spec)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

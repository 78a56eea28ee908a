"""`peerlens-fig <kind> --in <csv> --out <img> [--marker X,Y]`."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import KINDS, FigureSpec, SchemaError, render


def _parse_marker(text: str) -> tuple[float, float]:
    try:
        x, y = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("marker must be two comma-separated numbers")
    return x, y


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peerlens-fig",
        description="Render a figure from a peerlens CSV output file.",
    )
    parser.add_argument("kind", choices=list(KINDS))
    parser.add_argument("--in", dest="input", required=True, help="input CSV path")
    parser.add_argument("--out", dest="output", required=True, help="output image path")
    parser.add_argument(
        "--marker",
        type=_parse_marker,
        help="optional optimum marker as X,Y (drawn as a red diamond)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        kind=args.kind,
        input_path=Path(args.input),
        output_path=Path(args.output),
        marker=args.marker,
    )
    try:
        written = render(spec)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {written}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
Offline sweep of predicted conic-tip heat coefficients.

Tabulates the per-tip b0 under both angle conventions and b1/2 under both
readings of the regularized-sum chain over a (c, kappa) grid, so the size of
each disagreement can be read off before committing to an expensive solver
run.

Example:
    python scripts/sweep_predictions.py --c 0.3 0.5 0.8 1.0 --kappa 0 0.4 --csv sweep.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from conic_heat.coefficients import b0_tip, bhalf_tip  # noqa: E402

SWEEP_COLUMNS = [
    "c",
    "kappa",
    "b0_sin",
    "b0_tan",
    "bhalf_published",
    "bhalf_continued",
    "bhalf_gap",
]


def sweep(c_values: list[float], kappa_values: list[float], d: int = 2) -> list[dict[str, float]]:
    rows: list[dict[str, float]] = []
    for c in c_values:
        for kappa in kappa_values:
            published = bhalf_tip(c, kappa, "published", d=d)
            continued = bhalf_tip(c, kappa, "continued", d=d)
            rows.append(
                {
                    "c": c,
                    "kappa": kappa,
                    "b0_sin": b0_tip(c, "sin"),
                    "b0_tan": b0_tip(c, "tan"),
                    "bhalf_published": published,
                    "bhalf_continued": continued,
                    "bhalf_gap": published - continued,
                }
            )
    return rows


def format_table(rows: list[dict[str, float]]) -> str:
    shown = [{hdr: f"{row[hdr]:.10g}" for hdr in SWEEP_COLUMNS} for row in rows]
    col_widths = {
        hdr: max([len(hdr), *(len(row[hdr]) for row in shown)]) for hdr in SWEEP_COLUMNS
    }
    line = " | ".join(hdr.ljust(col_widths[hdr]) for hdr in SWEEP_COLUMNS)
    parts = [line, "-+-".join("-" * col_widths[hdr] for hdr in SWEEP_COLUMNS)]
    for row in shown:
        parts.append(" | ".join(row[hdr].ljust(col_widths[hdr]) for hdr in SWEEP_COLUMNS))
    return "\n".join(parts)


def write_csv(rows: list[dict[str, float]], path: Path) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({hdr: f"{row[hdr]:.17g}" for hdr in SWEEP_COLUMNS})


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="Sweep predicted tip coefficients over (c, kappa)."
    )
    parser.add_argument(
        "--c",
        type=float,
        nargs="+",
        default=[0.25, 0.5, 0.6, 0.8, 1.0],
        help="Cone slopes f'(0) in (0, 1]",
    )
    parser.add_argument(
        "--kappa",
        type=float,
        nargs="+",
        default=[0.0, 0.4, 1.0],
        help="Tip curvatures f''(0)",
    )
    parser.add_argument("--d", type=int, default=2, help="Resolvent power used by the chain")
    parser.add_argument("--csv", type=Path, help="Optional path to write CSV results")
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    rows = sweep(args.c, args.kappa, args.d)
    print(format_table(rows))
    if args.csv:
        write_csv(rows, args.csv)


if __name__ == "__main__":
    main()

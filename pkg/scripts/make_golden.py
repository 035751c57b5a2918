"""Regenerate the pinned tangent dimensions and series coefficients under tests/golden/.

Run once after a deliberate change to the tangent-space solver; the test
suite compares against these files byte for byte.
"""

import argparse
from pathlib import Path

from motivic_dt.hilbert import bbs_series, enumerate_plane_partitions, tangent_character

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def tangent_lines(max_n: int) -> str:
    lines = []
    for n in range(max_n + 1):
        for P in enumerate_plane_partitions(n):
            lines.append(f"{n}\t{P.label()}\t{tangent_character(P).dimension}")
    return "\n".join(lines) + "\n"


def series_lines(order: int) -> str:
    return "\n".join(f"T^{k}: {c}" for k, c in enumerate(bbs_series(order))) + "\n"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--order", type=int, default=8)
    args = ap.parse_args()
    GOLDEN.mkdir(exist_ok=True)
    (GOLDEN / "tangent_dims.txt").write_text(tangent_lines(args.max_n))
    (GOLDEN / "bbs_series.txt").write_text(series_lines(args.order))


if __name__ == "__main__":
    main()

"""Compare the BBS product with the fixed-point sum for several one-parameter subgroups.

Writes one JSON report per weight vector to results/ and prints a summary
table.  Nothing here asserts that the two series agree.
"""

import argparse
import json
from pathlib import Path

from motivic_dt.hilbert import compare

WEIGHTS = [(1, 1, 1), (1, 10, 100), (1, 2, 4), (1, 3, 9), (1, 1, -2), (2, 3, -5), (1, -10, 100)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--order", type=int, default=4)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "results")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    args.out.mkdir(exist_ok=True)
    print("weights\tstatus\tequal_through\teuler_equal\tbehrend_agree")
    for w in WEIGHTS:
        report = compare(args.order, *w, workers=args.jobs)
        doc = report.to_dict()
        name = "compare_order{}_{}.json".format(args.order, "_".join(map(str, w)))
        (args.out / name).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        equal_through = -1
        for r in report.rows:
            if not r.equal:
                break
            equal_through = r.n
        agree = sum(r.behrend_agree for r in report.rows)
        total = sum(r.partitions for r in report.rows)
        print(f"{','.join(map(str, w))}\t{report.status}\t{equal_through}\t"
              f"{all(r.euler_equal for r in report.rows)}\t{agree}/{total}")


if __name__ == "__main__":
    main()

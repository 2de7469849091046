"""Run every verification statement at full range and write JSON reports.

    python scripts/run_all_verifications.py --out reports/ --jobs 4
"""

import argparse
import sys
from pathlib import Path

from stirling2adic.verify import verify_all


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="reports")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--i-max", type=int, default=100_000)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    reports = verify_all(i_max=args.i_max, jobs=args.jobs)
    for rep in reports:
        (out / f"report-{rep.statement_id}.json").write_text(rep.to_json())
        print(f"{rep.summary()}  [{rep.elapsed:.2f} s]")
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())

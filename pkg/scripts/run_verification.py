#!/usr/bin/env python3
"""Run every verification sweep and write TSV and JSON reports to a directory.

    python scripts/run_verification.py --out reports/
"""

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from dyckpaint.verify import (
    explore_p3,
    verify_multiplicativity,
    verify_strategies,
    verify_theorem1,
    verify_theorem2,
)


@dataclass
class Budgets:
    thm2_n_max: int = 3
    thm2_f_max: int = 4
    thm1_n_max: int = 2
    thm1_f_max: int = 3
    duel_n_max: int = 3
    duel_f_max: int = 3
    p3_f_max: int = 3


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="reports")
    ap.add_argument("--skip-mult", action="store_true", help="skip the slowest sweep")
    args = ap.parse_args()
    b = Budgets()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    sweeps = [
        ("thm2", lambda: verify_theorem2(b.thm2_n_max, b.thm2_f_max)),
        ("thm1", lambda: verify_theorem1(b.thm1_n_max, b.thm1_f_max)),
        ("duel", lambda: verify_strategies(b.duel_n_max, b.duel_f_max)),
        ("p3", lambda: explore_p3(b.p3_f_max)),
    ]
    if not args.skip_mult:
        sweeps.append(("mult", verify_multiplicativity))

    failed = False
    for name, run in sweeps:
        t0 = time.perf_counter()
        report = run()
        dt = time.perf_counter() - t0
        (out / f"{name}.tsv").write_text(report.to_tsv())
        (out / f"{name}.json").write_text(report.to_json())
        s = report.summary()
        print(f"{name:5s} rows={s['rows']:4d} pass={s['pass']:4d} fail={s['fail']} cap={s['cap']}  {dt:6.2f}s")
        failed |= not report.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

"""Run every verification suite and print a one-line summary per suite.

    python3 scripts/run_all.py --digits 40
"""
import argparse
import time
from collections import Counter

from bernsum.cli import SUITES, RunConfig, run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, default=30)
    args = ap.parse_args()
    cfg = RunConfig(digits=args.digits)
    worst = 0
    for name in SUITES:
        t0 = time.perf_counter()
        status, reports = run(name, cfg)
        counts = Counter(r.status for r in reports)
        worst = max(worst, status)
        summary = " ".join(f"{k}={v}" for k, v in sorted(counts.items()))
        print(f"{name:<13} exit={status} {summary:<36} {time.perf_counter() - t0:6.2f}s")
    raise SystemExit(worst)


if __name__ == "__main__":
    main()

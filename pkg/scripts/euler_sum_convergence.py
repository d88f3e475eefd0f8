"""Show how the direct Euler sum converges with working precision.

For each s the direct evaluation (head sum plus asymptotic tail) is
compared with the zeta closed form at several precisions.
"""
import argparse

import mpmath as mp

from bernsum.numerics import EvalConfig, euler_sum_closed, euler_sum_direct


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    ap.add_argument("--digits", type=int, nargs="+", default=[15, 30, 45, 60])
    args = ap.parse_args()
    print(f"{'s':>3}  " + "  ".join(f"{d:>10}d" for d in args.digits))
    for s in args.s:
        errs = []
        for d in args.digits:
            cfg = EvalConfig(target_digits=d)
            with mp.workprec(cfg.prec_bits + 20):
                errs.append(abs(euler_sum_direct(s, cfg) - euler_sum_closed(s, cfg)))
        print(f"{s:>3}  " + "  ".join(f"{mp.nstr(e, 3):>11}" for e in errs))


if __name__ == "__main__":
    main()

"""Tabulate the Lemma 2 contour integral against (-1)^n h(-n+1)/(n-1)!.

The discrepancy column is informational; it should sit at the
quadrature noise floor for every n.
"""
import argparse

from bernsum.numerics import EvalConfig
from bernsum.quadrature import HankelContour, lemma2_value


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=6)
    ap.add_argument("--digits", type=int, default=25)
    ap.add_argument("--radius", type=float, default=3.0)
    args = ap.parse_args()
    cfg = EvalConfig(target_digits=args.digits)
    contour = HankelContour(radius=args.radius)
    print(f"{'n':>3}  {'quadrature':>40}  {'target':>34}  discrepancy")
    for n in range(1, args.n_max + 1):
        r = lemma2_value(n, contour, cfg)
        print(f"{n:>3}  {r.lhs:>40}  {r.rhs:>34}  {r.abs_error}")


if __name__ == "__main__":
    main()

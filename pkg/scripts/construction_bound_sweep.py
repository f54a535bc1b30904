"""Sweep mu_max of the constructed E_{k,1} against B(n, d) over a d-range.

    python scripts/construction_bound_sweep.py --n 2 3 4 --extra 0 12
"""
import argparse

from syzslope.constructions import a_interval, lemma1_min_d
from syzslope.pipelines import verify_lemma1
from syzslope.rational import fmt


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--extra", type=int, nargs=2, default=[0, 12], metavar=("LO", "HI"))
    ap.add_argument("--both-ends", action="store_true", help="also try A at the top of its interval")
    args = ap.parse_args()

    print(f"{'n':>2} {'d':>5} {'A':>10} {'mu_max':>10} {'B':>12} {'excess':>8} ok")
    for n in args.n:
        for e in range(args.extra[0], args.extra[1] + 1):
            d = lemma1_min_d(n) + e
            lo, hi = a_interval(n, d)
            for A in ([lo, hi] if args.both_ends and lo != hi else [lo]):
                r = verify_lemma1(n, d, A)
                print(f"{n:>2} {d:>5} {fmt(A):>10} {fmt(r.mu_max):>10} {fmt(r.bound):>12} {fmt(r.excess):>8} {r.passed}")


if __name__ == "__main__":
    main()

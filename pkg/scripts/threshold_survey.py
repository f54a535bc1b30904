"""Which covered E_{a,b} receive a finite threshold d0, and how large is it.

    python scripts/threshold_survey.py --n 2 3 4 --bmax 6
"""
import argparse
from collections import Counter

from syzslope.bundles import certify
from syzslope.constructions import k_of


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--bmax", type=int, default=6)
    ap.add_argument("--show", type=int, default=8, help="print this many certified cells per n")
    args = ap.parse_args()

    for n in args.n:
        status, shown = Counter(), 0
        for b in range(1, args.bmax + 1):
            for m in range(2, k_of(n) + 1):
                for j in range(b):
                    a = m * b - j
                    if a <= b:
                        continue
                    c = certify(a, b, n)
                    status[(c.route, str(c.d0_status))] += 1
                    if c.d0 is not None and shown < args.show:
                        shown += 1
                        print(f"n={n} E_({a},{b}) m={m} j={j} route={c.route} d0={c.d0} rederived={c.d0_rederived}")
        for (route, st), cnt in sorted(status.items()):
            print(f"n={n}  {route:<16} {st:<10} {cnt}")


if __name__ == "__main__":
    main()

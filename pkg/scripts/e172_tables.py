"""Per-rank tables for the 7- and 9-generator families on P^2 and the E_{17,2} comparisons.

    python scripts/e172_tables.py --d 30 60 120
"""
import argparse

from syzslope.pipelines import LISTED_E81_COEFFS, LISTED_E91_COEFFS, analyze_e172, listed_coeff
from syzslope.rational import fmt


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, nargs="+", default=[30, 60, 120])
    ap.add_argument("--oracle", action="store_true")
    args = ap.parse_args()

    for d in args.d:
        rep = analyze_e172(d, args.oracle)
        print(f"d={d}  mu(E_17,2)={fmt(rep.mu_e172)}")
        for name, prof, table in (("e81", rep.e81, LISTED_E81_COEFFS), ("e91", rep.e91, LISTED_E91_COEFFS)):
            print(f"  {name}: mu_max={fmt(prof.mu_max)}")
            for rp, v in prof.rank_table():
                c = listed_coeff(table, rp)
                print(f"    r'={rp}  value={fmt(v):>8}  value/d={fmt(v / d):>6}  listed={fmt(c):>6}  dev={fmt(abs(v - c * d))}")
        print("  extension bounds:", {k: fmt(v) for k, v in sorted(rep.extension_bounds.items())})
        for k, ok in rep.checks.items():
            print(f"  {'PASS' if ok else 'FAIL'} {k}")


if __name__ == "__main__":
    main()

"""Command line front end: ``syzslope <command> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import bundles, constructions as cons
from .atlas import AtlasJob, run_atlas
from .monomial import MonomialError, MonomialSet, from_json, parse_text, to_json_obj, to_text, to_text_lines
from .pipelines import analyze_e172, prop6_threshold, verify_lemma1
from .rational import approx, fmt, parse as parse_q
from .slope import HypothesisError, ResourceCapError, mu_max, semistable_verdict

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_RESOURCE = 0, 1, 2, 3, 4

log = logging.getLogger("syzslope")


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, ...]:
    """'3', '2..5' or '1,4,9' (items may themselves be ranges)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(dict.fromkeys(out))


def _q(x: Fraction, args) -> str:
    return f"{fmt(x)} (~{approx(x)})" if args.approx else fmt(x)


def _emit(args, obj: dict, human: str) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(human)


def load_set(args) -> MonomialSet:
    if args.inline:
        text = args.inline
    elif args.file and args.file != "-":
        text = Path(args.file).read_text()
    else:
        text = sys.stdin.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse_text(text, args.n)


# --- commands ----------------------------------------------------------------

def cmd_k(args) -> int:
    rows = [(n, cons.k_of(n)) for n in parse_range(args.n)]
    _emit(args, {"k": {str(n): k for n, k in rows}}, "\n".join(f"n={n}  k={k}" for n, k in rows))
    return EXIT_OK


def cmd_bound(args) -> int:
    n, d = args.n, args.d
    B = cons.bound_B(n, d)
    iv = cons.a_interval(n, d)
    obj = {
        "n": n,
        "d": d,
        "B": fmt(B),
        "A_low": fmt(iv[0]) if iv else None,
        "A_high": fmt(iv[1]) if iv else None,
        "interval_empty": iv is None,
        "d_min": cons.lemma1_min_d(n),
    }
    human = f"B({n},{d}) = {_q(B, args)}\n" + (
        f"A in [{_q(iv[0], args)}, {_q(iv[1], args)}]" if iv else f"A-interval empty (need d >= {cons.lemma1_min_d(n)})"
    )
    _emit(args, obj, human)
    return EXIT_OK


def cmd_mumax(args) -> int:
    s = load_set(args)
    prof = mu_max(s, oracle=args.oracle, cap=args.cap)
    obj = prof.to_json_obj()
    r, g = prof.mu_max_witness
    lines = [
        f"{len(s)} monomials, n={s.n}, d={s.common_degree()}",
        f"mu_max = {_q(prof.mu_max, args)}  (|J| = {r}, gcd = {to_text(g)})",
        "r'  value",
    ]
    lines += [f"{rp:<3} {_q(v, args)}" for rp, v in prof.rank_table()]
    if args.verdict:
        v = semistable_verdict(s, prof)
        obj["verdict"] = {
            "mu": fmt(v.mu),
            "semistable": v.semistable,
            "stable_strictly": v.stable_strictly,
        }
        lines.append(f"mu = {_q(v.mu, args)}; semistable: {v.semistable}; stable: {v.stable_strictly}")
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def build_construction(args) -> MonomialSet:
    kind = args.kind
    if kind == "pure":
        return cons.pure_powers(args.n, args.d)
    if kind == "e81":
        return cons.e81_generators(args.d)
    if kind == "e91":
        return cons.e91_generators(args.d)
    if args.A is not None:
        params = cons.ConstructionParams(args.n, args.d, parse_q(args.A))
    else:
        params = cons.ConstructionParams.default(args.n, args.d)
    if args.m is not None:
        return cons.construction1_dropped(params, args.m)
    return cons.construction1(params)


def cmd_construct(args) -> int:
    if args.kind in ("c1", "pure") and args.n is None:
        raise UsageError(f"{args.kind} needs --n")
    try:
        s = build_construction(args)
    except (cons.ConstructionError, MonomialError) as exc:
        raise UsageError(str(exc)) from exc
    if args.out:
        Path(args.out + ".json").write_text(json.dumps(to_json_obj(s)) + "\n")
        Path(args.out + ".txt").write_text(to_text_lines(s))
        print(f"wrote {args.out}.json and {args.out}.txt ({len(s)} monomials)")
    elif args.json:
        print(json.dumps(to_json_obj(s)))
    else:
        # construction order, not canonical order
        print("\n".join(to_text(m) for m in s))
    return EXIT_OK


def cmd_certify(args) -> int:
    try:
        cert = bundles.certify(args.a, args.b, args.n, args.d)
    except bundles.BundleError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        print(cert.to_json())
        return EXIT_OK
    dec = cert.decomposition
    lines = [f"E_({args.a},{args.b}) on P^{args.n}: slope {fmt(cert.mu_coeff)} d"]
    if not cert.covered:
        lines.append("NOT COVERED")
    else:
        lines.append(f"covered: m={dec.m}, j={dec.j}" + (f", s={dec.s}, l={dec.l}" if dec.j else ""))
        lines.append(f"route: {cert.route}")
        if cert.d0 is not None:
            lines.append(f"semistable for all d >= {cert.d0} ({cert.d0_status})")
        else:
            lines.append(f"no certified threshold ({cert.d0_status})")
        if args.d:
            lines.append(f"at d={args.d}: {'holds' if cert.holds_at(args.d) else 'not certified'}")
    lines += [f"warning: {w}" for w in cert.warnings]
    print("\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.target == "lemma1":
        if args.n is None or args.d is None:
            raise UsageError("verify lemma1 needs --n and --d")
        try:
            rep = verify_lemma1(args.n, args.d, parse_q(args.A) if args.A else None, args.oracle)
        except ValueError as exc:
            print(f"refused: {exc}", file=sys.stderr)
            return EXIT_HYPOTHESIS
        human = (
            f"n={rep.n} d={rep.d} A={fmt(rep.A)}: mu_max = {_q(rep.mu_max, args)}, "
            f"B = {_q(rep.bound, args)} -> {'PASS' if rep.passed else 'FAIL'}"
        )
        _emit(args, rep.to_json_obj(), human)
        return EXIT_OK if rep.passed else EXIT_FAIL

    if args.d is None or args.d < 3:
        print("refused: verify prop6 needs --d >= 3", file=sys.stderr)
        return EXIT_HYPOTHESIS
    rep = analyze_e172(args.d, args.oracle)
    obj = rep.to_json_obj()
    if args.thresholds:
        obj["d0"] = {k: prop6_threshold(k, args.dmax) for k in rep.checks}
    lines = [f"mu(E_17,2) = {_q(rep.mu_e172, args)}"]
    for name, prof in (("E_8,1 list", rep.e81), ("E_9,1 list", rep.e91)):
        lines.append(f"{name} ({prof.size} monomials): mu_max = {_q(prof.mu_max, args)}")
        lines += [f"  r'={rp}: {_q(v, args)}" for rp, v in prof.rank_table()]
    for name, ok in rep.checks.items():
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}")
    if args.thresholds:
        lines += [f"d0[{k}] = {v}" for k, v in obj["d0"].items()]
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_atlas(args) -> int:
    job = AtlasJob(
        n_values=parse_range(args.n),
        b_values=parse_range(args.b),
        d_values=parse_range(args.d),
        a_values=parse_range(args.a) if args.a else None,
    )
    summary = run_atlas(job, args.out, args.cache, args.threads)
    _emit(args, summary, " ".join(f"{k}={v}" for k, v in summary.items()))
    return EXIT_OK


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--oracle", action="store_true", help="force the brute-force evaluator")
    common.add_argument("--approx", action="store_true", help="append decimal approximations")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--cache", default=None, help="atlas result cache file")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="syzslope", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("k", parents=[common], help="k(n)")
    sp.add_argument("--n", required=True, help="n, range a..b or list")
    sp.set_defaults(func=cmd_k)

    sp = sub.add_parser("bound", parents=[common], help="B(n,d) and the A-interval")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("mumax", parents=[common], help="maximal slope of a monomial syzygy bundle")
    sp.add_argument("file", nargs="?", help="JSON or text file ('-' for stdin)")
    sp.add_argument("--inline", help="monomial set given on the command line")
    sp.add_argument("--n", type=int, help="dimension for text input without header")
    sp.add_argument("--verdict", action="store_true", help="also decide semistability")
    sp.add_argument("--cap", type=int, default=2_000_000, help="closure size cap")
    sp.set_defaults(func=cmd_mumax)

    sp = sub.add_parser("construct", parents=[common], help="generate a monomial family")
    sp.add_argument("kind", choices=["c1", "e81", "e91", "pure"])
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--A", help="construction parameter p/q (default: A_low)")
    sp.add_argument("--m", type=int, help="keep only the first m generators")
    sp.add_argument("--out", help="output prefix; writes PREFIX.json and PREFIX.txt")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("certify", parents=[common], help="certificate for E_{a,b}")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--d", type=int)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("verify", parents=[common], help="re-check the construction bound or E_{17,2}")
    sp.add_argument("target", choices=["lemma1", "prop6"])
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--A")
    sp.add_argument("--thresholds", action="store_true", help="prop6: scan for d0 of each check")
    sp.add_argument("--dmax", type=int, default=240)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("atlas", parents=[common], help="certify a parameter grid")
    sp.add_argument("--n", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--a", help="a values (default: every covered a)")
    sp.add_argument("--d", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_atlas)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, MonomialError, ValueError) as exc:
        if isinstance(exc, HypothesisError):
            print(f"hypothesis violated: {exc}", file=sys.stderr)
            return EXIT_HYPOTHESIS
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

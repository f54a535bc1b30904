"""Maximal slope of monomial syzygy bundles.

For generators f_i (i in I) of degrees d_i the maximal slope is

    mu_max = max over J subset I, |J| >= 2 of (d_J - sum_{i in J} d_i) / (|J| - 1)

with d_J the degree of gcd(f_i : i in J).  Two independent evaluators are
provided: ``mu_max_bruteforce`` walks every subset (vectorised with numpy),
``mu_max_closure`` only visits the gcd-closure of the generators.  Both fill
the same ``SlopeProfile`` and pick witnesses with the same canonical rule
(lexicographically largest optimal gcd), so their outputs compare equal.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .monomial import Monomial, MonomialSet, divides, gcd_all, is_basepoint_free
from .rational import fmt

BRUTEFORCE_CAP = 24
DEFAULT_CLOSURE_CAP = 2_000_000


class ResourceCapError(RuntimeError):
    """Input too large for the requested algorithm."""


class HypothesisError(ValueError):
    """Input violates a hypothesis of the slope formula (e.g. has base points)."""


@dataclass(frozen=True)
class SizeRow:
    best_dJ: int
    value: Fraction
    witness_gcd: Monomial


@dataclass
class SlopeProfile:
    n: int
    d: int | None
    per_size: dict[int, SizeRow]
    mu_max: Fraction = field(init=False)
    mu_max_witness: tuple[int, Monomial] = field(init=False)

    def __post_init__(self):
        # ties go to the smallest subset size
        best_r = min(self.per_size, key=lambda r: (-self.per_size[r].value, r))
        self.mu_max = self.per_size[best_r].value
        self.mu_max_witness = (best_r, self.per_size[best_r].witness_gcd)

    @property
    def size(self) -> int:
        return max(self.per_size)

    def rank_table(self) -> list[tuple[int, Fraction]]:
        """Rows (r', value) with subsheaf rank r' = r - 1."""
        return [(r - 1, self.per_size[r].value) for r in sorted(self.per_size)]

    def max_proper(self) -> Fraction:
        """Largest value over subsets J strictly smaller than the whole set."""
        vals = [row.value for r, row in self.per_size.items() if r < self.size]
        if not vals:
            raise ValueError("no proper subsets of size >= 2")
        return max(vals)

    def to_json_obj(self) -> dict:
        r, g = self.mu_max_witness
        return {
            "n": self.n,
            "d": self.d,
            "mu_max": fmt(self.mu_max),
            "mu_max_witness": {"r": r, "gcd": list(g.exponents)},
            "per_size": {
                str(r): {
                    "best_dJ": row.best_dJ,
                    "value": fmt(row.value),
                    "witness_gcd": list(row.witness_gcd.exponents),
                }
                for r, row in sorted(self.per_size.items())
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    def __eq__(self, other):
        if not isinstance(other, SlopeProfile):
            return NotImplemented
        return (self.n, self.d, self.per_size) == (other.n, other.d, other.per_size)


def _check_input(s: MonomialSet) -> None:
    if len(s) < 2:
        raise ValueError("need at least 2 monomials")


def _make_profile(s: MonomialSet, best: dict[int, tuple[int, tuple[int, ...]]]) -> SlopeProfile:
    """``best[r] = (numerator, witness exponents)``; numerator = d_J - sum d_i."""
    per_size = {}
    for r, (num, wit) in best.items():
        w = Monomial(tuple(int(e) for e in wit))
        per_size[r] = SizeRow(w.degree, Fraction(num, r - 1), w)
    return SlopeProfile(s.n, s.common_degree(), per_size)


# --- brute force ----------------------------------------------------------

def _subset_tables(E: np.ndarray, degs: np.ndarray, inf: int):
    """gcd rows, popcounts and degree sums for all subsets of the rows of E."""
    k, v = E.shape
    size = 1 << k
    g = np.empty((size, v), dtype=np.int64)
    pc = np.zeros(size, dtype=np.int64)
    sd = np.zeros(size, dtype=np.int64)
    g[0] = inf
    for i in range(k):
        lo, hi = 1 << i, 1 << (i + 1)
        g[lo:hi] = np.minimum(g[:lo], E[i])
        pc[lo:hi] = pc[:lo] + 1
        sd[lo:hi] = sd[:lo] + degs[i]
    return g, pc, sd


def mu_max_bruteforce(s: MonomialSet, cap: int = BRUTEFORCE_CAP) -> SlopeProfile:
    """Exhaustive evaluation over all 2^|I| subsets (the reference oracle)."""
    _check_input(s)
    N = len(s)
    if N > cap:
        raise ResourceCapError(f"{N} monomials exceed the brute-force cap of {cap}")
    E = np.array([m.exponents for m in s], dtype=np.int64)
    degs = E.sum(axis=1)
    inf = int(E.max()) + 1
    L = N // 2
    g_lo, pc_lo, sd_lo = _subset_tables(E[:L], degs[:L], inf)
    g_hi, pc_hi, sd_hi = _subset_tables(E[L:], degs[L:], inf)

    def chunks():
        for h in range(len(g_hi)):
            r = pc_lo + pc_hi[h]
            ok = r >= 2
            if not ok.any():
                continue
            g = np.minimum(g_lo[ok], g_hi[h])
            num = g.sum(axis=1) - (sd_lo[ok] + sd_hi[h])
            yield r[ok], num, g

    best_num = np.full(N + 1, np.iinfo(np.int64).min, dtype=np.int64)
    for r, num, _ in chunks():
        np.maximum.at(best_num, r, num)

    witness: dict[int, tuple[int, ...]] = {}
    for r, num, g in chunks():
        hit = num == best_num[r]
        if not hit.any():
            continue
        rows = np.unique(np.column_stack([r[hit], g[hit]]), axis=0)
        for row in rows:
            rr, wit = int(row[0]), tuple(int(e) for e in row[1:])
            if rr not in witness or wit > witness[rr]:
                witness[rr] = wit
    best = {r: (int(best_num[r]), witness[r]) for r in range(2, N + 1)}
    return _make_profile(s, best)


# --- gcd closure ----------------------------------------------------------

def gcd_closure(s: MonomialSet, cap: int = DEFAULT_CLOSURE_CAP) -> set[tuple[int, ...]]:
    """All gcds of nonempty subsets, as exponent tuples (closure under min)."""
    gens = [m.exponents for m in s]
    closure = set(gens)
    frontier = list(closure)
    while frontier:
        new = []
        for c in frontier:
            for g in gens:
                m = tuple(map(min, c, g))
                if m not in closure:
                    closure.add(m)
                    new.append(m)
                    if len(closure) > cap:
                        raise ResourceCapError(
                            f"gcd closure exceeds {cap} elements; raise the cap or use the oracle"
                        )
        frontier = new
    return closure


def _refined_elements(s: MonomialSet, cap: int) -> dict[tuple[int, ...], list[int]]:
    """Map each refined closure element g = gcd(mult(g)) to its multiples' indices."""
    gens = list(s)
    refined: dict[tuple[int, ...], list[int]] = {}
    for c in gcd_closure(s, cap):
        cm = Monomial(c)
        mult = [i for i, m in enumerate(gens) if divides(cm, m)]
        g = gcd_all(gens[i] for i in mult).exponents
        refined.setdefault(g, mult)
    return refined


def mu_max_closure(s: MonomialSet, cap: int = DEFAULT_CLOSURE_CAP) -> SlopeProfile:
    """Evaluate the slope formula over the gcd-closure instead of all subsets.

    Uniform degree d: the best d_J at size r is the largest degree of a
    refined closure element with at least r multiples.  Mixed degrees: for
    each element and each r, only the r lowest-degree multiples can be best.
    """
    _check_input(s)
    N = len(s)
    refined = _refined_elements(s, cap)
    best: dict[int, tuple[int, tuple[int, ...]]] = {}

    def offer(r, num, wit):
        cur = best.get(r)
        if cur is None or (num, wit) > cur:
            best[r] = (num, wit)

    d = s.common_degree()
    if d is not None:
        # deg(g) best among elements with exactly r_g multiples, then suffix max
        by_count: dict[int, tuple[int, tuple[int, ...]]] = {}
        for g, mult in refined.items():
            key = (sum(g), g)
            rg = len(mult)
            if rg not in by_count or key > by_count[rg]:
                by_count[rg] = key
        run = None
        for r in range(N, 1, -1):
            if r in by_count and (run is None or by_count[r] > run):
                run = by_count[r]
            best[r] = (run[0] - r * d, run[1])
    else:
        gens = list(s)
        for mult in refined.values():
            ordered = sorted(mult, key=lambda i: (gens[i].degree, i))
            for r in range(2, len(ordered) + 1):
                chosen = [gens[i] for i in ordered[:r]]
                h = gcd_all(chosen)
                offer(r, h.degree - sum(m.degree for m in chosen), h.exponents)
    return _make_profile(s, best)


def mu_max(s: MonomialSet, oracle: bool = False, cap: int = DEFAULT_CLOSURE_CAP) -> SlopeProfile:
    return mu_max_bruteforce(s) if oracle else mu_max_closure(s, cap)


def per_rank_table(s: MonomialSet, oracle: bool = False) -> list[tuple[int, Fraction]]:
    return mu_max(s, oracle).rank_table()


@dataclass(frozen=True)
class Verdict:
    mu: Fraction
    mu_max: Fraction
    semistable: bool
    stable_strictly: bool


def semistable_verdict(s: MonomialSet, profile: SlopeProfile | None = None) -> Verdict:
    a = len(s)
    d = s.common_degree()
    if a < 2 or d is None:
        raise HypothesisError("verdict needs at least 2 monomials of one common degree")
    if not is_basepoint_free(s):
        raise HypothesisError("generators have a common zero; the slope formula does not apply")
    profile = profile or mu_max_closure(s)
    mu = Fraction(-a * d, a - 1)
    proper = [row.value for r, row in profile.per_size.items() if r < a]
    return Verdict(
        mu=mu,
        mu_max=profile.mu_max,
        semistable=profile.mu_max == mu,
        stable_strictly=all(v < mu for v in proper),
    )


def witness_subset(profile: SlopeProfile, s: MonomialSet, r: int) -> list[Monomial]:
    """r generators realising ``profile.per_size[r]``."""
    if r not in profile.per_size:
        raise ValueError(f"subset size {r} not in profile (2..{profile.size})")
    g = profile.per_size[r].witness_gcd
    mult = [m for m in s if divides(g, m)]
    if len(mult) < r:
        raise ValueError("profile does not belong to this monomial set")
    # lowest degrees first; stable on input order
    return sorted(mult, key=lambda m: m.degree)[:r]

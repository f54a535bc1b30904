"""End-to-end checks: the construction bound and the E_{17,2} extension on P^2."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bundles import slope_coeff
from .constructions import (
    ConstructionParams,
    a_interval,
    bound_B,
    construction1,
    e81_generators,
    e91_generators,
    lemma1_min_d,
)
from .rational import fmt
from .slope import SlopeProfile, mu_max


@dataclass
class Lemma1Report:
    n: int
    d: int
    A: Fraction
    size: int
    mu_max: Fraction
    bound: Fraction
    witness_r: int
    witness_gcd: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.mu_max <= self.bound

    @property
    def excess(self) -> Fraction:
        return self.mu_max - self.bound

    def to_json_obj(self) -> dict:
        return {
            "target": "lemma1",
            "n": self.n,
            "d": self.d,
            "A": fmt(self.A),
            "monomials": self.size,
            "mu_max": fmt(self.mu_max),
            "B": fmt(self.bound),
            "excess": fmt(self.excess),
            "witness": {"r": self.witness_r, "gcd": list(self.witness_gcd)},
            "pass": self.passed,
        }


def verify_lemma1(n: int, d: int, A: Fraction | None = None, oracle: bool = False) -> Lemma1Report:
    """mu_max of the constructed E_{k,1} against B(n, d), exactly.

    Raises ``ValueError`` when d is below the range where the A-interval is
    nonempty.
    """
    if a_interval(n, d) is None:
        raise ValueError(f"d = {d} is below the required d >= {lemma1_min_d(n)} for n = {n}")
    params = ConstructionParams.default(n, d) if A is None else ConstructionParams(n, d, A)
    s = construction1(params)
    prof = mu_max(s, oracle=oracle)
    r, g = prof.mu_max_witness
    return Lemma1Report(n, d, params.A, len(s), prof.mu_max, bound_B(n, d), r, g.exponents)


# --- E_{17,2} ------------------------------------------------------------------

LISTED_E91_COEFFS = {1: Fraction(-4, 3), 2: Fraction(-7, 6), 3: Fraction(-11, 9), 4: Fraction(-7, 6)}
LISTED_E81_COEFFS = {1: Fraction(-4, 3), 2: Fraction(-4, 3), 3: Fraction(-11, 9)}


def listed_coeff(table: dict[int, Fraction], r_prime: int) -> Fraction:
    """Leading coefficient of the listed per-rank row; -(r'+1)/r' past the table."""
    return table.get(r_prime, Fraction(-(r_prime + 1), r_prime))


def table_deviation(prof: SlopeProfile, table: dict[int, Fraction], d: int) -> dict[int, Fraction]:
    return {rp: abs(v - listed_coeff(table, rp) * d) for rp, v in prof.rank_table()}


@dataclass
class Prop6Report:
    d: int
    e81: SlopeProfile
    e91: SlopeProfile
    mu_e172: Fraction
    extension_bounds: dict[int, Fraction] = field(default_factory=dict)

    @property
    def checks(self) -> dict[str, bool]:
        mu = self.mu_e172
        return {
            "e81_mu_max_below": self.e81.mu_max < mu,
            "e91_mu_max_below": self.e91.mu_max < mu,
            "e91_proper_below": self.e91.max_proper() < mu,
            "extension_ranks_at_most": all(v <= mu for v in self.extension_bounds.values()),
            "extension_ranks_below": all(v < mu for v in self.extension_bounds.values()),
        }

    # comparisons the extension argument needs for semistability
    ARGUMENT_CHECKS = ("e81_mu_max_below", "e91_proper_below", "extension_ranks_at_most")

    @property
    def passed(self) -> bool:
        c = self.checks
        return all(c[k] for k in self.ARGUMENT_CHECKS)

    def to_json_obj(self) -> dict:
        def rows(p: SlopeProfile):
            return [[rp, fmt(v)] for rp, v in p.rank_table()]

        return {
            "target": "prop6",
            "d": self.d,
            "mu_E17_2": fmt(self.mu_e172),
            "e81": {"size": self.e81.size, "mu_max": fmt(self.e81.mu_max), "table": rows(self.e81)},
            "e91": {
                "size": self.e91.size,
                "mu_max": fmt(self.e91.mu_max),
                "max_proper": fmt(self.e91.max_proper()),
                "table": rows(self.e91),
            },
            "extension_bounds": {str(k): fmt(v) for k, v in sorted(self.extension_bounds.items())},
            "checks": self.checks,
            "pass": self.passed,
        }


def analyze_e172(d: int, oracle: bool = False) -> Prop6Report:
    p81 = mu_max(e81_generators(d), oracle=oracle)
    p91 = mu_max(e91_generators(d), oracle=oracle)
    mu = slope_coeff(17, 2) * d
    rank91 = p91.size - 1
    deg91 = -p91.size * d
    ext = {}
    # W surjecting onto a full-rank subsheaf of E_{9,1}, kernel W2 of rank s in E_{8,1}
    for s, v in p81.rank_table():
        ext[rank91 + s] = Fraction(v * s + deg91, rank91 + s)
    return Prop6Report(d, p81, p91, mu, ext)


def prop6_threshold(check: str, d_max: int = 240, oracle: bool = False) -> int | None:
    """Least d0 >= 3 with ``check`` holding for every d in [d0, d_max]."""
    d0 = None
    for d in range(d_max, 2, -1):
        if not analyze_e172(d, oracle).checks[check]:
            break
        d0 = d
    return d0

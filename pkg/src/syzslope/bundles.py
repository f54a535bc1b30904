"""Numerical classes of kernel bundles E_{a,b} and their stability certificates.

E_{a,b} is the kernel of a surjection O(-d)^a -> O^b on P^n: rank a - b,
degree -a*d.  Everything here is slope bookkeeping in exact rationals; no
sheaf is ever constructed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .constructions import bound_B, bound_B_linear, k_of, p_n_of_d
from .monomial import Monomial, MonomialSet
from .rational import fmt


class BundleError(ValueError):
    pass


@dataclass(frozen=True)
class KernelBundleClass:
    n: int
    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.b < 1 or self.a <= self.b:
            raise BundleError(f"need a > b >= 1, got a={self.a}, b={self.b}")
        if self.d < 1:
            raise BundleError("d must be positive")

    @property
    def rank(self) -> int:
        return self.a - self.b

    @property
    def degree(self) -> int:
        return -self.a * self.d

    @property
    def slope(self) -> Fraction:
        return Fraction(self.degree, self.rank)


def slope(bundle: KernelBundleClass) -> Fraction:
    return bundle.slope


def slope_coeff(a: int, b: int) -> Fraction:
    """mu(E_{a,b}) / d."""
    if a <= b:
        raise BundleError(f"need a > b, got a={a}, b={b}")
    return Fraction(-a, a - b)


# --- matrices for the extension construction --------------------------------

class _Generic:
    """Placeholder for an unspecified general form of degree d."""

    def __repr__(self):
        return "GENERIC"


GENERIC = _Generic()
Entry = Union[Monomial, _Generic, None]  # None is the zero entry


@dataclass(frozen=True)
class MonomialMatrix:
    """b x a matrix of degree-d entries representing O(-d)^a -> O^b."""

    n: int
    d: int
    entries: tuple[tuple[Entry, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows or len({len(r) for r in rows}) != 1:
            raise BundleError("matrix must be non-empty and rectangular")
        for r in rows:
            for e in r:
                if isinstance(e, Monomial):
                    if e.n != self.n:
                        raise BundleError("entry lives in the wrong number of variables")
                    if e.degree != self.d:
                        raise BundleError(f"entry {e} has degree {e.degree}, expected {self.d}")
                elif e is not None and e is not GENERIC:
                    raise BundleError(f"bad entry {e!r}")

    @classmethod
    def syzygy_row(cls, s: MonomialSet) -> "MonomialMatrix":
        d = s.common_degree()
        if d is None:
            raise BundleError("syzygy row needs a uniform-degree set")
        return cls(s.n, d, (tuple(s.monomials),))

    @property
    def b(self) -> int:
        return len(self.entries)

    @property
    def a(self) -> int:
        return len(self.entries[0])

    def bundle(self) -> KernelBundleClass:
        return KernelBundleClass(self.n, self.a, self.b, self.d)


def extend(m1: MonomialMatrix, m2: MonomialMatrix, filler=None) -> MonomialMatrix:
    """Block matrix [[M1, N], [0, M2]] giving 0 -> E1 -> E -> E2 -> 0.

    ``filler`` is the b1 x a2 block N; general forms by default.
    """
    if (m1.n, m1.d) != (m2.n, m2.d):
        raise BundleError("both blocks need the same n and d")
    if filler is None:
        filler = [[GENERIC] * m2.a for _ in range(m1.b)]
    filler = [tuple(r) for r in filler]
    if len(filler) != m1.b or any(len(r) != m2.a for r in filler):
        raise BundleError(f"filler must be {m1.b} x {m2.a}")
    top = [r1 + rn for r1, rn in zip(m1.entries, filler)]
    bottom = [(None,) * m1.a + r2 for r2 in m2.entries]
    out = MonomialMatrix(m1.n, m1.d, tuple(top + bottom))
    e, e1, e2 = out.bundle(), m1.bundle(), m2.bundle()
    assert e.rank == e1.rank + e2.rank
    assert e.degree == e1.degree + e2.degree
    return out


def extend_classes(e1: KernelBundleClass, e2: KernelBundleClass) -> KernelBundleClass:
    if (e1.n, e1.d) != (e2.n, e2.d):
        raise BundleError("both pieces need the same n and d")
    return KernelBundleClass(e1.n, e1.a + e2.a, e1.b + e2.b, e1.d)


def slope_ledger(mu2: Fraction, r2: int, mu1: Fraction, r1: int) -> Fraction:
    """Slope of W from 0 -> W2 -> W -> W1 -> 0 (degrees add, ranks add)."""
    if r1 < 0 or r2 < 0:
        raise BundleError("ranks must be non-negative")
    if r1 + r2 == 0:
        raise BundleError("both ranks are zero")
    return Fraction(Fraction(mu2) * r2 + Fraction(mu1) * r1, r1 + r2)


# --- coverage decomposition -------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    m: int
    j: int
    s: int | None = None
    l: int | None = None


def decompose(a: int, b: int, n: int) -> Decomposition | None:
    """Write a = m*b - j with 0 <= j < b; None when m falls outside [2, k(n)]."""
    if b < 1 or a <= b:
        raise BundleError(f"need a > b >= 1, got a={a}, b={b}")
    m = -(-a // b)
    j = m * b - a
    assert 0 <= j <= b - 1
    if not 2 <= m <= k_of(n):
        return None
    if j == 0:
        return Decomposition(m, 0)
    s, l = divmod(b, j)
    return Decomposition(m, j, s, l)


# --- exact thresholds ---------------------------------------------------------

@dataclass(frozen=True)
class Linear:
    """alpha * d + beta."""

    alpha: Fraction
    beta: Fraction

    def __call__(self, d) -> Fraction:
        return self.alpha * d + self.beta


ALL_D = "all d"
NO_D = "no d"


def min_d_linear(alpha, beta) -> int | str:
    """Smallest d >= 1 from which alpha*d + beta > 0 holds for good."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha < 0 or (alpha == 0 and beta <= 0):
        return NO_D
    if beta > 0:
        return ALL_D
    # alpha > 0, beta <= 0
    return int((-beta / alpha) // 1) + 1


def _q(n: int) -> int:
    return n * n + 5 * n + 2


def thm5_denominator(m: int, j: int, s: int, l: int) -> int:
    return j * ((m - 1) * s - 1) + l * (m - 1) - m * s + s + 2


def thm5_linear(n: int, m: int, j: int, s: int, l: int) -> Linear:
    """mu(E_{a,b}) - mu(W) as printed for the a = m*b - j step, b = s*j + l."""
    den = thm5_denominator(m, j, s, l)
    if den == 0:
        raise BundleError(f"zero denominator for (m,j,s,l)=({m},{j},{s},{l})")
    c = Fraction((-n - 1) * (n + 4), _q(n))
    b = l + s * j
    alpha = (Fraction(-m * ((j - 1) * s + l) + j - 1) - c) / den + Fraction(
        j - m * b, -j + m * b - l - s * j
    )
    beta = Fraction(4 * (-n - 1), _q(n) * den)
    return Linear(alpha, beta)


def thm5_margin(n: int, m: int, j: int, s: int, l: int, d) -> Fraction:
    if j < 1:
        raise BundleError("the margin is only defined for j >= 1")
    return thm5_linear(n, m, j, s, l)(d)


def quotient_rank_printed(m: int, j: int, s: int, l: int) -> int:
    return m * ((j - 1) * s + l) - (j - 1) * s - j - l + 1


def quotient_class(m: int, j: int, s: int, l: int) -> tuple[int, int]:
    """(a', b') of the quotient E_{m(s(j-1)+l)-(j-1), s(j-1)+l}."""
    b2 = s * (j - 1) + l
    return m * b2 - (j - 1), b2


def thm5_linear_rederived(n: int, m: int, j: int, s: int, l: int) -> Linear:
    """Same step with deg(W1) = deg(E_{a',b'}) = -a'd entering with its own sign."""
    a2, _ = quotient_class(m, j, s, l)
    den = thm5_denominator(m, j, s, l)
    cB, eB = bound_B_linear(n)
    b = l + s * j
    a = m * b - j
    alpha = slope_coeff(a, b) - (cB - a2) / den
    beta = -eB / den
    return Linear(alpha, beta)


def thm4_printed_threshold(n: int, b: int) -> tuple[Fraction | None, int]:
    """The printed d-threshold and the sign of its denominator."""
    num = 6 * b * n**3 + 10 * b * n**2 + 10 * b * n + 6 * b - 8 * n - 8
    den = b * n * n - 8 * b * n - b - 4
    sign = (den > 0) - (den < 0)
    return (Fraction(num, den) if den else None), sign


def thm4_leading(n: int, b: int, m: int) -> int:
    """-2 - 4b + 2bm - 5bn - bn^2; positive iff B < mu(E_{mb-1,b}) for d >> 0."""
    return -2 - 4 * b + 2 * b * m - 5 * b * n - b * n * n


def thm4_proof_threshold(n: int, b: int, m: int) -> Fraction | None:
    den = -2 * b * m + b * n * n + 5 * b * n + 4 * b + 2
    if den == 0:
        return None
    return Fraction(-4 * (-1 - b + b * m) * (1 + n), den)


def direct_sum_min_d(n: int, m: int) -> int | None:
    """Least d with m <= P_n(d), where a stable syzygy bundle E_{m,1} exists (n >= 3)."""
    if n < 3 or m < n + 1:
        return None
    d = 1
    while p_n_of_d(n, d) < m:
        d += 1
    return d


@dataclass
class StabilityCertificate:
    n: int
    a: int
    b: int
    d: int | None
    covered: bool
    decomposition: Decomposition | None = None
    route: str | None = None
    margin: Linear | None = None
    margin_params: tuple[int, int, int, int] | None = None
    d0: int | None = None
    d0_status: str | None = None
    d0_rederived: int | str | None = None
    thm4: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def mu_coeff(self) -> Fraction:
        return slope_coeff(self.a, self.b)

    @property
    def verdict(self) -> dict | None:
        if not self.covered:
            return None
        if self.d0 is not None:
            return {"semistable_for_d_geq": self.d0}
        return {"uncertified": self.d0_status or "no threshold"}

    def holds_at(self, d: int) -> bool | None:
        if not self.covered:
            return None
        return self.d0 is not None and d >= self.d0

    def to_json_obj(self) -> dict:
        dec = self.decomposition
        cB, eB = bound_B_linear(self.n)
        obj = {
            "n": self.n,
            "a": self.a,
            "b": self.b,
            "d": self.d,
            "covered": self.covered,
            "m": dec.m if dec else None,
            "j": dec.j if dec else None,
            "s": dec.s if dec else None,
            "l": dec.l if dec else None,
            "route": self.route,
            "B": fmt(bound_B(self.n, self.d)) if self.d else None,
            "B_coeff": fmt(cB),
            "B_const": fmt(eB),
            "mu": fmt(self.mu_coeff),
            "mu_at_d": fmt(self.mu_coeff * self.d) if self.d else None,
            "d0": self.d0,
            "d0_status": self.d0_status,
            "d0_rederived": self.d0_rederived,
            "margin_alpha": fmt(self.margin.alpha) if self.margin else None,
            "margin_beta": fmt(self.margin.beta) if self.margin else None,
            "margin_params": list(self.margin_params) if self.margin_params else None,
            "thm4": self.thm4,
            "verdict": self.verdict,
            "holds_at_d": self.holds_at(self.d) if self.d else None,
            "warnings": list(self.warnings),
        }
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def certify(a: int, b: int, n: int, d: int | None = None) -> StabilityCertificate:
    if n < 2:
        raise BundleError("certificates need n >= 2")
    dec = decompose(a, b, n)
    cert = StabilityCertificate(n, a, b, d, covered=dec is not None, decomposition=dec)
    if a - b < n:
        cert.warnings.append(
            f"a - b = {a - b} < n = {n}: a general map O(-d)^{a} -> O^{b} is not surjective"
        )
    if dec is None:
        m = -(-a // b)
        cert.warnings.append(
            f"not covered: m = {m} outside [2, k(n) = {k_of(n)}]"
            + ("; see the E_{17,2} extension pipeline (verify prop6)" if (n, a, b) == (2, 17, 2) else "")
        )
        return cert

    m, j = dec.m, dec.j
    if j == 0:
        cert.route = "direct_sum"
        cert.d0 = direct_sum_min_d(n, m)
        cert.d0_status = "P_n(d) >= m" if cert.d0 is not None else NO_D
        if cert.d0 is None:
            cert.warnings.append(
                f"direct sum of {b} copies of E_({m},1); no stable-syzygy-bundle range for n={n}, m={m}"
            )
        return cert

    s, l = dec.s, dec.l
    if l == 0 and j >= 2:
        # direct sum of j copies of E_{ms-1,s}
        cert.route = "direct_sum_thm4"
        params = (m, 1, s, 0)
    else:
        cert.route = "thm4" if j == 1 else "thm5"
        params = (m, j, s, l)
    cert.margin_params = params
    cert.margin = thm5_linear(n, *params)
    d0 = min_d_linear(cert.margin.alpha, cert.margin.beta)
    if isinstance(d0, int):
        cert.d0, cert.d0_status = d0, "threshold"
    elif d0 == ALL_D:
        cert.d0, cert.d0_status = 1, ALL_D
    else:
        cert.d0_status = NO_D
        cert.warnings.append("margin never becomes positive: no d certifies this cell")

    if cert.route == "thm5":
        pm, pj, ps, pl = params
        a2, b2 = quotient_class(pm, pj, ps, pl)
        if quotient_rank_printed(pm, pj, ps, pl) != a2 - b2:
            cert.warnings.append(
                f"printed quotient rank {quotient_rank_printed(pm, pj, ps, pl)} != a'-b' = {a2 - b2}"
            )
        alt = thm5_linear_rederived(n, pm, pj, ps, pl)
        cert.d0_rederived = min_d_linear(alt.alpha, alt.beta)
        if cert.d0_rederived != (cert.d0 if cert.d0_status == "threshold" else cert.d0_status):
            cert.warnings.append(
                "printed margin adds deg(E_{a',b'}) with the opposite sign; "
                f"re-derived threshold: {cert.d0_rederived}"
            )

    b1 = b if j == 1 else s
    printed, sign = thm4_printed_threshold(n, b1)
    lead = thm4_leading(n, b1, m)
    cert.thm4 = {
        "b": b1,
        "printed_threshold": fmt(printed) if printed is not None else None,
        "printed_denominator_sign": sign,
        "leading_m": lead,
        "leading_k": thm4_leading(n, b1, k_of(n)),
        "proof_threshold": (
            fmt(t) if (t := thm4_proof_threshold(n, b1, m)) is not None else None
        ),
    }
    if sign <= 0:
        cert.warnings.append(
            f"printed E_(mb-1,b) threshold has a non-positive denominator (sign {sign}); not used"
        )
    if lead <= 0:
        cert.warnings.append(
            f"-2-4b+2bm-5bn-bn^2 = {lead} <= 0: B does not stay below mu(E_(mb-1,b))"
        )
    return cert

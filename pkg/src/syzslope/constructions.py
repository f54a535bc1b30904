"""Explicit monomial families and the closed-form quantities around them."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .monomial import Monomial, MonomialSet


class ConstructionError(ValueError):
    pass


def k_of(n: int) -> int:
    """Largest multiplier m covered by the coverage test a = m*b - j."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n + 1) ** 2 - sum((n + 1) % i for i in range(2, n + 2))


def _q(n: int) -> int:
    return n * n + 5 * n + 2


def bound_B(n: int, d: int) -> Fraction:
    """Upper bound B(n, d) on mu_max of the constructed bundles."""
    q = _q(n)
    b = Fraction(d * (-n - 1) * (n + 4) - 4 * (-n - 1), q)
    alt = Fraction(4 * (n + 1), q) - Fraction(n * n + 5 * n + 4, q) * d
    assert b == alt
    return b


def bound_B_linear(n: int) -> tuple[Fraction, Fraction]:
    """B(n, d) = coeff * d + const."""
    q = _q(n)
    return Fraction(-(n + 1) * (n + 4), q), Fraction(4 * (n + 1), q)


def lemma1_min_d(n: int) -> int:
    return n**3 + 4 * n**2 - n


def a_interval(n: int, d: int) -> tuple[Fraction, Fraction] | None:
    """Admissible range [A_low, A_high] for the construction parameter, or None."""
    q = _q(n)
    low = Fraction(4 * (n + 1), q * d) - Fraction(n * n + 5 * n + 4, q)
    high = Fraction(-d - 2 * n + 2, d)
    assert low * d == bound_B(n, d)
    if low > high:
        return None
    return low, high


@dataclass(frozen=True)
class ConstructionParams:
    n: int
    d: int
    A: Fraction

    def __post_init__(self):
        if self.n < 2:
            raise ConstructionError("construction needs n >= 2")
        if self.d < 1:
            raise ConstructionError("d must be positive")
        object.__setattr__(self, "A", Fraction(self.A))

    @classmethod
    def default(cls, n: int, d: int) -> "ConstructionParams":
        """A = A_low, the left end of the admissible interval."""
        iv = a_interval(n, d)
        if iv is None:
            raise ConstructionError(
                f"A-interval empty for n={n}, d={d}; need d >= {lemma1_min_d(n)}"
            )
        return cls(n, d, iv[0])

    def in_interval(self) -> bool:
        iv = a_interval(self.n, self.d)
        return iv is not None and iv[0] <= self.A <= iv[1]

    def d_r(self, r: int) -> Fraction:
        return (r + self.A * (r - 1)) * self.d


@dataclass(frozen=True)
class RowData:
    i: int
    d_i_floor: int
    p: int
    q: int
    groups: tuple[tuple[int, ...], ...]

    @property
    def delta(self) -> int:
        """ceil((d - floor(d_i)) / (i - 1))."""
        return self.p + (1 if self.q else 0)


def row_data(params: ConstructionParams, i: int) -> RowData:
    n, d = params.n, params.d
    blocks = tuple(tuple(range(g * i, g * i + i)) for g in range((n + 1) // i))
    if i == 1:
        return RowData(1, d, 0, 0, blocks)
    di = math.floor(params.d_r(i))
    if di <= 0:
        raise ConstructionError(f"d_{i} = {params.d_r(i)} is not positive")
    rest = d - di
    if rest < 0:
        raise ConstructionError(f"floor(d_{i}) = {di} exceeds d = {d}")
    p, q = divmod(rest, i - 1)
    return RowData(i, di, p, q, blocks)


def row_monomials(params: ConstructionParams, row: RowData) -> list[Monomial]:
    n = params.n
    out = []
    for block in row.groups:
        for j in block:
            exps = [0] * (n + 1)
            exps[j] = row.d_i_floor
            others = [v for v in block if v != j]
            for pos, v in enumerate(others):
                exps[v] = row.p + 1 if pos < row.q else row.p
            m = Monomial(tuple(exps))
            if m.degree != params.d:
                raise ConstructionError(f"row {row.i} monomial has degree {m.degree}")
            out.append(m)
    return out


def construction_rows(params: ConstructionParams) -> list[list[Monomial]]:
    rows = []
    for i in range(1, params.n + 2):
        rows.append(row_monomials(params, row_data(params, i)))
    return rows


def construction1(params: ConstructionParams, check_interval: bool = True) -> MonomialSet:
    """The k(n) generators: pure powers, then row i = 2..n+1 block by block."""
    if check_interval and not params.in_interval():
        raise ConstructionError(
            f"A = {params.A} outside the admissible interval {a_interval(params.n, params.d)}"
        )
    mons = [m for row in construction_rows(params) for m in row]
    s = MonomialSet(params.n, tuple(mons), params.d)
    assert len(s) == k_of(params.n)
    return s


def construction1_dropped(params: ConstructionParams, m: int) -> MonomialSet:
    """First m generators of ``construction1`` (pure powers always kept)."""
    n = params.n
    if not n + 1 <= m <= k_of(n):
        raise ConstructionError(f"m = {m} outside [{n + 1}, {k_of(n)}]")
    full = construction1(params)
    return MonomialSet(n, full.monomials[:m], params.d)


def x0_count(s: MonomialSet) -> int:
    return sum(1 for m in s if m.exponents[0] > 0)


def delta_bound_ok(params: ConstructionParams) -> bool:
    """Every Delta_i <= 2 - (A + 1) d."""
    lim = 2 - (params.A + 1) * params.d
    return all(row_data(params, i).delta <= lim for i in range(2, params.n + 2))


def min_p(params: ConstructionParams) -> int:
    return min(row_data(params, i).p for i in range(2, params.n + 2))


# --- P^2 families used for E_{17,2} -------------------------------------------

def _mk(exps: list[list[int]], d: int) -> MonomialSet:
    mons = tuple(Monomial(tuple(e)) for e in exps)
    for m in mons:
        if m.degree != d:
            raise ConstructionError(f"{m} has degree {m.degree}, expected {d}")
    return MonomialSet(2, mons, d)


def e81_exponents(d: int) -> tuple[int, int, int]:
    e0 = -(-d // 3)
    rest = d - e0
    return e0, -(-rest // 2), rest // 2


def e81_generators(d: int) -> MonomialSet:
    """The seven-monomial family listed for 'E_{8,1}' (verbatim; seven, not eight)."""
    if d < 3:
        raise ConstructionError("need d >= 3")
    e0, e1, e2 = e81_exponents(d)
    return _mk(
        [
            [d, 0, 0],
            [0, d, 0],
            [0, 0, d],
            [e0, e1, e2],
            [e2, 0, e0 + e1],
            [0, e0 + e1, e2],
            [0, e0, e1 + e2],
        ],
        d,
    )


def e91_generators(d: int) -> MonomialSet:
    if d < 3:
        raise ConstructionError("need d >= 3")
    m, t = divmod(d, 3)
    i1, i2 = m + min(1, t), 2 * m + min(2, t)
    return _mk(
        [
            [d, 0, 0],
            [0, d, 0],
            [0, 0, d],
            [i1, d - i1, 0],
            [i2, d - i2, 0],
            [d - i1, 0, i1],
            [d - i2, 0, i2],
            [0, i1, d - i1],
            [0, i2, d - i2],
        ],
        d,
    )


def pure_powers(n: int, d: int) -> MonomialSet:
    return MonomialSet(n, tuple(Monomial.pure_power(n, j, d) for j in range(n + 1)), d)


def p_n_of_d(n: int, d: int) -> int:
    """dim H^0(P^n, O(d)) = binomial(n + d, n)."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return math.comb(n + d, n)

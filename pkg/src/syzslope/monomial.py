"""Monomials in x_0..x_n: gcd, divisibility, basepoint-freeness and I/O."""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_EXPONENT = 2**31 - 1
MAX_BASEPOINT_N = 16


class MonomialError(ValueError):
    """Malformed monomial data (bad shape, negative exponent, duplicates...)."""


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        if len(exps) < 2:
            raise MonomialError("a monomial needs at least 2 exponent slots (n >= 1)")
        for e in exps:
            if not isinstance(e, int) or isinstance(e, bool):
                raise MonomialError(f"exponent {e!r} is not an integer")
            if e < 0:
                raise MonomialError(f"negative exponent {e}")
            if e > MAX_EXPONENT:
                raise MonomialError(f"exponent {e} exceeds {MAX_EXPONENT}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def pure_power(cls, n: int, var: int, d: int) -> "Monomial":
        exps = [0] * (n + 1)
        exps[var] = d
        return cls(tuple(exps))

    @property
    def n(self) -> int:
        return len(self.exponents) - 1

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)

    def __str__(self) -> str:
        return to_text(self)


def _check_dims(m1: Monomial, m2: Monomial) -> None:
    if len(m1.exponents) != len(m2.exponents):
        raise MonomialError(
            f"dimension mismatch: {len(m1.exponents)} vs {len(m2.exponents)} variables"
        )


def gcd(m1: Monomial, m2: Monomial) -> Monomial:
    _check_dims(m1, m2)
    return Monomial(tuple(map(min, m1.exponents, m2.exponents)))


def gcd_all(monomials: Iterable[Monomial]) -> Monomial:
    it = iter(monomials)
    try:
        g = next(it)
    except StopIteration:
        raise MonomialError("gcd of an empty family is undefined") from None
    for m in it:
        g = gcd(g, m)
    return g


def degree(m: Monomial) -> int:
    return m.degree


def divides(g: Monomial, m: Monomial) -> bool:
    _check_dims(g, m)
    return all(a <= b for a, b in zip(g.exponents, m.exponents))


@dataclass(frozen=True, eq=False)
class MonomialSet:
    """An ordered, duplicate-free generator list of a monomial syzygy bundle.

    Equality ignores order: two sets are equal when they hold the same
    monomials in the same ambient space with the same declared degree.
    """

    n: int
    monomials: tuple[Monomial, ...]
    uniform_degree: int | None = None

    def __post_init__(self):
        mons = tuple(self.monomials)
        object.__setattr__(self, "monomials", mons)
        if self.n < 1:
            raise MonomialError("ambient dimension n must be >= 1")
        seen = set()
        for m in mons:
            if len(m.exponents) != self.n + 1:
                raise MonomialError(
                    f"monomial {m.exponents} does not have n+1 = {self.n + 1} slots"
                )
            if m in seen:
                raise MonomialError(f"duplicate monomial {to_text(m)}")
            seen.add(m)
        if self.uniform_degree is not None:
            if self.uniform_degree < 1:
                raise MonomialError("uniform degree must be positive")
            for m in mons:
                if m.degree != self.uniform_degree:
                    raise MonomialError(
                        f"{to_text(m)} has degree {m.degree}, expected {self.uniform_degree}"
                    )

    @classmethod
    def from_exponents(cls, n: int, rows: Iterable[Sequence[int]], d: int | None = None):
        return cls(n, tuple(Monomial(tuple(r)) for r in rows), d)

    @classmethod
    def infer(cls, rows: Iterable[Sequence[int]]) -> "MonomialSet":
        """Build a set, setting ``uniform_degree`` when all degrees agree."""
        mons = tuple(Monomial(tuple(r)) for r in rows)
        if not mons:
            raise MonomialError("empty monomial set")
        degs = {m.degree for m in mons}
        d = degs.pop() if len(degs) == 1 else None
        return cls(mons[0].n, mons, d if d else None)

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __getitem__(self, i):
        return self.monomials[i]

    def canonical(self) -> tuple[Monomial, ...]:
        return tuple(sorted(self.monomials))

    @property
    def degrees(self) -> list[int]:
        return [m.degree for m in self.monomials]

    @property
    def is_uniform(self) -> bool:
        return len(set(self.degrees)) <= 1

    def common_degree(self) -> int | None:
        if self.uniform_degree is not None:
            return self.uniform_degree
        degs = set(self.degrees)
        return degs.pop() if len(degs) == 1 else None

    def __eq__(self, other):
        if not isinstance(other, MonomialSet):
            return NotImplemented
        return (
            self.n == other.n
            and self.uniform_degree == other.uniform_degree
            and self.canonical() == other.canonical()
        )

    def __hash__(self):
        return hash((self.n, self.uniform_degree, self.canonical()))


def is_basepoint_free(s: MonomialSet) -> bool:
    """True iff the monomials have no common zero on P^n.

    A coordinate point set {x_i = 0 for i not in T} is avoided exactly when
    some generator is supported inside T, so every nonempty T is checked.
    """
    if len(s) == 0:
        raise MonomialError("basepoint-freeness of an empty set is undefined")
    if s.n > MAX_BASEPOINT_N:
        raise MonomialError(f"n = {s.n} exceeds the supported maximum {MAX_BASEPOINT_N}")
    supports = [m.support for m in s]
    variables = range(s.n + 1)
    for size in range(1, s.n + 2):
        for T in itertools.combinations(variables, size):
            T = frozenset(T)
            if not any(sup <= T for sup in supports):
                return False
    return True


# --- text / JSON forms -----------------------------------------------------

_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def to_text(m: Monomial) -> str:
    factors = []
    for i, e in enumerate(m.exponents):
        if e == 1:
            factors.append(f"x{i}")
        elif e:
            factors.append(f"x{i}^{e}")
    return "*".join(factors) if factors else "1"


def parse_monomial(text: str, n: int) -> Monomial:
    text = text.strip().replace(" ", "")
    if not text:
        raise MonomialError("empty monomial text")
    exps = [0] * (n + 1)
    if text == "1":
        return Monomial(tuple(exps))
    for factor in text.split("*"):
        match = _FACTOR.match(factor)
        if not match:
            raise MonomialError(f"cannot parse factor {factor!r}")
        var = int(match.group(1))
        e = int(match.group(2)) if match.group(2) is not None else 1
        if var > n:
            raise MonomialError(f"variable x{var} out of range for n = {n}")
        exps[var] += e
    return Monomial(tuple(exps))


def to_text_lines(s: MonomialSet) -> str:
    header = f"# n={s.n}" + (f" d={s.uniform_degree}" if s.uniform_degree else "")
    return "\n".join([header, *(to_text(m) for m in s.canonical())]) + "\n"


def parse_text(text: str, n: int | None = None) -> MonomialSet:
    """Parse one monomial per line; ``# n=.. d=..`` header lines are honoured."""
    d = None
    body = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for key, val in re.findall(r"(\w+)=(\d+)", line):
                if key == "n" and n is None:
                    n = int(val)
                elif key == "d":
                    d = int(val)
            continue
        body.append(line)
    if not body:
        raise MonomialError("no monomials in input")
    if n is None:
        idx = [int(v) for line in body for v in re.findall(r"x(\d+)", line)]
        n = max(idx + [1])
    mons = tuple(parse_monomial(line, n) for line in body)
    return MonomialSet(n, tuple(sorted(mons)), d)


def to_json_obj(s: MonomialSet) -> dict:
    return {
        "n": s.n,
        "d": s.uniform_degree,
        "monomials": [list(m.exponents) for m in s.canonical()],
    }


def to_json(s: MonomialSet) -> str:
    return json.dumps(to_json_obj(s))


def from_json_obj(obj) -> MonomialSet:
    if not isinstance(obj, dict) or "monomials" not in obj:
        raise MonomialError("JSON must be an object with a 'monomials' list")
    rows = obj["monomials"]
    if not isinstance(rows, list) or not rows:
        raise MonomialError("'monomials' must be a nonempty list")
    n = obj.get("n")
    if n is None:
        n = len(rows[0]) - 1
    if not isinstance(n, int) or n < 1:
        raise MonomialError(f"bad dimension n = {n!r}")
    for row in rows:
        if not isinstance(row, list) or len(row) != n + 1:
            raise MonomialError(f"row {row!r} does not have n+1 = {n + 1} entries")
    d = obj.get("d")
    if d is not None and (not isinstance(d, int) or d < 1):
        raise MonomialError(f"bad degree d = {d!r}")
    return MonomialSet(n, tuple(sorted(Monomial(tuple(r)) for r in rows)), d)


def from_json(text: str) -> MonomialSet:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MonomialError(f"invalid JSON: {exc}") from exc
    return from_json_obj(obj)


def permute_variables(s: MonomialSet, perm: Sequence[int]) -> MonomialSet:
    """Relabel x_i -> x_perm[i] in every generator."""
    def move(m: Monomial) -> Monomial:
        exps = [0] * (s.n + 1)
        for i, e in enumerate(m.exponents):
            exps[perm[i]] = e
        return Monomial(tuple(exps))

    return MonomialSet(s.n, tuple(move(m) for m in s), s.uniform_degree)

import itertools
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from syzslope.monomial import Monomial, MonomialSet, gcd_all

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def compositions(total, parts):
    """All exponent vectors of length ``parts`` summing to ``total``."""
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


@st.composite
def uniform_sets(draw, max_n=3, max_d=6, max_size=8, min_size=2):
    n = draw(st.integers(1, max_n))
    d = draw(st.integers(1, max_d))
    pool = list(compositions(d, n + 1))
    size = draw(st.integers(min(min_size, len(pool)), min(max_size, len(pool))))
    if size < 2:
        n, d = 1, 1
        pool = [(1, 0), (0, 1)]
        size = 2
    rows = draw(st.lists(st.sampled_from(pool), min_size=size, max_size=size, unique=True))
    return MonomialSet.from_exponents(n, rows, d)


@st.composite
def mixed_sets(draw, max_n=3, max_e=5, max_size=7):
    n = draw(st.integers(1, max_n))
    vec = st.tuples(*[st.integers(0, max_e)] * (n + 1))
    rows = draw(st.lists(vec, min_size=2, max_size=max_size, unique=True))
    return MonomialSet.from_exponents(n, rows)


def naive_mu_max(s: MonomialSet) -> dict:
    """Per-size best numerators by itertools.combinations: the test-side oracle."""
    best = {}
    for r in range(2, len(s) + 1):
        best[r] = max(
            Fraction(gcd_all(J).degree - sum(m.degree for m in J), r - 1)
            for J in itertools.combinations(s.monomials, r)
        )
    return best


# --- acceptance summary ----------------------------------------------------------

_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    def record(label: str, ok: bool, detail: str = ""):
        _CRITERIA.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else ""))
        print(_CRITERIA[-1])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import uniform_sets
from syzslope.constructions import ConstructionParams, construction1
from syzslope.monomial import (
    Monomial,
    MonomialError,
    MonomialSet,
    degree,
    divides,
    from_json,
    gcd,
    is_basepoint_free,
    parse_monomial,
    parse_text,
    permute_variables,
    to_json,
    to_text,
    to_text_lines,
)


def M(*e):
    return Monomial(tuple(e))


vectors = st.integers(1, 4).flatmap(lambda k: st.tuples(*[st.integers(0, 9)] * (k + 1)))
pairs = st.integers(1, 4).flatmap(
    lambda k: st.tuples(*[st.tuples(*[st.integers(0, 9)] * (k + 1))] * 3)
)


def test_gcd_examples():
    assert gcd(M(3, 1), M(1, 2)) == M(1, 1)
    assert gcd(M(3, 1, 4), M(3, 1, 4)) == M(3, 1, 4)
    assert gcd(M(22, 0, 0), M(20, 2, 0)) == M(20, 0, 0)


def test_gcd_dimension_mismatch():
    with pytest.raises(MonomialError):
        gcd(M(1, 2), M(1, 2, 3))
    with pytest.raises(MonomialError):
        divides(M(1, 2), M(1, 2, 3))


def test_degree_examples():
    assert degree(M(2, 2, 2)) == 6
    assert degree(M(0, 0, 0)) == 0
    assert degree(M(20, 2, 0)) == 22


def test_divides_examples():
    assert divides(M(1, 0), M(2, 1))
    assert not divides(M(0, 1), M(2, 0))
    assert divides(M(18, 0), M(22, 0))


@pytest.mark.parametrize("bad", [(-1, 2), (1,), (1.5, 2), (2**31, 0)])
def test_monomial_rejects(bad):
    with pytest.raises(MonomialError):
        Monomial(bad)


@given(pairs)
def test_gcd_is_lattice_meet(abc):
    a, b, c = (Monomial(v) for v in abc)
    g = gcd(a, b)
    assert divides(g, a) and divides(g, b)
    assert gcd(a, b) == gcd(b, a)
    assert gcd(gcd(a, b), c) == gcd(a, gcd(b, c))
    assert gcd(a, a) == a
    # any common divisor divides the gcd
    h = gcd(g, c)
    assert divides(h, g)
    assert g.degree <= min(a.degree, b.degree)
    assert (g.degree == min(a.degree, b.degree)) == (divides(a, b) or divides(b, a))


def test_set_invariants():
    with pytest.raises(MonomialError):
        MonomialSet.from_exponents(1, [[1, 0], [1, 0]])
    with pytest.raises(MonomialError):
        MonomialSet.from_exponents(2, [[1, 0], [0, 1]])
    with pytest.raises(MonomialError):
        MonomialSet.from_exponents(1, [[2, 0], [0, 1]], d=2)


def test_basepoint_free_examples():
    assert is_basepoint_free(MonomialSet.from_exponents(2, [[3, 0, 0], [0, 3, 0], [0, 0, 3]]))
    assert not is_basepoint_free(MonomialSet.from_exponents(2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]]))
    with pytest.raises(MonomialError):
        is_basepoint_free(MonomialSet(2, ()))


@pytest.mark.parametrize("n,d", [(2, 22), (2, 30), (3, 60), (4, 124)])
def test_construction_is_basepoint_free(n, d):
    assert is_basepoint_free(construction1(ConstructionParams.default(n, d)))


@given(uniform_sets(), st.randoms())
def test_basepoint_free_permutation_invariant(s, rnd):
    perm = list(range(s.n + 1))
    rnd.shuffle(perm)
    assert is_basepoint_free(s) == is_basepoint_free(permute_variables(s, perm))


@given(uniform_sets())
def test_basepoint_free_needs_pure_powers(s):
    d = s.uniform_degree
    has_all = all(Monomial.pure_power(s.n, j, d) in s.monomials for j in range(s.n + 1))
    assert is_basepoint_free(s) == has_all


def test_json_example():
    s = from_json('{"n": 2, "d": null, "monomials": [[3,0,0],[0,3,0]]}')
    assert list(s) == [M(0, 3, 0), M(3, 0, 0)]
    assert s.n == 2


@pytest.mark.parametrize(
    "text",
    [
        "[1,2]",
        '{"n": 2, "monomials": [[1,0]]}',
        '{"n": 1, "monomials": [[1,-1]]}',
        '{"n": 1, "monomials": [[1,0],[1,0,0]]}',
        '{"n": 1, "monomials": []}',
        "{not json",
    ],
)
def test_json_rejects(text):
    with pytest.raises(MonomialError):
        from_json(text)


def test_text_forms():
    assert parse_monomial("x0^20*x1^2", 2) == M(20, 2, 0)
    assert parse_monomial("1", 2) == M(0, 0, 0)
    assert parse_monomial("x1*x2^3", 2) == M(0, 1, 3)
    assert to_text(M(20, 2, 0)) == "x0^20*x1^2"
    assert to_text(M(0, 0)) == "1"
    with pytest.raises(MonomialError):
        parse_monomial("y0^2", 2)
    with pytest.raises(MonomialError):
        parse_monomial("x3", 2)


@given(uniform_sets())
def test_round_trips(s):
    assert from_json(to_json(s)) == s
    assert parse_text(to_text_lines(s)) == s
    # canonical JSON is reproducible
    assert to_json(from_json(to_json(s))) == to_json(s)


def test_round_trip_random_large_exponents():
    rnd = random.Random(7)
    rows = {tuple(rnd.randrange(10**6) for _ in range(4)) for _ in range(30)}
    s = MonomialSet.from_exponents(3, rows)
    assert from_json(to_json(s)) == s
    assert json.loads(to_json(s))["monomials"] == sorted(map(list, rows))

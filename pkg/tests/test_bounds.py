from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from qspace.bounds import (
    BoundResult,
    bollobas_sum,
    lemma21_check,
    prop15_lower,
    prop15_uses_symmetry,
    qfactorial_sandwich,
    thm18_lhs,
    thm18_term,
    thm19_cap,
    thm19_chain,
    tuza_sum,
    uniform_caps,
)
from qspace.errors import InvalidParameter
from qspace.exactnum import q_binomial
from qspace.gfq import make_field
from qspace.pairsystems import SetPairSystem, SubspacePairSystem

from corpus import complement_family, triangle_system

F2 = make_field(2)


def S(*pairs):
    return SetPairSystem(tuple(pairs))


def test_bollobas_sum_examples():
    r = bollobas_sum(complement_family(1, 2))
    assert r.lhs == 1 and r.holds and r.tight and r.applicable
    assert bollobas_sum(S()).lhs == 0
    assert bollobas_sum(S(([1], [2]))).lhs == Fraction(1, 2)


def test_bollobas_sum_not_applicable():
    r = bollobas_sum(S(([1], [1]), ([2], [2])))
    assert not r.applicable
    assert r.to_json()["holds"] is None


def test_tuza_sum_examples():
    assert tuza_sum(S(([1], [2])), Fraction(1, 2)).lhs == Fraction(1, 4)
    assert tuza_sum(S(([1], [2]), ([2], [3]), ([3], [1])), "1/2").lhs == Fraction(3, 4)
    assert tuza_sum(S(), "1/3").lhs == 0
    for p in (0, 1, "3/2", "-1/2"):
        with pytest.raises(InvalidParameter):
            tuza_sum(S(), p)


def test_uniform_caps_examples():
    assert uniform_caps(1, 1) == (2, 4, 2)
    assert uniform_caps(2, 1) == (3, Fraction(27, 4), 3)
    for r, s in product(range(1, 6), repeat=2):
        c12, c14, c16 = uniform_caps(r, s)
        assert c12 == c16
        assert (c12, c14) == uniform_caps(s, r)[:2]
        assert c12 <= c14
    with pytest.raises(InvalidParameter):
        uniform_caps(0, 2)


def test_prop15_examples():
    assert prop15_lower(1, 1) == 3
    assert prop15_lower(2, 1) == 5
    assert prop15_lower(2, 2) == 10
    assert prop15_lower(1, 4) == 9 and prop15_uses_symmetry(1, 4)
    assert not prop15_uses_symmetry(5, 1)
    for bad in [(0, 1), (1, 0)]:
        with pytest.raises(InvalidParameter):
            prop15_lower(*bad)


def test_prop15_symmetric_and_recursive():
    for a, b in product(range(1, 8), repeat=2):
        assert prop15_lower(a, b) == prop15_lower(b, a)
        if a >= 2 and b >= 2:
            assert prop15_lower(a, b) == prop15_lower(a, b - 1) + prop15_lower(a - 1, b)


def test_thm18_examples():
    t = triangle_system()
    r = thm18_lhs(t, 1)
    assert r.lhs == 1 and r.tight and r.holds
    assert thm18_term(2, 1, 1, 1, 2) == Fraction(1, 3)
    empty = SubspacePairSystem(F2, 3, ())
    assert all(thm18_lhs(empty, j).lhs == 0 for j in range(4))
    assert thm18_lhs(t, 0).lhs == 0
    with pytest.raises(InvalidParameter):
        thm18_lhs(t, 3)


def test_thm19_cap_examples():
    assert thm19_cap(2, 1, 1, 2) == 8
    assert thm19_cap(0, 0, 0, 7) == 1
    assert thm19_cap(3, 1, 1, 3) == Fraction(81, 8)
    with pytest.raises(InvalidParameter):
        thm19_cap(2, 1, 1, 1)


def test_lemma21_examples():
    r = lemma21_check(4, 2, 2)
    assert (r.lhs, r.rhs, r.holds) == (35, 256, True)
    r = lemma21_check(3, 1, 3)
    assert (r.lhs, r.rhs, r.holds) == (13, Fraction(243, 8), True)
    for n in range(6):
        r = lemma21_check(n, 0, 5)
        assert r.lhs == 1 and r.rhs == Fraction(5, 4) ** n
    with pytest.raises(InvalidParameter):
        lemma21_check(2, 3, 2)


def test_lemma21_grid():
    for n, q in product(range(11), (2, 3, 4, 5)):
        for j in range(n + 1):
            assert lemma21_check(n, j, q).holds


def test_qfactorial_sandwich():
    for n, q in product(range(11), (2, 3, 4, 5)):
        low, mid, high = qfactorial_sandwich(n, q)
        assert low <= mid <= high


def test_simplification_identity():
    for n, q in product(range(7), (2, 3)):
        for u, v in product(range(n + 1), repeat=2):
            if u + v > n:
                continue
            for j in range(u, n - v + 1):
                lhs = Fraction(q_binomial(n - v, j, q) * q_binomial(j, u, q), q_binomial(n - v, u, q))
                assert lhs == q_binomial(n - v - u, j - u, q)


def test_thm19_chain_on_triangle():
    ch = thm19_chain(triangle_system(), 1, 1)
    # j = n - v = 1: each term 2^0 / [2,1]_2 = 1/3
    assert ch.term == Fraction(1, 3) and ch.terms_equal
    assert ch.sum_at_j == 1
    assert ch.scaled_size == 3 * Fraction(1, 2) * Fraction(1, 4)
    assert ch.holds


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8), st.sampled_from([2, 3, 4, 5]))
def test_thm19_cap_dominates_lemma21_route(n, u, v, q):
    # [n, v]_q <= (q/(q-1))^n q^(v(n-v)) is exactly what turns the j = n-v sum into the size cap
    if u + v <= n:
        term = Fraction(q ** ((n - v - u) * v), q_binomial(n, v, q))
        assert term * thm19_cap(n, u, v, q) >= 1


def test_bound_result_json():
    r = BoundResult.of(Fraction(3, 4), 1)
    assert r.to_json() == {"lhs": "3/4", "rhs": "1/1", "holds": True}

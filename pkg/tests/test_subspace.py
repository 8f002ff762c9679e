import random

import pytest
from hypothesis import given, settings, strategies as st

from qspace.errors import DimensionMismatch, EnumerationTooLarge, InvalidInput
from qspace.exactnum import q_binomial
from qspace.gfq import make_field
from qspace.subspace import (
    Subspace,
    contains,
    coordinate_subspace,
    enumerate_subspaces,
    full_space,
    intersect,
    is_trivial_intersection,
    random_subspace,
    rref,
    subspace_from_json,
    subspace_sum,
    zero_subspace,
)

F2, F3 = make_field(2), make_field(3)


def e(k, n, f=F2):
    return rref([tuple(int(i == k) for i in range(n))], f)


def is_rref(S: Subspace):
    piv = S.pivots
    if list(piv) != sorted(set(piv)):
        return False
    for r, p in enumerate(piv):
        if S.basis[r][p] != 1:
            return False
        if any(S.basis[k][p] for k in range(S.dim) if k != r):
            return False
    return True


def test_rref_examples():
    S = rref([(1, 0, 0), (0, 1, 0), (0, 0, 1)], F2)
    assert S.dim == 3 and S.basis == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    S = rref([(1, 1), (0, 0)], F2)
    assert S.dim == 1 and S.basis == ((1, 1),)
    S = rref([(1, 1, 0), (1, 0, 1)], F2)
    assert S.basis == ((1, 0, 1), (0, 1, 1))


def test_rref_rejects_bad_input():
    with pytest.raises(InvalidInput):
        rref([(1, 0), (1, 0, 1)], F2)
    with pytest.raises(InvalidInput):
        rref([(1, 2)], F2)
    with pytest.raises(InvalidInput):
        rref([], F2)
    assert rref([], F2, n=3).dim == 0


def test_rref_idempotent_and_gf4():
    f4 = make_field(4)
    S = rref([(2, 3, 1), (1, 1, 0)], f4)
    assert is_rref(S)
    assert rref(S.basis, f4) == S


def test_intersection_examples():
    U = rref([(1, 0, 1), (0, 1, 1)], F2)
    assert intersect(U, U) == U
    assert intersect(e(0, 2), e(1, 2)).is_zero()
    A = rref([(1, 0, 0), (0, 1, 0)], F2)
    B = rref([(0, 1, 0), (0, 0, 1)], F2)
    assert intersect(A, B) == e(1, 3)


def test_sum_contains_trivial_examples():
    U = rref([(1, 1, 0)], F2)
    assert subspace_sum(U, zero_subspace(3, F2)) == U
    assert contains(full_space(3, F2), U)
    assert is_trivial_intersection(e(0, 2), rref([(1, 1)], F2))
    assert U <= full_space(3, F2)
    assert (U + e(2, 3)).dim == 2


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect(e(0, 2), e(0, 3))
    with pytest.raises(DimensionMismatch):
        subspace_sum(e(0, 2), e(0, 2, F3))


def test_enumeration_examples():
    lines = list(enumerate_subspaces(2, 1, F2))
    assert [S.basis for S in lines] == [((1, 0),), ((1, 1),), ((0, 1),)]
    for n in range(5):
        assert [S.dim for S in enumerate_subspaces(n, 0, F3)] == [0]
    assert sum(1 for _ in enumerate_subspaces(4, 2, F2)) == 35
    assert list(enumerate_subspaces(2, 3, F2)) == []


def test_enumeration_cap():
    with pytest.raises(EnumerationTooLarge):
        enumerate_subspaces(6, 3, F2, cap=100)


@pytest.mark.parametrize("n,q", [(n, q) for n in range(6) for q in (2, 3)])
def test_enumeration_counts_distinct_rref(n, q):
    f = make_field(q)
    for j in range(n + 1):
        seen = list(enumerate_subspaces(n, j, f))
        assert len(seen) == q_binomial(n, j, q)
        assert len(set(seen)) == len(seen)
        assert all(S.dim == j and is_rref(S) for S in seen)
        keys = [S.order_key for S in seen]
        assert keys == sorted(keys)


def test_enumeration_gf4():
    f = make_field(4)
    subs = list(enumerate_subspaces(3, 1, f))
    assert len(subs) == q_binomial(3, 1, 4) == 21


def vecset(S):
    return set(S.vectors())


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (4, 2)])
def test_lattice_ops_against_vector_sets(q, n):
    f = make_field(q)
    rng = random.Random(q * 10 + n)
    for _ in range(40):
        U = random_subspace(n, rng.randint(0, n), f, rng)
        V = random_subspace(n, rng.randint(0, n), f, rng)
        meet = vecset(U) & vecset(V)
        assert vecset(intersect(U, V)) == meet
        assert is_trivial_intersection(U, V) == (len(meet) == 1)
        S = subspace_sum(U, V)
        assert vecset(S) == {
            tuple(f.add(a, b) for a, b in zip(x, y)) for x in vecset(U) for y in vecset(V)
        }
        assert contains(U, V) == (vecset(V) <= vecset(U))


@pytest.mark.parametrize("j", [1, 2])
def test_modular_dimension_law(j):
    subs = list(enumerate_subspaces(4, j, F2))
    others = list(enumerate_subspaces(4, 1, F2)) + list(enumerate_subspaces(4, 2, F2))
    for U in subs:
        for V in others:
            assert subspace_sum(U, V).dim + intersect(U, V).dim == U.dim + V.dim


def spanning_sets(draw_field, n):
    return st.lists(st.lists(st.integers(0, draw_field.q - 1), min_size=n, max_size=n), min_size=0, max_size=5)


@settings(max_examples=150)
@given(st.data())
def test_canonical_form_unique(data):
    f, n = data.draw(st.sampled_from([(F2, 4), (F3, 3)]))
    rows = data.draw(spanning_sets(f, n))
    S = rref(rows, f, n)
    # another spanning set: random combinations plus the originals, shuffled
    coeffs = data.draw(st.lists(st.lists(st.integers(0, f.q - 1), min_size=len(rows), max_size=len(rows)), max_size=4))
    extra = []
    for cs in coeffs:
        v = [0] * n
        for c, row in zip(cs, rows):
            v = [f.add(a, f.mul(c, b)) for a, b in zip(v, row)]
        extra.append(v)
    mixed = data.draw(st.permutations(rows + extra)) if rows or extra else []
    T = rref(mixed, f, n)
    assert T == S
    assert T.basis == S.basis
    assert is_rref(S)
    assert rref(S.basis, f, n) == S


def test_coordinate_subspace():
    S = coordinate_subspace([0, 2], 3, F3)
    assert S.basis == ((1, 0, 0), (0, 0, 1))


def test_json_roundtrip_and_validation():
    S = rref([(1, 1, 0), (1, 0, 1)], F2)
    assert subspace_from_json(S.to_json()) == S
    with pytest.raises(InvalidInput):
        subspace_from_json({"n": 3, "q": 2, "basis": [[1, 1, 0], [1, 0, 1]]})
    assert subspace_from_json({"n": 3, "q": 2, "basis": [[1, 1, 0], [1, 0, 1]]}, strict=False) == S
    with pytest.raises(InvalidInput):
        subspace_from_json({"n": 3, "basis": []})

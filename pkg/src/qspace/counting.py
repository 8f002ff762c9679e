"""Counting subspaces that extend a fixed subspace while avoiding another.

Two routes are provided for each count: a closed q-binomial formula and
a brute-force enumeration through ``qspace.subspace``.  The families
F(i, j) of j-dimensional subspaces containing U_i and meeting V_i only in
zero are what makes the weighted-sum inequality for weak ISP systems work.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidConfiguration, InvalidIndex, InvalidParameter, PreconditionViolated
from .exactnum import q_binomial
from .gfq import make_field
from .pairsystems import SubspacePairSystem, VerificationReport, verify_weak_isp
from .subspace import (
    DEFAULT_ENUMERATION_CAP,
    Subspace,
    basis_to_subspace,
    contains,
    enumerate_subspaces,
    is_trivial_intersection,
)


@dataclass(frozen=True)
class ExtensionCountParams:
    """K has dimension n - d; U1 (dim l1) ⊆ U2 (dim l2), both meeting K trivially."""

    n: int
    d: int
    l1: int
    l2: int
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise InvalidParameter(f"q must be >= 2, got {self.q}")
        if not 0 <= self.d <= self.n:
            raise InvalidConfiguration(f"need 0 <= d <= n, got d={self.d}, n={self.n}")
        if not 0 <= self.l1 <= self.l2 <= self.n:
            raise InvalidConfiguration(f"need 0 <= l1 <= l2 <= n, got l1={self.l1}, l2={self.l2}")


def extension_count_formula(p: ExtensionCountParams) -> int:
    """[d, l2]_q [l2, l1]_q q^((l2-l1)(n-d)) / [d, l1]_q."""
    if p.l1 > p.d:
        raise InvalidConfiguration(f"no l1={p.l1} dimensional subspace meets a codimension-{p.d} K trivially")
    num = q_binomial(p.d, p.l2, p.q) * q_binomial(p.l2, p.l1, p.q) * p.q ** ((p.l2 - p.l1) * (p.n - p.d))
    value, rem = divmod(num, q_binomial(p.d, p.l1, p.q))
    assert rem == 0, "extension count is not an integer"
    return value


def extension_count_bruteforce(
    p: ExtensionCountParams, K: Subspace, U1: Subspace, cap: int = DEFAULT_ENUMERATION_CAP
) -> int:
    """Count l2-dimensional U2 with U1 ⊆ U2 and U2 ∩ K = {0} by enumeration."""
    if K.q != p.q or U1.q != p.q or K.n != p.n or U1.n != p.n:
        raise InvalidConfiguration("K and U1 must live in GF(q)^n of the given parameters")
    if K.dim != p.n - p.d:
        raise InvalidConfiguration(f"K has dimension {K.dim}, expected n - d = {p.n - p.d}")
    if U1.dim != p.l1:
        raise InvalidConfiguration(f"U1 has dimension {U1.dim}, expected l1 = {p.l1}")
    if not is_trivial_intersection(U1, K):
        raise InvalidConfiguration("U1 must meet K only in the zero vector")
    return sum(
        1
        for U2 in enumerate_subspaces(p.n, p.l2, K.field, cap)
        if contains(U2, U1) and is_trivial_intersection(U2, K)
    )


def _pair(s: SubspacePairSystem, i: int):
    if not isinstance(i, int) or not 1 <= i <= len(s.pairs):
        raise InvalidIndex(f"pair index {i!r} out of range 1..{len(s.pairs)}")
    return s.pairs[i - 1]


def family_F(s: SubspacePairSystem, i: int, j: int, cap: int = DEFAULT_ENUMERATION_CAP):
    """Iterate over j-subspaces U with U_i ⊆ U and V_i ∩ U = {0} (i is 1-based).

    Filters the full enumeration, so output is in enumeration order.
    """
    Ui, Vi = _pair(s, i)
    if not 0 <= j <= s.n:
        raise InvalidParameter(f"j must satisfy 0 <= j <= n = {s.n}, got {j}")
    return (
        U for U in enumerate_subspaces(s.n, j, s.field, cap) if contains(U, Ui) and is_trivial_intersection(U, Vi)
    )


def family_size_formula(n: int, u_i: int, v_i: int, j: int, q: int) -> int:
    """[n-v, j]_q [j, u]_q q^((j-u)v) / [n-v, u]_q, zero for j outside u..n-v."""
    if u_i + v_i > n:
        raise InvalidConfiguration(f"u + v = {u_i + v_i} exceeds n = {n}: U_i and V_i cannot be disjoint")
    if j < u_i or j > n - v_i:
        return 0
    num = q_binomial(n - v_i, j, q) * q_binomial(j, u_i, q) * q ** ((j - u_i) * v_i)
    value, rem = divmod(num, q_binomial(n - v_i, u_i, q))
    assert rem == 0
    return value


def check_family_disjointness(
    s: SubspacePairSystem, j: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> VerificationReport:
    """Materialize every F(i, j), check they are pairwise disjoint and that
    their total size stays within [n, j]_q."""
    if not verify_weak_isp(s).passed:
        raise PreconditionViolated("family disjointness needs a weak ISP system")
    if not 0 <= j <= s.n:
        raise InvalidParameter(f"j must satisfy 0 <= j <= n = {s.n}, got {j}")
    owner: dict = {}
    sizes = []
    first = None
    checks = 0
    for i in range(1, len(s.pairs) + 1):
        size = 0
        for U in family_F(s, i, j, cap):
            size += 1
            checks += 1
            if U in owner and first is None:
                first = ("disjoint", owner[U], i)
            owner.setdefault(U, i)
        sizes.append(size)
    total = q_binomial(s.n, j, s.q)
    union = len(owner)
    if first is None and sum(sizes) > total:
        first = ("union", 0, 0)
    return VerificationReport(
        kind="lemma23",
        passed=first is None,
        first_violation=first,
        counts=checks,
        violations=[first] if first else [],
        data={"j": j, "family_sizes": sizes, "union_size": union, "total": total},
    )


def witness_from_json(obj, p: ExtensionCountParams):
    """Decode ``{"K": [[...]], "U1": [[...]]}`` bases into subspaces of GF(q)^n."""
    f = make_field(p.q)
    return basis_to_subspace(obj["K"], p.n, f), basis_to_subspace(obj["U1"], p.n, f)

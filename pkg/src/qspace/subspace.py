"""Subspaces of F_q^n held in reduced row echelon form.

A subspace is stored as its RREF basis matrix, which is unique, so two
``Subspace`` values are equal exactly when they are the same set of
vectors.  Intersections use the Zassenhaus construction and never
enumerate vectors.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import DimensionMismatch, EnumerationTooLarge, InvalidInput
from .exactnum import q_binomial
from .gfq import FieldTable, make_field

DEFAULT_ENUMERATION_CAP = 10**7

Row = tuple


def _validate_rows(vectors, f: FieldTable, n: int | None):
    rows = []
    for v in vectors:
        try:
            row = tuple(v)
        except TypeError as exc:
            raise InvalidInput(f"row {v!r} is not a sequence") from exc
        if n is None:
            n = len(row)
        if len(row) != n:
            raise InvalidInput(f"ragged input: expected rows of length {n}, got {len(row)}")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < f.q:
                raise InvalidInput(f"entry {x!r} is not an element of GF({f.q})")
        rows.append(row)
    if n is None:
        raise InvalidInput("ambient dimension unknown: pass n when the vector list is empty")
    return rows, n


def _row_reduce(rows, f: FieldTable, width: int):
    """Gauss-Jordan elimination; returns the nonzero RREF rows as tuples."""
    mul, sub, inv = f.mul_table, f.sub, f.inv_table
    m = [list(r) for r in rows if any(r)]
    r = 0
    for c in range(width):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        scale = mul[inv[m[r][c]]]
        pivot_row = [scale[x] for x in m[r]]
        m[r] = pivot_row
        for i in range(len(m)):
            factor = m[i][c]
            if i != r and factor:
                fm = mul[factor]
                m[i] = [sub(a, fm[b]) for a, b in zip(m[i], pivot_row)]
        r += 1
    return tuple(tuple(row) for row in m[:r])


@dataclass(frozen=True)
class Subspace:
    field: FieldTable
    n: int
    basis: tuple

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple:
        return tuple(next(c for c, x in enumerate(row) if x) for row in self.basis)

    @property
    def order_key(self):
        """Enumeration order: pivot pattern first, then the matrix entries."""
        return (self.pivots, self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        return contains(other, self)

    def vectors(self):
        """Iterate over all q^dim vectors of the subspace (small cases only)."""
        f = self.field
        for coeffs in itertools.product(range(f.q), repeat=self.dim):
            v = [0] * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    mc = f.mul_table[c]
                    v = [f.add_table[a][mc[b]] for a, b in zip(v, row)]
            yield tuple(v)

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "basis": [list(r) for r in self.basis]}

    def __repr__(self):
        rows = ",".join("(" + ",".join(map(str, r)) + ")" for r in self.basis)
        return f"<{rows}>_GF({self.q})^{self.n}"


def rref(vectors, field: FieldTable, n: int | None = None) -> Subspace:
    """Canonical subspace spanned by ``vectors``."""
    rows, n = _validate_rows(vectors, field, n)
    return Subspace(field, n, _row_reduce(rows, field, n))


def zero_subspace(n: int, field: FieldTable) -> Subspace:
    return Subspace(field, n, ())


def full_space(n: int, field: FieldTable) -> Subspace:
    return Subspace(field, n, tuple(tuple(int(i == k) for i in range(n)) for k in range(n)))


def coordinate_subspace(coords, n: int, field: FieldTable) -> Subspace:
    """Span of the unit vectors e_k for k in ``coords`` (0-based)."""
    return rref([tuple(int(i == k) for i in range(n)) for k in coords], field, n)


def _check_compatible(U: Subspace, V: Subspace) -> None:
    if U.n != V.n or U.field != V.field:
        raise DimensionMismatch(f"subspaces live in different spaces: GF({U.q})^{U.n} vs GF({V.q})^{V.n}")


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_compatible(U, V)
    if not V.basis:
        return U
    if not U.basis:
        return V
    return Subspace(U.field, U.n, _row_reduce(U.basis + V.basis, U.field, U.n))


def sum_dim(U: Subspace, V: Subspace) -> int:
    """dim(U + V) without building the canonical sum."""
    _check_compatible(U, V)
    if not U.basis or not V.basis:
        return U.dim + V.dim
    return len(_row_reduce(U.basis + V.basis, U.field, U.n))


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V via Zassenhaus: row-reduce [U | U ; V | 0] and keep the (0 | w) rows."""
    _check_compatible(U, V)
    n, f = U.n, U.field
    if not U.basis or not V.basis:
        return zero_subspace(n, f)
    zeros = (0,) * n
    stacked = [u + u for u in U.basis] + [v + zeros for v in V.basis]
    reduced = _row_reduce(stacked, f, 2 * n)
    meet = [row[n:] for row in reduced if not any(row[:n])]
    return Subspace(f, n, _row_reduce(meet, f, n))


def contains(U: Subspace, V: Subspace) -> bool:
    """True iff V is a subspace of U."""
    return sum_dim(U, V) == U.dim


def is_trivial_intersection(U: Subspace, V: Subspace) -> bool:
    return sum_dim(U, V) == U.dim + V.dim


def enumerate_subspaces(n: int, j: int, field: FieldTable, cap: int = DEFAULT_ENUMERATION_CAP):
    """Iterate over every j-dimensional subspace of F_q^n exactly once.

    Order: pivot column sets in lexicographic order, and within a pivot
    pattern the free entries in row-major lexicographic order.  Raises
    ``EnumerationTooLarge`` up front if the count exceeds ``cap``.
    """
    if j < 0 or j > n:
        return iter(())
    total = q_binomial(n, j, field.q)
    if cap is not None and total > cap:
        raise EnumerationTooLarge(f"{total} subspaces of dimension {j} in GF({field.q})^{n} exceed cap {cap}")
    return _enumerate(n, j, field)


def _enumerate(n: int, j: int, field: FieldTable):
    for pivots in itertools.combinations(range(n), j):
        pivot_set = set(pivots)
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivot_set]
        template = [[0] * n for _ in range(j)]
        for r, p in enumerate(pivots):
            template[r][p] = 1
        for values in itertools.product(range(field.q), repeat=len(free)):
            for (r, c), x in zip(free, values):
                template[r][c] = x
            yield Subspace(field, n, tuple(tuple(row) for row in template))


def random_subspace(n: int, j: int, field: FieldTable, rng: random.Random) -> Subspace:
    """Uniform-ish random j-dimensional subspace (rejection on random spanning sets)."""
    while True:
        S = rref([tuple(rng.randrange(field.q) for _ in range(n)) for _ in range(j)], field, n)
        if S.dim == j:
            return S


def subspace_from_json(obj, strict: bool = True) -> Subspace:
    """Decode ``{"n", "q", "basis"}``.

    With ``strict`` the basis must already be in RREF; otherwise it is
    re-canonicalized.
    """
    try:
        n, q, basis = obj["n"], obj["q"], obj["basis"]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"subspace JSON needs keys n, q, basis: {obj!r}") from exc
    return basis_to_subspace(basis, n, make_field(q), strict=strict)


def basis_to_subspace(basis, n: int, field: FieldTable, strict: bool = False) -> Subspace:
    if not isinstance(n, int) or n < 0:
        raise InvalidInput(f"bad ambient dimension {n!r}")
    S = rref(basis, field, n)
    if strict and S.basis != tuple(tuple(r) for r in basis):
        raise InvalidInput(f"basis {basis!r} is not in reduced row echelon form")
    return S

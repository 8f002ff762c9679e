"""Table-driven arithmetic in GF(q) for prime powers q <= 16.

Elements are the integers 0..q-1.  For q = p^k with k > 1 an element is
the base-p encoding of its polynomial representative, i.e. the integer
c0 + c1*p + ... + c_{k-1}*p^(k-1) stands for c0 + c1*x + ... modulo the
fixed irreducible polynomial listed in ``IRREDUCIBLE``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import FieldDivisionByZero, InvalidElement, InvalidParameter, UnsupportedField

MAX_ORDER = 16

# Monic irreducible polynomials, coefficients low degree first (leading 1 included).
IRREDUCIBLE = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
}

OPS = ("add", "sub", "mul", "div", "neg", "inv")


def prime_power(q: int):
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


@dataclass(frozen=True)
class FieldTable:
    q: int
    p: int
    k: int
    add_table: tuple = field(repr=False, compare=False)
    mul_table: tuple = field(repr=False, compare=False)
    neg_table: tuple = field(repr=False, compare=False)
    inv_table: tuple = field(repr=False, compare=False)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldDivisionByZero(f"0 has no inverse in GF({self.q})")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul_table[out][a]
        return out

    @property
    def elements(self) -> range:
        return range(self.q)


def _poly_tables(p: int, k: int):
    q = p**k
    modulus = IRREDUCIBLE[(p, k)]

    def digits(a):
        return [(a // p**i) % p for i in range(k)]

    def encode(cs):
        return sum(c * p**i for i, c in enumerate(cs))

    def mul(a, b):
        da, db = digits(a), digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus from the top down
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                for i, m in enumerate(modulus):
                    prod[deg - k + i] = (prod[deg - k + i] - c * m) % p
        return encode(prod[:k])

    add = [[encode([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)] for a in range(q)]
    mult = [[mul(a, b) for b in range(q)] for a in range(q)]
    return add, mult


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldTable:
    """Build (and cache) the arithmetic tables of GF(q)."""
    pk = prime_power(q) if isinstance(q, int) else None
    if pk is None or q > MAX_ORDER:
        raise UnsupportedField(f"GF({q!r}) is not supported: need a prime power <= {MAX_ORDER}")
    p, k = pk
    if k == 1:
        add = [[(a + b) % q for b in range(q)] for a in range(q)]
        mult = [[(a * b) % q for b in range(q)] for a in range(q)]
    else:
        add, mult = _poly_tables(p, k)
    neg = [next(b for b in range(q) if add[a][b] == 0) for a in range(q)]
    inv = [0] + [next(b for b in range(1, q) if mult[a][b] == 1) for a in range(1, q)]
    f = FieldTable(
        q=q,
        p=p,
        k=k,
        add_table=tuple(map(tuple, add)),
        mul_table=tuple(map(tuple, mult)),
        neg_table=tuple(neg),
        inv_table=tuple(inv),
    )
    _self_test(f)
    return f


def _self_test(f: FieldTable) -> None:
    zero, one = 0, 1
    for a in f.elements:
        assert f.add(a, zero) == a and f.mul(a, one) == a
        assert f.add(a, f.neg(a)) == zero
        if a:
            assert f.mul(a, f.inv_table[a]) == one
    # characteristic p: adding 1 to itself p times gives 0
    acc = zero
    for _ in range(f.p):
        acc = f.add(acc, one)
    assert acc == zero


def field_ops(f: FieldTable, a: int, b: int | None, kind: str) -> int:
    """Apply a named field operation; ``b`` is ignored for neg and inv."""
    if kind not in OPS:
        raise InvalidParameter(f"unknown operation {kind!r}, expected one of {OPS}")
    operands = (a,) if kind in ("neg", "inv") else (a, b)
    for x in operands:
        if not isinstance(x, int) or not 0 <= x < f.q:
            raise InvalidElement(f"{x!r} is not an element of GF({f.q})")
    return getattr(f, kind)(*operands)

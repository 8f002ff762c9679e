"""Exact evaluation of the set-pair and subspace-pair bounds.

Every comparison is done on ``Fraction`` values.  A ``BoundResult``
always carries ``holds = lhs <= rhs``; ``applicable`` says whether the
system actually satisfied the hypotheses of the inequality, so only
applicable results are claims that can be falsified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidParameter
from .exactnum import as_exact, binomial, format_exact, q_binomial, q_factorial
from .pairsystems import (
    SetPairSystem,
    SubspacePairSystem,
    verify_bollobas,
    verify_tuza_sets,
    verify_weak_isp,
)


@dataclass(frozen=True)
class BoundResult:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    applicable: bool = True

    @classmethod
    def of(cls, lhs, rhs, applicable=True) -> "BoundResult":
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        return cls(lhs, rhs, lhs <= rhs, applicable)

    @property
    def tight(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "lhs": format_exact(self.lhs, True),
            "rhs": format_exact(self.rhs, True),
            "holds": self.holds if self.applicable else None,
        }


def bollobas_sum(s: SetPairSystem) -> BoundResult:
    """Σ 1 / C(|A_i| + |B_i|, |A_i|) against 1."""
    lhs = sum((Fraction(1, binomial(len(A) + len(B), len(A))) for A, B in s.pairs), Fraction(0))
    return BoundResult.of(lhs, 1, verify_bollobas(s).passed)


def tuza_sum(s: SetPairSystem, p) -> BoundResult:
    """Σ p^|A_i| (1-p)^|B_i| against 1, for rational 0 < p < 1."""
    p = as_exact(p)
    if not 0 < p < 1:
        raise InvalidParameter(f"p must lie strictly between 0 and 1, got {p}")
    t = 1 - p
    lhs = sum((p ** len(A) * t ** len(B) for A, B in s.pairs), Fraction(0))
    return BoundResult.of(lhs, 1, verify_tuza_sets(s).passed)


def uniform_caps(r: int, s: int):
    """Caps on m for r-uniform A_i and s-uniform B_i.

    Returns (bollobas, tuza, lovasz) = (C(r+s, s), (r+s)^(r+s) / (r^r s^s), C(r+s, r)).
    """
    if r < 1 or s < 1:
        raise InvalidParameter("r and s must both be >= 1 (0^0 is not assumed)")
    c = Fraction(binomial(r + s, s))
    return c, Fraction((r + s) ** (r + s), r**r * s**s), Fraction(binomial(r + s, r))


@lru_cache(maxsize=None)
def _prop15(a: int, b: int) -> int:
    if b == 1:
        return 2 * a + 1
    if a == 1:
        return 2 * b + 1
    return _prop15(a, b - 1) + _prop15(a - 1, b)


def prop15_lower(a: int, b: int) -> int:
    """Recursive lower bound for m(a, b).

    Bases m(a, 1) = 2a + 1 and, by swapping the roles of A and B,
    m(1, b) = 2b + 1; then m(a, b) >= m(a, b-1) + m(a-1, b).
    """
    if not isinstance(a, int) or not isinstance(b, int) or a < 1 or b < 1:
        raise InvalidParameter("m(a, b) is only defined here for a, b >= 1")
    return _prop15(a, b)


def prop15_uses_symmetry(a: int, b: int) -> bool:
    """Whether prop15_lower(a, b) relied on the m(1, b) = 2b + 1 base."""
    return b >= 2


def thm18_term(n: int, u: int, v: int, j: int, q: int) -> Fraction:
    """One summand; zero when j < u or j - u > n - u - v (no such subspaces)."""
    if j < u:
        return Fraction(0)
    return Fraction(q_binomial(n - v - u, j - u, q) * q ** ((j - u) * v), q_binomial(n, j, q))


def thm18_lhs(s: SubspacePairSystem, j: int) -> BoundResult:
    """Σ_i [n-v_i-u_i, j-u_i]_q q^((j-u_i) v_i) / [n, j]_q against 1."""
    n, q = s.n, s.q
    if not isinstance(j, int) or j < 0 or j > n:
        raise InvalidParameter(f"j must satisfy 0 <= j <= n = {n}, got {j!r}")
    lhs = sum((thm18_term(n, U.dim, V.dim, j, q) for U, V in s.pairs), Fraction(0))
    return BoundResult.of(lhs, 1, verify_weak_isp(s).passed)


def thm19_cap(n: int, u: int, v: int, q: int) -> Fraction:
    """(q / (q-1))^n q^(uv)."""
    if not isinstance(q, int) or q < 2:
        raise InvalidParameter(f"q must be >= 2, got {q!r}")
    return Fraction(q, q - 1) ** n * q ** (u * v)


def lemma21_check(n: int, j: int, q: int) -> BoundResult:
    """[n, j]_q <= (q / (q-1))^n q^(j(n-j))."""
    if not 0 <= j <= n:
        raise InvalidParameter(f"need 0 <= j <= n, got n={n}, j={j}")
    if q < 2:
        raise InvalidParameter(f"q must be >= 2, got {q!r}")
    return BoundResult.of(q_binomial(n, j, q), Fraction(q, q - 1) ** n * q ** (j * (n - j)))


def qfactorial_sandwich(n: int, q: int):
    """(q^C(n,2), [n]_q!, (q/(q-1))^n q^C(n,2)); the middle lies between the outer two."""
    low = Fraction(q ** binomial(n, 2))
    return low, Fraction(q_factorial(n, q)), Fraction(q, q - 1) ** n * low


@dataclass(frozen=True)
class Thm19Chain:
    """m q^(-uv) ((q-1)/q)^n <= Σ at j = n-v <= 1, with the per-term value."""

    scaled_size: Fraction
    sum_at_j: Fraction
    term: Fraction
    terms_equal: bool

    @property
    def holds(self) -> bool:
        return self.scaled_size <= self.sum_at_j <= 1


def thm19_chain(s: SubspacePairSystem, u: int, v: int) -> Thm19Chain:
    n, q, m = s.n, s.q, len(s.pairs)
    if v > n:
        raise InvalidParameter(f"v = {v} exceeds n = {n}")
    j = n - v
    term = Fraction(q ** ((n - v - u) * v), q_binomial(n, v, q)) if u + v <= n else Fraction(0)
    terms_equal = all(thm18_term(n, U.dim, V.dim, j, q) == term for U, V in s.pairs)
    scaled = m * Fraction(1, q ** (u * v)) * Fraction(q - 1, q) ** n
    return Thm19Chain(scaled, thm18_lhs(s, j).lhs, term, terms_equal)

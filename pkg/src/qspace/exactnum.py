"""q-integers, q-factorials and Gaussian binomial coefficients.

Integer values are plain Python ints and rational values are
``fractions.Fraction``; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import InvalidParameter

__all__ = [
    "Fraction",
    "QPolynomial",
    "as_exact",
    "q_int",
    "q_factorial",
    "q_binomial",
    "q_binomial_poly",
    "format_exact",
]


def _check_q(q: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise InvalidParameter(f"q must be an integer >= 2, got {q!r}")


def _check_natural(name: str, k: int) -> None:
    if not isinstance(k, int) or k < 0:
        raise InvalidParameter(f"{name} must be a natural number, got {k!r}")


def as_exact(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/4"`` to a Fraction.

    Floats are refused: a float has already lost exactness.
    """
    if isinstance(x, float):
        raise InvalidParameter("floating point values are not accepted, pass a Fraction or 'p/q' string")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidParameter(f"not an exact rational: {x!r}") from exc


def format_exact(x, force_ratio: bool = False) -> str:
    """Render an exact scalar as ``"p/q"`` (or a bare integer string)."""
    x = Fraction(x)
    if x.denominator == 1 and not force_ratio:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def q_int(k: int, q: int) -> int:
    """[k]_q = 1 + q + ... + q^(k-1)."""
    _check_q(q)
    _check_natural("k", k)
    return (q**k - 1) // (q - 1)


def q_factorial(n: int, q: int) -> int:
    _check_q(q)
    _check_natural("n", n)
    out = 1
    for k in range(1, n + 1):
        out *= q_int(k, q)
    return out


def q_binomial(n: int, m: int, q: int) -> int:
    """Gaussian binomial coefficient [n choose m]_q as an exact integer.

    Out-of-range lower index (m < 0 or m > n) gives 0, the number of
    m-dimensional subspaces of F_q^n in that case.
    """
    _check_q(q)
    if m < 0 or m > n:
        return 0
    m = min(m, n - m)
    num = 1
    den = 1
    for i in range(m):
        num *= q ** (n - i) - 1
        den *= q ** (m - i) - 1
    value, rem = divmod(num, den)
    assert rem == 0
    return value


class QPolynomial:
    """Integer polynomial in q, coefficients stored low degree first.

    Canonical form has no trailing zero coefficients; the zero polynomial
    has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return QPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return QPolynomial(out)

    def shift(self, k: int) -> "QPolynomial":
        """Multiply by q^k."""
        if not self.coeffs:
            return self
        return QPolynomial((0,) * k + self.coeffs)

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == QPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                mono = "q" if d == 1 else f"q^{d}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


@lru_cache(maxsize=None)
def _poly_coeffs(n: int, m: int) -> tuple:
    if m < 0 or m > n:
        return ()
    if m == 0 or m == n:
        return (1,)
    # q-Pascal: [n, m] = [n-1, m-1] + q^m [n-1, m]
    left = QPolynomial(_poly_coeffs(n - 1, m - 1))
    right = QPolynomial(_poly_coeffs(n - 1, m)).shift(m)
    return (left + right).coeffs


def q_binomial_poly(n: int, m: int) -> QPolynomial:
    """Gaussian polynomial [n choose m] in the indeterminate q."""
    _check_natural("n", n)
    return QPolynomial(_poly_coeffs(n, m))


def binomial(n: int, k: int) -> int:
    """Ordinary binomial coefficient, 0 outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)

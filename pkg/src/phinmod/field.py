"""Exact arithmetic in the real quadratic field Q(sqrt(p)), p a fixed prime.

A scalar is an immutable pair of rationals (a, b) representing a + b*sqrt(p).
Since sqrt(p) is irrational for prime p, the representation is unique and
a + b*sqrt(p) = 0 iff a = b = 0, so the arithmetic below is a field.  There
is no floating point anywhere; rationals are `fractions.Fraction`.

p is fixed per value (default 2).  Combining scalars built over different
primes is an error, except that purely rational scalars compare equal across
primes (they denote the same number).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import InvalidInputError

__all__ = ["Scalar", "sqrt_p", "p_power", "scalar_sqrt", "is_prime"]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class Scalar:
    """Element a + b*sqrt(p) of Q(sqrt(p))."""

    __slots__ = ("a", "b", "p")

    def __init__(self, a=0, b=0, p: int = 2):
        if not is_prime(p):
            raise InvalidInputError(f"p must be a rational prime, got {p}")
        object.__setattr__(self, "a", _as_fraction(a))
        object.__setattr__(self, "b", _as_fraction(b))
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def of(cls, x, p: int = 2) -> "Scalar":
        """Embed a rational (int or Fraction) into Q(sqrt(p))."""
        if isinstance(x, Scalar):
            if x.b == 0:
                return cls(x.a, 0, p)
            if x.p != p:
                raise InvalidInputError(f"cannot move sqrt({x.p}) value into Q(sqrt({p}))")
            return x
        return cls(x, 0, p)

    @classmethod
    def from_pair(cls, pair, p: int = 2) -> "Scalar":
        """Parse the serialized form ["a_num/a_den", "b_num/b_den"].

        Each component may be any string Fraction accepts ("0", "-3/4", "5").
        """
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise InvalidInputError(f"scalar pair must have two components, got {pair!r}")
        return cls(Fraction(str(pair[0])), Fraction(str(pair[1])), p)

    # -- serialization -----------------------------------------------------

    def to_pair(self) -> list:
        """Canonical serialized form: two "num/den" strings."""
        return [
            f"{self.a.numerator}/{self.a.denominator}",
            f"{self.b.numerator}/{self.b.denominator}",
        ]

    # -- structure ---------------------------------------------------------

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "Scalar":
        return Scalar(self.a, -self.b, self.p)

    def norm(self) -> Fraction:
        """Field norm a^2 - p*b^2 (rational; zero iff the scalar is zero)."""
        return self.a * self.a - self.p * self.b * self.b

    # -- arithmetic --------------------------------------------------------

    def _common(self, other):
        """Rebuild (self, other) over one prime, or None if other is foreign.

        A purely rational operand adopts the other side's prime; two
        genuinely irrational scalars over different primes do not mix.
        """
        if isinstance(other, (int, Fraction)):
            return self, Scalar(other, 0, self.p)
        if not isinstance(other, Scalar):
            return None
        if other.p == self.p:
            return self, other
        if other.b == 0:
            return self, Scalar(other.a, 0, self.p)
        if self.b == 0:
            return Scalar(self.a, 0, other.p), other
        raise InvalidInputError(f"mixed primes: sqrt({self.p}) vs sqrt({other.p})")

    def __add__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return Scalar(x.a + y.a, x.b + y.b, x.p)

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return Scalar(x.a - y.a, x.b - y.b, x.p)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.p)

    def __mul__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return Scalar(x.a * y.a + x.p * x.b * y.b, x.a * y.b + x.b * y.a, x.p)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        """Multiplicative inverse; exact since the norm vanishes only at 0."""
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.a / n, -self.b / n, self.p)

    def __truediv__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return x * y.inv()

    def __rtruediv__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return y * x.inv()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        out = Scalar(1, 0, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, Scalar):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.p == other.p and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.p))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"Scalar({self.a!r}, {self.b!r}, p={self.p})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.p})"


def sqrt_p(p: int = 2) -> Scalar:
    """The square root of p itself: 0 + 1*sqrt(p)."""
    return Scalar(0, 1, p)


def p_power(k: int, p: int = 2) -> Scalar:
    """p**k as an exact rational scalar (k may be negative)."""
    return Scalar(Fraction(p) ** k, 0, p)


def _fraction_sqrt(q: Fraction):
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def scalar_sqrt(s: Scalar):
    """A square root of s inside Q(sqrt(p)), or None if no such root exists.

    Solving (x + y*sqrt(p))^2 = a + b*sqrt(p) reduces to rational conditions:
    for b = 0 either a or a/p must be a rational square; for b != 0 the norm
    a^2 - p*b^2 must be a square w, and then x^2 = (a +- w)/2 must be one too.
    """
    p = s.p
    if not s:
        return Scalar(0, 0, p)
    if s.b == 0:
        r = _fraction_sqrt(s.a)
        if r is not None:
            return Scalar(r, 0, p)
        r = _fraction_sqrt(s.a / p)
        if r is not None:
            return Scalar(0, r, p)
        return None
    w = _fraction_sqrt(s.norm())
    if w is None:
        return None
    for x2 in ((s.a + w) / 2, (s.a - w) / 2):
        x = _fraction_sqrt(x2)
        if x is not None and x != 0:
            y = s.b / (2 * x)
            cand = Scalar(x, y, p)
            if cand * cand == s:
                return cand
    return None

"""First-order dual arithmetic over Scalar: x + y*eps with eps^2 = 0.

This is the independent oracle for tangent computations: a claimed tangent
direction is substituted into the defining equations with exact eps-matrices,
so linearization mistakes elsewhere cannot hide here.  Dual matrices are kept
as plain (value, eps) pairs of `Mat` to reuse the exact matrix kernels.
"""

from __future__ import annotations

from fractions import Fraction

from .field import Scalar
from .linalg import Mat

__all__ = [
    "DualScalar",
    "dmat",
    "dmat_add",
    "dmat_sub",
    "dmat_mul",
    "dmat_scale",
    "dmat_inv",
    "dmat_eq",
    "dmat_entry",
]


class DualScalar:
    """x + y*eps, exact first-order arithmetic."""

    __slots__ = ("re", "eps")

    def __init__(self, re: Scalar, eps: Scalar | None = None):
        if not isinstance(re, Scalar):
            raise TypeError("re must be a Scalar")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "eps", eps if eps is not None else Scalar(0, 0, re.p))

    def __setattr__(self, name, value):
        raise AttributeError("DualScalar is immutable")

    def _coerce(self, other):
        if isinstance(other, DualScalar):
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return DualScalar(Scalar.of(other, self.re.p))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualScalar(self.re + o.re, self.eps + o.eps)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualScalar(self.re - o.re, self.eps - o.eps)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return DualScalar(-self.re, -self.eps)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualScalar(self.re * o.re, self.re * o.eps + self.eps * o.re)

    __rmul__ = __mul__

    def inv(self) -> "DualScalar":
        r = self.re.inv()
        return DualScalar(r, -(r * self.eps * r))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.eps == o.eps

    def __hash__(self):
        return hash((self.re, self.eps))

    def __bool__(self):
        return bool(self.re) or bool(self.eps)

    def __repr__(self):
        return f"DualScalar({self.re}, {self.eps})"


# Dual matrices: pairs (value, eps_part) of Mat.

def dmat(value: Mat, eps: Mat | None = None):
    if eps is None:
        eps = Mat.zero(value.rows, value.cols, value.p)
    return (value, eps)


def dmat_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def dmat_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def dmat_mul(a, b):
    return (a[0] * b[0], a[0] * b[1] + a[1] * b[0])


def dmat_scale(a, c):
    return (a[0] * c, a[1] * c)


def dmat_inv(a):
    inv = a[0].inverse()
    return (inv, -(inv * a[1] * inv))


def dmat_eq(a, b) -> bool:
    return a[0] == b[0] and a[1] == b[1]


def dmat_entry(a, i: int, j: int) -> DualScalar:
    return DualScalar(a[0][i, j], a[1][i, j])

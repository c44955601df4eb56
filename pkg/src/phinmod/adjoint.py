"""Adjoint and twisted-Frobenius operators on gl_n^(x f) as explicit matrices.

The coordinate convention is fixed once for the whole package: a tuple
(X_1, ..., X_f) of n x n matrices flattens slot-major, each slot row-major,
so coordinate (s, i, j) sits at index s*n^2 + i*n + j.  Every `BigOp` built
here uses that ordering, and operators refuse to combine across mismatched
(n, f).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInputError
from .field import Scalar
from .linalg import Mat, Subspace, kernel

__all__ = [
    "FrobTuple",
    "BigOp",
    "flatten_tuple",
    "unflatten_tuple",
    "ad_single",
    "ad_frobenius",
    "ad_n",
    "one_minus_pad",
    "pad_minus_one",
]

GROUP = "group"
LIE = "lie"


class FrobTuple:
    """Cyclic f-tuple of n x n matrices: group elements (all invertible) or
    Lie-algebra elements."""

    __slots__ = ("mats", "kind")

    def __init__(self, mats, kind: str):
        mats = tuple(mats)
        if not mats:
            raise InvalidInputError("FrobTuple needs at least one slot")
        if kind not in (GROUP, LIE):
            raise InvalidInputError(f"kind must be 'group' or 'lie', got {kind!r}")
        n = mats[0].rows
        for m in mats:
            if not m.is_square or m.rows != n:
                raise InvalidInputError("all slots must be square of the same size")
            if m.p != mats[0].p:
                raise InvalidInputError("all slots must share the same prime")
        if kind == GROUP:
            for i, m in enumerate(mats):
                if not m.is_invertible():
                    raise InvalidInputError(f"slot {i} is singular", index=i)
        object.__setattr__(self, "mats", mats)
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("FrobTuple is immutable")

    @classmethod
    def group(cls, mats) -> "FrobTuple":
        return cls(mats, GROUP)

    @classmethod
    def lie(cls, mats) -> "FrobTuple":
        return cls(mats, LIE)

    @property
    def f(self) -> int:
        return len(self.mats)

    @property
    def n(self) -> int:
        return self.mats[0].rows

    @property
    def p(self) -> int:
        return self.mats[0].p

    def __getitem__(self, i: int) -> Mat:
        return self.mats[i]

    def __iter__(self):
        return iter(self.mats)

    def __eq__(self, other):
        if not isinstance(other, FrobTuple):
            return NotImplemented
        return self.kind == other.kind and self.mats == other.mats

    def __hash__(self):
        return hash((self.kind, self.mats))

    def __repr__(self):
        return f"FrobTuple(kind={self.kind}, n={self.n}, f={self.f})"

    def to_lists(self):
        return [m.to_lists() for m in self.mats]


def flatten_tuple(mats):
    """Slot-major, row-major coordinates of a tuple of matrices."""
    return tuple(x for m in mats for x in m.flatten())


def unflatten_tuple(vec, n: int, f: int):
    vec = tuple(vec)
    if len(vec) != f * n * n:
        raise InvalidInputError("flat vector length does not match (n, f)")
    return tuple(Mat.from_flat(vec[s * n * n:(s + 1) * n * n], n, n) for s in range(f))


class BigOp:
    """(f n^2) x (f n^2) operator on gl_n^(x f) in the canonical ordering."""

    __slots__ = ("n", "f", "matrix")

    ORDERING = "slot-major,row-major"

    def __init__(self, n: int, f: int, matrix: Mat):
        if matrix.rows != matrix.cols or matrix.rows != f * n * n:
            raise InvalidInputError("BigOp matrix has the wrong size")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("BigOp is immutable")

    @property
    def dim(self) -> int:
        return self.f * self.n * self.n

    @property
    def p(self) -> int:
        return self.matrix.p

    @classmethod
    def identity(cls, n: int, f: int, p: int = 2) -> "BigOp":
        return cls(n, f, Mat.identity(f * n * n, p))

    def _check(self, other: "BigOp"):
        if (self.n, self.f) != (other.n, other.f):
            raise InvalidInputError(
                f"cannot combine BigOps with (n={self.n}, f={self.f}) "
                f"and (n={other.n}, f={other.f})")

    def __add__(self, other):
        if not isinstance(other, BigOp):
            return NotImplemented
        self._check(other)
        return BigOp(self.n, self.f, self.matrix + other.matrix)

    def __sub__(self, other):
        if not isinstance(other, BigOp):
            return NotImplemented
        self._check(other)
        return BigOp(self.n, self.f, self.matrix - other.matrix)

    def __neg__(self):
        return BigOp(self.n, self.f, -self.matrix)

    def __mul__(self, other):
        if isinstance(other, BigOp):
            self._check(other)
            return BigOp(self.n, self.f, self.matrix * other.matrix)
        if isinstance(other, (Scalar, int, Fraction)):
            return BigOp(self.n, self.f, self.matrix * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "BigOp":
        return BigOp(self.n, self.f, self.matrix ** k)

    def __eq__(self, other):
        if not isinstance(other, BigOp):
            return NotImplemented
        return (self.n, self.f) == (other.n, other.f) and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.n, self.f, self.matrix))

    def apply_tuple(self, mats):
        """Apply to a tuple of f matrices, returning a tuple of f matrices."""
        return unflatten_tuple(self.matrix.apply(flatten_tuple(mats)), self.n, self.f)

    def kernel(self) -> Subspace:
        return kernel(self.matrix)

    def to_json_dict(self):
        return {
            "n": self.n,
            "f": self.f,
            "ordering": self.ORDERING,
            "matrix": self.matrix.to_lists(),
        }

    def __repr__(self):
        return f"BigOp(n={self.n}, f={self.f}, dim={self.dim})"


def ad_single(phi: Mat) -> BigOp:
    """Matrix of X -> phi X phi^-1 on gl_n, as a BigOp with f = 1."""
    if not phi.is_square:
        raise InvalidInputError("ad_single needs a square matrix")
    n, p = phi.rows, phi.p
    phi_inv = phi.inverse()
    cols = []
    for i in range(n):
        for j in range(n):
            cols.append((phi * Mat.unit(n, i, j, p) * phi_inv).flatten())
    return BigOp(n, 1, Mat(list(map(list, zip(*cols)))))


def _embed_block(big, block: Mat, bi: int, bj: int, bs: int):
    for r in range(bs):
        for c in range(bs):
            big[bi * bs + r][bj * bs + c] = block[r, c]


def ad_frobenius(phi: FrobTuple) -> BigOp:
    """Twisted adjoint (X_1, ..., X_f) -> (Ad(Phi_1) X_2, ..., Ad(Phi_f) X_1).

    Block-cyclic: block row i, block column i+1 (mod f) holds ad_single(Phi_i).
    """
    if phi.kind != GROUP:
        raise InvalidInputError("ad_frobenius needs a group-element tuple")
    n, f, p = phi.n, phi.f, phi.p
    if f == 1:
        return ad_single(phi[0])
    bs = n * n
    big = [[Scalar(0, 0, p) for _ in range(f * bs)] for _ in range(f * bs)]
    for i in range(f):
        _embed_block(big, ad_single(phi[i]).matrix, i, (i + 1) % f, bs)
    return BigOp(n, f, Mat(big))


def ad_n(nil: FrobTuple) -> BigOp:
    """Block-diagonal operator with block i equal to X -> N_i X - X N_i."""
    if nil.kind != LIE:
        raise InvalidInputError("ad_n needs a Lie-element tuple")
    n, f, p = nil.n, nil.f, nil.p
    bs = n * n
    big = [[Scalar(0, 0, p) for _ in range(f * bs)] for _ in range(f * bs)]
    for s in range(f):
        cols = []
        for i in range(n):
            for j in range(n):
                e = Mat.unit(n, i, j, p)
                cols.append((nil[s] * e - e * nil[s]).flatten())
        _embed_block(big, Mat(list(map(list, zip(*cols)))), s, s, bs)
    return BigOp(n, f, Mat(big))


def one_minus_pad(phi: FrobTuple) -> BigOp:
    """I - p * AdPhi on gl_n^(x f); its kernel carries the nilpotent locus."""
    op = ad_frobenius(phi)
    return BigOp.identity(phi.n, phi.f, phi.p) - op * phi.p


def pad_minus_one(phi: FrobTuple) -> BigOp:
    """p * AdPhi - I, the degree-two row of the deformation complex."""
    return -one_minus_pad(phi)

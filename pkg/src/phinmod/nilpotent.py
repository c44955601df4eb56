"""Cocharacters attached to nilpotents of gl_n, gradings, and parabolic data.

A cocharacter is stored as a conjugator g and an integer weight vector w,
meaning t -> g * diag(t^w_1, ..., t^w_n) * g^-1.  The cocharacter attached to
a nilpotent N assigns, inside a Jordan basis, the weights m-1, m-3, ..., 1-m
to each block of size m; it satisfies Ad(lambda(t)) N = t^2 N, and the induced
grading/filtration of gl_n is independent of the choices made.
"""

from __future__ import annotations

from .errors import InternalCheckError, InvalidInputError
from .field import Scalar
from .linalg import (
    Mat,
    Subspace,
    is_nilpotent,
    jordan_basis_nilpotent,
    kernel,
    pattern_of_subspace,
)

__all__ = [
    "Cochar",
    "GradedDecomp",
    "ParabolicData",
    "associated_cocharacter",
    "grading",
    "threshold",
    "parabolic_of",
    "centralizer_lie",
    "ad_operator",
]


class Cochar:
    """One-parameter subgroup g * diag(t^w) * g^-1 of GL_n."""

    __slots__ = ("g", "w", "_g_inv")

    def __init__(self, g: Mat, w):
        w = tuple(int(x) for x in w)
        if not g.is_square or g.rows != len(w):
            raise InvalidInputError("conjugator size does not match weight vector")
        g_inv = g.inverse()  # raises on singular conjugator
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "_g_inv", g_inv)

    def __setattr__(self, name, value):
        raise AttributeError("Cochar is immutable")

    @classmethod
    def diagonal(cls, w, p: int = 2) -> "Cochar":
        return cls(Mat.identity(len(tuple(w)), p), w)

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def p(self) -> int:
        return self.g.p

    def at(self, t: Scalar) -> Mat:
        """Evaluate at an invertible scalar; exact for integer powers."""
        t = Scalar.of(t, self.p) if not isinstance(t, Scalar) else t
        return self.g * Mat.diagonal([t ** wi for wi in self.w], self.p) * self._g_inv

    def derivative(self) -> Mat:
        """d(lambda)(1) = g * diag(w) * g^-1."""
        return self.g * Mat.diagonal(list(self.w), self.p) * self._g_inv

    def weight_vectors(self):
        """Pairs (weight, basis matrix) for the adjoint action on gl_n:
        g e_ij g^-1 has weight w_i - w_j."""
        n, p = self.n, self.p
        out = []
        for i in range(n):
            for j in range(n):
                out.append((self.w[i] - self.w[j],
                            self.g * Mat.unit(n, i, j, p) * self._g_inv))
        return out

    def __eq__(self, other):
        if not isinstance(other, Cochar):
            return NotImplemented
        return self.g == other.g and self.w == other.w

    def __hash__(self):
        return hash((self.g, self.w))

    def __repr__(self):
        return f"Cochar(w={self.w})"

    def to_json_dict(self):
        return {"conjugator": self.g.to_lists(), "weights": list(self.w)}


class GradedDecomp:
    """Eigenspace decomposition of gl_n under conjugation by a cocharacter."""

    __slots__ = ("cochar", "pieces")

    def __init__(self, cochar: Cochar, pieces):
        object.__setattr__(self, "cochar", cochar)
        object.__setattr__(self, "pieces", dict(pieces))

    def __setattr__(self, name, value):
        raise AttributeError("GradedDecomp is immutable")

    def weights(self):
        return sorted(self.pieces)

    def piece(self, k: int) -> Subspace:
        n, p = self.cochar.n, self.cochar.p
        return self.pieces.get(k, Subspace.zero(n * n, p))


class ParabolicData:
    """Lie-algebra data of the parabolic attached to a cocharacter:
    p = g_{>=0}, u = g_{>0}, levi = g_0, all as canonical subspaces of gl_n.

    Equality compares the subalgebras, not the cocharacter, so conjugation
    classes that give the same filtration compare equal.
    """

    __slots__ = ("cochar", "p_lie", "u_lie", "levi_lie")

    def __init__(self, cochar: Cochar, p_lie: Subspace, u_lie: Subspace, levi_lie: Subspace):
        object.__setattr__(self, "cochar", cochar)
        object.__setattr__(self, "p_lie", p_lie)
        object.__setattr__(self, "u_lie", u_lie)
        object.__setattr__(self, "levi_lie", levi_lie)

    def __setattr__(self, name, value):
        raise AttributeError("ParabolicData is immutable")

    @property
    def n(self) -> int:
        return self.cochar.n

    def __eq__(self, other):
        if not isinstance(other, ParabolicData):
            return NotImplemented
        return (self.p_lie == other.p_lie and self.u_lie == other.u_lie
                and self.levi_lie == other.levi_lie)

    def __hash__(self):
        return hash((self.p_lie, self.u_lie, self.levi_lie))

    def __repr__(self):
        return f"ParabolicData(n={self.n}, dim p={self.p_lie.dim})"

    def to_json_dict(self):
        n = self.n
        out = {}
        for name, sub in (("p_lie", self.p_lie), ("u_lie", self.u_lie),
                          ("levi_lie", self.levi_lie)):
            d = sub.to_json_dict()
            pattern = pattern_of_subspace(sub, n)
            d["pattern"] = None if pattern is None else [list(ij) for ij in pattern]
            out[name] = d
        out["weights"] = list(self.cochar.w)
        return out


def ad_operator(x: Mat) -> Mat:
    """Matrix of ad_x = [x, -] on gl_n in row-major coordinates."""
    n, p = x.rows, x.p
    cols = []
    for i in range(n):
        for j in range(n):
            e = Mat.unit(n, i, j, p)
            cols.append((x * e - e * x).flatten())
    return Mat(list(map(list, zip(*cols))))


def associated_cocharacter(nil: Mat) -> Cochar:
    """Cocharacter with Ad(lambda(t)) nil = t^2 nil, built from a Jordan basis.

    Per Jordan block of size m the weights are m-1, m-3, ..., 1-m; blocks are
    sorted by size, so the output is deterministic.  The zero matrix gets the
    zero cocharacter.
    """
    if not nil.is_square:
        raise InvalidInputError("associated cocharacter needs a square matrix")
    if not is_nilpotent(nil):
        raise InvalidInputError("associated cocharacter needs a nilpotent matrix")
    n, p = nil.rows, nil.p
    if nil.is_zero():
        return Cochar(Mat.identity(n, p), [0] * n)
    g, partition = jordan_basis_nilpotent(nil)
    w = []
    for size in partition:
        w.extend(range(size - 1, -size, -2))
    lam = Cochar(g, w)
    for t0 in (2, 3):
        t = Scalar(t0, 0, p)
        if lam.at(t) * nil * lam.at(t).inverse() != nil * (t * t):
            raise InternalCheckError("cocharacter fails Ad(lambda(t)) N = t^2 N")
    return lam


def grading(c: Cochar) -> GradedDecomp:
    """Weight decomposition of gl_n under the adjoint action of c."""
    n, p = c.n, c.p
    buckets: dict[int, list] = {}
    for wt, mat in c.weight_vectors():
        buckets.setdefault(wt, []).append(mat.flatten())
    pieces = {wt: Subspace.from_vectors(vecs, n * n, p) for wt, vecs in buckets.items()}
    return GradedDecomp(c, pieces)


def threshold(c: Cochar, k: int) -> Subspace:
    """The filtration piece g_{>=k} = direct sum of weights >= k."""
    n, p = c.n, c.p
    vecs = [mat.flatten() for wt, mat in c.weight_vectors() if wt >= k]
    return Subspace.from_vectors(vecs, n * n, p)


def parabolic_of(nil: Mat) -> ParabolicData:
    """Parabolic data attached to a nonzero nilpotent via its cocharacter."""
    if nil.is_zero():
        raise InvalidInputError("parabolic_of needs a nonzero nilpotent")
    lam = associated_cocharacter(nil)
    dec = grading(lam)
    return ParabolicData(lam, threshold(lam, 0), threshold(lam, 1), dec.piece(0))


def centralizer_lie(nil: Mat) -> Subspace:
    """Kernel of ad_nil on gl_n (the Lie-algebra centralizer)."""
    if not nil.is_square:
        raise InvalidInputError("centralizer needs a square matrix")
    return kernel(ad_operator(nil))

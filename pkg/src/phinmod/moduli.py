"""Points (Phi, N) with N_i = p Ad(Phi_i)(N_{i+1}), their deformation
complexes, cohomology dimensions, tangent spaces, and filtered variants.

The three-term complex at a valid point is

    d0(u) = ((1 - AdPhi) u, ad_N u)        degree 0 -> 1
    d1(x, y) = ad_N x + (p AdPhi - 1) y    degree 1 -> 2

and d1 o d0 = 0 is re-checked on every call (it encodes the point's defining
relation).  Tangent vectors use the perturbation (1 + eps A_i) Phi_i,
N_i + eps M_i; the tangent space is exactly ker d1 in (A, M) coordinates.
The filtered complex adds the degree-1 term gl^(x f) / Fil0 fed by reduction
mod Fil0.
"""

from __future__ import annotations

from .adjoint import (
    BigOp,
    FrobTuple,
    ad_frobenius,
    ad_n,
    one_minus_pad,
    pad_minus_one,
    unflatten_tuple,
)
from .dual import dmat, dmat_inv, dmat_mul, dmat_scale
from .errors import InternalCheckError, InvalidInputError
from .field import Scalar, sqrt_p
from .linalg import Mat, Subspace, is_nilpotent, kernel, rank
from .nilpotent import Cochar, associated_cocharacter, threshold

__all__ = [
    "ModuliPoint",
    "ComplexReport",
    "Filtration",
    "validate_point",
    "canonical_point",
    "transport",
    "complex_dims",
    "tangent_space",
    "filtered_complex_dims",
    "verify_tangent_vector",
]


class ModuliPoint:
    """A framed pair (Phi tuple, N tuple) satisfying the defining relation."""

    __slots__ = ("phi", "nil")

    def __init__(self, phi: FrobTuple, nil: FrobTuple):
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "nil", nil)

    def __setattr__(self, name, value):
        raise AttributeError("ModuliPoint is immutable")

    @property
    def n(self) -> int:
        return self.phi.n

    @property
    def f(self) -> int:
        return self.phi.f

    @property
    def p(self) -> int:
        return self.phi.p

    def __eq__(self, other):
        if not isinstance(other, ModuliPoint):
            return NotImplemented
        return self.phi == other.phi and self.nil == other.nil

    def __repr__(self):
        return f"ModuliPoint(n={self.n}, f={self.f}, p={self.p})"

    def to_json_dict(self):
        return {"phi": self.phi.to_lists(), "nil": self.nil.to_lists()}


class ComplexReport:
    """Cohomology dimensions of the (possibly filtered) deformation complex."""

    __slots__ = ("h0", "h1", "h2", "rank_d0", "rank_d1", "filtered", "tangent_dim")

    def __init__(self, h0, h1, h2, rank_d0, rank_d1, filtered, tangent_dim):
        for name, val in (("h0", h0), ("h1", h1), ("h2", h2),
                          ("rank_d0", rank_d0), ("rank_d1", rank_d1),
                          ("tangent_dim", tangent_dim)):
            if val < 0:
                raise InternalCheckError(f"negative dimension {name}={val}")
        object.__setattr__(self, "h0", h0)
        object.__setattr__(self, "h1", h1)
        object.__setattr__(self, "h2", h2)
        object.__setattr__(self, "rank_d0", rank_d0)
        object.__setattr__(self, "rank_d1", rank_d1)
        object.__setattr__(self, "filtered", filtered)
        object.__setattr__(self, "tangent_dim", tangent_dim)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexReport is immutable")

    def __eq__(self, other):
        if not isinstance(other, ComplexReport):
            return NotImplemented
        return all(getattr(self, k) == getattr(other, k) for k in self.__slots__)

    def __repr__(self):
        tag = "filtered" if self.filtered else "plain"
        return (f"ComplexReport({tag}, h0={self.h0}, h1={self.h1}, h2={self.h2}, "
                f"tangent={self.tangent_dim})")

    def to_json_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}


def validate_point(phi: FrobTuple, nil: FrobTuple) -> ModuliPoint:
    """Check N_i = p Phi_i N_{i+1} Phi_i^-1 (indices mod f) and nilpotency.

    Raises InvalidInputError naming the first failing index.
    """
    if phi.kind != "group":
        raise InvalidInputError("phi must be a group-element tuple")
    if nil.kind != "lie":
        raise InvalidInputError("nil must be a Lie-element tuple")
    if (phi.n, phi.f, phi.p) != (nil.n, nil.f, nil.p):
        raise InvalidInputError("phi and nil shapes disagree")
    f, p = phi.f, phi.p
    for i in range(f):
        lhs = nil[i]
        rhs = (phi[i] * nil[(i + 1) % f] * phi[i].inverse()) * p
        if lhs != rhs:
            raise InvalidInputError(f"relation fails at index {i}", index=i)
    for i in range(f):
        if not is_nilpotent(nil[i]):
            raise InvalidInputError(f"slot {i} of nil is not nilpotent", index=i)
    return ModuliPoint(phi, nil)


def canonical_point(nil: Mat, f: int = 1) -> ModuliPoint:
    """The point (lambda(p^(-1/2)), ..., N, ..., N) over a nilpotent N.

    lambda is the cocharacter attached to N, so Ad(Phi0) N = p^-1 N holds
    exactly in Q(sqrt(p)); the zero nilpotent gets Phi = identity.
    """
    n, p = nil.rows, nil.p
    if nil.is_zero():
        phi0 = Mat.identity(n, p)
    else:
        lam = associated_cocharacter(nil)
        phi0 = lam.at(sqrt_p(p).inv())
    phi = FrobTuple.group([phi0] * f)
    nt = FrobTuple.lie([nil] * f)
    return validate_point(phi, nt)


def transport(pt: ModuliPoint, conjugators) -> ModuliPoint:
    """Frame change by a tuple (a_1, ..., a_f) of invertible matrices:
    Phi_i -> a_i Phi_i a_{i+1}^-1, N_i -> a_i N_i a_i^-1."""
    a = tuple(conjugators)
    f = pt.f
    if len(a) != f:
        raise InvalidInputError("need one conjugator per slot")
    phi = [a[i] * pt.phi[i] * a[(i + 1) % f].inverse() for i in range(f)]
    nil = [a[i] * pt.nil[i] * a[i].inverse() for i in range(f)]
    return validate_point(FrobTuple.group(phi), FrobTuple.lie(nil))


def _differentials(pt: ModuliPoint):
    """(d0, d1) as matrices; raises if d1 o d0 != 0."""
    n, f, p = pt.n, pt.f, pt.p
    adphi = ad_frobenius(pt.phi)
    adn = ad_n(pt.nil)
    one_minus_ad = BigOp.identity(n, f, p) - adphi
    d0 = Mat.vstack([one_minus_ad.matrix, adn.matrix])
    d1 = Mat.hstack([adn.matrix, pad_minus_one(pt.phi).matrix])
    if not (d1 * d0).is_zero():
        raise InternalCheckError("d1 o d0 != 0; point does not satisfy the relation")
    return d0, d1


def complex_dims(pt: ModuliPoint) -> ComplexReport:
    """Dimensions h0, h1, h2 of the three-term complex at a valid point."""
    d = pt.f * pt.n * pt.n
    d0, d1 = _differentials(pt)
    r0, r1 = rank(d0), rank(d1)
    h0 = d - r0
    h2 = d - r1
    h1 = h0 + h2  # Euler characteristic is zero
    if h1 != (2 * d - r1) - r0:
        raise InternalCheckError("cohomology cross-check failed")
    return ComplexReport(h0, h1, h2, r0, r1, False, d + h2)


def tangent_space(pt: ModuliPoint) -> Subspace:
    """All (A, M) with M_i - p Ad(Phi_i) M_{i+1} = [A_i, N_i], as the kernel
    of the map (A, M) -> ad_N A + (1 - p AdPhi) M on 2 f n^2 coordinates.

    Note the M-block sign: [A, N] = -ad_N(A), so this kernel is isomorphic to
    but not equal to ker d1; the dual-number oracle pins the convention."""
    t = Mat.hstack([ad_n(pt.nil).matrix, one_minus_pad(pt.phi).matrix])
    ker_t = kernel(t)
    if ker_t.dim != complex_dims(pt).tangent_dim:
        raise InternalCheckError("tangent space dimension mismatch")
    return ker_t


class Filtration:
    """Degree-zero filtration piece cut out by a cocharacter applied
    diagonally across the f slots: Fil0 = g_{>=0}(cochar) in every slot."""

    __slots__ = ("cochar", "f", "fil0")

    def __init__(self, cochar: Cochar, f: int):
        n, p = cochar.n, cochar.p
        slot = threshold(cochar, 0)
        basis = []
        zero = [Scalar(0, 0, p)] * (n * n)
        for s in range(f):
            for v in slot.basis:
                vec = zero * f
                vec[s * n * n:(s + 1) * n * n] = list(v)
                basis.append(tuple(vec))
        object.__setattr__(self, "cochar", cochar)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "fil0", Subspace.from_vectors(basis, f * n * n, p))

    def __setattr__(self, name, value):
        raise AttributeError("Filtration is immutable")

    @classmethod
    def from_weights(cls, weights, f: int, p: int = 2) -> "Filtration":
        return cls(Cochar.diagonal(weights, p), f)

    @property
    def n(self) -> int:
        return self.cochar.n

    def __repr__(self):
        return f"Filtration(weights={self.cochar.w}, f={self.f}, dim fil0={self.fil0.dim})"


def filtered_complex_dims(pt: ModuliPoint, fil: Filtration) -> ComplexReport:
    """Dimensions of the filtered complex: degree 1 gains the quotient
    gl^(x f)/Fil0, fed by u -> u mod Fil0; d1 ignores the quotient part."""
    if fil.n != pt.n or fil.f != pt.f:
        raise InvalidInputError("filtration shape does not match the point")
    d = pt.f * pt.n * pt.n
    d0, d1 = _differentials(pt)
    q = fil.fil0.quotient_map()  # None when Fil0 is everything
    if q is not None:
        d0 = Mat.vstack([d0, q])
    qdim = 0 if q is None else q.rows
    r0, r1 = rank(d0), rank(d1)
    h0 = d - r0
    h2 = d - r1
    h1 = (2 * d + qdim - r1) - r0
    return ComplexReport(h0, h1, h2, r0, r1, True, d + h2)


def verify_tangent_vector(pt: ModuliPoint, a_mats, m_mats) -> bool:
    """Dual-number oracle: substitute (1 + eps A_i) Phi_i and N_i + eps M_i
    into the defining relation and test it exactly with eps^2 = 0."""
    a_mats, m_mats = tuple(a_mats), tuple(m_mats)
    n, f, p = pt.n, pt.f, pt.p
    if len(a_mats) != f or len(m_mats) != f:
        raise InvalidInputError("need f perturbation matrices for A and for M")
    ident = Mat.identity(n, p)
    phis = [dmat_mul(dmat(ident, a_mats[i]), dmat(pt.phi[i])) for i in range(f)]
    nils = [dmat(pt.nil[i], m_mats[i]) for i in range(f)]
    for i in range(f):
        lhs = nils[i]
        rhs = dmat_scale(dmat_mul(dmat_mul(phis[i], nils[(i + 1) % f]),
                                  dmat_inv(phis[i])), p)
        if not (lhs[0] == rhs[0] and lhs[1] == rhs[1]):
            return False
    return True


def tangent_vector_parts(vec, n: int, f: int):
    """Split a flat 2 f n^2 tangent coordinate vector into (A tuple, M tuple)."""
    vec = tuple(vec)
    half = f * n * n
    if len(vec) != 2 * half:
        raise InvalidInputError("tangent vector length must be 2 f n^2")
    return unflatten_tuple(vec[:half], n, f), unflatten_tuple(vec[half:], n, f)

"""Component analyses: the GL_2 divisor picture, the regular-orbit model and
its filtration reconstruction, and the GL_3 subregular model with its fibers
and singularity certificates.

GL_2 over an unramified base of degree f: with Nm = Phi_1 ... Phi_f, the two
components meet along the divisor p^f (Tr Nm)^2 = (p^f + 1)^2 det Nm, and the
kernel of 1 - p AdPhi is at most a line.

GL_3, f = 1: over a point (Phi, 0) the subregular model's fiber consists of
the rays in ker(1 - p AdPhi) of Jordan type (2, 1) together with their
attached parabolics.  A fiber with two or more points certifies a singular
point; the certificate is corroborated by the span of the model's tangent
images, computed from the linear system in (A, g, c):

    (A - g) + Ad(Phi) g   in  p           (deformed Phi stays in deformed P)
    (1 - p AdPhi)([g, N_P]) = [A, N_P]    (deformed line is still killed)

whose image in ambient tangent coordinates is { (A, c N_P) }.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .adjoint import FrobTuple, ad_single, one_minus_pad
from .dual import DualScalar, dmat, dmat_entry, dmat_mul
from .errors import InternalCheckError, InvalidInputError, UnsupportedCaseError
from .field import Scalar, scalar_sqrt
from .linalg import (
    Mat,
    Subspace,
    charpoly,
    is_nilpotent,
    jordan_type,
    kernel,
    poly_gcd_monic,
)
from .moduli import ModuliPoint
from .nilpotent import ParabolicData, ad_operator, parabolic_of, threshold

__all__ = [
    "Gl2Report",
    "SubFiber",
    "SingularityCertificate",
    "INFINITE_P1",
    "gl2_charpoly_formula",
    "gl2_report",
    "gl2_x0_tangent",
    "reg_filtration_reconstruct",
    "sub_fiber",
    "sub_tangent_image",
    "singularity_certificate",
    "phi_in_parabolic",
]

INFINITE_P1 = "P1"


# -- GL_2 ---------------------------------------------------------------------


def gl2_charpoly_formula(phi: Mat):
    """Closed-form characteristic polynomial of Ad(phi) on gl_2, ascending:
    1 - r t + 2(r - 1) t^2 - r t^3 + t^4 with r = (Tr phi)^2 / det phi."""
    if not (phi.is_square and phi.rows == 2):
        raise InvalidInputError("gl2 formula needs a 2x2 matrix")
    det = phi.det()
    if not det:
        raise InvalidInputError("gl2 formula needs an invertible matrix")
    tr = phi.trace()
    r = tr * tr / det
    one = Scalar(1, 0, phi.p)
    return [one, -r, (r - 1) * 2, -r, one]


class Gl2Report:
    """Divisor membership and kernel data for a GL_2 Frobenius tuple."""

    __slots__ = ("trace_nm", "det_nm", "divisor_value", "on_divisor",
                 "charpoly_ad", "kernel_dim")

    def __init__(self, trace_nm, det_nm, divisor_value, on_divisor,
                 charpoly_ad, kernel_dim):
        if kernel_dim > 1:
            raise InternalCheckError(f"gl2 kernel dimension {kernel_dim} exceeds 1")
        if on_divisor != (kernel_dim == 1) or on_divisor != (not divisor_value):
            raise InternalCheckError("divisor/kernel consistency violated")
        object.__setattr__(self, "trace_nm", trace_nm)
        object.__setattr__(self, "det_nm", det_nm)
        object.__setattr__(self, "divisor_value", divisor_value)
        object.__setattr__(self, "on_divisor", on_divisor)
        object.__setattr__(self, "charpoly_ad", charpoly_ad)
        object.__setattr__(self, "kernel_dim", kernel_dim)

    def __setattr__(self, name, value):
        raise AttributeError("Gl2Report is immutable")

    def __repr__(self):
        return f"Gl2Report(on_divisor={self.on_divisor}, kernel_dim={self.kernel_dim})"

    def to_json_dict(self):
        return {
            "trace_nm": self.trace_nm.to_pair(),
            "det_nm": self.det_nm.to_pair(),
            "divisor_value": self.divisor_value.to_pair(),
            "on_divisor": self.on_divisor,
            "charpoly_ad": [c.to_pair() for c in self.charpoly_ad],
            "kernel_dim": self.kernel_dim,
        }


def _nm(phi: FrobTuple) -> Mat:
    out = phi[0]
    for m in phi.mats[1:]:
        out = out * m
    return out


def gl2_report(phi: FrobTuple) -> Gl2Report:
    if phi.n != 2:
        raise InvalidInputError("gl2_report needs 2x2 slots")
    p, f = phi.p, phi.f
    nm = _nm(phi)
    tr, det = nm.trace(), nm.det()
    pf = Fraction(p) ** f
    divisor_value = tr * tr * pf - det * ((pf + 1) ** 2)
    kernel_dim = one_minus_pad(phi).kernel().dim
    return Gl2Report(tr, det, divisor_value, not divisor_value,
                     gl2_charpoly_formula(nm), kernel_dim)


def _divisor_value_dual(pairs, p: int, f: int) -> DualScalar:
    nm = pairs[0]
    for m in pairs[1:]:
        nm = dmat_mul(nm, m)
    tr = dmat_entry(nm, 0, 0) + dmat_entry(nm, 1, 1)
    det = (dmat_entry(nm, 0, 0) * dmat_entry(nm, 1, 1)
           - dmat_entry(nm, 0, 1) * dmat_entry(nm, 1, 0))
    pf = Fraction(p) ** f
    return tr * tr * pf - det * ((pf + 1) ** 2)


def gl2_x0_tangent(phi: FrobTuple) -> int:
    """Tangent dimension of the nonzero-nilpotent component at (phi, 0):
    tangent of the divisor (kernel of its exact gradient in the 4f entry
    coordinates) plus the kernel line of 1 - p AdPhi."""
    report = gl2_report(phi)
    if not report.on_divisor:
        raise InvalidInputError("gl2_x0_tangent needs a divisor point")
    p, f = phi.p, phi.f
    grad_nonzero = False
    for s in range(f):
        for i in range(2):
            for j in range(2):
                pairs = [dmat(m) for m in phi.mats]
                pairs[s] = dmat(phi[s], Mat.unit(2, i, j, p))
                comp = _divisor_value_dual(pairs, p, f)
                if comp.re != report.divisor_value:
                    raise InternalCheckError("dual evaluation disagrees at order zero")
                if comp.eps:
                    grad_nonzero = True
    divisor_tangent = 4 * f - (1 if grad_nonzero else 0)
    return divisor_tangent + report.kernel_dim


# -- regular orbit: filtration reconstruction --------------------------------


def reg_filtration_reconstruct(pt: ModuliPoint) -> ParabolicData:
    """Rebuild the parabolic filtration from Phi alone at a regular point
    (f = 1): accumulate ker(1 - p^i AdPhi) from the top weight down and
    compare with the filtration attached to N.  Mismatch is an internal
    error; on success the canonical parabolic data of N is returned."""
    if pt.f != 1:
        raise InvalidInputError("filtration reconstruction is a degree-one computation")
    n, p = pt.n, pt.p
    nil = pt.nil[0]
    if jordan_type(nil) != (n,):
        raise InvalidInputError("reconstruction needs a regular nilpotent")
    par = parabolic_of(nil)
    adphi = ad_single(pt.phi[0]).matrix
    ident = Mat.identity(n * n, p)
    accumulated = Subspace.zero(n * n, p)
    for i in range(n - 1, -1, -1):
        piece = kernel(ident - adphi * (Fraction(p) ** i))
        accumulated = accumulated.sum(piece)
        expected = threshold(par.cochar, 2 * i)
        if accumulated != expected:
            raise InternalCheckError(
                f"filtration level {2 * i} from Phi disagrees with the one from N")
    return par


# -- GL_3 subregular model ----------------------------------------------------


def phi_in_parabolic(phi: Mat, par: ParabolicData) -> bool:
    """Membership via filtration stability: Ad(phi) must preserve every
    threshold piece of the parabolic's grading."""
    n = par.n
    if phi.rows != n:
        raise InvalidInputError("size mismatch in parabolic membership test")
    phi_inv = phi.inverse()
    weights = sorted({wt for wt, _ in par.cochar.weight_vectors()})
    for k in weights:
        s = threshold(par.cochar, k)
        image = Subspace.from_vectors(
            [(phi * Mat.from_flat(v, n, n) * phi_inv).flatten() for v in s.basis],
            n * n, phi.p)
        if image != s:
            return False
    return True


class SubFiber:
    """Fiber of the subregular model over (phi, 0): qualifying rays with
    their parabolics, or the marker for a full projective line of them."""

    __slots__ = ("base_phi", "rays", "cardinality")

    def __init__(self, base_phi: Mat, rays, cardinality):
        rays = tuple(rays)
        if isinstance(cardinality, int):
            pars = [par for _, par, _ in rays]
            for a, b in combinations(pars, 2):
                if a == b:
                    raise InternalCheckError("finite fiber lists a repeated parabolic")
            if cardinality != len(rays):
                raise InternalCheckError("cardinality does not match listed rays")
        elif cardinality != INFINITE_P1:
            raise InvalidInputError(f"bad cardinality {cardinality!r}")
        object.__setattr__(self, "base_phi", base_phi)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "cardinality", cardinality)

    def __setattr__(self, name, value):
        raise AttributeError("SubFiber is immutable")

    def __repr__(self):
        return f"SubFiber(cardinality={self.cardinality})"

    def to_json_dict(self):
        return {
            "cardinality": self.cardinality,
            "rays": [
                {
                    "ray": ray.to_lists(),
                    "parabolic": par.to_json_dict(),
                    "phi_in_parabolic": inside,
                }
                for ray, par, inside in self.rays
            ],
        }


def _normalize_ray(m: Mat) -> Mat:
    lead = next(x for x in m.flatten() if x)
    return m * lead.inv()


def _binary_quadratic_roots(g):
    """Roots in Q(sqrt(p)) of a monic polynomial of degree <= 2."""
    if len(g) <= 1:
        return []
    if len(g) == 2:
        return [-g[0]]
    c0, c1 = g[0], g[1]
    disc = c1 * c1 - c0 * 4
    root = scalar_sqrt(disc)
    if root is None:
        raise UnsupportedCaseError("pencil roots fall outside Q(sqrt(p))")
    out = [(-c1 + root) / 2]
    other = (-c1 - root) / 2
    if other != out[0]:
        out.append(other)
    return out


def _pencil_rank_one_locus(x: Mat, y: Mat):
    """For the pencil a x + b y: None if rank <= 1 identically, else the
    finitely many rays (as matrices) where every 2x2 minor vanishes."""
    forms = []
    for rr in combinations(range(3), 2):
        for cc in combinations(range(3), 2):
            r0, r1 = rr
            c0, c1 = cc
            alpha = x[r0, c0] * x[r1, c1] - x[r0, c1] * x[r1, c0]
            gamma = y[r0, c0] * y[r1, c1] - y[r0, c1] * y[r1, c0]
            beta = (x[r0, c0] * y[r1, c1] + y[r0, c0] * x[r1, c1]
                    - x[r0, c1] * y[r1, c0] - y[r0, c1] * x[r1, c0])
            if alpha or beta or gamma:
                forms.append((alpha, beta, gamma))
    if not forms:
        return None
    rays = []
    if all(not alpha for alpha, _, _ in forms):
        rays.append(x)  # the ray at infinity (a : b) = (1 : 0)
    g = None
    for alpha, beta, gamma in forms:
        poly = [c for c in (gamma, beta, alpha)]
        while poly and not poly[-1]:
            poly.pop()
        g = poly if g is None else poly_gcd_monic(g, poly)
        if len(g) == 1:
            break
    if g and len(g) > 1:
        lead_inv = g[-1].inv()
        g = [c * lead_inv for c in g]
        for t0 in _binary_quadratic_roots(g):
            rays.append(x * t0 + y)
    return rays


def sub_fiber(phi: Mat) -> SubFiber:
    """Fiber of the subregular model over (phi, 0) for 3x3 phi."""
    if not (phi.is_square and phi.rows == 3):
        raise InvalidInputError("sub_fiber needs a 3x3 matrix")
    if not phi.is_invertible():
        raise InvalidInputError("sub_fiber needs an invertible matrix")
    k = one_minus_pad(FrobTuple.group([phi])).kernel()
    if k.dim >= 3:
        raise UnsupportedCaseError(f"kernel dimension {k.dim} is out of range")
    if k.dim == 0:
        return SubFiber(phi, [], 0)

    basis_mats = [Mat.from_flat(v, 3, 3) for v in k.basis]
    if k.dim == 1:
        candidates = [basis_mats[0]]
        infinite = False
    else:
        locus = _pencil_rank_one_locus(basis_mats[0], basis_mats[1])
        infinite = locus is None
        candidates = basis_mats if infinite else locus

    rays = []
    for cand in candidates:
        if not is_nilpotent(cand) or jordan_type(cand) != (2, 1):
            if infinite:
                raise InternalCheckError("projective-line pencil contains a bad ray")
            continue
        ray = _normalize_ray(cand)
        par = parabolic_of(ray)
        rays.append((ray, par, phi_in_parabolic(phi, par)))
    return SubFiber(phi, rays, INFINITE_P1 if infinite else len(rays))


def sub_tangent_image(phi: Mat, par: ParabolicData) -> Subspace:
    """Image of the subregular model's tangent space at (phi, 0, par) in the
    ambient tangent coordinates (A, M), as a subspace of gl_3 + gl_3.

    Solves the linear system in (A, g, c) described in the module docstring
    and projects onto (A, c N_P)."""
    n = 3
    p = phi.p
    if phi.rows != n or par.n != n:
        raise InvalidInputError("sub_tangent_image works on gl_3")
    p2 = threshold(par.cochar, 2)
    if p2.dim != 1:
        raise InvalidInputError("parabolic is not of subregular type")
    n_p = Mat.from_flat(p2.basis[0], n, n)
    if phi * n_p * phi.inverse() * p != n_p:
        raise InvalidInputError("1 - p AdPhi does not kill the weight-2 line")
    if not phi_in_parabolic(phi, par):
        raise InvalidInputError("phi does not lie in the parabolic")

    d = n * n
    adphi = ad_single(phi).matrix
    adnp = ad_operator(n_p)
    ident = Mat.identity(d, p)
    zero_col = [Scalar(0, 0, p)]
    q = par.p_lie.quotient_map()

    # rows: [Q | Q (AdPhi - 1) | 0]  and  [-ad_NP | (1 - p AdPhi) ad_NP | 0]
    blocks = []
    if q is not None:
        blocks.append((q, q * (adphi - ident)))
    blocks.append((-adnp, (ident - adphi * p) * adnp))
    rows = []
    for left, mid in blocks:
        for r in range(left.rows):
            rows.append(list(left.row(r)) + list(mid.row(r)) + zero_col)
    solutions = kernel(Mat(rows))

    np_flat = n_p.flatten()
    image_vectors = []
    for sol in solutions.basis:
        a_part = sol[:d]
        c = sol[2 * d]
        image_vectors.append(tuple(a_part) + tuple(x * c for x in np_flat))
    return Subspace.from_vectors(image_vectors, 2 * d, p)


class SingularityCertificate:
    """Exact evidence about (phi, 0) on the subregular component."""

    __slots__ = ("base_phi", "preimages", "tangent_span_dim", "verdict", "in_x_reg")

    SINGULAR = "SINGULAR"
    SMOOTH_UNKNOWN = "SMOOTH_UNKNOWN"

    def __init__(self, base_phi, preimages, tangent_span_dim, verdict, in_x_reg):
        multiple = preimages == INFINITE_P1 or (isinstance(preimages, int) and preimages >= 2)
        if verdict == self.SINGULAR and not multiple:
            raise InternalCheckError("SINGULAR verdict without multiple preimages")
        object.__setattr__(self, "base_phi", base_phi)
        object.__setattr__(self, "preimages", preimages)
        object.__setattr__(self, "tangent_span_dim", tangent_span_dim)
        object.__setattr__(self, "verdict", verdict)
        object.__setattr__(self, "in_x_reg", in_x_reg)

    def __setattr__(self, name, value):
        raise AttributeError("SingularityCertificate is immutable")

    def __repr__(self):
        return (f"SingularityCertificate({self.verdict}, preimages={self.preimages}, "
                f"span={self.tangent_span_dim})")

    def to_json_dict(self):
        return {
            "verdict": self.verdict,
            "preimages": self.preimages,
            "tangent_span_dim": self.tangent_span_dim,
            "in_x_reg": self.in_x_reg,
        }


def singularity_certificate(phi: Mat) -> SingularityCertificate:
    """Run the fiber analysis over (phi, 0) and certify singularity when the
    fiber has at least two points, corroborating with the tangent-image span.

    in_x_reg is False when the kernel of 1 - p AdPhi is abelian (which rules
    the point out of the regular component) and None when the test does not
    decide."""
    fiber = sub_fiber(phi)
    preimages = fiber.cardinality
    multiple = preimages == INFINITE_P1 or preimages >= 2

    span_dim = 0
    if fiber.rays:
        span = None
        for _, par, _ in fiber.rays[:2]:
            image = sub_tangent_image(phi, par)
            span = image if span is None else span.sum(image)
        span_dim = span.dim

    k = one_minus_pad(FrobTuple.group([phi])).kernel()
    kernel_mats = [Mat.from_flat(v, 3, 3) for v in k.basis]
    abelian = all((a * b - b * a).is_zero()
                  for a, b in combinations(kernel_mats, 2))
    in_x_reg = False if abelian else None

    verdict = (SingularityCertificate.SINGULAR if multiple
               else SingularityCertificate.SMOOTH_UNKNOWN)
    return SingularityCertificate(phi, preimages, span_dim, verdict, in_x_reg)


def gl2_charpoly_bruteforce(phi: Mat):
    """Independent route: characteristic polynomial of the explicit 4x4
    adjoint matrix.  Kept separate so the closed formula can be checked
    against it."""
    return charpoly(ad_single(phi).matrix)

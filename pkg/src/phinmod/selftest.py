"""Built-in invariant suite: deterministic spot checks across the modules.

Each check raises AssertionError (or any exception) on failure; the runner
collects names and outcomes.  All randomness is seeded, so repeated runs
produce identical results.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .adjoint import BigOp, FrobTuple, ad_frobenius, ad_single, one_minus_pad
from .components import (
    INFINITE_P1,
    gl2_charpoly_bruteforce,
    gl2_charpoly_formula,
    gl2_report,
    gl2_x0_tangent,
    reg_filtration_reconstruct,
    singularity_certificate,
    sub_fiber,
)
from .field import Scalar
from .linalg import (
    Mat,
    charpoly,
    is_nilpotent,
    jordan_type,
    kernel,
    pattern_of_subspace,
    poly_eval_mat,
    random_invertible,
)
from .moduli import (
    Filtration,
    canonical_point,
    complex_dims,
    filtered_complex_dims,
    tangent_space,
    tangent_vector_parts,
    transport,
    verify_tangent_vector,
)
from .nilpotent import (
    associated_cocharacter,
    centralizer_lie,
    grading,
    parabolic_of,
    threshold,
)

__all__ = ["run_selftest", "CHECKS"]


def _random_scalar(rng: Random, p: int) -> Scalar:
    frac = lambda: Fraction(rng.randint(-6, 6), rng.randint(1, 5))
    return Scalar(frac(), frac(), p)


def _nilpotent_of_type(parts, p: int) -> Mat:
    n = sum(parts)
    m = [[Scalar(0, 0, p)] * n for _ in range(n)]
    pos = 0
    for size in parts:
        for i in range(size - 1):
            m[pos + i][pos + i + 1] = Scalar(1, 0, p)
        pos += size
    return Mat(m)


NILPOTENT_TYPES = {2: [(2,), (1, 1)], 3: [(3,), (2, 1), (1, 1, 1)]}


def check_field_axioms():
    rng = Random(101)
    for p in (2, 3, 5):
        for _ in range(25):
            x, y, z = (_random_scalar(rng, p) for _ in range(3))
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            if x:
                assert x * x.inv() == 1
            assert not (x - x)


def check_irrationality():
    rng = Random(102)
    for p in (2, 3, 5):
        for _ in range(50):
            b = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            a = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            assert a * a != p * b * b  # sqrt(p) is irrational
            assert bool(Scalar(a, b, p))


def check_cayley_hamilton():
    rng = Random(103)
    for n in (2, 3, 4):
        m = Mat.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], 2)
        assert poly_eval_mat(charpoly(m), m).is_zero()


def check_adjoint_multiplicative():
    rng = Random(104)
    for _ in range(5):
        g = random_invertible(3, rng, 2)
        h = random_invertible(3, rng, 2)
        assert ad_single(g) * ad_single(h) == ad_single(g * h)


def check_frobenius_iterate():
    rng = Random(105)
    for f in (2, 3):
        mats = [random_invertible(2, rng, 3) for _ in range(f)]
        phi = FrobTuple.group(mats)
        power = (ad_frobenius(phi) ** f).matrix
        bs = 4
        for i in range(f):
            prod = mats[i]
            for step in range(1, f):
                prod = prod * mats[(i + step) % f]
            block = ad_single(prod).matrix
            for r in range(bs):
                for c in range(bs):
                    assert power[i * bs + r, i * bs + c] == block[r, c]


def check_kernel_nilpotency():
    rng = Random(106)
    for parts in ((2,), (3,), (2, 1)):
        n = sum(parts)
        base = canonical_point(_nilpotent_of_type(parts, 2), f=2)
        pt = transport(base, [random_invertible(n, rng, 2) for _ in range(2)])
        for v in one_minus_pad(pt.phi).kernel().basis:
            half = n * n
            for s in range(2):
                assert is_nilpotent(Mat.from_flat(v[s * half:(s + 1) * half], n, n))


def check_cocharacter_invariants():
    rng = Random(107)
    for n, types in NILPOTENT_TYPES.items():
        for parts in types:
            nil = _nilpotent_of_type(parts, 2)
            for conj in range(3):
                if conj:
                    g = random_invertible(n, rng, 2)
                    nil_c = g * nil * g.inverse()
                else:
                    nil_c = nil
                lam = associated_cocharacter(nil_c)
                for t0 in (2, 3, 5):
                    t = Scalar(t0, 0, 2)
                    lt = lam.at(t)
                    assert lt * nil_c * lt.inverse() == nil_c * (t * t)
                cent = centralizer_lie(nil_c)
                assert threshold(lam, 0).contains_subspace(cent)
                dec = grading(lam)
                zero_part = cent.intersect(dec.piece(0))
                pos_part = cent.intersect(threshold(lam, 1))
                assert cent.dim == zero_part.dim + pos_part.dim
                if not nil_c.is_zero():
                    from .nilpotent import ad_operator
                    from .linalg import column_space
                    image = column_space(ad_operator(nil_c))
                    assert image.contains_subspace(dec.piece(2))
                    assert image.contains(lam.derivative().flatten())


def check_complex_identities():
    rng = Random(108)
    for n, parts, f in ((2, (2,), 1), (3, (2, 1), 2), (3, (3,), 1)):
        base = canonical_point(_nilpotent_of_type(parts, 2), f=f)
        pt = transport(base, [random_invertible(n, rng, 2) for _ in range(f)])
        rep = complex_dims(pt)
        d = f * n * n
        assert rep.h0 - rep.h1 + rep.h2 == 0
        assert rep.tangent_dim == d + rep.h2
        assert tangent_space(pt).dim == rep.tangent_dim


def check_generic_obstruction_vanishing():
    for n, types in NILPOTENT_TYPES.items():
        for parts in types:
            rep = complex_dims(canonical_point(_nilpotent_of_type(parts, 2)))
            assert rep.h2 == 0


def check_filtered_identity():
    weights = {2: (1, 0), 3: (1, 0, 0)}
    for n, types in NILPOTENT_TYPES.items():
        for parts in types:
            pt = canonical_point(_nilpotent_of_type(parts, 2))
            fil = Filtration.from_weights(weights[n], 1, 2)
            rep = filtered_complex_dims(pt, fil)
            assert rep.h2 == 0
            q = n * n - fil.fil0.dim
            assert rep.h1 == q + rep.h0


def check_gl2_formula():
    rng = Random(109)
    for _ in range(20):
        phi = random_invertible(2, rng, 2)
        assert gl2_charpoly_formula(phi) == gl2_charpoly_bruteforce(phi)


def check_gl2_divisor():
    rng = Random(110)
    p = 2
    for f in (1, 2):
        for _ in range(10):
            phi = FrobTuple.group([random_invertible(2, rng, p) for _ in range(f)])
            rep = gl2_report(phi)
            nm_ad = ad_single(_nm_product(phi)).matrix
            det = (Mat.identity(4, p) - nm_ad * (Fraction(p) ** f)).det()
            assert (not det) == rep.on_divisor
            assert rep.kernel_dim <= 1


def _nm_product(phi: FrobTuple) -> Mat:
    out = phi[0]
    for m in phi.mats[1:]:
        out = out * m
    return out


def check_gl2_component_dims():
    rng = Random(111)
    nil = _nilpotent_of_type((2,), 2)
    for f in (1, 2):
        base = canonical_point(nil, f=f)
        pt = transport(base, [random_invertible(2, rng, 2) for _ in range(f)])
        assert complex_dims(pt).tangent_dim == 4 * f
        assert gl2_x0_tangent(pt.phi) == 4 * f


def check_sub_fiber_cases():
    p = 2
    two = Mat.diagonal([1, p, p * p], p)
    fiber = sub_fiber(two)
    assert fiber.cardinality == 2
    patterns = sorted(pattern_of_subspace(par.p_lie, 3)
                      for _, par, _ in fiber.rays)
    assert patterns == [
        [(1, 1), (1, 2), (1, 3), (2, 2), (3, 2), (3, 3)],
        [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (3, 3)],
    ]
    assert all(inside for _, _, inside in fiber.rays)

    line = sub_fiber(Mat.diagonal([1, p, p], p))
    assert line.cardinality == INFINITE_P1

    assert sub_fiber(Mat.identity(3, p)).cardinality == 0


def check_certificates():
    p = 2
    cert = singularity_certificate(Mat.diagonal([1, p, p], p))
    assert cert.verdict == "SINGULAR"
    assert cert.preimages == INFINITE_P1
    assert cert.tangent_span_dim >= 10
    assert cert.in_x_reg is False

    cert2 = singularity_certificate(Mat.diagonal([1, p, p * p], p))
    assert cert2.verdict == "SINGULAR"
    assert cert2.preimages == 2

    cert3 = singularity_certificate(Mat.identity(3, p))
    assert cert3.verdict == "SMOOTH_UNKNOWN"
    assert cert3.preimages == 0


def check_reg_reconstruction():
    rng = Random(112)
    for n in (2, 3):
        nil = _nilpotent_of_type((n,), 2)
        base = canonical_point(nil)
        assert reg_filtration_reconstruct(base) == parabolic_of(nil)
        g = random_invertible(n, rng, 2)
        pt = transport(base, [g])
        assert reg_filtration_reconstruct(pt) == parabolic_of(g * nil * g.inverse())


def check_dual_oracle():
    rng = Random(113)
    pt = canonical_point(_nilpotent_of_type((2, 1), 2))
    tang = tangent_space(pt)
    for v in tang.basis:
        a_mats, m_mats = tangent_vector_parts(v, 3, 1)
        assert verify_tangent_vector(pt, a_mats, m_mats)
    while True:
        vec = tuple(Scalar(rng.randint(-3, 3), 0, 2) for _ in range(18))
        if not tang.contains(vec):
            break
    a_mats, m_mats = tangent_vector_parts(vec, 3, 1)
    assert not verify_tangent_vector(pt, a_mats, m_mats)


def check_serial_roundtrip():
    rng = Random(114)
    for p in (2, 3):
        for _ in range(10):
            s = _random_scalar(rng, p)
            assert Scalar.from_pair(s.to_pair(), p) == s
    m = random_invertible(3, rng, 2)
    assert Mat.from_lists(m.to_lists(), 2) == m


def check_bigop_guards():
    a = BigOp.identity(2, 1, 2)
    b = BigOp.identity(2, 2, 2)
    try:
        _ = a + b
    except Exception:
        return
    raise AssertionError("mismatched BigOps combined without complaint")


def check_jordan_examples():
    p = 2
    assert jordan_type(Mat.zero(3, 3, p)) == (1, 1, 1)
    assert jordan_type(_nilpotent_of_type((2, 1), p)) == (2, 1)
    assert jordan_type(_nilpotent_of_type((3,), p)) == (3,)
    assert kernel(Mat.identity(3, p)).dim == 0


CHECKS = [
    ("field_axioms", check_field_axioms),
    ("irrationality", check_irrationality),
    ("cayley_hamilton", check_cayley_hamilton),
    ("adjoint_multiplicative", check_adjoint_multiplicative),
    ("frobenius_iterate", check_frobenius_iterate),
    ("kernel_nilpotency", check_kernel_nilpotency),
    ("cocharacter_invariants", check_cocharacter_invariants),
    ("complex_identities", check_complex_identities),
    ("generic_obstruction_vanishing", check_generic_obstruction_vanishing),
    ("filtered_identity", check_filtered_identity),
    ("gl2_formula", check_gl2_formula),
    ("gl2_divisor", check_gl2_divisor),
    ("gl2_component_dims", check_gl2_component_dims),
    ("sub_fiber_cases", check_sub_fiber_cases),
    ("certificates", check_certificates),
    ("reg_reconstruction", check_reg_reconstruction),
    ("dual_oracle", check_dual_oracle),
    ("serial_roundtrip", check_serial_roundtrip),
    ("bigop_guards", check_bigop_guards),
    ("jordan_examples", check_jordan_examples),
]


def run_selftest() -> dict:
    failures = []
    for name, fn in CHECKS:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - report, do not crash
            failures.append({"check": name, "error": f"{type(exc).__name__}: {exc}"})
    return {
        "ok": not failures,
        "passed": len(CHECKS) - len(failures),
        "failed": len(failures),
        "failures": failures,
    }

"""Adjoint and twisted-Frobenius operators on gl_n tuples."""

from fractions import Fraction
from random import Random

import pytest

from phinmod.adjoint import (
    BigOp,
    FrobTuple,
    ad_frobenius,
    ad_n,
    ad_single,
    flatten_tuple,
    one_minus_pad,
    pad_minus_one,
    unflatten_tuple,
)
from phinmod.errors import InvalidInputError
from phinmod.linalg import Mat, Subspace, is_nilpotent, random_invertible
from phinmod.moduli import canonical_point, transport

from util import e, nilpotent_of_type


def test_ad_single_identity():
    assert ad_single(Mat.identity(3, 2)) == BigOp.identity(3, 1, 2)


def test_ad_single_diagonal_scaling():
    p = 2
    op = ad_single(Mat.diagonal([1, p], p))
    (out,) = op.apply_tuple([e(2, 1, 2)])
    assert out == e(2, 1, 2) * Fraction(1, p)

    op3 = ad_single(Mat.diagonal([1, p, p * p], p))
    (out3,) = op3.apply_tuple([e(3, 2, 3)])
    assert out3 == e(3, 2, 3) * Fraction(1, p)


def test_ad_single_rejects_singular():
    with pytest.raises(InvalidInputError):
        ad_single(Mat.from_rows([[1, 2], [2, 4]], 2))


def test_ad_frobenius_f1_matches_ad_single():
    rng = Random(41)
    m = random_invertible(2, rng, 2)
    assert ad_frobenius(FrobTuple.group([m])) == ad_single(m)


def test_ad_frobenius_identity_swap():
    op = ad_frobenius(FrobTuple.group([Mat.identity(2, 2)] * 2))
    x = e(2, 1, 2)
    z = Mat.zero(2, 2, 2)
    out = op.apply_tuple([x, z])
    assert out == (z, x)


def test_ad_frobenius_example_f2():
    p = 2
    op = ad_frobenius(FrobTuple.group([Mat.diagonal([1, p], p), Mat.identity(2, p)]))
    out = op.apply_tuple([Mat.zero(2, 2, p), e(2, 1, 2)])
    assert out == (e(2, 1, 2) * Fraction(1, p), Mat.zero(2, 2, p))


def test_ad_n_examples():
    p = 2
    assert ad_n(FrobTuple.lie([Mat.zero(2, 2, p)])).matrix.is_zero()

    opn = ad_n(FrobTuple.lie([e(2, 1, 2)]))
    (out,) = opn.apply_tuple([e(2, 2, 1)])
    assert out == Mat.diagonal([1, -1], p)

    n_reg = nilpotent_of_type((3,))
    op_reg = ad_n(FrobTuple.lie([n_reg]))
    (out3,) = op_reg.apply_tuple([Mat.diagonal([2, 0, -2], p)])
    assert out3 == n_reg * (-2)


def test_one_minus_pad_kernels():
    p = 2
    k1 = one_minus_pad(FrobTuple.group([Mat.diagonal([1, p], p)])).kernel()
    assert k1.dim == 1
    assert k1.contains(e(2, 1, 2).flatten())

    k2 = one_minus_pad(FrobTuple.group([Mat.diagonal([1, p, p], p)])).kernel()
    expected2 = Subspace.from_vectors(
        [e(3, 1, 2).flatten(), e(3, 1, 3).flatten()], 9, p)
    assert k2 == expected2

    k3 = one_minus_pad(FrobTuple.group([Mat.diagonal([1, p, p * p], p)])).kernel()
    expected3 = Subspace.from_vectors(
        [e(3, 1, 2).flatten(), e(3, 2, 3).flatten()], 9, p)
    assert k3 == expected3


def test_pad_minus_one_is_negative():
    phi = FrobTuple.group([Mat.diagonal([1, 2], 2)])
    assert pad_minus_one(phi) == -one_minus_pad(phi)


def test_ad_single_multiplicative():
    rng = Random(42)
    for n in (2, 3):
        for _ in range(5):
            g = random_invertible(n, rng, 2)
            h = random_invertible(n, rng, 2)
            assert ad_single(g) * ad_single(h) == ad_single(g * h)


def test_frobenius_iterate_block_diagonal():
    rng = Random(43)
    for f in (2, 3):
        mats = [random_invertible(2, rng, 3) for _ in range(f)]
        power = (ad_frobenius(FrobTuple.group(mats)) ** f).matrix
        bs = 4
        for i in range(f):
            prod = mats[i]
            for step in range(1, f):
                prod = prod * mats[(i + step) % f]
            block = ad_single(prod).matrix
            for r in range(f * bs):
                for c in range(f * bs):
                    if r // bs == i and c // bs == i:
                        assert power[r, c] == block[r % bs, c % bs]
                    elif r // bs == i:
                        assert not power[r, c]


def test_kernel_elements_are_nilpotent_tuples():
    rng = Random(44)
    for parts, f in (((2,), 2), ((2, 1), 1), ((3,), 3)):
        n = sum(parts)
        base = canonical_point(nilpotent_of_type(parts, 2), f=f)
        pt = transport(base, [random_invertible(n, rng, 2) for _ in range(f)])
        ker = one_minus_pad(pt.phi).kernel()
        assert ker.dim >= 1
        for v in ker.basis:
            for slot in unflatten_tuple(v, n, f):
                assert is_nilpotent(slot)


def test_flatten_unflatten_roundtrip():
    rng = Random(45)
    mats = [random_invertible(3, rng, 2) for _ in range(2)]
    assert unflatten_tuple(flatten_tuple(mats), 3, 2) == tuple(mats)


def test_bigop_shape_guards():
    a = BigOp.identity(2, 1, 2)
    b = BigOp.identity(2, 2, 2)
    c = BigOp.identity(3, 1, 2)
    for other in (b, c):
        with pytest.raises(InvalidInputError):
            _ = a + other
        with pytest.raises(InvalidInputError):
            _ = a * other


def test_frobtuple_guards():
    with pytest.raises(InvalidInputError):
        FrobTuple.group([Mat.from_rows([[1, 2], [2, 4]], 2)])
    with pytest.raises(InvalidInputError):
        FrobTuple.group([Mat.identity(2, 2), Mat.identity(3, 2)])
    with pytest.raises(InvalidInputError):
        FrobTuple([], "group")
    with pytest.raises(InvalidInputError):
        FrobTuple([Mat.identity(2, 2)], "other")


def test_bigop_serialization_carries_ordering():
    d = BigOp.identity(2, 1, 2).to_json_dict()
    assert d["ordering"] == "slot-major,row-major"
    assert d["n"] == 2 and d["f"] == 1

"""Shared helpers for the test suite: seeded random data and standard forms."""

from __future__ import annotations

from fractions import Fraction
from random import Random

from phinmod.field import Scalar
from phinmod.linalg import Mat, random_invertible
from phinmod.moduli import canonical_point, transport

# nonzero and zero Jordan types per ambient size
NIL_TYPES = {2: [(2,), (1, 1)], 3: [(3,), (2, 1), (1, 1, 1)]}
NONZERO_TYPES = {2: [(2,)], 3: [(3,), (2, 1)]}


def nilpotent_of_type(parts, p: int = 2) -> Mat:
    """Jordan form with the given block sizes (weakly decreasing)."""
    n = sum(parts)
    m = [[Scalar(0, 0, p)] * n for _ in range(n)]
    pos = 0
    for size in parts:
        for i in range(size - 1):
            m[pos + i][pos + i + 1] = Scalar(1, 0, p)
        pos += size
    return Mat(m)


def random_scalar(rng: Random, p: int = 2) -> Scalar:
    frac = lambda: Fraction(rng.randint(-6, 6), rng.randint(1, 5))
    return Scalar(frac(), frac(), p)


def random_rational_mat(n: int, rng: Random, p: int = 2, lo: int = -3, hi: int = 3) -> Mat:
    return Mat.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)], p)


def random_point(rng: Random, parts, f: int = 1, p: int = 2):
    """A random valid point: transports a canonical point by random frames."""
    n = sum(parts)
    base = canonical_point(nilpotent_of_type(parts, p), f=f)
    return transport(base, [random_invertible(n, rng, p) for _ in range(f)])


def e(n: int, i: int, j: int, p: int = 2) -> Mat:
    """Elementary matrix with 1-based indices, matching written conventions."""
    return Mat.unit(n, i - 1, j - 1, p)

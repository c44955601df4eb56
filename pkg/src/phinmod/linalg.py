"""Dense exact linear algebra over Q(sqrt(p)).

Everything here works with immutable `Mat` values whose entries are `Scalar`s
and with `Subspace`s carried in reduced-echelon form, so that equality of
subspaces is equality of canonical bases.  Algorithms are plain Gaussian
elimination (exact over a field), Faddeev-LeVerrier for the characteristic
polynomial, a Krylov scan for the minimal polynomial, and chain-building for
nilpotent Jordan bases.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InternalCheckError, InvalidInputError
from .field import Scalar

__all__ = [
    "Mat",
    "Subspace",
    "rref",
    "rank",
    "kernel",
    "column_space",
    "row_space",
    "charpoly",
    "minpoly",
    "minpoly_squarefree",
    "is_nilpotent",
    "jordan_type",
    "jordan_basis_nilpotent",
    "poly_deriv",
    "poly_gcd_monic",
    "poly_eval_mat",
]


def _coerce_scalar(x, p: int) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x, 0, p)
    raise TypeError(f"matrix entry must be Scalar/int/Fraction, got {type(x).__name__}")


class Mat:
    """Rectangular matrix over Scalar, stored row-major and immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise InvalidInputError("matrix must have at least one row and one column")
        cols = len(entries[0])
        if any(len(row) != cols for row in entries):
            raise InvalidInputError("ragged rows in matrix")
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows, p: int = 2) -> "Mat":
        """Build from nested int/Fraction/Scalar data over the prime p."""
        return cls([[_coerce_scalar(x, p) for x in row] for row in rows])

    @classmethod
    def zero(cls, rows: int, cols: int | None = None, p: int = 2) -> "Mat":
        cols = rows if cols is None else cols
        z = Scalar(0, 0, p)
        return cls([[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int, p: int = 2) -> "Mat":
        z, one = Scalar(0, 0, p), Scalar(1, 0, p)
        return cls([[one if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag, p: int = 2) -> "Mat":
        diag = [_coerce_scalar(x, p) for x in diag]
        z = Scalar(0, 0, p)
        n = len(diag)
        return cls([[diag[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int, p: int = 2) -> "Mat":
        """The elementary matrix e_{ij} (0-based indices)."""
        z, one = Scalar(0, 0, p), Scalar(1, 0, p)
        return cls([[one if (r, c) == (i, j) else z for c in range(n)] for r in range(n)])

    @classmethod
    def from_flat(cls, vec, rows: int, cols: int) -> "Mat":
        vec = tuple(vec)
        if len(vec) != rows * cols:
            raise InvalidInputError("flat vector length does not match shape")
        return cls([vec[r * cols:(r + 1) * cols] for r in range(rows)])

    @classmethod
    def vstack(cls, mats) -> "Mat":
        mats = list(mats)
        return cls([row for m in mats for row in m.entries])

    @classmethod
    def hstack(cls, mats) -> "Mat":
        mats = list(mats)
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise InvalidInputError("hstack needs equal row counts")
        return cls([sum((m.entries[r] for m in mats), ()) for r in range(rows)])

    # -- basic structure ---------------------------------------------------

    @property
    def p(self) -> int:
        return self.entries[0][0].p

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(row[j] for row in self.entries)

    def flatten(self):
        """Row-major flattening; the canonical gl_n -> k^(n^2) coordinates."""
        return tuple(x for row in self.entries for x in row)

    def transpose(self) -> "Mat":
        return Mat(tuple(zip(*self.entries)))

    def trace(self) -> Scalar:
        if not self.is_square:
            raise InvalidInputError("trace of non-square matrix")
        t = Scalar(0, 0, self.p)
        for i in range(self.rows):
            t = t + self.entries[i][i]
        return t

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InvalidInputError("shape mismatch in matrix addition")
        return Mat([[x + y for x, y in zip(r1, r2)]
                    for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Mat([[-x for x in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise InvalidInputError("shape mismatch in matrix product")
            cols = other.transpose().entries
            return Mat([[_dot(row, col) for col in cols] for row in self.entries])
        if isinstance(other, (Scalar, int, Fraction)):
            return Mat([[x * other for x in row] for row in self.entries])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "Mat":
        if not self.is_square or k < 0:
            raise InvalidInputError("matrix power needs a square base and k >= 0")
        out = Mat.identity(self.rows, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def apply(self, vec):
        """Matrix times column vector (a tuple of Scalars)."""
        vec = tuple(vec)
        if len(vec) != self.cols:
            raise InvalidInputError("vector length mismatch")
        return tuple(_dot(row, vec) for row in self.entries)

    def inverse(self) -> "Mat":
        if not self.is_square:
            raise InvalidInputError("inverse of non-square matrix")
        n, p = self.rows, self.p
        aug = [list(self.entries[i]) + list(Mat.identity(n, p).entries[i]) for i in range(n)]
        reduced, pivots = _rref_rows(aug)
        if len(pivots) != n or pivots != list(range(n)):
            raise InvalidInputError("matrix is singular")
        return Mat([row[n:] for row in reduced])

    def is_invertible(self) -> bool:
        return self.is_square and rank(self) == self.rows

    def det(self) -> Scalar:
        if not self.is_square:
            raise InvalidInputError("determinant of non-square matrix")
        n = self.rows
        rows = [list(r) for r in self.entries]
        det = Scalar(1, 0, self.p)
        for c in range(n):
            piv = next((i for i in range(c, n) if rows[i][c]), None)
            if piv is None:
                return Scalar(0, 0, self.p)
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                det = -det
            det = det * rows[c][c]
            inv = rows[c][c].inv()
            for i in range(c + 1, n):
                if rows[i][c]:
                    f = rows[i][c] * inv
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
        return det

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            x == y for r1, r2 in zip(self.entries, other.entries) for x, y in zip(r1, r2)
        )

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols})"

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries)

    def to_lists(self):
        """Nested list-of-pairs serialization."""
        return [[x.to_pair() for x in row] for row in self.entries]

    @classmethod
    def from_lists(cls, data, p: int = 2) -> "Mat":
        rows = []
        for row in data:
            out = []
            for x in row:
                if isinstance(x, (list, tuple)):
                    out.append(Scalar.from_pair(x, p))
                elif isinstance(x, str):
                    out.append(Scalar(Fraction(x), 0, p))
                elif isinstance(x, int):
                    out.append(Scalar(x, 0, p))
                else:
                    raise InvalidInputError(f"bad matrix entry {x!r}")
            rows.append(out)
        return cls(rows)


def _dot(u, v) -> Scalar:
    acc = None
    for x, y in zip(u, v):
        if x and y:
            acc = x * y if acc is None else acc + x * y
    return acc if acc is not None else Scalar(0, 0, u[0].p)


# -- elimination ------------------------------------------------------------


def _rref_rows(rows):
    """In-place reduced row echelon form on a list of row lists.

    Returns (rows, pivot_columns).
    """
    if not rows:
        return rows, []
    nr, nc = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


def rref(m: Mat):
    """Reduced row echelon form and rank, with exact pivots."""
    rows = [list(r) for r in m.entries]
    rows, pivots = _rref_rows(rows)
    return Mat(rows), len(pivots)


def rank(m: Mat) -> int:
    return rref(m)[1]


def kernel(m: Mat) -> "Subspace":
    """Right null space of m, as a canonical Subspace of k^cols."""
    rows = [list(r) for r in m.entries]
    rows, pivots = _rref_rows(rows)
    p = m.p
    z, one = Scalar(0, 0, p), Scalar(1, 0, p)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [z] * m.cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return Subspace.from_vectors(basis, m.cols, p)


def column_space(m: Mat) -> "Subspace":
    return Subspace.from_vectors([m.col(j) for j in range(m.cols)], m.rows, m.p)


def row_space(m: Mat) -> "Subspace":
    return Subspace.from_vectors(list(m.entries), m.cols, m.p)


class Subspace:
    """Linear subspace of k^ambient_dim in canonical reduced-echelon form.

    Two Subspaces are equal iff they are the same subspace: the stored basis
    is the unique RREF basis, so equality is componentwise.
    """

    __slots__ = ("ambient_dim", "basis", "p")

    def __init__(self, ambient_dim: int, basis, p: int):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(tuple(v) for v in basis))
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, vectors, ambient_dim: int, p: int) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise InvalidInputError("vector length does not match ambient dimension")
        if not vectors:
            return cls(ambient_dim, (), p)
        rows, pivots = _rref_rows([list(v) for v in vectors])
        return cls(ambient_dim, [tuple(rows[i]) for i in range(len(pivots))], p)

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(ambient_dim, (), p)

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls.from_vectors(
            [Mat.identity(ambient_dim, p).row(i) for i in range(ambient_dim)],
            ambient_dim, p)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _pivots(self):
        pivs = []
        for v in self.basis:
            pivs.append(next(i for i, x in enumerate(v) if x))
        return pivs

    def reduce(self, vec):
        """Residue of vec after clearing all pivot coordinates against the basis."""
        v = list(vec)
        for row, piv in zip(self.basis, self._pivots()):
            if v[piv]:
                f = v[piv]
                v = [x - f * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, vec) -> bool:
        return all(not x for x in self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_vectors(list(self.basis) + list(other.basis),
                                     self.ambient_dim, self.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.dim == self.ambient_dim:
            return other
        if other.dim == other.ambient_dim:
            return self
        return kernel(Mat.vstack([self.quotient_map(), other.quotient_map()]))

    def quotient_map(self):
        """A matrix Q with ker Q = self, or None when self is everything.

        Rows of Q read off the non-pivot coordinates after reduction, so Q
        realizes the projection k^d -> k^d / self in fixed coordinates.
        """
        d = self.ambient_dim
        pivots = set(self._pivots())
        free = [j for j in range(d) if j not in pivots]
        if not free:
            return None
        z, one = Scalar(0, 0, self.p), Scalar(1, 0, self.p)
        cols = []
        for j in range(d):
            e = [z] * d
            e[j] = one
            r = self.reduce(e)
            cols.append([r[fj] for fj in free])
        return Mat(list(map(list, zip(*cols))))

    def _check_ambient(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise InvalidInputError("ambient dimension mismatch")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def to_json_dict(self):
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "basis": [[x.to_pair() for x in v] for v in self.basis],
        }


# -- polynomials over Scalar (coefficient lists, ascending powers) -----------


def _poly_trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def poly_deriv(c):
    return _poly_trim([c[k] * k for k in range(1, len(c))])


def _poly_divmod(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Scalar(0, 0, b[-1].p)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    inv_lead = b[-1].inv()
    while len(r) >= len(b):
        f = r[-1] * inv_lead
        shift = len(r) - len(b)
        q[shift] = f
        for i, bc in enumerate(b):
            r[shift + i] = r[shift + i] - f * bc
        r = _poly_trim(r)
        if not r:
            break
    return _poly_trim(q), r


def poly_gcd_monic(a, b):
    """Monic gcd via the Euclidean algorithm; [] for gcd of two zero polys."""
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if not a:
        return []
    inv_lead = a[-1].inv()
    return [x * inv_lead for x in a]


def poly_eval_mat(c, m: Mat) -> Mat:
    """Evaluate a coefficient list at a square matrix (Horner)."""
    n, p = m.rows, m.p
    acc = Mat.zero(n, n, p)
    for coeff in reversed(_poly_trim(c)):
        acc = acc * m + Mat.identity(n, p) * coeff
    return acc


# -- characteristic and minimal polynomials ----------------------------------


def charpoly(m: Mat):
    """Monic characteristic polynomial, ascending coefficients.

    Faddeev-LeVerrier: only divisions by the integers 1..n occur, so the
    result is exact over the coefficient field.
    """
    if not m.is_square:
        raise InvalidInputError("characteristic polynomial of non-square matrix")
    n, p = m.rows, m.p
    coeffs = [Scalar(0, 0, p)] * (n + 1)
    coeffs[n] = Scalar(1, 0, p)
    mk = Mat.identity(n, p)
    for k in range(1, n + 1):
        am = m * mk
        c = -(am.trace()) * Fraction(1, k)
        coeffs[n - k] = c
        if k < n:
            mk = am + Mat.identity(n, p) * c
    return coeffs


def minpoly(m: Mat):
    """Monic minimal polynomial via the first linear dependence among powers."""
    if not m.is_square:
        raise InvalidInputError("minimal polynomial of non-square matrix")
    n, p = m.rows, m.p
    one = Scalar(1, 0, p)
    rows = []   # (reduced flattened power, pivot index, combo coefficients)
    power = Mat.identity(n, p)
    for k in range(n * n + 1):
        v = list(power.flatten())
        combo = [Scalar(0, 0, p)] * (k + 1)
        combo[k] = one
        for rv, piv, rc in rows:
            if v[piv]:
                f = v[piv]
                v = [x - f * y for x, y in zip(v, rv)]
                combo = [x - f * y for x, y in
                         zip(combo, list(rc) + [Scalar(0, 0, p)] * (len(combo) - len(rc)))]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return _poly_trim(combo)
        inv = v[piv].inv()
        rows.append(([x * inv for x in v], piv, [x * inv for x in combo]))
        power = power * m
    raise InternalCheckError("no dependence among matrix powers up to n^2")


def minpoly_squarefree(m: Mat) -> bool:
    """True iff the minimal polynomial has no repeated factors.

    Over characteristic zero this is the semisimplicity test: gcd with the
    derivative must be constant.
    """
    mp = minpoly(m)
    g = poly_gcd_monic(mp, poly_deriv(mp))
    return len(g) == 1


# -- nilpotency and Jordan structure -----------------------------------------


def is_nilpotent(m: Mat) -> bool:
    if not m.is_square:
        raise InvalidInputError("nilpotency test needs a square matrix")
    return (m ** m.rows).is_zero()


def jordan_type(m: Mat):
    """Jordan partition of a nilpotent matrix from its rank sequence.

    The number of parts of size >= k equals rank(m^(k-1)) - rank(m^k).
    """
    if not is_nilpotent(m):
        raise InvalidInputError("jordan_type requires a nilpotent matrix")
    n = m.rows
    ranks = [n]
    power = m
    while ranks[-1] > 0:
        ranks.append(rank(power))
        power = power * m
    counts = [ranks[k] - ranks[k + 1] for k in range(len(ranks) - 1)]
    parts = []
    for size in range(len(counts), 0, -1):
        parts.extend([size] * (counts[size - 1] - (counts[size] if size < len(counts) else 0)))
    return tuple(sorted(parts, reverse=True))


def jordan_basis_nilpotent(m: Mat):
    """Invertible g and partition with g^-1 m g in Jordan form.

    Blocks appear in weakly decreasing size order; the chain tops are chosen
    greedily from echelon bases of the kernels of powers, which makes the
    output deterministic.
    """
    if not is_nilpotent(m):
        raise InvalidInputError("jordan_basis_nilpotent requires a nilpotent matrix")
    n, p = m.rows, m.p
    kernels = []
    power = Mat.identity(n, p)
    while True:
        kernels.append(kernel(power))
        if kernels[-1].dim == n:
            break
        power = power * m
    s = len(kernels) - 1  # nilpotency index
    chains = []  # (height, top vector)
    for k in range(s, 0, -1):
        # space already accounted for at this level: ker(m^(k-1)) plus the
        # level-k images of the chains picked at higher levels
        work = kernels[k - 1]
        for height, top in chains:
            img = top
            for _ in range(height - k):
                img = m.apply(img)
            work = work.sum(Subspace.from_vectors([img], n, p))
        for cand in kernels[k].basis:
            if not work.contains(cand):
                chains.append((k, cand))
                work = work.sum(Subspace.from_vectors([cand], n, p))

    chains.sort(key=lambda hc: -hc[0])
    columns = []
    partition = []
    for height, top in chains:
        partition.append(height)
        chain = [top]
        for _ in range(height - 1):
            chain.append(m.apply(chain[-1]))
        columns.extend(reversed(chain))
    g = Mat(list(map(list, zip(*columns))))
    jordan = g.inverse() * m * g
    if jordan != _jordan_matrix(partition, n, p):
        raise InternalCheckError("jordan basis construction produced a non-Jordan form")
    return g, tuple(partition)


def _jordan_matrix(partition, n, p):
    jm = [[Scalar(0, 0, p) for _ in range(n)] for _ in range(n)]
    pos = 0
    for size in partition:
        for i in range(size - 1):
            jm[pos + i][pos + i + 1] = Scalar(1, 0, p)
        pos += size
    return Mat(jm)


def random_invertible(n: int, rng, p: int = 2, lo: int = -3, hi: int = 3) -> Mat:
    """Small-entry random invertible matrix over Q (rejection sampling)."""
    while True:
        m = Mat.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)], p)
        if m.is_invertible():
            return m


def pattern_of_subspace(sub: Subspace, n: int):
    """Coordinate pattern (list of 1-based (i, j)) when every basis vector is
    an elementary matrix, else None.  Used for readable parabolic reports."""
    pattern = []
    for v in sub.basis:
        support = [k for k, x in enumerate(v) if x]
        if len(support) != 1 or v[support[0]] != 1:
            return None
        k = support[0]
        pattern.append((k // n + 1, k % n + 1))
    return sorted(pattern)

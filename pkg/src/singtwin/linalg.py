"""Small dense matrices over exact :class:`Scalar` entries or floats.

Exact matrices hold tuples of Scalars sharing one ``root_square``; float
matrices hold a complex numpy array.  Rank and null spaces are computed by
Gaussian elimination (exact) or by SVD with a relative singular value
threshold (float).  Pivots are chosen by row-major order so witnesses are
reproducible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .scalar import FLOAT_EPS, Scalar, to_float

__all__ = [
    "Matrix",
    "LinalgError",
    "ShapeMismatch",
    "Singular",
    "SubspaceBasis",
    "RANK_RTOL",
    "mat_mul",
    "rank",
    "invert",
    "nullspace",
    "column_space",
    "span_closure",
    "charpoly",
    "eigenvalues",
    "common_invariant_line",
    "is_invariant",
    "intersect",
]

RANK_RTOL = 1e-7


class LinalgError(ValueError):
    pass


class ShapeMismatch(LinalgError):
    pass


class Singular(LinalgError):
    pass


def _is_float_entry(x) -> bool:
    return isinstance(x, (float, complex, np.floating, np.complexfloating))


class Matrix:
    """Immutable dense matrix; ``exact`` tells which entry type is stored."""

    __slots__ = ("rows", "cols", "exact", "D", "_data")

    def __init__(self, entries, root_square: int | None = None):
        if isinstance(entries, np.ndarray):
            arr = np.array(entries, dtype=complex)
            self._init_float(arr)
            return
        grid = [list(r) for r in entries]
        if not grid or not grid[0]:
            raise ShapeMismatch("matrices need at least one row and one column")
        width = len(grid[0])
        if any(len(r) != width for r in grid):
            raise ShapeMismatch("ragged rows")
        flat = [x for r in grid for x in r]
        if any(_is_float_entry(x) for x in flat):
            self._init_float(np.array([[complex(x) for x in r] for r in grid], dtype=complex))
            return
        D = root_square
        if D is None:
            Ds = {x.D for x in flat if isinstance(x, Scalar) and not x.is_gaussian}
            if len(Ds) > 1:
                raise LinalgError(f"mixed root contexts {sorted(Ds)}")
            D = Ds.pop() if Ds else max((x.D for x in flat if isinstance(x, Scalar)), default=0, key=abs)
        zero = Scalar(root_square=D)
        data = tuple(tuple(zero + Scalar.coerce(x, D) for x in r) for r in grid)
        self.rows, self.cols, self.exact, self.D, self._data = len(grid), width, True, D, data

    def _init_float(self, arr):
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeMismatch(f"bad shape {arr.shape}")
        arr.setflags(write=False)
        self.rows, self.cols = arr.shape
        self.exact, self.D, self._data = False, None, arr

    @classmethod
    def _from_rows(cls, data, D):
        m = cls.__new__(cls)
        m.rows, m.cols, m.exact, m.D, m._data = len(data), len(data[0]), True, D, data
        return m

    # constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int, like: "Matrix | None" = None) -> "Matrix":
        if like is not None and not like.exact:
            return cls(np.eye(n, dtype=complex))
        D = like.D if like is not None else 0
        one, zero = Scalar(1, root_square=D), Scalar(root_square=D)
        return cls._from_rows(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), D)

    @classmethod
    def zeros(cls, rows: int, cols: int, like: "Matrix | None" = None) -> "Matrix":
        if like is not None and not like.exact:
            return cls(np.zeros((rows, cols), dtype=complex))
        D = like.D if like is not None else 0
        zero = Scalar(root_square=D)
        return cls._from_rows(tuple(tuple(zero for _ in range(cols)) for _ in range(rows)), D)

    @classmethod
    def diag(cls, values: Sequence, root_square: int | None = None) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], root_square)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], like: "Matrix") -> "Matrix":
        if not like.exact:
            return cls(np.array(columns, dtype=complex).T)
        return cls([[c[i] for c in columns] for i in range(len(columns[0]))], like.D)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def tolist(self) -> list[list]:
        if self.exact:
            return [list(r) for r in self._data]
        return self._data.tolist()

    def row(self, i: int) -> tuple:
        return tuple(self._data[i])

    def column(self, j: int) -> tuple:
        return tuple(self._data[i][j] for i in range(self.rows))

    def vec(self) -> tuple:
        """Row-major flattening."""
        if self.exact:
            return tuple(x for r in self._data for x in r)
        return tuple(self._data.reshape(-1))

    @classmethod
    def unvec(cls, v: Sequence, n: int, like: "Matrix") -> "Matrix":
        if not like.exact:
            return cls(np.array(v, dtype=complex).reshape(n, n))
        return cls._from_rows(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), like.D)

    def to_numpy(self, root_value: complex | None = None) -> np.ndarray:
        if not self.exact:
            return np.array(self._data)
        return np.array([[to_float(x, root_value) for x in r] for r in self._data], dtype=complex)

    def to_float(self, root_value: complex | None = None) -> "Matrix":
        return self if not self.exact else Matrix(self.to_numpy(root_value))

    # arithmetic ---------------------------------------------------------

    def _check_same(self, other: "Matrix"):
        if self.exact != other.exact:
            raise LinalgError("cannot mix exact and float matrices")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        if not self.exact:
            return Matrix(self._data + other._data)
        return Matrix._from_rows(tuple(tuple(a + b for a, b in zip(r, s))
                                       for r, s in zip(self._data, other._data)),
                                 self.D or other.D)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        if not self.exact:
            return Matrix(-self._data)
        return Matrix._from_rows(tuple(tuple(-a for a in r) for r in self._data), self.D)

    def scale(self, c) -> "Matrix":
        if not self.exact:
            return Matrix(self._data * complex(c))
        return Matrix._from_rows(tuple(tuple(c * a for a in r) for r in self._data), self.D)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ShapeMismatch(f"{self.shape} @ vector of length {len(v)}")
        if not self.exact:
            return tuple(self._data @ np.array(v, dtype=complex))
        zero = Scalar(root_square=self.D)
        out = []
        for r in self._data:
            acc = zero
            for a, x in zip(r, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        if not self.exact:
            return Matrix(self._data.T.copy())
        return Matrix._from_rows(tuple(zip(*self._data)), self.D)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def trace(self):
        return sum((self._data[i][i] for i in range(1, self.rows)), self._data[0][0])

    def is_scalar_multiple_of_identity(self, eps: float = FLOAT_EPS) -> bool:
        c = self[0, 0]
        return self.isclose(Matrix.identity(self.rows, like=self).scale(c), eps)

    def isclose(self, other: "Matrix", eps: float = FLOAT_EPS) -> bool:
        if self.shape != other.shape:
            return False
        if self.exact and other.exact:
            return self == other
        return bool(np.max(np.abs(self.to_numpy() - other.to_numpy())) <= eps)

    def is_zero(self, eps: float = FLOAT_EPS) -> bool:
        if self.exact:
            return not any(x for r in self._data for x in r)
        return bool(np.max(np.abs(self._data)) <= eps)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape or self.exact != other.exact:
            return False
        if self.exact:
            return self._data == other._data
        return bool(np.array_equal(self._data, other._data))

    def __hash__(self):
        if self.exact:
            return hash(self._data)
        return hash(self._data.tobytes())

    def __repr__(self):
        if self.exact:
            body = "; ".join(", ".join(str(x) for x in r) for r in self._data)
            return f"Matrix([{body}])" if not self.D else f"Matrix([{body}], root_square={self.D})"
        return f"Matrix({self._data!r})"

    # linear algebra -----------------------------------------------------

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "Matrix":
        return invert(self)

    def det(self):
        if not self.is_square:
            raise ShapeMismatch("determinant of a non-square matrix")
        if not self.exact:
            return complex(np.linalg.det(self._data))
        rows = [list(r) for r in self._data]
        n = self.rows
        det = Scalar(1, root_square=self.D)
        for c in range(n):
            p = next((r for r in range(c, n) if rows[r][c]), None)
            if p is None:
                return Scalar(root_square=self.D)
            if p != c:
                rows[c], rows[p] = rows[p], rows[c]
                det = -det
            pivot = rows[c][c]
            det = det * pivot
            inv = pivot.inverse()
            for r in range(c + 1, n):
                f = rows[r][c]
                if f:
                    f = f * inv
                    rows[r] = [x - f * y if y else x for x, y in zip(rows[r], rows[c])]
        return det


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ShapeMismatch(f"{a.shape} @ {b.shape}")
    a._check_same(b)
    if not a.exact:
        return Matrix(a._data @ b._data)
    D = a.D or b.D
    zero = Scalar(root_square=D)
    p = b.cols
    bdata = b._data
    out = []
    for row in a._data:
        acc = [zero] * p
        for k, x in enumerate(row):
            if x:
                brow = bdata[k]
                for j in range(p):
                    y = brow[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(tuple(acc))
    return Matrix._from_rows(tuple(out), D)


# exact elimination ----------------------------------------------------------

def _rref(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; pivot columns scanned left to right."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _float_svd(m: np.ndarray):
    u, s, vh = np.linalg.svd(m)
    if s.size == 0 or s[0] <= FLOAT_EPS:
        return u, s, vh, 0
    return u, s, vh, int(np.sum(s > RANK_RTOL * s[0]))


def rank(m: Matrix) -> int:
    if not m.exact:
        return _float_svd(m._data)[3]
    return len(_rref(m.tolist())[1])


def invert(m: Matrix) -> Matrix:
    if not m.is_square:
        raise ShapeMismatch(f"cannot invert {m.shape}")
    n = m.rows
    if not m.exact:
        if rank(m) < n:
            raise Singular("matrix is numerically singular")
        return Matrix(np.linalg.inv(m._data))
    ident = Matrix.identity(n, like=m)
    aug = [list(r) + list(e) for r, e in zip(m._data, ident._data)]
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return Matrix._from_rows(tuple(tuple(r[n:]) for r in red), m.D)


def nullspace(m: Matrix) -> list[tuple]:
    """Basis of ``{v : m v = 0}`` as column vectors."""
    if not m.exact:
        _, _, vh, r = _float_svd(m._data)
        return [tuple(np.conj(vh[k])) for k in range(r, m.cols)]
    red, pivots = _rref(m.tolist())
    zero, one = Scalar(root_square=m.D), Scalar(1, root_square=m.D)
    basis = []
    for f in range(m.cols):
        if f in pivots:
            continue
        v = [zero] * m.cols
        v[f] = one
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def column_space(m: Matrix) -> list[tuple]:
    """Basis of the span of the columns (pivot columns for exact input)."""
    if not m.exact:
        u, _, _, r = _float_svd(m._data)
        return [tuple(u[:, k]) for k in range(r)]
    _, pivots = _rref(m.tolist())
    return [m.column(c) for c in pivots]


# subspaces ------------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceBasis:
    ambient_dim: int
    vectors: tuple[tuple, ...]
    exact: bool = True

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self, D: int = 0) -> Matrix:
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix."""
        if not self.vectors:
            raise LinalgError("empty subspace has no basis matrix")
        if not self.exact:
            return Matrix(np.array(self.vectors, dtype=complex).T)
        return Matrix([[v[i] for v in self.vectors] for i in range(self.ambient_dim)], D or None)

    def contains(self, v: Sequence) -> bool:
        if not self.vectors:
            return all(not x for x in v) if self.exact else bool(np.max(np.abs(v)) <= FLOAT_EPS)
        base = self.matrix()
        aug = Matrix([list(r) + [x] for r, x in zip(base.tolist(), v)])
        return rank(aug) == rank(base)

    def normalized(self) -> "SubspaceBasis":
        """Scale each vector so that its last non-zero coordinate is 1."""
        out = []
        for v in self.vectors:
            if self.exact:
                last = next(x for x in reversed(v) if x)
                inv = last.inverse()
                out.append(tuple(x * inv if x else x for x in v))
            else:
                arr = np.array(v, dtype=complex)
                k = max(i for i in range(len(arr)) if abs(arr[i]) > RANK_RTOL * np.max(np.abs(arr)))
                out.append(tuple(arr / arr[k]))
        return SubspaceBasis(self.ambient_dim, tuple(out), self.exact)


def _independent(vectors: list[tuple], exact: bool) -> list[tuple]:
    if not vectors:
        return []
    if exact:
        m = Matrix([list(v) for v in vectors])
        _, pivots = _rref(m.transpose().tolist())
        return [vectors[p] for p in pivots]
    # float: an orthonormal basis of the column span
    u, _, _, r = _float_svd(np.array(vectors, dtype=complex).T)
    return [tuple(u[:, k]) for k in range(r)]


def subspace(vectors: Iterable[Sequence], ambient_dim: int, exact: bool = True) -> SubspaceBasis:
    return SubspaceBasis(ambient_dim, tuple(_independent([tuple(v) for v in vectors], exact)), exact)


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if not a.vectors or not b.vectors:
        return SubspaceBasis(a.ambient_dim, (), a.exact)
    ma, mb = a.matrix(), b.matrix()
    # solve ma x = mb y
    joined = Matrix([list(r) + [-x for x in s] for r, s in zip(ma.tolist(), mb.tolist())])
    sols = nullspace(joined)
    vecs = [ma.apply(sol[:a.dim]) for sol in sols]
    return subspace(vecs, a.ambient_dim, a.exact)


def is_invariant(space: SubspaceBasis, mats: Sequence[Matrix]) -> bool:
    """``M v`` lies in ``space`` for every basis vector ``v`` and matrix ``M``."""
    for m in mats:
        for v in space.vectors:
            if not space.contains(m.apply(v)):
                return False
    return True


# algebra closure ------------------------------------------------------------

class _ExactSpan:
    def __init__(self):
        self.basis: list[tuple[int, list]] = []

    def reduce(self, v):
        v = list(v)
        for p, b in self.basis:
            f = v[p]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, b)]
        return v

    def add(self, v) -> list | None:
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return None
        inv = v[p].inverse()
        v = [x * inv if x else x for x in v]
        for k, (q, b) in enumerate(self.basis):
            f = b[p]
            if f:
                self.basis[k] = (q, [x - f * y if y else x for x, y in zip(b, v)])
        self.basis.append((p, v))
        return v


class _FloatSpan:
    def __init__(self):
        self.basis: list[np.ndarray] = []

    def add(self, v) -> np.ndarray | None:
        v = np.array(v, dtype=complex)
        scale = max(np.linalg.norm(v), 1.0)
        for _ in range(2):
            for b in self.basis:
                v = v - np.vdot(b, v) * b
        norm = np.linalg.norm(v)
        if norm <= RANK_RTOL * scale:
            return None
        v = v / norm
        self.basis.append(v)
        return v


def span_closure(seed: Sequence[Matrix], limit: int | None = None) -> SubspaceBasis:
    """Span of all products of the seed matrices.

    The seeds must be square of one size and include the identity; the
    result is then the unital algebra they generate, as vectors of length
    ``n*n`` (row-major).  Closing under right multiplication suffices since
    every product is reached from the identity one generator at a time.
    """
    if not seed:
        raise LinalgError("empty seed")
    n = seed[0].rows
    if any(m.shape != (n, n) for m in seed):
        raise ShapeMismatch("seeds must be square matrices of one size")
    exact = seed[0].exact
    like = seed[0]
    ident = Matrix.identity(n, like=like)
    if not any(m.isclose(ident) for m in seed):
        raise LinalgError("seed must contain the identity")
    gens = [m for m in seed if not m.isclose(ident)]
    span = _ExactSpan() if exact else _FloatSpan()
    queue = []
    for m in seed:
        added = span.add(m.vec())
        if added is not None:
            queue.append(added)
    target = limit or n * n
    while queue and len(span.basis) < target:
        v = queue.pop(0)
        elem = Matrix.unvec(v, n, like)
        for g in gens:
            added = span.add(mat_mul(elem, g).vec())
            if added is not None:
                queue.append(added)
                if len(span.basis) >= target:
                    break
    vectors = tuple(tuple(b) for _, b in span.basis) if exact else tuple(tuple(b) for b in span.basis)
    return SubspaceBasis(n * n, vectors, exact)


# eigenvalues ----------------------------------------------------------------

def charpoly(m: Matrix) -> list:
    """Characteristic polynomial coefficients, highest degree first (monic).

    Exact matrices use the Faddeev-LeVerrier recursion.
    """
    n = m.rows
    if not m.exact:
        return list(np.poly(m._data))
    ident = Matrix.identity(n, like=m)
    coeffs = [Scalar(1, root_square=m.D)]
    mk = Matrix.zeros(n, n, like=m)
    c = coeffs[0]
    for k in range(1, n + 1):
        mk = mat_mul(m, mk) + ident.scale(c)
        c = -mat_mul(m, mk).trace() / k
        coeffs.append(c)
    return coeffs


def _horner(coeffs, x):
    acc = coeffs[0] * 0 + coeffs[0]
    for c in coeffs[1:]:
        acc = acc * x + c
    return acc


def _recognize(z: complex, max_den: int = 10**6) -> tuple[Fraction, Fraction] | None:
    if not np.isfinite(z):
        return None
    re = Fraction(z.real).limit_denominator(max_den)
    im = Fraction(z.imag).limit_denominator(max_den)
    if abs(float(re) - z.real) > 1e-6 * max(1, abs(z)) or abs(float(im) - z.imag) > 1e-6 * max(1, abs(z)):
        return None
    return re, im


def eigenvalues(m: Matrix) -> list:
    """Distinct eigenvalues that can be certified in the matrix's context.

    Float matrices: numpy eigenvalues, merged within ``RANK_RTOL``.
    Exact matrices: numeric roots are rounded to nearby Gaussian rationals
    (for ``D != 0`` the pair of roots of the polynomial and of its image
    under ``r -> -r`` pins down both components) and kept only if they are
    exact roots of the characteristic polynomial.  Eigenvalues outside the
    context are silently missing.
    """
    if not m.is_square:
        raise ShapeMismatch("eigenvalues of a non-square matrix")
    if not m.exact:
        vals = []
        for z in np.linalg.eigvals(m._data):
            if not any(abs(z - w) <= 1e-6 * max(1.0, abs(w)) for w in vals):
                vals.append(complex(z))
        return vals
    D = m.D
    coeffs = charpoly(m)
    found: list[Scalar] = []

    def consider(cand: Scalar):
        if cand not in found and not _horner(coeffs, cand):
            found.append(cand)

    for k in (1, -1):
        consider(Scalar(k, root_square=D))
    float_coeffs = [to_float(c) for c in coeffs]
    roots = np.roots(float_coeffs) if len(coeffs) > 1 else []
    if D == 0:
        for z in roots:
            rec = _recognize(z)
            if rec:
                consider(Scalar(rec[0], rec[1]))
    else:
        conj_roots = np.roots([to_float(c.root_conjugate()) for c in coeffs])
        r = complex(np.sqrt(complex(D)))
        for z in roots:
            rec = _recognize(z)
            if rec:
                consider(Scalar(rec[0], rec[1], root_square=D))
            for w in conj_roots:
                u, v = _recognize((z + w) / 2), _recognize((z - w) / (2 * r))
                if u and v:
                    consider(Scalar(u[0], u[1], v[0], v[1], root_square=D))
    return found


def _eigenspace(m: Matrix, lam) -> SubspaceBasis:
    shifted = m - Matrix.identity(m.rows, like=m).scale(lam)
    return SubspaceBasis(m.rows, tuple(nullspace(shifted)), m.exact)


def _is_eigenvector(m: Matrix, v) -> bool:
    w = m.apply(v)
    pair = Matrix([[x, y] for x, y in zip(v, w)]) if m.exact else Matrix(np.array([v, w]).T)
    return rank(pair) <= 1


def common_invariant_line(mats: Sequence[Matrix]) -> SubspaceBasis | None:
    """A line mapped into itself by every matrix, or ``None``.

    Candidates come from eigenspaces of the first non-scalar matrix and are
    cut down by eigenspaces of the others.  In exact mode only certified
    eigenvalues are tried, so ``None`` may also mean "not visible in this
    context"; a float copy of the matrices settles that case.
    """
    if not mats:
        raise LinalgError("no matrices")
    n = mats[0].rows
    exact = mats[0].exact
    nonscalar = [m for m in mats if not m.is_scalar_multiple_of_identity()]
    if not nonscalar:
        like = mats[0]
        e1 = Matrix.identity(n, like=like).column(0)
        return SubspaceBasis(n, (e1,), exact)

    def refine(space: SubspaceBasis, rest: list[Matrix]) -> tuple | None:
        if space.dim == 0:
            return None
        if space.dim == 1:
            v = space.vectors[0]
            return v if all(_is_eigenvector(m, v) for m in rest) else None
        if not rest:
            return space.vectors[0]
        head, tail = rest[0], rest[1:]
        for mu in eigenvalues(head):
            found = refine(intersect(space, _eigenspace(head, mu)), tail)
            if found is not None:
                return found
        return None

    first, others = nonscalar[0], nonscalar[1:]
    for lam in eigenvalues(first):
        v = refine(_eigenspace(first, lam), others)
        if v is not None:
            return SubspaceBasis(n, (tuple(v),), exact).normalized()
    return None

"""Matrices and subspaces over GF(q), with exact counting helpers.

Matrices store int16 element indices in a NumPy array plus a reference
to their field.  Rank and reduced row echelon form dispatch to the
selected elimination kernel when the field carries dense tables, and to
a generic scalar-arithmetic path for larger fields.

Subspaces of GF(q)^n are kept in a canonical form: the unique reduced
row echelon basis with zero rows dropped.  Equality, hashing and the
total order used for deterministic enumeration all read that canonical
basis row-major.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import backend
from .ffield import FieldSpec


def _as_element_array(field: FieldSpec, data) -> np.ndarray:
    arr = np.array(data, dtype=np.int16, copy=True)
    if arr.ndim != 2:
        raise ValueError(f"matrix data must be 2-dimensional, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= field.q):
        raise ValueError(f"matrix entries out of range for GF({field.q})")
    return arr


class MatrixQ:
    """A dense matrix over a fixed finite field.

    Args:
        field: The coefficient field.
        data: Any 2-d array-like of element indices; copied and validated.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        self.field = field
        self.data = _as_element_array(field, data)
        self.data.setflags(write=False)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "MatrixQ":
        return cls(field, np.zeros((rows, cols), dtype=np.int16))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatrixQ":
        return cls(field, np.eye(n, dtype=np.int16))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def transpose(self) -> "MatrixQ":
        return MatrixQ(self.field, self.data.T)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixQ)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixQ(GF({self.field.q}), {self.rows}x{self.cols})"

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        return matmul(self, other)

    def rank(self) -> int:
        return rank_of_array(self.data, self.field)

    def rref(self) -> tuple["MatrixQ", tuple[int, ...]]:
        arr, pivots = rref_of_array(self.data, self.field)
        return MatrixQ(self.field, arr), pivots


def matmul(a: MatrixQ, b: MatrixQ) -> MatrixQ:
    """Matrix product over the common field."""
    if a.field != b.field:
        raise ValueError("matrix product requires matching fields")
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch: {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    f = a.field
    out = np.zeros((a.rows, b.cols), dtype=np.int16)
    if f.mul_table is not None:
        mt, at = f.mul_table, f.add_table
        for k in range(a.cols):
            prod = mt[a.data[:, k][:, None], b.data[k, :][None, :]]
            out = at[out, prod]
    else:
        for i in range(a.rows):
            for j in range(b.cols):
                acc = 0
                for k in range(a.cols):
                    acc = f.add(acc, f.mul(int(a.data[i, k]), int(b.data[k, j])))
                out[i, j] = acc
    return MatrixQ(f, out)


def stack_matrices(mats: Sequence[MatrixQ]) -> MatrixQ:
    """Vertical concatenation; all blocks share the field and width."""
    if not mats:
        raise ValueError("cannot stack an empty sequence of matrices")
    f = mats[0].field
    w = mats[0].cols
    for m in mats[1:]:
        if m.field != f or m.cols != w:
            raise ValueError("stacked matrices must share field and width")
    return MatrixQ(f, np.vstack([m.data for m in mats]))


# ---------------------------------------------------------------------------
# Rank and reduction on raw arrays (hot path, also used by the search code).
# ---------------------------------------------------------------------------


def rank_of_array(arr: np.ndarray, field: FieldSpec) -> int:
    """Rank of an int16 index array over ``field``; the array is not modified."""
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        return 0
    if field.add_table is not None:
        work = np.ascontiguousarray(arr, dtype=np.int16).copy()
        return backend.rank_destructive(
            work, field.add_table, field.mul_table, field.inv_table, field.neg_table
        )
    return _rank_generic(arr, field)


def rref_of_array(arr: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form of ``arr`` and its pivot columns."""
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        return np.array(arr, dtype=np.int16, copy=True), ()
    if field.add_table is not None:
        work = np.ascontiguousarray(arr, dtype=np.int16).copy()
        pivots = np.zeros(min(work.shape), dtype=np.int16)
        npiv = backend.rref_destructive(
            work, pivots, field.add_table, field.mul_table, field.inv_table, field.neg_table
        )
        return work, tuple(int(c) for c in pivots[:npiv])
    return _rref_generic(arr, field)


def _rref_generic(arr: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, tuple[int, ...]]:
    rows, cols = arr.shape
    m = [[int(v) for v in row] for row in arr]
    pivots: list[int] = []
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivot = next((i for i in range(rank, rows) if m[i][col] != 0), -1)
        if pivot < 0:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pinv = field.inv(m[rank][col])
        m[rank] = [field.mul(pinv, v) for v in m[rank]]
        for i in range(rows):
            if i != rank and m[i][col] != 0:
                factor = field.neg(m[i][col])
                m[i] = [field.add(vi, field.mul(factor, vr)) for vi, vr in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    return np.array(m, dtype=np.int16), tuple(pivots)


def _rank_generic(arr: np.ndarray, field: FieldSpec) -> int:
    _, pivots = _rref_generic(arr, field)
    return len(pivots)


# ---------------------------------------------------------------------------
# Subspaces.
# ---------------------------------------------------------------------------


class SubspaceQ:
    """A subspace of GF(q)^n in canonical reduced-echelon form.

    Construction reduces the generating rows, so any generating set of
    the same subspace yields an identical object.  ``basis`` is a tuple
    of ``dim`` row tuples; the zero subspace has an empty basis.
    """

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, field: FieldSpec, ambient: int, rows):
        if ambient < 0:
            raise ValueError("ambient dimension must be >= 0")
        arr = np.array(list(rows), dtype=np.int16)
        if arr.size == 0:
            arr = np.zeros((0, ambient), dtype=np.int16)
        if arr.ndim != 2 or arr.shape[1] != ambient:
            raise ValueError(f"generating rows must have length {ambient}")
        arr = _as_element_array(field, arr)
        red, pivots = rref_of_array(arr, field)
        self.field = field
        self.ambient = ambient
        self.basis = tuple(tuple(int(v) for v in red[i]) for i in range(len(pivots)))

    @classmethod
    def from_matrix(cls, m: MatrixQ) -> "SubspaceQ":
        return cls(m.field, m.cols, m.data)

    @classmethod
    def _from_canonical(cls, field: FieldSpec, ambient: int, basis: tuple[tuple[int, ...], ...]) -> "SubspaceQ":
        # trusted constructor: rows are already a reduced echelon basis
        obj = cls.__new__(cls)
        obj.field = field
        obj.ambient = ambient
        obj.basis = basis
        return obj

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> MatrixQ:
        if not self.basis:
            return MatrixQ.zeros(self.field, 0, self.ambient)
        return MatrixQ(self.field, self.basis)

    def basis_array(self) -> np.ndarray:
        """Canonical basis as an int16 array of shape ``(dim, ambient)``."""
        if not self.basis:
            return np.zeros((0, self.ambient), dtype=np.int16)
        return np.array(self.basis, dtype=np.int16)

    def contains(self, vector) -> bool:
        """Membership test for a length-``ambient`` vector."""
        v = np.array(vector, dtype=np.int16).reshape(1, self.ambient)
        stacked = np.vstack([self.basis_array(), v])
        return rank_of_array(stacked, self.field) == self.dim

    def sort_key(self) -> tuple:
        """Row-major flattening of the canonical basis, for total ordering."""
        return (self.dim,) + tuple(v for row in self.basis for v in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubspaceQ)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ambient, self.basis))

    def __lt__(self, other) -> bool:
        if not isinstance(other, SubspaceQ) or self.field != other.field or self.ambient != other.ambient:
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"SubspaceQ(GF({self.field.q})^{self.ambient}, dim={self.dim})"


def span_dim(subspaces: Iterable[SubspaceQ]) -> int:
    """Dimension of the span of the given subspaces (at least one)."""
    subs = list(subspaces)
    if not subs:
        raise ValueError("span of an empty collection is undefined here")
    f, n = subs[0].field, subs[0].ambient
    for s in subs[1:]:
        if s.field != f or s.ambient != n:
            raise ValueError("span requires a common field and ambient space")
    stacked = np.vstack([s.basis_array() for s in subs])
    return rank_of_array(stacked, f)


def null_space(m: MatrixQ) -> MatrixQ:
    """A basis of ``{x : m @ x^T = 0}`` as rows of a ``(cols - rank) x cols`` matrix."""
    f = m.field
    red, pivots = rref_of_array(m.data, f)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    rows = np.zeros((len(free), m.cols), dtype=np.int16)
    for r, fc in enumerate(free):
        rows[r, fc] = 1
        for i, pc in enumerate(pivots):
            rows[r, pc] = f.neg(int(red[i, fc]))
    return MatrixQ(f, rows)


def dual(s: SubspaceQ) -> SubspaceQ:
    """Orthogonal complement under the standard bilinear form."""
    if s.dim == 0:
        return SubspaceQ(s.field, s.ambient, np.eye(s.ambient, dtype=np.int16))
    return SubspaceQ.from_matrix(null_space(s.basis_matrix()))


def intersection_dim(s: SubspaceQ, t: SubspaceQ) -> int:
    """Dimension of ``s`` intersected with ``t``."""
    return s.dim + t.dim - span_dim([s, t])


def random_matrix(field: FieldSpec, rows: int, cols: int, rng: np.random.Generator) -> MatrixQ:
    """Uniformly random matrix, entries drawn independently."""
    return MatrixQ(field, rng.integers(0, field.q, size=(rows, cols), dtype=np.int64))


# ---------------------------------------------------------------------------
# Exact combinatorial counts.
# ---------------------------------------------------------------------------


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n, exactly.

    Returns 0 when ``k`` is outside ``[0, n]``.  Computed with big
    integers; no floating point is involved.
    """
    if n < 0 or q < 2:
        raise ValueError("need n >= 0 and q >= 2")
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def count_rank_matrices(m: int, n: int, s: int, q: int) -> int:
    """Number of ``m x n`` matrices over GF(q) of rank exactly ``s``."""
    if m < 0 or n < 0 or q < 2:
        raise ValueError("need m, n >= 0 and q >= 2")
    if s < 0 or s > min(m, n):
        return 0
    num = 1
    den = 1
    for j in range(s):
        num *= (q**m - q**j) * (q**n - q**j)
        den *= q**s - q**j
    assert num % den == 0
    return num // den


# ---------------------------------------------------------------------------
# Exact linear solving (used by the receiver simulation).
# ---------------------------------------------------------------------------


def solve_exact(m: MatrixQ, y: MatrixQ) -> MatrixQ:
    """Solve ``m @ x = y`` when the solution is unique.

    Raises ValueError if the system is inconsistent or the coefficient
    matrix has rank below its column count.
    """
    if m.field != y.field or m.rows != y.rows:
        raise ValueError("coefficient matrix and right-hand side do not conform")
    aug = np.hstack([m.data, y.data])
    red, pivots = rref_of_array(aug, m.field)
    if any(p >= m.cols for p in pivots):
        raise ValueError("inconsistent linear system")
    if len(pivots) < m.cols:
        raise ValueError("underdetermined linear system")
    out = np.zeros((m.cols, y.cols), dtype=np.int16)
    for i, p in enumerate(pivots):
        out[p] = red[i, m.cols :]
    return MatrixQ(m.field, out)

"""Exact integer matrices: Smith normal form, rank, and solvability over Z.

All arithmetic is on Python integers, so nothing overflows. Large sparse
matrices with many unit entries (the usual shape of Khovanov differentials)
go through a sparse elimination pass before the dense Smith reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

__all__ = [
    "IntegerMatrix",
    "SNFResult",
    "smith_normal_form",
    "invariant_factors",
    "rank",
    "solve_in_image",
    "kernel_basis",
    "determinant",
]

_INT64_SAFE = 2**62


class IntegerMatrix:
    """Sparse integer matrix, stored column-major (CSC layout).

    ``data`` is an int64 array when every entry fits a machine word and an
    object array of Python ints otherwise, so values stay exact either way.
    """

    __slots__ = ("rows", "cols", "indptr", "indices", "data")

    def __init__(self, rows: int, cols: int, indptr, indices, data):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = int(rows)
        self.cols = int(cols)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.data = data
        if len(self.indptr) != self.cols + 1:
            raise ValueError("indptr length must be cols + 1")
        if len(self.indices) and (self.indices.min() < 0 or self.indices.max() >= self.rows):
            raise ValueError("row index out of range")

    # construction -------------------------------------------------------

    @classmethod
    def from_triplets(cls, rows: int, cols: int, r, c, v) -> "IntegerMatrix":
        """Build from (row, col, value) triplets; duplicates are summed."""
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        values = list(v) if not isinstance(v, np.ndarray) else v
        if len(r) == 0:
            return cls.zeros(rows, cols)
        if len(r) and (r.min() < 0 or r.max() >= rows or c.min() < 0 or c.max() >= cols):
            raise ValueError("triplet index outside declared dimensions")
        order = np.lexsort((r, c))
        r, c = r[order], c[order]
        vals = [_exact_int(values[i]) for i in order]
        merged_r: list[int] = []
        merged_c: list[int] = []
        merged_v: list[int] = []
        for ri, ci, vi in zip(r.tolist(), c.tolist(), vals):
            if merged_r and merged_r[-1] == ri and merged_c[-1] == ci:
                merged_v[-1] += vi
            else:
                merged_r.append(ri)
                merged_c.append(ci)
                merged_v.append(vi)
        keep = [i for i, x in enumerate(merged_v) if x != 0]
        rr = np.array([merged_r[i] for i in keep], dtype=np.int64)
        cc = np.array([merged_c[i] for i in keep], dtype=np.int64)
        vv = [merged_v[i] for i in keep]
        indptr = np.zeros(cols + 1, dtype=np.int64)
        np.add.at(indptr, cc + 1, 1)
        return cls(rows, cols, np.cumsum(indptr), rr, _pack(vv))

    @classmethod
    def from_int64_triplets(cls, rows: int, cols: int, r, c, v) -> "IntegerMatrix":
        """Fast path for already-deduplicated int64 triplets with no zeros."""
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        csc = sp.csc_matrix((v, (r, c)), shape=(rows, cols), dtype=np.int64)
        csc.sum_duplicates()
        csc.eliminate_zeros()
        csc.sort_indices()
        return cls(rows, cols, csc.indptr, csc.indices, csc.data.astype(np.int64))

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntegerMatrix":
        m = len(rows)
        n = ncols if ncols is not None else (len(rows[0]) if m else 0)
        r, c, v = [], [], []
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("ragged dense matrix")
            for j, x in enumerate(row):
                if x:
                    r.append(i)
                    c.append(j)
                    v.append(_exact_int(x))
        return cls.from_triplets(m, n, r, c, v)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, np.zeros(cols + 1, dtype=np.int64),
                   np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        idx = np.arange(n, dtype=np.int64)
        return cls(n, n, np.arange(n + 1, dtype=np.int64), idx, np.ones(n, dtype=np.int64))

    # access --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.indices)

    def column(self, j: int) -> dict[int, int]:
        lo, hi = self.indptr[j], self.indptr[j + 1]
        return {int(i): int(x) for i, x in zip(self.indices[lo:hi], self.data[lo:hi])}

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self.column(j).get(i, 0)

    def entries(self) -> dict[tuple[int, int], int]:
        out = {}
        for j in range(self.cols):
            for i, x in self.column(j).items():
                out[i, j] = x
        return out

    def triplets(self) -> Iterable[tuple[int, int, int]]:
        for j in range(self.cols):
            for i, x in sorted(self.column(j).items()):
                yield i, j, x

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, j, x in self.triplets():
            out[i][j] = x
        return out

    def row_dicts(self) -> dict[int, dict[int, int]]:
        rows: dict[int, dict[int, int]] = {}
        indices = self.indices.tolist()
        data = [int(x) for x in self.data]
        indptr = self.indptr.tolist()
        for j in range(self.cols):
            for k in range(indptr[j], indptr[j + 1]):
                rows.setdefault(indices[k], {})[j] = data[k]
        return rows

    def max_abs(self) -> int:
        return max((abs(int(x)) for x in self.data), default=0)

    def is_zero(self) -> bool:
        return self.nnz == 0

    def transpose(self) -> "IntegerMatrix":
        r, c, v = [], [], []
        for i, j, x in self.triplets():
            r.append(j)
            c.append(i)
            v.append(x)
        return IntegerMatrix.from_triplets(self.cols, self.rows, r, c, v)

    def with_entry(self, i: int, j: int, value: int) -> "IntegerMatrix":
        """Copy of the matrix with one entry overwritten."""
        ent = self.entries()
        ent[i, j] = value
        keys = list(ent)
        return IntegerMatrix.from_triplets(self.rows, self.cols, [k[0] for k in keys],
                                           [k[1] for k in keys], [ent[k] for k in keys])

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntegerMatrix":
        row_pos = {int(r): k for k, r in enumerate(row_idx)}
        r, c, v = [], [], []
        for new_j, j in enumerate(col_idx):
            for i, x in self.column(int(j)).items():
                if i in row_pos:
                    r.append(row_pos[i])
                    c.append(new_j)
                    v.append(x)
        return IntegerMatrix.from_triplets(len(row_idx), len(col_idx), r, c, v)

    def _scipy(self) -> sp.csc_matrix:
        return sp.csc_matrix((self.data.astype(np.int64), self.indices, self.indptr),
                             shape=(self.rows, self.cols))

    def matvec(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        out = [0] * self.rows
        for j, xj in enumerate(x):
            if xj:
                for i, a in self.column(j).items():
                    out[i] += a * xj
        return out

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        bound = self.max_abs() * other.max_abs() * max(self.cols, 1)
        if self.data.dtype != object and other.data.dtype != object and bound < _INT64_SAFE:
            prod = (self._scipy() @ other._scipy()).tocsc()
            prod.eliminate_zeros()
            prod.sort_indices()
            return IntegerMatrix(self.rows, other.cols, prod.indptr, prod.indices,
                                 prod.data.astype(np.int64))
        r, c, v = [], [], []
        for j in range(other.cols):
            acc: dict[int, int] = {}
            for k, b in other.column(j).items():
                for i, a in self.column(k).items():
                    acc[i] = acc.get(i, 0) + a * b
            for i, x in acc.items():
                if x:
                    r.append(i)
                    c.append(j)
                    v.append(x)
        return IntegerMatrix.from_triplets(self.rows, other.cols, r, c, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries() == other.entries()

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, self.indptr.copy(), self.indices.copy(),
                             _pack([-int(x) for x in self.data]))

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def _exact_int(x) -> int:
    """``int(x)`` that refuses to round non-integral values."""
    i = int(x)
    if i != x:
        raise ValueError(f"matrix entry {x!r} is not an integer")
    return i


def _pack(values: list[int]) -> np.ndarray:
    if all(-_INT64_SAFE < x < _INT64_SAFE for x in values):
        return np.array(values, dtype=np.int64)
    arr = np.empty(len(values), dtype=object)
    arr[:] = values
    return arr


def _as_dense(M) -> list[list[int]]:
    if isinstance(M, IntegerMatrix):
        return M.to_dense()
    return [[_exact_int(x) for x in row] for row in M]


def _shape(M) -> tuple[int, int]:
    if isinstance(M, IntegerMatrix):
        return M.shape
    return len(M), (len(M[0]) if len(M) else 0)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SNFResult:
    """``S = U @ M @ V`` with ``S`` diagonal and a divisibility chain.

    Matrices are dense lists of Python ints. ``U_inv`` and ``V_inv`` are
    filled in only when requested.
    """

    U: list[list[int]]
    S: list[list[int]]
    V: list[list[int]]
    invariant_factors: list[int]
    U_inv: list[list[int]] | None = None
    V_inv: list[list[int]] | None = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


class _Reducer:
    """Dense Smith reduction that records the unimodular transforms."""

    def __init__(self, A: list[list[int]], track: bool, inverses: bool, ncols: int | None = None):
        self.A = A
        self.m = len(A)
        self.n = ncols if ncols is not None else (len(A[0]) if A else 0)
        self.track = track
        self.inverses = inverses
        # V and U_inv only ever see column operations, so they are kept transposed
        if track:
            self.U = _identity(self.m)
            self.Vt = _identity(self.n)
        if inverses:
            self.Uit = _identity(self.m)
            self.Vi = _identity(self.n)

    @property
    def V(self) -> list[list[int]]:
        return [list(r) for r in zip(*self.Vt)] if self.n else []

    @property
    def Ui(self) -> list[list[int]]:
        return [list(r) for r in zip(*self.Uit)] if self.m else []

    # elementary operations; each updates the transform and its inverse

    def swap_rows(self, i: int, k: int) -> None:
        A = self.A
        A[i], A[k] = A[k], A[i]
        if self.track:
            self.U[i], self.U[k] = self.U[k], self.U[i]
        if self.inverses:
            self.Uit[i], self.Uit[k] = self.Uit[k], self.Uit[i]

    def swap_cols(self, j: int, k: int) -> None:
        for row in self.A:
            row[j], row[k] = row[k], row[j]
        if self.track:
            self.Vt[j], self.Vt[k] = self.Vt[k], self.Vt[j]
        if self.inverses:
            self.Vi[j], self.Vi[k] = self.Vi[k], self.Vi[j]

    def add_row(self, target: int, source: int, q: int) -> None:
        """row[target] += q * row[source]"""
        if not q:
            return
        A = self.A
        src = A[source]
        A[target] = [x + q * y for x, y in zip(A[target], src)]
        if self.track:
            s = self.U[source]
            self.U[target] = [x + q * y for x, y in zip(self.U[target], s)]
        if self.inverses:
            # U' = E U, so U'^{-1} = U^{-1} E^{-1}: col[source] -= q * col[target]
            Uit = self.Uit
            Uit[source] = [x - q * y for x, y in zip(Uit[source], Uit[target])]

    def add_col(self, target: int, source: int, q: int) -> None:
        """col[target] += q * col[source]"""
        if not q:
            return
        for row in self.A:
            if row[source]:
                row[target] += q * row[source]
        if self.track:
            Vt = self.Vt
            Vt[target] = [x + q * y for x, y in zip(Vt[target], Vt[source])]
        if self.inverses:
            Vi = self.Vi
            Vi[source] = [x - q * y for x, y in zip(Vi[source], Vi[target])]

    def negate_row(self, i: int) -> None:
        self.A[i] = [-x for x in self.A[i]]
        if self.track:
            self.U[i] = [-x for x in self.U[i]]
        if self.inverses:
            self.Uit[i] = [-x for x in self.Uit[i]]

    def run(self) -> list[int]:
        A, m, n = self.A, self.m, self.n
        factors: list[int] = []
        t = 0
        while t < min(m, n):
            pivot = self._min_entry(t)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                self.swap_rows(t, pi)
            if pj != t:
                self.swap_cols(t, pj)
            while True:
                p = A[t][t]
                moved = False
                for i in range(t + 1, m):
                    if A[i][t]:
                        self.add_row(i, t, -(A[i][t] // p))
                for j in range(t + 1, n):
                    if A[t][j]:
                        self.add_col(j, t, -(A[t][j] // p))
                # a smaller remainder in the pivot row/column becomes the new pivot
                best = None
                for i in range(t + 1, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, None)
                for j in range(t + 1, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), None, j)
                if best is not None:
                    _, i, j = best
                    if i is not None:
                        self.swap_rows(t, i)
                    else:
                        self.swap_cols(t, j)
                    moved = True
                if moved:
                    continue
                if abs(p) == 1:
                    break
                # divisibility: pull in any entry the pivot does not divide
                bad = None
                for i in range(t + 1, m):
                    row = A[i]
                    for j in range(t + 1, n):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if A[t][t] < 0:
                self.negate_row(t)
            factors.append(A[t][t])
            t += 1
        factors.extend([0] * (min(m, n) - len(factors)))
        return factors

    def _min_entry(self, t: int):
        best = None
        for i in range(t, self.m):
            row = self.A[i]
            for j in range(t, self.n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return i, j
        return None if best is None else (best[1], best[2])


def smith_normal_form(M, inverses: bool = False) -> SNFResult:
    """Smith normal form of an integer matrix with unimodular ``U``, ``V``.

    Pivots are chosen as the nonzero entry of least absolute value (ties go
    to the lowest row, then column). With ``inverses=True`` the inverses of
    ``U`` and ``V`` are accumulated as well.
    """
    A = _as_dense(M)
    m, n = _shape(M)
    red = _Reducer(A, track=True, inverses=inverses, ncols=n)
    factors = red.run()
    return SNFResult(
        U=red.U, S=red.A, V=red.V, invariant_factors=factors,
        U_inv=red.Ui if inverses else None, V_inv=red.Vi if inverses else None,
    )


def _sparse_unit_elimination(rows: dict[int, dict[int, int]]) -> tuple[int, dict[int, dict[int, int]]]:
    """Eliminate ±1 pivots in place; returns (#units removed, residual rows).

    Each removed unit pivot contributes an invariant factor of 1. Row
    operations clear the pivot column, after which the pivot row can be
    cleared by column operations that touch nothing else.
    """
    cols: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda c: len(cols[c])):
            col = cols.get(j)
            if not col:
                continue
            best = None
            for i in col:
                x = rows[i][j]
                if (x == 1 or x == -1) and (best is None or len(rows[i]) < len(rows[best])):
                    best = i
            if best is None:
                continue
            prow = rows.pop(best)
            p = prow[j]
            for k in prow:
                cols[k].discard(best)
            for i in list(cols[j]):
                row = rows[i]
                f = row[j] * p
                for k, y in prow.items():
                    nv = row.get(k, 0) - f * y
                    if nv:
                        if k not in row:
                            cols[k].add(i)
                        row[k] = nv
                    else:
                        del row[k]
                        cols[k].discard(i)
                if not row:
                    del rows[i]
            del cols[j]
            units += 1
            progress = True
        for j in [c for c, s in cols.items() if not s]:
            del cols[j]
    return units, rows


def invariant_factors(M) -> list[int]:
    """Nonzero invariant factors of ``M`` in divisibility order.

    Zero factors are omitted; ``len(result)`` is the rank.
    """
    if isinstance(M, IntegerMatrix):
        rows = M.row_dicts()
    else:
        rows = {}
        for i, row in enumerate(M):
            d = {j: int(x) for j, x in enumerate(row) if x}
            if d:
                rows[i] = d
    units, rest = _sparse_unit_elimination(rows)
    if not rest:
        return [1] * units
    col_ids = sorted({j for row in rest.values() for j in row})
    col_pos = {j: k for k, j in enumerate(col_ids)}
    dense = []
    for row in rest.values():
        r = [0] * len(col_ids)
        for j, x in row.items():
            r[col_pos[j]] = x
        dense.append(r)
    factors = _Reducer(dense, track=False, inverses=False).run()
    return [1] * units + [d for d in factors if d]


def rank(M) -> int:
    """Rank over the rationals (number of nonzero invariant factors)."""
    return len(invariant_factors(M))


def determinant(M) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = _as_dense(M)
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def kernel_basis(M, snf: SNFResult | None = None) -> list[list[int]]:
    """Integer basis of ``ker M`` as a list of column vectors."""
    res = snf or smith_normal_form(M)
    _, n = _shape(M)
    r = res.rank
    return [[res.V[i][j] for i in range(n)] for j in range(r, n)]


def solve_in_image(M, target: Sequence[int], snf: SNFResult | None = None) -> tuple[bool, list[int] | None]:
    """Decide whether ``M x = target`` has an integer solution.

    Returns ``(True, x)`` with a witness, or ``(False, None)``.
    """
    m, n = _shape(M)
    if len(target) != m:
        raise ValueError(f"target has length {len(target)}, expected {m}")
    res = snf or smith_normal_form(M)
    ut = [sum(u * t for u, t in zip(row, target)) for row in res.U]
    y = [0] * n
    for i in range(m):
        d = res.invariant_factors[i] if i < len(res.invariant_factors) else 0
        if d == 0:
            if ut[i] != 0:
                return False, None
        else:
            if ut[i] % d:
                return False, None
            y[i] = ut[i] // d
    x = [sum(res.V[i][k] * y[k] for k in range(n)) for i in range(n)]
    return True, x


def matmul_dense(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    """Exact product of two dense integer matrices.

    Uses int64 when a magnitude bound rules out overflow, Python ints otherwise.
    """
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    if inner == 0 or cols == 0:
        return [[0] * cols for _ in A]
    try:
        a = np.array(A, dtype=np.int64)
        b = np.array(B, dtype=np.int64)
        safe = int(np.abs(a).max()) * int(np.abs(b).max()) * inner < _INT64_SAFE
    except OverflowError:
        safe = False
    if safe:
        return (a @ b).tolist()
    prod = np.array(A, dtype=object) @ np.array(B, dtype=object)
    return [[int(x) for x in row] for row in prod]


def is_divisibility_chain(factors: Sequence[int]) -> bool:
    nonzero = [d for d in factors if d]
    if any(d < 0 for d in factors):
        return False
    if nonzero != list(factors[: len(nonzero)]):
        return False
    return all(nonzero[k + 1] % nonzero[k] == 0 for k in range(len(nonzero) - 1))


def content_gcd(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g

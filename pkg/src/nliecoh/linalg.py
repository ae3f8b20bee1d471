"""Exact rational linear algebra.

Scalars are Python ``int`` or :class:`fractions.Fraction`; anything with a
denominator of 1 is normalized back to ``int`` so that integer-only
computations stay on the fast path.  Matrices are sparse, stored in
canonical COO form (sorted, unique, no explicit zeros) with numpy index
arrays.  The value array is ``int64`` when every entry is a small integer
and ``object`` otherwise; both are exact.

Rank, kernels and linear solves use a fraction-free row echelon over the
integers: each row is scaled to a primitive integer vector and eliminations
are integer combinations followed by content (gcd) removal.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
import scipy.sparse as sp

Scalar = Union[int, Fraction]

_INT64_SAFE = 2**53
_RATIONAL_RE = re.compile(r"^\s*([+\-−]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def to_scalar(x) -> Scalar:
    """Normalize ``x`` to an exact scalar (``int`` whenever integral)."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not exact scalars")
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else q


def parse_rational(text: str) -> Scalar:
    """Parse ``"p"`` or ``"p/q"`` (optional leading sign, ASCII or U+2212)."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    value = Fraction(int(num), int(den) if den is not None else 1) if den != "0" else None
    if value is None:
        raise ValueError(f"zero denominator in {text!r}")
    if sign in ("-", "−"):
        value = -value
    return to_scalar(value)


def format_rational(x: Scalar) -> str:
    x = to_scalar(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def _lcm_of_denominators(values: Iterable[Scalar]) -> int:
    out = 1
    for v in values:
        if isinstance(v, Fraction):
            out = out * v.denominator // math.gcd(out, v.denominator)
    return out


def _compact(data: np.ndarray) -> np.ndarray:
    """Return an int64 array if every entry is a small integer, else object."""
    if data.dtype != object:
        if data.size and int(np.abs(data).max()) >= _INT64_SAFE:
            return np.array([int(v) for v in data], dtype=object)
        return data.astype(np.int64, copy=False)
    out = np.empty(len(data), dtype=np.int64)
    for i, v in enumerate(data):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                return np.array([to_scalar(w) for w in data], dtype=object)
            v = v.numerator
        if not -_INT64_SAFE < v < _INT64_SAFE:
            return np.array([to_scalar(w) for w in data], dtype=object)
        out[i] = v
    return out


class SparseMatrix:
    """Immutable exact sparse matrix.

    ``row``/``col`` are sorted int64 index arrays and ``data`` holds the
    matching nonzero values.
    """

    __slots__ = ("nrows", "ncols", "row", "col", "data", "_rowdicts")

    def __init__(self, nrows: int, ncols: int, row, col, data):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        self.row = row
        self.col = col
        self.data = data
        self._rowdicts = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, rows, cols, vals) -> "SparseMatrix":
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        if isinstance(vals, np.ndarray) and vals.dtype != object:
            vals = vals.astype(np.int64, copy=False).ravel()
            if vals.size and int(np.abs(vals).max()) * vals.size >= 2**62:
                vals = np.array([int(v) for v in vals], dtype=object)
        else:
            vals = np.array([to_scalar(v) for v in vals], dtype=object) if not (
                isinstance(vals, np.ndarray)) else vals.ravel()
            vals = _compact(vals)
            if vals.dtype != object and vals.size and (
                    int(np.abs(vals).max()) * vals.size >= 2**62):
                vals = vals.astype(object)
        if not (len(rows) == len(cols) == len(vals)):
            raise ValueError("triplet arrays must have equal length")
        if len(rows) == 0:
            return cls.zeros(nrows, ncols)
        if rows.min() < 0 or rows.max() >= nrows or cols.min() < 0 or cols.max() >= ncols:
            raise IndexError("triplet index out of range")
        if vals.dtype != object:
            # scipy sums duplicates in C; int64 is exact under the bound checked above
            m = sp.csr_matrix((vals, (rows, cols)), shape=(nrows, ncols), dtype=np.int64)
            m.sum_duplicates()
            m.eliminate_zeros()
            m = m.tocoo()
            return cls(nrows, ncols, m.row.astype(np.int64), m.col.astype(np.int64),
                       _compact(m.data.astype(np.int64)))
        key = rows * ncols + cols
        order = np.argsort(key, kind="stable")
        key = key[order]
        vals = vals[order]
        starts = np.flatnonzero(np.concatenate(([True], key[1:] != key[:-1])))
        summed = np.add.reduceat(vals, starts)
        ukey = key[starts]
        if summed.dtype == object:
            summed = np.array([to_scalar(v) for v in summed], dtype=object)
            mask = np.array([v != 0 for v in summed], dtype=bool)
        else:
            mask = summed != 0
        ukey = ukey[mask]
        summed = _compact(summed[mask])
        return cls(nrows, ncols, ukey // ncols, ukey % ncols, summed)

    @classmethod
    def from_dict(cls, nrows: int, ncols: int, entries: Dict) -> "SparseMatrix":
        if not entries:
            return cls.zeros(nrows, ncols)
        keys = list(entries)
        return cls.from_triplets(nrows, ncols, [k[0] for k in keys], [k[1] for k in keys],
                                 np.array([to_scalar(entries[k]) for k in keys], dtype=object))

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(r):
                v = to_scalar(v)
                if v != 0:
                    entries[i, j] = v
        return cls.from_dict(nrows, ncols, entries)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        e = np.zeros(0, dtype=np.int64)
        return cls(nrows, ncols, e, e.copy(), e.copy())

    @classmethod
    def identity(cls, n: int, scale: Scalar = 1) -> "SparseMatrix":
        idx = np.arange(n, dtype=np.int64)
        return cls.from_triplets(n, n, idx, idx, np.array([to_scalar(scale)] * n, dtype=object))

    # -- inspection -------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return len(self.data)

    @property
    def is_integral(self) -> bool:
        return self.data.dtype != object

    def entries(self) -> Dict:
        return {(int(r), int(c)): to_scalar(v) for r, c, v in zip(self.row, self.col, self.data)}

    def __getitem__(self, rc) -> Scalar:
        r, c = rc
        return self.entries().get((r, c), 0) if self.nnz < 64 else self._rows().get(r, {}).get(c, 0)

    def to_dense(self) -> List[List[Scalar]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, c, v in zip(self.row, self.col, self.data):
            out[int(r)][int(c)] = to_scalar(v)
        return out

    def to_numpy(self) -> np.ndarray:
        """Dense exact numpy array (int64 or object)."""
        if self.is_integral:
            out = np.zeros(self.shape, dtype=np.int64)
        else:
            out = np.zeros(self.shape, dtype=object)
            out[...] = 0
        out[self.row, self.col] = self.data
        return out

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> "SparseMatrix":
        r, c = np.nonzero(arr != 0)
        vals = arr[r, c]
        return cls.from_triplets(arr.shape[0], arr.shape[1], r, c,
                                 vals if vals.dtype != object else vals.astype(object))

    def _rows(self) -> Dict[int, Dict[int, Scalar]]:
        if self._rowdicts is None:
            rows: Dict[int, Dict[int, Scalar]] = {}
            for r, c, v in zip(self.row.tolist(), self.col.tolist(), self.data.tolist()):
                rows.setdefault(r, {})[c] = v
            self._rowdicts = rows
        return self._rowdicts

    def row_dict(self, r: int) -> Dict[int, Scalar]:
        return dict(self._rows().get(r, {}))

    def column(self, c: int) -> Dict[int, Scalar]:
        mask = self.col == c
        return {int(r): to_scalar(v) for r, v in zip(self.row[mask], self.data[mask])}

    def max_abs(self) -> Scalar:
        if not self.nnz:
            return 0
        if self.is_integral:
            return int(np.abs(self.data).max())
        return max(abs(v) for v in self.data)

    def is_zero(self) -> bool:
        return self.nnz == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.nnz == other.nnz
                and np.array_equal(self.row, other.row) and np.array_equal(self.col, other.col)
                and all(a == b for a, b in zip(self.data.tolist(), other.data.tolist())))

    __hash__ = None

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    # -- arithmetic -------------------------------------------------------

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_triplets(self.ncols, self.nrows, self.col, self.row, self.data)

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def scale(self, c: Scalar) -> "SparseMatrix":
        c = to_scalar(c)
        if c == 0:
            return SparseMatrix.zeros(self.nrows, self.ncols)
        data = self.data * c if isinstance(c, int) else np.array(
            [v * c for v in self.data.tolist()], dtype=object)
        return SparseMatrix.from_triplets(self.nrows, self.ncols, self.row, self.col, data)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = _concat_data(self.data, other.data)
        return SparseMatrix.from_triplets(self.nrows, self.ncols,
                                          np.concatenate([self.row, other.row]),
                                          np.concatenate([self.col, other.col]), data)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            return matmul(self, other)
        return matvec(self, other)


def _concat_data(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object:
        return np.concatenate([a, b])
    return np.concatenate([a.astype(object), b.astype(object)])


def _to_scipy(m: SparseMatrix) -> sp.csr_matrix:
    return sp.csr_matrix((m.data, (m.row, m.col)), shape=m.shape, dtype=np.int64)


def matmul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Exact product ``a @ b``."""
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if a.nnz == 0 or b.nnz == 0:
        return SparseMatrix.zeros(a.nrows, b.ncols)
    if a.is_integral and b.is_integral:
        row_nnz = int(np.bincount(a.row).max())
        if a.max_abs() * b.max_abs() * row_nnz < 2**62:
            c = (_to_scipy(a) @ _to_scipy(b)).tocoo()
            return SparseMatrix.from_triplets(a.nrows, b.ncols, c.row, c.col,
                                              c.data.astype(np.int64))
    brows = b._rows()
    out: Dict = {}
    for r, arow in a._rows().items():
        acc: Dict[int, Scalar] = {}
        for k, av in arow.items():
            for j, bv in brows.get(k, {}).items():
                acc[j] = acc.get(j, 0) + av * bv
        for j, v in acc.items():
            if v != 0:
                out[r, j] = v
    return SparseMatrix.from_dict(a.nrows, b.ncols, out)


def matvec(m: SparseMatrix, v: Sequence) -> List[Scalar]:
    if len(v) != m.ncols:
        raise ValueError(f"vector of length {len(v)} does not match {m.shape}")
    out: List[Scalar] = [0] * m.nrows
    for r, c, a in zip(m.row.tolist(), m.col.tolist(), m.data.tolist()):
        x = v[c]
        if x:
            out[r] += a * x
    return [to_scalar(x) for x in out]


def submatrix(m: SparseMatrix, rows: Sequence[int], cols: Sequence[int]) -> SparseMatrix:
    """Rows and columns picked (and renumbered) in the given order."""
    rmap = np.full(m.nrows, -1, dtype=np.int64)
    cmap = np.full(m.ncols, -1, dtype=np.int64)
    rmap[np.asarray(rows, dtype=np.int64)] = np.arange(len(rows))
    cmap[np.asarray(cols, dtype=np.int64)] = np.arange(len(cols))
    r, c = rmap[m.row], cmap[m.col]
    keep = (r >= 0) & (c >= 0)
    return SparseMatrix.from_triplets(len(rows), len(cols), r[keep], c[keep], m.data[keep])


def hstack(blocks: Sequence[SparseMatrix]) -> SparseMatrix:
    nrows = blocks[0].nrows
    rows, cols, data, off = [], [], [], 0
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("row count mismatch in hstack")
        rows.append(b.row)
        cols.append(b.col + off)
        data.append(b.data.astype(object))
        off += b.ncols
    return SparseMatrix.from_triplets(nrows, off, np.concatenate(rows), np.concatenate(cols),
                                      np.concatenate(data))


def vstack(blocks: Sequence[SparseMatrix]) -> SparseMatrix:
    return hstack([b.transpose() for b in blocks]).transpose()


# -- fraction-free echelon ---------------------------------------------------


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        row = {k: v // g for k, v in row.items()}
    return row


def integer_row(values: Dict[int, Scalar]) -> Dict[int, int]:
    """Scale a rational sparse row to a primitive integer row (same span)."""
    vals = {k: to_scalar(v) for k, v in values.items() if v != 0}
    if not vals:
        return {}
    den = _lcm_of_denominators(vals.values())
    row = {k: int(v * den) for k, v in vals.items()}
    return _primitive(row)


class Echelon:
    """Incremental integer row echelon form.

    Rows are kept primitive with a positive leading entry.  ``add`` returns
    whether the new row was independent of the rows already present.
    """

    def __init__(self):
        self.pivots: Dict[int, Dict[int, int]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Dict[int, int]) -> Dict[int, int]:
        pivots = self.pivots
        while row:
            lead = min(row)
            p = pivots.get(lead)
            if p is None:
                return row
            a, b = row[lead], p[lead]
            g = math.gcd(a, b)
            fa, fb = b // g, a // g
            new = {k: v * fa for k, v in row.items()} if fa != 1 else dict(row)
            for k, v in p.items():
                w = new.get(k, 0) - fb * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        return row

    def add(self, row: Dict[int, int]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        self.pivots[min(row)] = row
        return True

    def reduced_rows(self) -> Dict[int, Dict[int, Fraction]]:
        """Reduced row echelon form with unit pivots, keyed by pivot column."""
        out: Dict[int, Dict[int, Fraction]] = {}
        for lead in sorted(self.pivots, reverse=True):
            p = self.pivots[lead]
            inv = Fraction(1, p[lead])
            row = {k: v * inv for k, v in p.items()}
            for k in sorted(k for k in row if k != lead and k in out):
                c = row.get(k)
                if not c:
                    continue
                for kk, vv in out[k].items():
                    w = row.get(kk, 0) - c * vv
                    if w:
                        row[kk] = w
                    else:
                        row.pop(kk, None)
            out[lead] = row
        return out


def _echelon_of_rows(m: SparseMatrix, extra: Optional[Sequence] = None) -> Echelon:
    ech = Echelon()
    rows = m._rows()
    order = sorted(rows, key=lambda r: (min(rows[r]), len(rows[r]), r))
    seen = set()
    for r in order:
        seen.add(r)
        vals = dict(rows[r])
        if extra is not None and extra[r] != 0:
            vals[m.ncols] = extra[r]
        ech.add(integer_row(vals))
    if extra is not None:
        for r in range(m.nrows):
            if r not in seen and extra[r] != 0:
                ech.add(integer_row({m.ncols: extra[r]}))
    return ech


def rank(m: SparseMatrix) -> int:
    """Exact rank over the rationals."""
    if m.nnz == 0:
        return 0
    return len(_echelon_of_rows(m))


def kernel_basis(m: SparseMatrix) -> List[List[Scalar]]:
    """Basis of ``{v : m v = 0}``, one vector per free column in column order."""
    ech = _echelon_of_rows(m) if m.nnz else Echelon()
    rref = ech.reduced_rows()
    basis = []
    pivot_cols = sorted(rref)
    for f in range(m.ncols):
        if f in rref:
            continue
        v: List[Scalar] = [0] * m.ncols
        v[f] = 1
        for p in pivot_cols:
            c = rref[p].get(f)
            if c:
                v[p] = to_scalar(-c)
        basis.append(v)
    return basis


def solve_in_image(m: SparseMatrix, b: Sequence) -> Optional[List[Scalar]]:
    """Some ``x`` with ``m x = b``, or ``None`` if ``b`` is not in the image."""
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    b = [to_scalar(v) for v in b]
    ech = _echelon_of_rows(m, extra=b)
    if m.ncols in ech.pivots:
        return None
    rref = ech.reduced_rows()
    x: List[Scalar] = [0] * m.ncols
    for p, row in rref.items():
        x[p] = to_scalar(row.get(m.ncols, 0))
    return x


def span_rank(vectors: Iterable[Sequence]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(integer_row({i: x for i, x in enumerate(v) if x != 0}))
    return len(ech)


def extend_to_complement(base: Iterable[Dict[int, Scalar]], candidates: Sequence[Sequence]) -> List[int]:
    """Indices of ``candidates`` that extend span(``base``) one at a time.

    The chosen candidates form a basis of a complement of span(base) inside
    span(base + candidates), preferring earlier candidates.
    """
    ech = Echelon()
    for v in base:
        ech.add(integer_row(v))
    chosen = []
    for i, v in enumerate(candidates):
        if ech.add(integer_row({k: x for k, x in enumerate(v) if x != 0})):
            chosen.append(i)
    return chosen


def in_span(base: Iterable[Dict[int, Scalar]], v: Sequence) -> bool:
    ech = Echelon()
    for w in base:
        ech.add(integer_row(w))
    return not ech.reduce(integer_row({k: x for k, x in enumerate(v) if x != 0}))

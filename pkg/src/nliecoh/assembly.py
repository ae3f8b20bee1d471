"""Vectorized assembly of operators between slot-structured cochain spaces.

A cochain space here is ``Hom(S₁ ⊗ … ⊗ S_p, V)`` flattened row-major over
``(s₁, …, s_p, v)``.  An operator is a sum of :class:`Term` s.  Each term reads
some *active* output slots, looks them up in a table, and writes the matching
input slots; every other output slot is copied to a fixed input slot
(*passive*).  The table is small (it lives on the active slots only); the
passive slots are broadcast with numpy, so assembly cost is proportional to
the number of nonzeros.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from .linalg import Scalar, SparseMatrix, to_scalar


@dataclass
class Term:
    active_out: Tuple[int, ...]
    active_in: Tuple[int, ...]
    passive: Tuple[Tuple[int, int], ...]
    # (output indices on active_out, input indices on active_in, coefficient, value map)
    # a value map of None means the identity on V
    entries: List[Tuple[Tuple[int, ...], Tuple[int, ...], Scalar, Optional[SparseMatrix]]] = \
        field(default_factory=list)

    def add(self, out_idx, in_idx, coef, vmat=None):
        if coef != 0 and (vmat is None or vmat.nnz):
            self.entries.append((tuple(out_idx), tuple(in_idx), coef, vmat))


def _strides(shape: Sequence[int], dv: int) -> List[int]:
    out = []
    s = dv
    for d in reversed(shape):
        out.append(s)
        s *= d
    return list(reversed(out))


def _size(shape, dv) -> int:
    n = dv
    for d in shape:
        n *= d
    return n


def assemble(out_shape: Sequence[int], in_shape: Sequence[int], dv_out: int, dv_in: int,
             terms: Sequence[Term], first: Optional[int] = None) -> SparseMatrix:
    """Matrix of the operator ``Σ terms`` from the input space to the output space.

    With ``first`` set, only the rows whose first output slot equals ``first``
    are built (a row block of the full matrix), which bounds memory.
    """
    nrows, ncols = _size(out_shape, dv_out), _size(in_shape, dv_in)
    so, si = _strides(out_shape, dv_out), _strides(in_shape, dv_in)
    offset = 0
    if first is not None:
        nrows = so[0]
        offset = first * so[0]
    acc = None
    obj_rows, obj_cols, obj_vals = [], [], []
    for term in terms:
        if not term.entries or nrows == 0 or ncols == 0:
            continue
        for p, q in term.passive:
            if out_shape[p] != in_shape[q]:
                raise ValueError("passive slots must have equal dimension")
        ranges = [np.arange(out_shape[p]) if first is None or p != 0 else np.array([first])
                  for p, _ in term.passive]
        entries = term.entries
        if first is not None and 0 in term.active_out:
            k = term.active_out.index(0)
            entries = [e for e in entries if e[0][k] == first]
            if not entries:
                continue
        if ranges:
            grid = np.stack([g.ravel() for g in np.meshgrid(*ranges, indexing="ij")])
            pass_out = sum(grid[t] * so[p] for t, (p, _) in enumerate(term.passive))
            pass_in = sum(grid[t] * si[q] for t, (_, q) in enumerate(term.passive))
        else:
            pass_out = pass_in = np.zeros(1, dtype=np.int64)
        if len(pass_out) == 0:
            continue
        r0, c0, w0 = [], [], []
        integral = True
        for out_idx, in_idx, coef, vmat in entries:
            bo = sum(so[p] * a for p, a in zip(term.active_out, out_idx)) - offset
            bi = sum(si[q] * b for q, b in zip(term.active_in, in_idx))
            coef = to_scalar(coef)
            if vmat is None:
                ar = np.arange(dv_out, dtype=np.int64)
                r0.append(bo + ar)
                c0.append(bi + ar)
                w0.append(np.full(dv_out, coef, dtype=object))
                integral &= isinstance(coef, int)
            else:
                r0.append(bo + vmat.row)
                c0.append(bi + vmat.col)
                vals = vmat.data * coef if isinstance(coef, int) else vmat.data.astype(object) * coef
                w0.append(vals.astype(object))
                integral &= isinstance(coef, int) and vmat.is_integral
        r0 = np.concatenate(r0)
        c0 = np.concatenate(c0)
        w0 = np.concatenate(w0)
        rows = (r0[:, None] + pass_out[None, :]).ravel()
        cols = (c0[:, None] + pass_in[None, :]).ravel()
        if integral:
            w = np.repeat(w0.astype(np.int64), len(pass_out))
            m = sp.csr_matrix((w, (rows, cols)), shape=(nrows, ncols), dtype=np.int64)
            acc = m if acc is None else acc + m
        else:
            obj_rows.append(rows)
            obj_cols.append(cols)
            obj_vals.append(np.repeat(w0, len(pass_out)))
    if acc is None and not obj_rows:
        return SparseMatrix.zeros(nrows, ncols)
    if obj_rows:
        if acc is not None:
            acc = acc.tocoo()
            obj_rows.append(acc.row)
            obj_cols.append(acc.col)
            obj_vals.append(acc.data.astype(object))
        return SparseMatrix.from_triplets(nrows, ncols, np.concatenate(obj_rows),
                                          np.concatenate(obj_cols), np.concatenate(obj_vals))
    acc = acc.tocoo()
    return SparseMatrix.from_triplets(nrows, ncols, acc.row, acc.col, acc.data.astype(np.int64))


def drop_slot(nslots: int, removed: int, extra: Sequence[int] = ()) -> Tuple[Tuple[int, int], ...]:
    """Passive map for output slots other than ``removed`` and ``extra``.

    Output slot p goes to input slot p (p < removed) or p − 1 (p > removed).
    """
    skip = {removed, *extra}
    return tuple((p, p if p < removed else p - 1) for p in range(nslots) if p not in skip)

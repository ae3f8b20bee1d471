"""n-Lie algebras, their representations, and axiom validators.

Structure constants are stored on increasing index tuples only; any other
tuple is evaluated through :func:`multiindex.sort_with_sign`.  The validators
work on dense exact tensors (``int64`` when every entry is a small integer,
``object`` otherwise) and enumerate increasing tuples, which is complete by
multilinearity and antisymmetry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .linalg import Scalar, SparseMatrix, to_scalar
from .multiindex import normalize, sort_with_sign, wedge_basis, wedge_dim

Vector = Dict[int, Scalar]

_INT_LIMIT = 2**62


def exact_array(values, shape=None) -> np.ndarray:
    """Exact numpy array: int64 if every entry is an integer below 2**31, else object."""
    arr = np.asarray(values, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    flat = arr.ravel()
    if all(isinstance(v, (int, np.integer)) and abs(v) < 2**31 for v in flat):
        return arr.astype(np.int64)
    return np.vectorize(to_scalar, otypes=[object])(arr) if arr.size else arr


def _safe_for_products(*arrays, terms: int = 1) -> bool:
    bound = terms
    for a in arrays:
        if a.dtype == object:
            return False
        bound *= int(np.abs(a).max()) if a.size else 0
    return bound < _INT_LIMIT


def _objectify(*arrays):
    return tuple(a.astype(object) for a in arrays)


def _as_list(x):
    if isinstance(x, np.ndarray):
        return [_as_list(v) for v in x] if x.ndim > 1 else [to_scalar(v) for v in x]
    return to_scalar(x)


@dataclass
class Witness:
    """A failing instance of an identity: which axiom, at which basis tuple."""

    axiom: str
    args: Tuple
    lhs: object
    rhs: object

    def to_json(self) -> dict:
        def one_based(a):
            if isinstance(a, tuple):
                return [one_based(x) for x in a]
            return a + 1

        def fmt(v):
            if isinstance(v, list):
                return [fmt(x) for x in v]
            return str(to_scalar(v)) if not isinstance(v, int) else str(v)

        return {"axiom": self.axiom, "args": [one_based(a) for a in self.args],
                "lhs": fmt(self.lhs), "rhs": fmt(self.rhs)}


def act_on_slot(x: np.ndarray, a: np.ndarray, k: int) -> np.ndarray:
    """Replace axis ``k`` of ``x`` by ``t ↦ Σ_s a[s, t] x[.., s, ..]``."""
    return np.moveaxis(np.tensordot(x, a, axes=([k], [0])), -1, k)


@dataclass(frozen=True, eq=False)
class NLieAlgebra:
    """Finite-dimensional n-ary algebra with totally antisymmetric bracket."""

    n: int
    dim: int
    structure: Mapping[Tuple[int, ...], Vector] = field(default_factory=dict)
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("arity must be at least 2")
        clean = {}
        for key, vec in self.structure.items():
            key = tuple(int(i) for i in key)
            if len(key) != self.n or any(b <= a for a, b in zip(key, key[1:])):
                raise ValueError(f"bracket key {key} is not an increasing {self.n}-tuple")
            if key and (key[0] < 0 or key[-1] >= self.dim):
                raise ValueError(f"bracket key {key} out of range")
            v = {}
            for i, c in vec.items():
                if not 0 <= i < self.dim:
                    raise ValueError(f"bracket value index {i} out of range")
                c = to_scalar(c)
                if c != 0:
                    v[int(i)] = c
            if v:
                clean[key] = v
        object.__setattr__(self, "structure", clean)

    def __repr__(self):
        return f"NLieAlgebra(n={self.n}, dim={self.dim}, nonzero={len(self.structure)})"

    # -- evaluation -------------------------------------------------------

    def bracket_basis(self, t: Sequence[int]) -> Vector:
        s = sort_with_sign(t)
        if s is None:
            return {}
        key, sign = s
        vec = self.structure.get(key)
        if not vec:
            return {}
        return {i: sign * c for i, c in vec.items()} if sign < 0 else dict(vec)

    def bracket(self, *vectors: Sequence) -> List[Scalar]:
        """Multilinear bracket of ``n`` coordinate vectors."""
        if len(vectors) != self.n:
            raise ValueError(f"expected {self.n} arguments, got {len(vectors)}")
        for v in vectors:
            if len(v) != self.dim:
                raise ValueError(f"argument of length {len(v)} for dimension {self.dim}")
        x = self.tensor.astype(object)
        for v in vectors:
            x = np.tensordot(np.array([to_scalar(c) for c in v], dtype=object), x, axes=([0], [0]))
        return [to_scalar(c) for c in x]

    @cached_property
    def tensor(self) -> np.ndarray:
        """Dense bracket tensor, shape (d,)*n + (d,), output index last."""
        d = self.dim
        small = all(isinstance(c, int) and abs(c) < 2**31
                    for vec in self.structure.values() for c in vec.values())
        t = np.zeros((d,) * self.n + (d,), dtype=np.int64 if small else object)
        if not small:
            t[...] = 0
        for key, vec in self.structure.items():
            for perm in itertools.permutations(key):
                sign = sort_with_sign(perm)[1]
                for i, c in vec.items():
                    t[perm + (i,)] = sign * c
        return t if small else exact_array(t)

    def ad(self, w: Sequence[int]) -> SparseMatrix:
        """Matrix of y ↦ [w₁,…,w_{n−1},y]."""
        return self._ad_cache(tuple(w))

    def _ad_cache(self, w):
        cache = self.__dict__.setdefault("_ads", {})
        if w not in cache:
            entries = {}
            for y in range(self.dim):
                for i, c in self.bracket_basis(w + (y,)).items():
                    entries[i, y] = c
            cache[w] = SparseMatrix.from_dict(self.dim, self.dim, entries)
        return cache[w]

    def wedge_action(self, w: Sequence[int], k: int) -> SparseMatrix:
        """ad(w) extended as a derivation to Λ^k L, in the lexicographic wedge basis."""
        w = tuple(w)
        cache = self.__dict__.setdefault("_wedge_actions", {})
        key = (w, k)
        if key not in cache:
            d = self.dim
            cols = [dict(self.ad(w).column(y)) for y in range(d)]
            entries: Dict[Tuple[int, int], Scalar] = {}
            for j, b in enumerate(wedge_basis(k, d)):
                for slot in range(k):
                    for t, c in cols[b[slot]].items():
                        nb = normalize(b[:slot] + (t,) + b[slot + 1:], d)
                        if nb is None:
                            continue
                        pos, sign = nb
                        entries[pos, j] = entries.get((pos, j), 0) + sign * c
            dk = wedge_dim(k, d)
            cache[key] = SparseMatrix.from_dict(dk, dk, entries)
        return cache[key]

    def is_abelian(self) -> bool:
        return not self.structure


@dataclass(frozen=True, eq=False)
class Representation:
    """(V, μ): μ assigns a dim_v × dim_v matrix to each increasing (n−1)-tuple."""

    algebra: NLieAlgebra
    dim_v: int
    mu: Mapping[Tuple[int, ...], SparseMatrix] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        clean = {}
        k = self.algebra.n - 1
        for key, m in self.mu.items():
            key = tuple(int(i) for i in key)
            if len(key) != k or any(b <= a for a, b in zip(key, key[1:])):
                raise ValueError(f"representation key {key} is not an increasing {k}-tuple")
            if key and (key[0] < 0 or key[-1] >= self.algebra.dim):
                raise ValueError(f"representation key {key} out of range")
            if not isinstance(m, SparseMatrix):
                m = SparseMatrix.from_dense(m)
            if m.shape != (self.dim_v, self.dim_v):
                raise ValueError(f"matrix for {key} has shape {m.shape}, expected "
                                 f"{(self.dim_v, self.dim_v)}")
            if m.nnz:
                clean[key] = m
        object.__setattr__(self, "mu", clean)

    def __repr__(self):
        return f"Representation(dim_v={self.dim_v}, on {self.algebra!r})"

    def action(self, t: Sequence[int]) -> SparseMatrix:
        """μ(t) for an arbitrary (n−1)-tuple, with the antisymmetry sign."""
        s = sort_with_sign(t)
        zero = SparseMatrix.zeros(self.dim_v, self.dim_v)
        if s is None:
            return zero
        key, sign = s
        m = self.mu.get(key)
        if m is None:
            return zero
        return m if sign > 0 else -m

    @cached_property
    def tensor(self) -> np.ndarray:
        """Dense μ tensor, shape (d,)*(n−1) + (dim_v, dim_v)."""
        d, k, dv = self.algebra.dim, self.algebra.n - 1, self.dim_v
        t = np.zeros((d,) * k + (dv, dv), dtype=object)
        t[...] = 0
        for key, m in self.mu.items():
            dense = m.to_dense()
            for perm in itertools.permutations(key):
                sign = sort_with_sign(perm)[1]
                t[perm] = np.array(dense, dtype=object) * sign
        return exact_array(t)


# -- validators ----------------------------------------------------------------


def _first_nonzero_row(defect: np.ndarray, rows: np.ndarray) -> Optional[int]:
    """Position in ``rows`` (index tuples) of the first nonzero defect entry."""
    if len(rows) == 0:
        return None
    picked = defect[tuple(rows.T)] if rows.shape[1] else defect[None, ...]
    flat = picked.reshape(len(rows), -1)
    nz = np.flatnonzero(np.any(flat != 0, axis=1))
    return int(nz[0]) if len(nz) else None


def _increasing(k: int, d: int) -> np.ndarray:
    return np.array(wedge_basis(k, d), dtype=np.int64).reshape(len(wedge_basis(k, d)), k)


def derivation_defect(t: np.ndarray, dmat: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(D[x₁..xₙ], Σ_k [x₁..D xₖ..xₙ]) as dense tensors for a bracket tensor ``t``.

    ``dmat[s, y]`` is the coefficient of e_s in D(e_y).
    """
    n = t.ndim - 1
    lhs = np.tensordot(t, dmat.T, axes=([n], [0]))
    rhs = sum(act_on_slot(t, dmat, k) for k in range(n))
    return lhs, rhs


def validate_derivation_tensor(t: np.ndarray, dmat: np.ndarray, axiom: str,
                               prefix: Tuple = ()) -> Optional[Witness]:
    if not _safe_for_products(t, dmat, terms=t.shape[0] * t.ndim):
        t, dmat = _objectify(t, dmat)
    lhs, rhs = derivation_defect(t, dmat)
    rows = _increasing(t.ndim - 1, t.shape[0])
    i = _first_nonzero_row(lhs - rhs, rows)
    if i is None:
        return None
    b = tuple(int(x) for x in rows[i])
    return Witness(axiom, prefix + (b,), _as_list(lhs[b]), _as_list(rhs[b]))


def validate_fundamental_identity(A: NLieAlgebra) -> Optional[Witness]:
    """First increasing tuple pair violating the fundamental identity, if any.

    ad(a) must be a derivation for every increasing (n−1)-tuple a; all a are
    checked at once, on increasing n-tuples b only.
    """
    t = A.tensor
    d, n = A.dim, A.n
    if d < n or A.is_abelian():
        return None
    wedges = _increasing(n - 1, d)
    rows = _increasing(n, d)
    if not _safe_for_products(t, t, terms=(n + 1) * d):
        (t,) = _objectify(t)
    ads = np.moveaxis(t[tuple(wedges.T)], -1, 1)  # ads[a, s, y]: e_s coefficient of [a, y]
    lhs = np.einsum("rs,ats->art", t[tuple(rows.T)], ads)
    rhs = np.zeros_like(lhs)
    full = np.arange(d)
    for k in range(n):
        idx = tuple(full[None, :] if j == k else rows[:, j][:, None] for j in range(n))
        moved = t[idx]  # [r, s, out]: bracket with b_k replaced by e_s
        coeff = ads[:, :, rows[:, k]]  # [a, s, r]
        rhs = rhs + np.einsum("asr,rst->art", coeff, moved)
    bad = np.argwhere(np.any(lhs != rhs, axis=2))
    if len(bad) == 0:
        return None
    a, r = (int(x) for x in bad[0])  # argwhere is row-major: first a, then first b
    return Witness("fundamental identity", (tuple(int(x) for x in wedges[a]),
                                            tuple(int(x) for x in rows[r])),
                   _as_list(lhs[a, r]), _as_list(rhs[a, r]))


def validate_representation(R: Representation) -> Optional[Witness]:
    """Check both representation axioms on all increasing basis tuples."""
    A = R.algebra
    d, n = A.dim, A.n
    if R.dim_v == 0 or d < n - 1:
        return None
    t, m = A.tensor, R.tensor
    if not _safe_for_products(t, m, terms=4 * n * max(d, R.dim_v)) or not _safe_for_products(
            m, m, terms=4 * n * max(d, R.dim_v)):
        t, m = _objectify(t, m)
    inc1 = _increasing(n - 1, d)
    # axiom I: [μ(a), μ(b)] = Σ_k μ(b₁..[a,b_k]..)
    for a in map(tuple, inc1.tolist()):
        adm = np.moveaxis(t[a], -1, 0)
        rhs = sum(act_on_slot(m, adm, k) for k in range(n - 1))
        ma = m[a]
        lhs = np.matmul(ma, m) - np.matmul(m, ma)
        i = _first_nonzero_row(lhs - rhs, inc1)
        if i is not None:
            b = tuple(int(x) for x in inc1[i])
            return Witness("representation axiom I", (a, b), _as_list(lhs[b]), _as_list(rhs[b]))
    w = _rep_axiom_two(t, m, n, d, "representation axiom II", identity=False)
    return w


def _rep_axiom_two(t, m, n, d, axiom, identity) -> Optional[Witness]:
    """Axiom II (or, with ``identity``, the derived two-sum identity)."""
    if d < n:
        return None
    inc_w = _increasing(n - 2, d)
    for x in wedge_basis(n, d):
        if identity:
            lhs = 0
        else:
            lhs = np.tensordot(t[x], m, axes=([0], [0]))  # μ([x], w)
        rhs = 0
        for k in range(n):
            sign = -1 if k % 2 == 0 else 1  # (−1)^k with 1-based k
            hat = x[:k] + x[k + 1:]
            mw = m[(Ellipsis, x[k], slice(None), slice(None))]
            term = np.matmul(m[hat], mw)
            if identity:
                term = term + np.matmul(mw, m[hat])
            rhs = rhs + sign * term
        diff = (lhs - rhs) if not identity else rhs
        if n == 2:
            if np.any(diff != 0):
                return Witness(axiom, (x, ()), _as_list(lhs if not identity else diff),
                               _as_list(rhs if not identity else 0 * diff))
            continue
        i = _first_nonzero_row(diff, inc_w)
        if i is not None:
            w = tuple(int(v) for v in inc_w[i])
            if identity:
                return Witness(axiom, (x, w), _as_list(rhs[w]), _as_list(0 * rhs[w]))
            return Witness(axiom, (x, w), _as_list(lhs[w]), _as_list(rhs[w]))
    return None


def check_rep_identity(R: Representation) -> Optional[Witness]:
    """The two-sum identity F(x₁,…,x_{2n−2}) = 0 on all increasing basis tuples."""
    A = R.algebra
    if R.dim_v == 0:
        return None
    t, m = A.tensor, R.tensor
    if not _safe_for_products(m, m, terms=4 * A.n * max(A.dim, R.dim_v)):
        t, m = _objectify(t, m)
    return _rep_axiom_two(t, m, A.n, A.dim, "two-sum identity", identity=True)


# -- constructions ---------------------------------------------------------------


def adjoint_representation(A: NLieAlgebra) -> Representation:
    mu = {w: A.ad(w) for w in wedge_basis(A.n - 1, A.dim)}
    return Representation(A, A.dim, mu, name="adjoint")


def trivial_representation(A: NLieAlgebra, dim_v: int = 1) -> Representation:
    return Representation(A, dim_v, {}, name=f"trivial:{dim_v}")


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Kronecker product, row-major: (i, j) ⊗ (k, l) ↦ (i·b.rows + k, j·b.cols + l)."""
    if a.nnz == 0 or b.nnz == 0:
        return SparseMatrix.zeros(a.nrows * b.nrows, a.ncols * b.ncols)
    rows = (a.row[:, None] * b.nrows + b.row[None, :]).ravel()
    cols = (a.col[:, None] * b.ncols + b.col[None, :]).ravel()
    if a.is_integral and b.is_integral:
        vals = (a.data[:, None] * b.data[None, :]).ravel()
    else:
        vals = (a.data.astype(object)[:, None] * b.data.astype(object)[None, :]).ravel()
    return SparseMatrix.from_triplets(a.nrows * b.nrows, a.ncols * b.ncols, rows, cols, vals)


def hom_representation(R: Representation, dim_w: int) -> Representation:
    """Hom(V, W) with μ(x)(T) = −T∘η(x).

    T is flattened row-major over (W-index, V-index): T[w, v] sits at w·dim_v + v.
    """
    ident = SparseMatrix.identity(dim_w)
    mu = {key: kron(ident, -m.transpose()) for key, m in R.mu.items()}
    return Representation(R.algebra, dim_w * R.dim_v, mu, name=f"Hom({R.name or 'V'},{dim_w})")


def semidirect_sum_nlie(R: Representation) -> NLieAlgebra:
    """V ⋊ L on V ⊕ L (V first), with [x₁,…,x_{n−1},v] = μ(x₁,…,x_{n−1})v.

    A V-argument in slot k of an otherwise-L tuple picks up (−1)^{n−k}, the
    antisymmetric extension of the rule above.
    """
    A = R.algebra
    dv, n = R.dim_v, A.n
    structure: Dict[Tuple[int, ...], Vector] = {}
    for key, vec in A.structure.items():
        structure[tuple(dv + i for i in key)] = {dv + i: c for i, c in vec.items()}
    sign = -1 if (n - 1) % 2 else 1  # V sits in slot 1 of an increasing tuple
    for key, m in R.mu.items():
        for (r, c), val in m.entries().items():
            k = (c,) + tuple(dv + i for i in key)
            structure.setdefault(k, {})
            structure[k][r] = structure[k].get(r, 0) + sign * val
    return NLieAlgebra(n, dv + A.dim, structure)


# -- fixtures ------------------------------------------------------------------


def abelian(n: int, d: int) -> NLieAlgebra:
    return NLieAlgebra(n, d, {})


def simple(n: int) -> NLieAlgebra:
    """(n+1)-dimensional algebra with [e₁,…,êᵢ,…,e_{n+1}] = (−1)ⁱ eᵢ (1-based i)."""
    structure = {}
    for i in range(n + 1):
        key = tuple(j for j in range(n + 1) if j != i)
        structure[key] = {i: (-1) ** (i + 1)}
    return NLieAlgebra(n, n + 1, structure)


def sl2() -> NLieAlgebra:
    """Basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = −2f."""
    return NLieAlgebra(2, 3, {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}},
                       names=("e", "f", "h"))


def direct_sum(A: NLieAlgebra, B: NLieAlgebra) -> NLieAlgebra:
    """A ⊕ B with A's basis first; brackets with arguments from both vanish."""
    if A.n != B.n:
        raise ValueError("direct sum needs equal arity")
    structure = dict(A.structure)
    for key, vec in B.structure.items():
        structure[tuple(A.dim + i for i in key)] = {A.dim + i: c for i, c in vec.items()}
    return NLieAlgebra(A.n, A.dim + B.dim, structure)

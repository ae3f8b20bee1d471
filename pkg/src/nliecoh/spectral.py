"""Filtration of the standard complex by a subalgebra K and the pages E₀, E₁, E₂.

K must be spanned by basis vectors.  A basis argument tuple of C^m is
(x₁, …, x_{m−1}, y) with each xᵢ an increasing (n−1)-tuple; κ counts the
individual arguments (the flattened wedge components together with y) that
lie in K.  A cochain lies in F_j (1 ≤ j ≤ m) when it vanishes on every tuple
with κ ≥ (m−j)(n−1)+1, so each F_j is a coordinate subspace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import NLieAlgebra, Representation, Witness, kron, validate_representation
from .assembly import Term, assemble
from .complexes import cohomology, cohomology_of, delta_standard
from .extensions import GeneralizedDerivation, gen_der_extension
from .leibniz import (LeibnizAlgebra, LeibnizRep, induced_leibniz, leibniz_differential,
                      rep_on_cochains)
from .linalg import (SparseMatrix, hstack, matmul, matvec, rank, solve_in_image, submatrix)
from .multiindex import wedge_basis, wedge_dim


@dataclass(frozen=True)
class SubalgebraSpec:
    indices: Tuple[int, ...]
    kind: str = "subalgebra"

    def complement(self, dim: int) -> Tuple[int, ...]:
        members = set(self.indices)
        return tuple(i for i in range(dim) if i not in members)


def closure_witness(A: NLieAlgebra, K: SubalgebraSpec) -> Optional[Witness]:
    """First bracket that breaks closure (subalgebra) or the ideal property."""
    members = set(K.indices)
    for key, vec in sorted(A.structure.items()):
        inside = [i in members for i in key]
        relevant = all(inside) if K.kind == "subalgebra" else any(inside)
        if relevant:
            out = sorted(i for i in vec if i not in members)
            if out:
                return Witness(f"{K.kind} closure", (key,), [vec.get(i, 0) for i in range(A.dim)], 0)
    return None


def make_subalgebra(A: NLieAlgebra, indices: Sequence[int], kind: str = "subalgebra") -> SubalgebraSpec:
    if kind not in ("subalgebra", "ideal"):
        raise ValueError("kind must be 'subalgebra' or 'ideal'")
    idx = tuple(sorted(set(int(i) for i in indices)))
    if any(not 0 <= i < A.dim for i in idx):
        raise ValueError("subalgebra index out of range")
    K = SubalgebraSpec(idx, kind)
    w = closure_witness(A, K)
    if w is not None:
        raise ValueError(f"not a{'n ideal' if kind == 'ideal' else ' subalgebra'}: "
                         f"bracket {[i + 1 for i in w.args[0]]} leaves K")
    return K


# -- filtration ----------------------------------------------------------------------


def _wedge_counts(k: int, d: int, members) -> np.ndarray:
    return np.array([sum(i in members for i in w) for w in wedge_basis(k, d)], dtype=np.int64)


def kappa(A: NLieAlgebra, K: SubalgebraSpec, m: int) -> np.ndarray:
    """K-argument count per argument tuple of C^m (value index excluded).

    For m = 0 the count is over the components of the Λ^{n−2}L factor.
    """
    members = set(K.indices)
    n, d = A.n, A.dim
    if m == 0:
        return _wedge_counts(n - 2, d, members)
    cw = _wedge_counts(n - 1, d, members)
    cy = np.array([i in members for i in range(d)], dtype=np.int64)
    total = cy
    for _ in range(m - 1):
        total = (cw[:, None] + total[None, :]).ravel()
    return total


def _coord_kappa(A, K, m, dv) -> np.ndarray:
    return np.repeat(kappa(A, K, m), dv)


def _level_from_kappa(kmax: int, m: int, n: int) -> int:
    # largest j with (m − j)(n − 1) ≥ kmax
    return m - (-(-kmax // (n - 1)))


def filtration_level(A: NLieAlgebra, K: SubalgebraSpec, f: Sequence, m: int, dim_v: int) -> int:
    """Largest j with f ∈ F_j C^m; m + 1 for f = 0."""
    nz = [i for i, x in enumerate(f) if x != 0]
    if not nz:
        return m + 1
    if m == 0:
        return 0
    kap = _coord_kappa(A, K, m, dim_v)
    return _level_from_kappa(int(kap[nz].max()), m, A.n)


def filtration_preserved(A: NLieAlgebra, R: Representation, K: SubalgebraSpec,
                         m: int) -> Optional[Witness]:
    """δ F_j C^m ⊆ F_j C^{m+1}, checked on every basis cochain of C^m."""
    n, dv = A.n, R.dim_v
    delta = delta_standard(A, R, m)
    M = delta.matrix
    if M.nnz == 0:
        return None
    kin = _coord_kappa(A, K, m, dv)
    kout = _coord_kappa(A, K, m + 1, dv)
    col_level = np.zeros(M.ncols, dtype=np.int64) if m == 0 else \
        m - (-(-kin // (n - 1)))
    kmax = np.full(M.ncols, -1, dtype=np.int64)
    np.maximum.at(kmax, M.col, kout[M.row])
    has = kmax >= 0
    img_level = np.where(has, (m + 1) - (-(-np.maximum(kmax, 0) // (n - 1))), m + 2)
    bad = np.flatnonzero(img_level < col_level)
    if len(bad):
        c = int(bad[0])
        return Witness("filtration", delta.domain.labels(c), int(img_level[c]), int(col_level[c]))
    return None


def e0_coordinates(A: NLieAlgebra, K: SubalgebraSpec, dim_v: int, j: int, i: int) -> np.ndarray:
    """Coordinates of C^{i+j} spanning F_j/F_{j+1} (a complement of F_{j+1} in F_j)."""
    m = i + j
    if i < 0 or j < 0:
        return np.zeros(0, dtype=np.int64)
    if m == 0:
        return np.arange(wedge_dim(A.n - 2, A.dim) * dim_v)
    kap = _coord_kappa(A, K, m, dim_v)
    n = A.n
    if i == 0:
        return np.flatnonzero(kap == 0)
    return np.flatnonzero((kap >= (i - 1) * (n - 1) + 1) & (kap <= i * (n - 1)))


# -- pages ----------------------------------------------------------------------------


@dataclass
class SpectralPage:
    r: int
    dims: Dict[Tuple[int, int], int]
    notes: Dict[Tuple[int, int], str] = field(default_factory=dict)

    def to_json(self) -> dict:
        cells = []
        for (j, i), v in sorted(self.dims.items()):
            cell = {"j": j, "i": i, "dim": v}
            if (j, i) in self.notes:
                cell["note"] = self.notes[(j, i)]
            cells.append(cell)
        return {"page": self.r, "cells": cells}


def _window(bound: int):
    return [(j, i) for total in range(bound + 1) for j in range(total + 1) for i in [total - j]]


def e1_associated_graded(A: NLieAlgebra, R: Representation, K: SubalgebraSpec,
                         bound: int = 3) -> Dict[Tuple[int, int], int]:
    """E₁^{j,i} as the cohomology of δ₀ on F_j/F_{j+1}, for i + j ≤ bound."""
    dv = R.dim_v
    deltas = {m: delta_standard(A, R, m).matrix for m in range(bound + 1)}
    dims = {}
    for j, i in _window(bound):
        m = i + j
        cols = e0_coordinates(A, K, dv, j, i)
        out = e0_coordinates(A, K, dv, j, i + 1)
        d0 = submatrix(deltas[m], out, cols)
        dim_z = len(cols) - rank(d0)
        dim_b = 0
        if i >= 1:
            prev = e0_coordinates(A, K, dv, j, i - 1)
            dim_b = rank(submatrix(deltas[m - 1], cols, prev))
        dims[(j, i)] = dim_z - dim_b
    return dims


def restricted_leibniz(A: NLieAlgebra, K: SubalgebraSpec) -> Tuple[LeibnizAlgebra, List[int]]:
    """Λ^{n−1}K as a Leibniz subalgebra, with the positions of its basis in Λ^{n−1}L."""
    members = set(K.indices)
    full = induced_leibniz(A)
    pos = [p for p, w in enumerate(wedge_basis(A.n - 1, A.dim)) if all(i in members for i in w)]
    left = [submatrix(full.left[p], pos, pos) for p in pos]
    return LeibnizAlgebra(len(pos), left), pos


def quotient_cochain_rep(A: NLieAlgebra, R: Representation, K: SubalgebraSpec,
                         j: int) -> LeibnizRep:
    """C^j(L/K, V) as a representation of Λ^{n−1}K.

    C^j(L/K, V) is realized on the coordinates of C^j(L, V) whose arguments all
    lie outside K; the action of Λ^{n−1}K on C^j(L, V) is block triangular
    for this split, so the diagonal block is the induced action.
    """
    _, pos = restricted_leibniz(A, K)
    full = rep_on_cochains(A, R, j)
    keep = np.flatnonzero(_coord_kappa(A, K, j, R.dim_v) == 0)
    lam = [submatrix(full.lam[p], keep, keep) for p in pos]
    rho = [submatrix(full.rho[p], keep, keep) for p in pos]
    return LeibnizRep(len(keep), lam, rho)


def e1_leibniz(A: NLieAlgebra, R: Representation, K: SubalgebraSpec,
               bound: int = 3) -> Dict[Tuple[int, int], int]:
    """E₁^{j,i} as HL^i(Λ^{n−1}K, C^j(L/K, V)), for i + j ≤ bound."""
    lb, _ = restricted_leibniz(A, K)
    dims = {}
    for j in range(bound + 1):
        rep = quotient_cochain_rep(A, R, K, j)
        diffs = {}
        for i in range(bound - j + 1):
            for k in (i, i - 1):
                if k >= 0 and k not in diffs:
                    diffs[k] = leibniz_differential(lb, rep, k)
            prev = diffs.get(i - 1)
            _, dim_z, dim_b, _ = cohomology_of(diffs[i], prev, representatives=False)
            dims[(j, i)] = dim_z - dim_b
    return dims


@dataclass
class E1Report:
    page: SpectralPage
    leibniz_dims: Dict[Tuple[int, int], int]

    @property
    def agree(self) -> bool:
        return all(self.page.dims[c] == self.leibniz_dims[c] for c in self.page.dims)

    def disagreements(self) -> List[Tuple[int, int]]:
        return [c for c in sorted(self.page.dims) if self.page.dims[c] != self.leibniz_dims[c]]

    def to_json(self) -> dict:
        out = self.page.to_json()
        for cell in out["cells"]:
            cell["dim_leibniz"] = self.leibniz_dims[(cell["j"], cell["i"])]
        out["routes_agree"] = self.agree
        return out


def e1_page(A: NLieAlgebra, R: Representation, K: SubalgebraSpec, bound: int = 3) -> E1Report:
    """E₁ by both routes; the associated-graded dims are the page, the Leibniz
    dims are reported next to them."""
    a = e1_associated_graded(A, R, K, bound)
    b = e1_leibniz(A, R, K, bound)
    notes = {c: "routes differ" for c in a if a[c] != b[c]}
    return E1Report(SpectralPage(1, a, notes), b)


# -- the second page ---------------------------------------------------------------------


def commuting_witness(A: NLieAlgebra, R: Representation, K: SubalgebraSpec) -> Optional[Witness]:
    """Brackets and μ must vanish on tuples mixing K and its complement."""
    members = set(K.indices)
    for key, vec in sorted(A.structure.items()):
        inside = {i in members for i in key}
        if len(inside) == 2:
            return Witness("commuting hypothesis (bracket)", (key,),
                           [vec.get(i, 0) for i in range(A.dim)], 0)
    for key, m in sorted(R.mu.items()):
        inside = {i in members for i in key}
        if len(inside) == 2 and m.nnz:
            return Witness("commuting hypothesis (μ)", (key,), m.to_dense(), 0)
    return None


def quotient_algebra(A: NLieAlgebra, K: SubalgebraSpec) -> Tuple[NLieAlgebra, Tuple[int, ...]]:
    """L/K on the complement basis, returned with the complement indices."""
    comp = K.complement(A.dim)
    pos = {c: p for p, c in enumerate(comp)}
    structure = {}
    for key, vec in A.structure.items():
        if all(i in pos for i in key):
            v = {pos[i]: c for i, c in vec.items() if i in pos}
            if v:
                structure[tuple(pos[i] for i in key)] = v
    return NLieAlgebra(A.n, len(comp), structure), comp


def _lie_derivative(nslots: int, slot_dim: int, act: SparseMatrix, vmat: SparseMatrix,
                    dv: int) -> SparseMatrix:
    """f ↦ vmat∘f − Σ_k f(.., act·x_k, ..) on Hom(𝔏^{⊗nslots}, V)."""
    shape = (slot_dim,) * nslots
    t = Term((), (), tuple((p, p) for p in range(nslots)))
    t.add((), (), 1, vmat)
    terms = [t]
    for k in range(nslots):
        t = Term((k,), (k,), tuple((p, p) for p in range(nslots) if p != k))
        for (r, c), v in act.entries().items():
            t.add((c,), (r,), -v)
        terms.append(t)
    return assemble(shape, shape, dv, dv, terms)


def _symmetric_rep(R: Representation, wedges) -> LeibnizRep:
    lam = [R.action(w) for w in wedges]
    return LeibnizRep(R.dim_v, lam, [-m for m in lam])


def eta_matrix(A: NLieAlgebra, R: Representation, K: SubalgebraSpec, i: int,
               z: Sequence[int]) -> SparseMatrix:
    """η(z) on CL^i(Λ^{n−1}K, V) for an increasing (n−1)-tuple z of L."""
    _, pos = restricted_leibniz(A, K)
    act = submatrix(A.wedge_action(tuple(z), A.n - 1), pos, pos)
    return _lie_derivative(i, len(pos), act, R.action(tuple(z)), R.dim_v)


def annihilation_check(A: NLieAlgebra, R: Representation, K: SubalgebraSpec,
                       i: int) -> Optional[Witness]:
    """η(z) = (d·)_z + d((·)_z) on CL^i(Λ^{n−1}K, V) for z ∈ Λ^{n−1}K, i ≥ 1.

    ``(g)_z`` fixes the first argument of g to z.  On cocycles this is the
    statement that Λ^{n−1}K acts trivially on cohomology.
    """
    lb, pos = restricted_leibniz(A, K)
    wedges = wedge_basis(A.n - 1, A.dim)
    rep = _symmetric_rep(R, [wedges[p] for p in pos])
    dv, nk = R.dim_v, len(pos)
    d_prev = leibniz_differential(lb, rep, i - 1)
    block = nk ** (i - 1) * dv
    for zi, p in enumerate(pos):
        eta = eta_matrix(A, R, K, i, wedges[p])
        first = leibniz_differential(lb, rep, i, first=zi)
        rows = np.arange(block)
        select = SparseMatrix.from_triplets(block, nk ** i * dv, rows, zi * block + rows,
                                            np.ones(block, dtype=np.int64))
        rhs = first + matmul(d_prev, select)
        diff = eta - rhs
        if not diff.is_zero():
            r, c = int(diff.row[0]), int(diff.col[0])
            return Witness("η(z) = (d·)_z + d((·)_z)", (wedges[p], r, c), eta[r, c], rhs[r, c])
    return None


@dataclass
class E2Report:
    page: SpectralPage
    hl_dims: Dict[int, int]
    witness: Optional[Witness] = None

    def to_json(self) -> dict:
        out = self.page.to_json()
        out["HL_dims"] = {str(i): v for i, v in sorted(self.hl_dims.items())}
        out["witness"] = None if self.witness is None else self.witness.to_json()
        return out


def hl_module(A: NLieAlgebra, R: Representation, K: SubalgebraSpec, i: int):
    """HL^i(Λ^{n−1}K, V) with the induced action of L/K.

    Returns (quotient algebra, Representation on HL^i or None, witness).
    """
    lb, pos = restricted_leibniz(A, K)
    wedges = wedge_basis(A.n - 1, A.dim)
    rep = _symmetric_rep(R, [wedges[p] for p in pos])
    d_i = leibniz_differential(lb, rep, i)
    d_prev = leibniz_differential(lb, rep, i - 1) if i > 0 else None
    _, _, _, reps = cohomology_of(d_i, d_prev)
    Q, comp = quotient_algebra(A, K)
    h = len(reps)
    cols = [SparseMatrix.from_dict(len(v), 1, {(r, 0): x for r, x in enumerate(v) if x != 0})
            for v in reps]
    if d_prev is not None and d_prev.nnz:
        cols.append(d_prev)
    basis = hstack(cols) if cols else SparseMatrix.zeros(d_i.ncols, 0)
    mu = {}
    for w in wedge_basis(A.n - 1, Q.dim):
        lifted = tuple(comp[p] for p in w)
        eta = eta_matrix(A, R, K, i, lifted)
        entries = {}
        for a, v in enumerate(reps):
            x = solve_in_image(basis, matvec(eta, v))
            if x is None:
                return Q, None, Witness("η preserves cocycles", (lifted, a), 1, 0)
            for b in range(h):
                if x[b] != 0:
                    entries[b, a] = x[b]
        mu[w] = SparseMatrix.from_dict(h, h, entries)
    return Q, Representation(Q, h, mu, name=f"HL^{i}"), None


def e2_page(A: NLieAlgebra, R: Representation, K: SubalgebraSpec, bound: int = 3) -> E2Report:
    """E₂^{j,i} = H^j(L/K, HL^i(Λ^{n−1}K, V)) for an ideal K satisfying the
    commuting hypothesis; returns the first hypothesis failure otherwise."""
    if K.kind != "ideal":
        raise ValueError("the second page needs an ideal")
    w = closure_witness(A, K) or commuting_witness(A, R, K)
    if w is not None:
        return E2Report(SpectralPage(2, {}), {}, w)
    dims, hl = {}, {}
    for i in range(bound + 1):
        if i >= 1:
            w = annihilation_check(A, R, K, i)
            if w is not None:
                return E2Report(SpectralPage(2, dims), hl, w)
        Q, W, w = hl_module(A, R, K, i)
        if w is not None:
            return E2Report(SpectralPage(2, dims), hl, w)
        hl[i] = W.dim_v
        w = validate_representation(W)
        if w is not None:
            w.axiom = f"induced action on HL^{i}: {w.axiom}"
            return E2Report(SpectralPage(2, dims), hl, w)
        for j in range(bound - i + 1):
            dims[(j, i)] = cohomology(Q, W, "standard", j, representatives=False).dim_H
    return E2Report(SpectralPage(2, dims), hl)


# -- the delta/d comparison -----------------------------------------------------------------


def delta_d_comp_matrices(A: NLieAlgebra, R: Representation, r: int, s: int):
    """Both sides of (δf)_{r+1} = d(f_r) + (−1)^{r+1} δ(f_{r+1}) as matrices on C^{r+s}.

    f_r ∈ CL^r(Λ^{n−1}L, C^s(L, V)) and f_{r+1} ∈ CL^{r+1}(Λ^{n−1}L, C^{s−1}(L, V))
    are the same coordinate vector as f regrouped, so both sides act on C^{r+s}.
    Needs r ≥ 0 and s ≥ 2.
    """
    if r < 0 or s < 2:
        raise ValueError("the identity needs r ≥ 0 and s ≥ 2")
    lhs = delta_standard(A, R, r + s).matrix
    lb = induced_leibniz(A)
    d_r = leibniz_differential(lb, rep_on_cochains(A, R, s), r)
    inner = delta_standard(A, R, s - 1).matrix
    blocks = wedge_dim(A.n - 1, A.dim) ** (r + 1)
    outer = kron(SparseMatrix.identity(blocks), inner)
    sign = -1 if r % 2 == 0 else 1
    return lhs, d_r + outer.scale(sign)


def delta_d_comp_check(A: NLieAlgebra, R: Representation, r: int, s: int,
                       f: Sequence) -> Optional[Witness]:
    """Evaluate both sides on f at every basis tuple; first mismatch or None."""
    lhs, rhs = delta_d_comp_matrices(A, R, r, s)
    a, b = matvec(lhs, f), matvec(rhs, f)
    for k, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return Witness("(δf)_{r+1} = d f_r + (−1)^{r+1} δ f_{r+1}", (r, s, k), x, y)
    return None


# -- the generalized-derivation corollary ------------------------------------------------------


def restrict_to_subalgebra(R: Representation, B: NLieAlgebra, members: Sequence[int]) -> Representation:
    pos = {c: p for p, c in enumerate(members)}
    mu = {tuple(pos[i] for i in key): m for key, m in R.mu.items() if all(i in pos for i in key)}
    return Representation(B, R.dim_v, mu, name=R.name)


def gen_der_ext_cohomology_compare(A: NLieAlgebra, D: GeneralizedDerivation,
                                   R_ext: Representation, m_max: int = 2,
                                   kind: str = "standard") -> dict:
    """dim H^m(L ⊕_D k, V) against dim H^m(L, V) for m ≤ m_max, computed directly."""
    E = gen_der_extension(A, D)
    if R_ext.algebra.dim != E.dim or R_ext.algebra.n != E.n:
        raise ValueError("the representation must live on the extension")
    R_ext = Representation(E, R_ext.dim_v, R_ext.mu, name=R_ext.name)
    R = restrict_to_subalgebra(R_ext, A, range(A.dim))
    rows = []
    for m in range(m_max + 1):
        he = cohomology(E, R_ext, kind, m, representatives=False).dim_H
        hl = cohomology(A, R, kind, m, representatives=False).dim_H
        rows.append({"degree": m, "dim_H_extension": he, "dim_H_base": hl, "equal": he == hl})
    return {"complex": kind, "degrees": rows, "all_equal": all(r["equal"] for r in rows)}

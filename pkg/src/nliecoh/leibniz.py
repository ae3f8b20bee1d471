"""Leibniz algebras, their representations, and the Leibniz cochain complex.

A (left) Leibniz algebra is stored by its left multiplication matrices:
``left[x]`` has column y equal to [e_x, e_y].  A representation is a pair of
lists of matrices ``lam[x]`` (x ▷ ·) and ``rho[x]`` (· ◁ x).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence

import numpy as np

from .algebra import NLieAlgebra, Representation, Witness, _as_list, exact_array, kron
from .assembly import Term, assemble, drop_slot
from .linalg import (Echelon, SparseMatrix, extend_to_complement, hstack, integer_row,
                     kernel_basis, solve_in_image, vstack)
from .multiindex import normalize, wedge_basis, wedge_dim


@dataclass(frozen=True, eq=False)
class LeibnizAlgebra:
    dim: int
    left: Sequence[SparseMatrix]

    def __post_init__(self):
        if len(self.left) != self.dim:
            raise ValueError("need one left multiplication matrix per basis element")
        for m in self.left:
            if m.shape != (self.dim, self.dim):
                raise ValueError("left multiplication matrices must be dim × dim")

    @classmethod
    def from_table(cls, dim: int, table) -> "LeibnizAlgebra":
        """From {(i, j): {k: c}} meaning [e_i, e_j] = Σ c e_k."""
        entries = [dict() for _ in range(dim)]
        for (i, j), vec in table.items():
            for k, c in vec.items():
                entries[i][k, j] = c
        return cls(dim, [SparseMatrix.from_dict(dim, dim, e) for e in entries])

    @cached_property
    def tensor(self) -> np.ndarray:
        """B[x, y, t]: coefficient of e_t in [e_x, e_y]."""
        if self.dim == 0:
            return np.zeros((0, 0, 0), dtype=np.int64)
        stack = np.stack([m.to_numpy().astype(object) for m in self.left])  # [x, t, y]
        return exact_array(np.transpose(stack, (0, 2, 1)))

    def bracket_entries(self, x: int, y: int):
        return self.left[x].column(y)

    def is_zero(self) -> bool:
        return all(m.nnz == 0 for m in self.left)


@dataclass(frozen=True, eq=False)
class LeibnizRep:
    dim_v: int
    lam: Sequence[SparseMatrix]
    rho: Sequence[SparseMatrix]

    def stacked(self):
        def stack(ms):
            if not ms:
                return np.zeros((0, self.dim_v, self.dim_v), dtype=np.int64)
            return exact_array(np.stack([m.to_numpy().astype(object) for m in ms]))
        return stack(self.lam), stack(self.rho)

    def is_symmetric(self) -> bool:
        return all((a + b).is_zero() for a, b in zip(self.lam, self.rho))


def _first_witness(defect: np.ndarray, axiom: str, lhs, rhs) -> Optional[Witness]:
    nz = np.argwhere(defect.reshape(defect.shape[:3] + (-1,)) != 0) if defect.ndim > 3 else \
        np.argwhere(defect != 0)
    if len(nz) == 0:
        return None
    idx = tuple(int(v) for v in nz[0][:3])
    return Witness(axiom, idx, _as_list(lhs[idx]), _as_list(rhs[idx]))


def validate_leibniz(Lb: LeibnizAlgebra) -> Optional[Witness]:
    """Left identity [x,[y,z]] = [[x,y],z] + [y,[x,z]] on all basis triples."""
    if Lb.dim == 0:
        return None
    b = Lb.tensor.astype(object) if Lb.tensor.dtype == object else Lb.tensor
    outer = np.tensordot(b, b, axes=([2], [0]))            # [[x,y],z]  -> (x,y,z,t)
    inner = np.transpose(np.tensordot(b, b, axes=([1], [2])), (0, 2, 3, 1))  # [x,[y,z]]
    lhs = inner
    rhs = outer + np.transpose(inner, (1, 0, 2, 3))
    return _first_witness(lhs - rhs, "left Leibniz identity", lhs, rhs)


def validate_leibniz_right(Lb: LeibnizAlgebra) -> Optional[Witness]:
    """Right identity [[x,y],z] = [[x,z],y] + [x,[y,z]] on all basis triples."""
    if Lb.dim == 0:
        return None
    b = Lb.tensor
    outer = np.tensordot(b, b, axes=([2], [0]))
    inner = np.transpose(np.tensordot(b, b, axes=([1], [2])), (0, 2, 3, 1))
    lhs = outer
    rhs = np.transpose(outer, (0, 2, 1, 3)) + inner
    return _first_witness(lhs - rhs, "right Leibniz identity", lhs, rhs)


def is_symmetric_leibniz(Lb: LeibnizAlgebra) -> bool:
    return validate_leibniz(Lb) is None and validate_leibniz_right(Lb) is None


def validate_leibniz_rep(Lb: LeibnizAlgebra, R: LeibnizRep) -> Optional[Witness]:
    """The three representation axioms on all basis pairs (x, y)."""
    if Lb.dim == 0 or R.dim_v == 0:
        return None
    lam, rho = R.stacked()
    b = Lb.tensor
    if lam.dtype == object or rho.dtype == object or b.dtype == object:
        lam, rho, b = lam.astype(object), rho.astype(object), b.astype(object)
    else:
        # integer sums below 2**53 are exact in float64, and BLAS is much faster
        top = max(int(np.abs(x).max()) if x.size else 0 for x in (lam, rho, b))
        if 2 * max(R.dim_v, Lb.dim) * top * top < 2**52:
            lam, rho, b = lam.astype(np.float64), rho.astype(np.float64), b.astype(np.float64)
    lam_xy = np.tensordot(b, lam, axes=([2], [0]))  # λ([x,y])
    rho_xy = np.tensordot(b, rho, axes=([2], [0]))
    lx, ly = lam[:, None], lam[None, :]
    rx, ry = rho[:, None], rho[None, :]
    checks = [
        ("Leibniz representation axiom 1", lam_xy, lx @ ly - ly @ lx),
        ("Leibniz representation axiom 2", rho_xy, lx @ ry - ry @ lx),
        # (v◁x)◁y = −(x▷v)◁y, i.e. ρ(y)ρ(x) = −ρ(y)λ(x)
        ("Leibniz representation axiom 3", ry @ rx, -(ry @ lx)),
    ]
    for axiom, lhs, rhs in checks:
        d = lhs - rhs
        nz = np.argwhere(d.reshape(d.shape[0], d.shape[1], -1) != 0)
        if len(nz):
            x, y = int(nz[0][0]), int(nz[0][1])
            a, b_ = lhs[x, y], rhs[x, y]
            if a.dtype == np.float64:
                a, b_ = np.rint(a).astype(np.int64), np.rint(b_).astype(np.int64)
            return Witness(axiom, (x, y), _as_list(a), _as_list(b_))
    return None


# -- constructions -------------------------------------------------------------


def induced_leibniz(A: NLieAlgebra) -> LeibnizAlgebra:
    """The bracket on Λ^{n−1}L: x acts on y as a derivation through ad(x)."""
    basis = wedge_basis(A.n - 1, A.dim)
    return LeibnizAlgebra(len(basis), [A.wedge_action(w, A.n - 1) for w in basis])


def adjoint_pair(Lb: LeibnizAlgebra) -> LeibnizRep:
    """λ(x) = ad^L_x, ρ(x) = ad^R_x on the algebra itself."""
    right = []
    b = Lb.tensor
    for x in range(Lb.dim):
        right.append(SparseMatrix.from_numpy(np.ascontiguousarray(b[:, x, :].T)))
    return LeibnizRep(Lb.dim, list(Lb.left), right)


def fundamental_rep(A: NLieAlgebra) -> LeibnizRep:
    """L as a representation of Λ^{n−1}L: x ▷ y = [x, y], y ◁ x = −[x, y]."""
    basis = wedge_basis(A.n - 1, A.dim)
    lam = [A.ad(w) for w in basis]
    return LeibnizRep(A.dim, lam, [-m for m in lam])


def rep_on_Ln2_tensor_V(A: NLieAlgebra, R: Representation) -> LeibnizRep:
    """Λ^{n−2}L ⊗ V as a representation of Λ^{n−1}L.

    x ▷ (z⊗v) = (x·z)⊗v + z⊗μ(x)v and
    (z⊗v) ◁ x = Σ_k (−1)^{n+k} x¹∧…x̂ᵏ…∧x^{n−1} ⊗ μ(z, xᵏ)v.
    """
    n, d, dv = A.n, A.dim, R.dim_v
    n2 = wedge_dim(n - 2, d)
    basis = wedge_basis(n - 1, d)
    zs = wedge_basis(n - 2, d)
    eye_v, eye_z = SparseMatrix.identity(dv), SparseMatrix.identity(n2)
    lam, rho = [], []
    for x in basis:
        lam.append(kron(A.wedge_action(x, n - 2), eye_v) + kron(eye_z, R.action(x)))
        term = Term((0,), (0,), ())
        for zi, z in enumerate(zs):
            for k in range(n - 1):
                hat = x[:k] + x[k + 1:]
                sign = (-1) ** (n + k + 1)
                term.add((_pos(hat, d),), (zi,), sign, R.action(z + (x[k],)))
        rho.append(assemble((n2,), (n2,), dv, dv, [term]))
    return LeibnizRep(n2 * dv, lam, rho)


def rep_on_L_tensor_V(A: NLieAlgebra, R: Representation) -> LeibnizRep:
    """L ⊗ V as a representation of Λ^{n−1}L.

    x ▷ (z⊗v) = [x, z]⊗v + z⊗μ(x)v and
    (z⊗v) ◁ x = Σ_k (−1)^k xᵏ ⊗ μ(z, x¹…x̂ᵏ…x^{n−1})v.
    """
    n, d, dv = A.n, A.dim, R.dim_v
    basis = wedge_basis(n - 1, d)
    eye_v, eye_d = SparseMatrix.identity(dv), SparseMatrix.identity(d)
    lam, rho = [], []
    for x in basis:
        lam.append(kron(A.ad(x), eye_v) + kron(eye_d, R.action(x)))
        term = Term((0,), (0,), ())
        for z in range(d):
            for k in range(n - 1):
                hat = x[:k] + x[k + 1:]
                term.add((x[k],), (z,), (-1) ** (k + 1), R.action((z,) + hat))
        rho.append(assemble((d,), (d,), dv, dv, [term]))
    return LeibnizRep(d * dv, lam, rho)


def _pos(w, d):
    p = normalize(w, d)
    return p[0]


def cochain_action_matrix(A: NLieAlgebra, R: Representation, m: int, z) -> SparseMatrix:
    """z ▷ f on C^m(L, V) (tensor convention, m ≥ 1), z an increasing (n−1)-tuple.

    (z▷f)(x₁..x_{m−1}, y) = μ(z) f(..) − Σ_k f(..[z,x_k]..) − f(.., [z,y]).
    For m = 0 (Λ^{n−2}L ⊗ V) the natural action z·w ⊗ v + w ⊗ μ(z)v is used.
    """
    n, d, dv = A.n, A.dim, R.dim_v
    if m == 0:
        n2 = wedge_dim(n - 2, d)
        return kron(A.wedge_action(z, n - 2), SparseMatrix.identity(dv)) + kron(
            SparseMatrix.identity(n2), R.action(z))
    n1 = wedge_dim(n - 1, d)
    shape = (n1,) * (m - 1) + (d,)
    nslots = m
    terms = []
    t = Term((), (), tuple((p, p) for p in range(nslots)))
    t.add((), (), 1, R.action(z))
    terms.append(t)
    for k in range(nslots):
        act = A.wedge_action(z, n - 1) if k < m - 1 else A.ad(z)
        t = Term((k,), (k,), tuple((p, p) for p in range(nslots) if p != k))
        for (r, c), v in act.entries().items():
            # f(.., [z, e_s], ..) = Σ_r act[r, s] f(.., e_r, ..)
            t.add((c,), (r,), -v)
        terms.append(t)
    return assemble(shape, shape, dv, dv, terms)


def rep_on_cochains(A: NLieAlgebra, R: Representation, m: int) -> LeibnizRep:
    """C^m(L, V) as a symmetric representation of Λ^{n−1}L (f ◁ z := −z ▷ f)."""
    lam = [cochain_action_matrix(A, R, m, z) for z in wedge_basis(A.n - 1, A.dim)]
    dim = lam[0].nrows if lam else _cochain_dim(A, R, m)
    return LeibnizRep(dim, lam, [-x for x in lam])


def _cochain_dim(A, R, m):
    d = A.dim
    if m == 0:
        return wedge_dim(A.n - 2, d) * R.dim_v
    return wedge_dim(A.n - 1, d) ** (m - 1) * d * R.dim_v


def restrict_rep(R: LeibnizRep, indices: Sequence[int]) -> LeibnizRep:
    """Pull a representation of 𝔏 back along the basis inclusion of a subset of its basis."""
    return LeibnizRep(R.dim_v, [R.lam[i] for i in indices], [R.rho[i] for i in indices])


# -- sub and quotient representations ---------------------------------------------


def _subspace_matrix(basis_vectors, dim) -> SparseMatrix:
    entries = {}
    for j, v in enumerate(basis_vectors):
        for i, x in enumerate(v):
            if x != 0:
                entries[i, j] = x
    return SparseMatrix.from_dict(dim, len(basis_vectors), entries)


def _induced(P: SparseMatrix, M: SparseMatrix, what: str) -> SparseMatrix:
    """Matrix of M on the column span of P; raises if the span is not invariant."""
    cols = []
    for j in range(P.ncols):
        image = M @ [P[i, j] for i in range(P.nrows)] if P.nrows else []
        x = solve_in_image(P, image)
        if x is None:
            raise ArithmeticError(f"{what} is not preserved by the action")
        cols.append(x)
    return _subspace_matrix(cols, P.ncols)


def sym_subrep(Lb: LeibnizAlgebra, R: LeibnizRep):
    """V^sym = {v : x▷v + v◁x = 0 ∀x} with the induced action.

    Returns (basis vectors of V^sym, LeibnizRep on V^sym).
    """
    sums = [a + b for a, b in zip(R.lam, R.rho)]
    stacked = vstack(sums) if sums else SparseMatrix.zeros(0, R.dim_v)
    basis = kernel_basis(stacked)
    P = _subspace_matrix(basis, R.dim_v)
    lam = [_induced(P, m, "V^sym") for m in R.lam]
    rho = [_induced(P, m, "V^sym") for m in R.rho]
    return basis, LeibnizRep(len(basis), lam, rho)


def antisym_kernel(Lb: LeibnizAlgebra, R: LeibnizRep):
    """V_anti = span{x▷v + v◁x} and the quotient V_sym = V / V_anti.

    Returns (basis of V_anti, indices of standard basis vectors spanning a
    complement, LeibnizRep on the quotient in that complement basis).
    """
    dv = R.dim_v
    sums = [a + b for a, b in zip(R.lam, R.rho)]
    cols = []
    for s in sums:
        for j in range(s.ncols):
            col = s.column(j)
            if col:
                cols.append(col)
    ech = Echelon()
    anti = []
    for c in cols:
        if ech.add(integer_row(c)):
            anti.append([c.get(i, 0) for i in range(dv)])
    unit = [[1 if i == j else 0 for i in range(dv)] for j in range(dv)]
    comp = extend_to_complement([{i: x for i, x in enumerate(v) if x} for v in anti], unit)
    P_anti = _subspace_matrix(anti, dv)
    C = _subspace_matrix([unit[j] for j in comp], dv)
    full = hstack([P_anti, C]) if anti else C
    if anti:
        for m in list(R.lam) + list(R.rho):
            _induced(P_anti, m, "V_anti")

    def quotient(M):
        cols_q = []
        for j in comp:
            image = M @ unit[j]
            x = solve_in_image(full, image)
            cols_q.append(x[len(anti):])
        return _subspace_matrix(cols_q, len(comp))
    return anti, comp, LeibnizRep(len(comp), [quotient(m) for m in R.lam],
                                  [quotient(m) for m in R.rho])


def semidirect_sum_leibniz(Lb: LeibnizAlgebra, R: LeibnizRep) -> LeibnizAlgebra:
    """V ⋊ 𝔏 on V ⊕ 𝔏 (V first): [(v,x),(w,y)] = (x▷w + v◁y, [x,y])."""
    dv, dl = R.dim_v, Lb.dim
    table = {}
    for y in range(dl):
        for (r, v), c in R.rho[y].entries().items():
            table.setdefault((v, dv + y), {})[r] = c
    for x in range(dl):
        for (r, w), c in R.lam[x].entries().items():
            table.setdefault((dv + x, w), {})[r] = table.get((dv + x, w), {}).get(r, 0) + c
        for (t, y), c in Lb.left[x].entries().items():
            table.setdefault((dv + x, dv + y), {})[dv + t] = c
    return LeibnizAlgebra.from_table(dv + dl, table)


# -- the Leibniz cochain complex -------------------------------------------------


def bracket_pair_terms(nx: int, nslots: int, Lb_left: Sequence[SparseMatrix]) -> List[Term]:
    """Σ_{i<j≤nx} (−1)^i f(x₁..x̂ᵢ..[xᵢ,xⱼ]..) over the first ``nx`` of ``nslots`` output slots."""
    terms = []
    table = []
    for a, m in enumerate(Lb_left):
        for (c, b), v in m.entries().items():
            table.append((a, b, c, v))
    for i in range(nx):
        for j in range(i + 1, nx):
            t = Term((i, j), (j - 1,), drop_slot(nslots, i, (j,)))
            sign = -1 if i % 2 == 0 else 1
            for a, b, c, v in table:
                t.add((a, b), (c,), sign * v)
            terms.append(t)
    return terms


def left_action_terms(nx: int, nslots: int, mats: Sequence[SparseMatrix]) -> List[Term]:
    """Σ_{i≤nx} (−1)^{i+1} λ(xᵢ) f(x₁..x̂ᵢ..)."""
    terms = []
    for i in range(nx):
        t = Term((i,), (), drop_slot(nslots, i))
        sign = 1 if i % 2 == 0 else -1
        for a, m in enumerate(mats):
            t.add((a,), (), sign, m)
        terms.append(t)
    return terms


def leibniz_differential(Lb: LeibnizAlgebra, R: LeibnizRep, m: int,
                         first: Optional[int] = None) -> SparseMatrix:
    """d : CL^m(𝔏, V) → CL^{m+1}(𝔏, V) on Hom(𝔏^{⊗m}, V).

    ``first`` restricts to the row block with first argument e_first.
    """
    N, dv = Lb.dim, R.dim_v
    nslots = m + 1
    terms = bracket_pair_terms(nslots, nslots, Lb.left)
    terms += left_action_terms(m, nslots, R.lam)
    t = Term((m,), (), tuple((p, p) for p in range(m)))
    sign = -1 if m % 2 == 0 else 1  # (−1)^{m+1}
    for a, mat in enumerate(R.rho):
        t.add((a,), (), sign, mat)
    terms.append(t)
    return assemble((N,) * (m + 1), (N,) * m, dv, dv, terms, first)


def leibniz_cochain_dim(Lb: LeibnizAlgebra, R: LeibnizRep, m: int) -> int:
    return Lb.dim ** m * R.dim_v

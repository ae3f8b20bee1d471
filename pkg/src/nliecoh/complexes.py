"""Cochain complexes of n-Lie algebras and their cohomology.

Cochain conventions (degree m ≥ 1):

* standard:  C^m = Hom((Λ^{n−1}L)^{⊗(m−1)} ⊗ L, V),   C^0 = Λ^{n−2}L ⊗ V
* alternate: 𝒞^m = Hom((Λ^{n−1}L)^{⊗(m−1)} ⊗ Λ^{n−2}L, V),  𝒞^0 = L ⊗ V
* leibniz:   CL^m(Λ^{n−1}L, Λ^{n−2}L ⊗ V), the target of the chain map Δ
* lie:       Hom(Λ^m g, V), n = 2 only

The (n−1)-wedge slots form a tensor power, not an exterior power: the
differential replaces one slot by a Leibniz bracket and does not preserve
alternation across slots.  Coordinates are row-major over the slots with the
value index last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .algebra import NLieAlgebra, Representation
from .assembly import Term, assemble, drop_slot
from .leibniz import (LeibnizAlgebra, LeibnizRep, bracket_pair_terms, induced_leibniz,
                      left_action_terms, leibniz_differential, rep_on_Ln2_tensor_V)
from .linalg import (Echelon, Scalar, SparseMatrix, integer_row, kernel_basis, matmul, rank)
from .multiindex import BasisDescriptor, Factor, normalize, wedge_basis, wedge_dim

KINDS = ("standard", "alternate", "leibniz", "lie")


@dataclass
class DifferentialMatrix:
    """An exact sparse matrix together with the bases of its domain and codomain."""

    matrix: SparseMatrix
    domain: BasisDescriptor
    codomain: BasisDescriptor

    @property
    def shape(self):
        return self.matrix.shape

    def __matmul__(self, other):
        if isinstance(other, DifferentialMatrix):
            return DifferentialMatrix(matmul(self.matrix, other.matrix), other.domain,
                                      self.codomain)
        return self.matrix @ other

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


def cochain_space(A: NLieAlgebra, dim_v: int, kind: str, m: int) -> BasisDescriptor:
    """Basis descriptor of the degree-m cochains, value factor last."""
    n, d = A.n, A.dim
    V = Factor("V", 1, dim_v)
    if kind == "standard":
        if m == 0:
            return BasisDescriptor((Factor("L", n - 2, d), V))
        return BasisDescriptor((Factor("L", n - 1, d),) * (m - 1) + (Factor("L", 1, d), V))
    if kind == "alternate":
        if m == 0:
            return BasisDescriptor((Factor("L", 1, d), V))
        return BasisDescriptor((Factor("L", n - 1, d),) * (m - 1) + (Factor("L", n - 2, d), V))
    if kind == "leibniz":
        value = Factor("Λ^{n-2}L⊗V", 1, wedge_dim(n - 2, d) * dim_v)
        return BasisDescriptor((Factor("L", n - 1, d),) * m + (value,))
    if kind == "lie":
        _require_lie(A)
        return BasisDescriptor((Factor("L", m, d), V))
    raise ValueError(f"unknown complex kind {kind!r}; expected one of {KINDS}")


def _require_lie(A: NLieAlgebra):
    if A.n != 2:
        raise ValueError(f"the lie complex needs a binary bracket (n = 2), got n = {A.n}")


def _slot_shape(space: BasisDescriptor) -> Tuple[Tuple[int, ...], int]:
    shape = space.shape
    return shape[:-1], shape[-1]


def _wrap(matrix, domain, codomain) -> DifferentialMatrix:
    return DifferentialMatrix(matrix, domain, codomain)


# -- differentials -----------------------------------------------------------------


def _degree_zero(A: NLieAlgebra, R: Representation, kind: str) -> DifferentialMatrix:
    n, d, dv = A.n, A.dim, R.dim_v
    dom = cochain_space(A, dv, kind, 0)
    cod = cochain_space(A, dv, kind, 1)
    t = Term((0,), (0,), ())
    if kind == "standard":
        # δ(z⊗v)(y) = μ(z, y)v
        for zi, z in enumerate(wedge_basis(n - 2, d)):
            for y in range(d):
                t.add((y,), (zi,), 1, R.action(z + (y,)))
    else:
        # δ(z⊗v)(y) = μ(z, y¹..y^{n−2})v
        for yi, y in enumerate(wedge_basis(n - 2, d)):
            for z in range(d):
                t.add((yi,), (z,), 1, R.action((z,) + y))
    out_shape, _ = _slot_shape(cod)
    in_shape, _ = _slot_shape(dom)
    return _wrap(assemble(out_shape, in_shape, dv, dv, [t]), dom, cod)


def _nlie_differential(A: NLieAlgebra, R: Representation, m: int, kind: str,
                      first: Optional[int] = None) -> DifferentialMatrix:
    if m == 0:
        if first is not None:
            raise ValueError("row blocks need degree ≥ 1")
        return _degree_zero(A, R, kind)
    n, d, dv = A.n, A.dim, R.dim_v
    dom = cochain_space(A, dv, kind, m)
    cod = cochain_space(A, dv, kind, m + 1)
    out_shape, _ = _slot_shape(cod)
    in_shape, _ = _slot_shape(dom)
    nslots = m + 1
    w1 = wedge_basis(n - 1, d)
    lb = induced_leibniz(A)
    terms = bracket_pair_terms(m, nslots, lb.left)
    # Σ_i (−1)^i f(x₁..x̂ᵢ..x_m, [xᵢ, y])
    for i in range(m):
        t = Term((i, m), (m - 1,), drop_slot(nslots, i, (m,)))
        sign = -1 if i % 2 == 0 else 1
        for a, w in enumerate(w1):
            act = A.ad(w) if kind == "standard" else A.wedge_action(w, n - 2)
            for (r, c), v in act.entries().items():
                t.add((a, c), (r,), sign * v)
        terms.append(t)
    terms += left_action_terms(m, nslots, [R.action(w) for w in w1])
    # the last sum pairs the components of x_m with y
    t = Term((m - 1, m), (m - 1,), tuple((p, p) for p in range(m - 1)))
    if kind == "standard":
        for a, w in enumerate(w1):
            for y in range(d):
                for i in range(n - 1):
                    rest = w[:i] + w[i + 1:]
                    sign = (-1) ** (n + m + i)  # (−1)^{n−1+m+i} with 1-based i
                    t.add((a, y), (w[i],), sign, R.action(rest + (y,)))
    else:
        for a, w in enumerate(w1):
            for yi, y in enumerate(wedge_basis(n - 2, d)):
                for i in range(n - 1):
                    rest = normalize(w[:i] + w[i + 1:], d)[0]
                    sign = (-1) ** (m + i)  # (−1)^{m+i+1} with 1-based i
                    t.add((a, yi), (rest,), sign, R.action((w[i],) + y))
    terms.append(t)
    return _wrap(assemble(out_shape, in_shape, dv, dv, terms, first), dom, cod)


def delta_standard(A: NLieAlgebra, R: Representation, m: int) -> DifferentialMatrix:
    """δ : C^m(L, V) → C^{m+1}(L, V) of the standard complex."""
    return _nlie_differential(A, R, m, "standard")


def delta_alternate(A: NLieAlgebra, R: Representation, m: int) -> DifferentialMatrix:
    """δ : 𝒞^m(L, V) → 𝒞^{m+1}(L, V) of the alternate complex."""
    return _nlie_differential(A, R, m, "alternate")


def delta_lie(A: NLieAlgebra, R: Representation, m: int) -> DifferentialMatrix:
    """Chevalley–Eilenberg differential on Hom(Λ^m g, V)."""
    _require_lie(A)
    d, dv = A.dim, R.dim_v
    dom = cochain_space(A, dv, "lie", m)
    cod = cochain_space(A, dv, "lie", m + 1)
    t = Term((0,), (0,), ())
    for xi, X in enumerate(wedge_basis(m + 1, d)):
        for i in range(m + 1):
            for j in range(i + 1, m + 1):
                rest = X[:i] + X[i + 1:j] + X[j + 1:]
                sign = (-1) ** (i + j)  # 1-based i + j has the same parity
                for s, c in A.bracket_basis((X[i], X[j])).items():
                    nb = normalize((s,) + rest, d)
                    if nb is not None:
                        t.add((xi,), (nb[0],), sign * c * nb[1])
        for k in range(m + 1):
            rest = X[:k] + X[k + 1:]
            t.add((xi,), (normalize(rest, d)[0],), (-1) ** k, R.action((X[k],)))
    # entries for the same (row, col) are summed by the assembler
    return _wrap(assemble((wedge_dim(m + 1, d),), (wedge_dim(m, d),), dv, dv, [t]), dom, cod)


def leibniz_data(A: NLieAlgebra, R: Representation) -> Tuple[LeibnizAlgebra, LeibnizRep]:
    """Λ^{n−1}L with its representation on Λ^{n−2}L ⊗ V (the target of Δ)."""
    return induced_leibniz(A), rep_on_Ln2_tensor_V(A, R)


def delta_leibniz(A: NLieAlgebra, R: Representation, m: int,
                  data: Optional[Tuple[LeibnizAlgebra, LeibnizRep]] = None,
                  first: Optional[int] = None) -> DifferentialMatrix:
    lb, rep = data or leibniz_data(A, R)
    dom = cochain_space(A, R.dim_v, "leibniz", m)
    cod = cochain_space(A, R.dim_v, "leibniz", m + 1)
    return _wrap(leibniz_differential(lb, rep, m, first), dom, cod)


def differential(A: NLieAlgebra, R: Representation, kind: str, m: int) -> DifferentialMatrix:
    if kind == "standard":
        return delta_standard(A, R, m)
    if kind == "alternate":
        return delta_alternate(A, R, m)
    if kind == "leibniz":
        return delta_leibniz(A, R, m)
    if kind == "lie":
        return delta_lie(A, R, m)
    raise ValueError(f"unknown complex kind {kind!r}; expected one of {KINDS}")


def square_is_zero(A: NLieAlgebra, R: Representation, kind: str, m: int,
                   max_rows: int = 1_000_000) -> bool:
    """Exact test of δ^{m+1}∘δ^m = 0.

    When C^{m+2} has more than ``max_rows`` coordinates, δ^{m+1} is built one
    row block (fixed first argument) at a time.
    """
    data = leibniz_data(A, R) if kind == "leibniz" else None

    def diff(k, first=None):
        if kind == "leibniz":
            return delta_leibniz(A, R, k, data, first).matrix
        if kind == "lie":
            if first is not None:
                raise ValueError("row blocks are not used for the lie complex")
            return delta_lie(A, R, k).matrix
        return _nlie_differential(A, R, k, kind, first).matrix

    inner = diff(m)
    size = cochain_space(A, R.dim_v, kind, m + 2).dim
    if size <= max_rows or kind == "lie" or m + 1 == 0:
        return matmul(diff(m + 1), inner).is_zero()
    blocks = cochain_space(A, R.dim_v, kind, m + 2).shape[0]
    return all(matmul(diff(m + 1, b), inner).is_zero() for b in range(blocks))


# -- chain maps --------------------------------------------------------------------


def chain_map_Delta(A: NLieAlgebra, R: Representation, m: int,
                    literal_degree_zero: bool = False) -> SparseMatrix:
    """Δ^m : C^m(L, V) → CL^m(Λ^{n−1}L, Λ^{n−2}L ⊗ V).

    Δ^m(f)(x₁..x_m) = Σ_k (−1)^k x_m¹∧..x̂_mᵏ..∧x_m^{n−1} ⊗ f(x₁..x_{m−1}, x_mᵏ).

    In degree 0 the square with δ⁰ commutes for Δ⁰ = (−1)^{n+1} Id, which is
    −Id only for even n; ``literal_degree_zero`` forces −Id.
    """
    n, d, dv = A.n, A.dim, R.dim_v
    n2 = wedge_dim(n - 2, d)
    if m == 0:
        return SparseMatrix.identity(n2 * dv, -1 if literal_degree_zero or n % 2 == 0 else 1)
    n1 = wedge_dim(n - 1, d)
    t = Term((m - 1,), (m - 1,), tuple((p, p) for p in range(m - 1)))
    for a, w in enumerate(wedge_basis(n - 1, d)):
        for k in range(n - 1):
            pos = normalize(w[:k] + w[k + 1:], d)[0]
            vmat = _embed(pos, dv, n2 * dv)
            t.add((a,), (w[k],), -1 if k % 2 == 0 else 1, vmat)
    return assemble((n1,) * m, (n1,) * (m - 1) + (d,), n2 * dv, dv, [t])


def chain_map_Theta(A: NLieAlgebra, R: Representation, m: int,
                    literal_degree_zero: bool = False) -> SparseMatrix:
    """Θ^m : 𝒞^m(L, V) → CL^m(Λ^{n−1}L, L ⊗ V).

    Θ^m(f)(x₁..x_m) = Σ_k (−1)^{k+1} x_mᵏ ⊗ f(x₁..x_{m−1}, X_mᵏ).

    The degree-0 square commutes for Θ⁰ = +Id; ``literal_degree_zero`` gives −Id.
    """
    n, d, dv = A.n, A.dim, R.dim_v
    if m == 0:
        return SparseMatrix.identity(d * dv, -1 if literal_degree_zero else 1)
    n1, n2 = wedge_dim(n - 1, d), wedge_dim(n - 2, d)
    t = Term((m - 1,), (m - 1,), tuple((p, p) for p in range(m - 1)))
    for a, w in enumerate(wedge_basis(n - 1, d)):
        for k in range(n - 1):
            pos = normalize(w[:k] + w[k + 1:], d)[0]
            t.add((a,), (pos,), 1 if k % 2 == 0 else -1, _embed(w[k], dv, d * dv))
    return assemble((n1,) * m, (n1,) * (m - 1) + (n2,), d * dv, dv, [t])


def _embed(block: int, dv: int, total: int) -> SparseMatrix:
    """v ↦ e_block ⊗ v as a (total × dv) matrix."""
    import numpy as np
    idx = np.arange(dv, dtype=np.int64)
    return SparseMatrix.from_triplets(total, dv, block * dv + idx, idx, np.ones(dv, dtype=np.int64))


# -- cohomology --------------------------------------------------------------------


@dataclass
class CohomologyReport:
    kind: str
    degree: int
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int
    representatives: Optional[List[List[Scalar]]] = None
    space: Optional[BasisDescriptor] = field(default=None, repr=False)

    @property
    def dim_H(self) -> int:
        return self.dim_cocycles - self.dim_coboundaries

    def to_json(self) -> dict:
        out = {"complex": self.kind, "degree": self.degree, "dim_cochains": self.dim_cochains,
               "dim_Z": self.dim_cocycles, "dim_B": self.dim_coboundaries, "dim_H": self.dim_H}
        if self.representatives is not None:
            from .io import cochain_terms
            out["representatives"] = [cochain_terms(self.space, v, self.kind, self.degree)
                                      for v in self.representatives]
        return out


def cohomology_of(d_m: SparseMatrix, d_prev: Optional[SparseMatrix],
                  representatives: bool = True):
    """(dim C, dim Z, dim B, representatives) for the complex ... → C^m → ...

    Representatives are kernel basis vectors, in free-column order, that are
    independent of the image of ``d_prev`` and of the ones already taken.
    """
    dim_c = d_m.ncols
    dim_z = dim_c - rank(d_m)
    dim_b = rank(d_prev) if d_prev is not None else 0
    reps = None
    if representatives:
        reps = []
        ech = Echelon()
        if d_prev is not None:
            t = d_prev.transpose()
            for r in range(t.nrows):
                row = t.row_dict(r)
                if row:
                    ech.add(integer_row(row))
        for v in kernel_basis(d_m):
            if len(reps) == dim_z - dim_b:
                break
            if ech.add(integer_row({i: x for i, x in enumerate(v) if x != 0})):
                reps.append(v)
    return dim_c, dim_z, dim_b, reps


def cohomology(A: NLieAlgebra, R: Representation, kind: str, m: int,
               representatives: bool = True) -> CohomologyReport:
    if m < 0:
        raise ValueError("degree must be non-negative")
    if kind == "lie":
        _require_lie(A)
    data = leibniz_data(A, R) if kind == "leibniz" else None

    def diff(k):
        if kind == "leibniz":
            return delta_leibniz(A, R, k, data).matrix
        return differential(A, R, kind, k).matrix

    d_m = diff(m)
    d_prev = diff(m - 1) if m > 0 else None
    dim_c, dim_z, dim_b, reps = cohomology_of(d_m, d_prev, representatives)
    return CohomologyReport(kind, m, dim_c, dim_z, dim_b, reps,
                            cochain_space(A, R.dim_v, kind, m))


def complexes_coincide_check(A: NLieAlgebra, R: Representation, m: int) -> dict:
    """Compare the standard and alternate degree-m differentials.

    For n = 3, Λ^{n−2}L = L with the same basis order, so the matrices can be
    compared entrywise.  Otherwise the first structural difference is reported:
    a dimension mismatch when there is one, else the differing factors.
    """
    std = delta_standard(A, R, m)
    alt = delta_alternate(A, R, m)
    report = {"n": A.n, "degree": m, "standard_shape": list(std.shape),
              "alternate_shape": list(alt.shape)}
    if std.shape != alt.shape:
        report.update(identical=False, witness={
            "reason": "dimension mismatch",
            "standard_domain": std.domain.dim, "alternate_domain": alt.domain.dim,
            "standard_codomain": std.codomain.dim, "alternate_codomain": alt.codomain.dim})
        return report
    if A.n != 3:
        # equal sizes, but Λ^{n−2}L and L are different spaces: no identification
        report.update(identical=False, witness={
            "reason": "factor mismatch",
            "standard_domain": std.domain.describe(), "alternate_domain": alt.domain.describe()})
        return report
    diff = std.matrix - alt.matrix
    if diff.is_zero():
        report.update(identical=True, witness=None)
    else:
        r, c = int(diff.row[0]), int(diff.col[0])
        report.update(identical=False, witness={
            "reason": "entry mismatch", "row": r, "col": c,
            "standard": str(std.matrix[r, c]), "alternate": str(alt.matrix[r, c])})
    return report

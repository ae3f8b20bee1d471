"""Derivations, generalized derivations, extensions and infinitesimal deformations.

A linear map D : L → L is a ``d × d`` array with ``D[s, y]`` the coefficient of
e_s in D(e_y).  A generalized derivation D : Λ^{n−1}L → L is stored as a
:class:`GeneralizedDerivation`; its coordinate vector is indexed
``a·d + s`` with ``a`` the position of an increasing (n−1)-tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import (NLieAlgebra, Representation, Witness, _as_list, _increasing,
                      _first_nonzero_row, act_on_slot, adjoint_representation,
                      derivation_defect, exact_array, hom_representation,
                      semidirect_sum_nlie, validate_derivation_tensor,
                      validate_fundamental_identity)
from .complexes import delta_alternate, delta_standard
from .leibniz import fundamental_rep, induced_leibniz, semidirect_sum_leibniz
from .linalg import (Scalar, SparseMatrix, kernel_basis, matvec, solve_in_image, to_scalar)
from .multiindex import sort_with_sign, wedge_basis, wedge_dim, wedge_positions

Vector = Dict[int, Scalar]


def _obj(a: np.ndarray) -> np.ndarray:
    return a.astype(object) if a.dtype != object else a


def _zero_witness(axiom, args, lhs):
    return Witness(axiom, args, _as_list(lhs), _as_list(0 * lhs))


# -- derivations --------------------------------------------------------------------


def is_derivation(A: NLieAlgebra, D) -> Optional[Witness]:
    """D[x₁..xₙ] = Σ_k [x₁..D xₖ..xₙ] on all increasing basis n-tuples."""
    dmat = exact_array(D, (A.dim, A.dim))
    if A.dim < A.n:
        return None
    return validate_derivation_tensor(A.tensor, dmat, "derivation")


def _linear_conditions(nunknowns: int, defect) -> SparseMatrix:
    """Matrix whose column u is ``defect(e_u)`` flattened (the map is linear)."""
    cols = []
    for u in range(nunknowns):
        cols.append(np.asarray(defect(u), dtype=object).ravel())
    if not cols:
        return SparseMatrix.zeros(0, 0)
    dense = np.stack(cols, axis=1)
    return SparseMatrix.from_numpy(dense)


def derivation_space(A: NLieAlgebra) -> List[List[Scalar]]:
    """Basis of Der(L), each derivation as a flattened d×d matrix (row-major D[s, y])."""
    d, n = A.dim, A.n
    t = _obj(A.tensor)
    rows = _increasing(n, d)

    def defect(u):
        dmat = np.zeros((d, d), dtype=object)
        dmat[...] = 0
        dmat[u // d, u % d] = 1
        lhs, rhs = derivation_defect(t, dmat)
        diff = lhs - rhs
        return diff[tuple(rows.T)] if len(rows) else np.zeros(0, dtype=object)

    return kernel_basis(_linear_conditions(d * d, defect))


def inner_derivations(A: NLieAlgebra) -> List[List[Scalar]]:
    """ad(w) for each increasing (n−1)-tuple, flattened row-major."""
    out = []
    for w in wedge_basis(A.n - 1, A.dim):
        m = A.ad(w)
        flat = [0] * (A.dim * A.dim)
        for (r, c), v in m.entries().items():
            flat[r * A.dim + c] = v
        out.append(flat)
    return out


# -- generalized derivations ---------------------------------------------------------


@dataclass
class GeneralizedDerivation:
    """A linear map D : Λ^{n−1}L → L, stored on increasing (n−1)-tuples."""

    n: int
    dim: int
    values: Dict[Tuple[int, ...], Vector]

    @classmethod
    def from_vector(cls, n: int, dim: int, vec: Sequence) -> "GeneralizedDerivation":
        values = {}
        for a, w in enumerate(wedge_basis(n - 1, dim)):
            v = {s: to_scalar(vec[a * dim + s]) for s in range(dim) if vec[a * dim + s] != 0}
            if v:
                values[w] = v
        return cls(n, dim, values)

    @classmethod
    def from_tensor(cls, t: np.ndarray) -> "GeneralizedDerivation":
        n, d = t.ndim, t.shape[-1]
        vec = []
        for w in wedge_basis(n - 1, d):
            vec.extend(to_scalar(x) for x in t[w])
        return cls.from_vector(n, d, vec)

    @property
    def vector(self) -> List[Scalar]:
        d = self.dim
        out = [0] * (wedge_dim(self.n - 1, d) * d)
        pos = wedge_positions(self.n - 1, d)
        for w, v in self.values.items():
            for s, c in v.items():
                out[pos[w] * d + s] = c
        return out

    def apply(self, t: Sequence[int]) -> Vector:
        s = sort_with_sign(t)
        if s is None:
            return {}
        key, sign = s
        return {i: sign * c for i, c in self.values.get(key, {}).items()}

    @property
    def tensor(self) -> np.ndarray:
        """Dense antisymmetric tensor of shape (d,)*(n−1) + (d,)."""
        import itertools
        d, k = self.dim, self.n - 1
        t = np.zeros((d,) * k + (d,), dtype=object)
        t[...] = 0
        for key, v in self.values.items():
            for perm in itertools.permutations(key):
                sign = sort_with_sign(perm)[1]
                for s, c in v.items():
                    t[perm + (s,)] = sign * c
        return exact_array(t)

    def sharp(self, z: Sequence[int]) -> np.ndarray:
        """D^♯(z) as a d×d array: column y is D(z, y)."""
        return np.moveaxis(self.tensor[tuple(z)], -1, 0)


def inner_generalized_derivation(A: NLieAlgebra, y: int) -> GeneralizedDerivation:
    """ad_y(z₁..z_{n−1}) = [y, z₁..z_{n−1}]."""
    values = {}
    for w in wedge_basis(A.n - 1, A.dim):
        v = A.bracket_basis((y,) + w)
        if v:
            values[w] = dict(v)
    return GeneralizedDerivation(A.n, A.dim, values)


@dataclass
class GenDerReport:
    axiom_I: Optional[Witness]
    axiom_II: Optional[Witness]
    axiom_III: Optional[Witness]

    @property
    def all_ok(self) -> bool:
        return self.axiom_I is None and self.axiom_II is None and self.axiom_III is None

    def to_json(self) -> dict:
        out = {}
        for name, w in (("axiom_I", self.axiom_I), ("axiom_II", self.axiom_II),
                        ("axiom_III", self.axiom_III)):
            out[name] = {"ok": w is None, "witness": None if w is None else w.to_json()}
        return out


def _axiom_one(t, dt, n, d) -> Optional[Witness]:
    for z in wedge_basis(n - 2, d):
        dmat = np.moveaxis(dt[z], -1, 0)
        w = validate_derivation_tensor(t, dmat, "generalized derivation axiom I", (z,))
        if w is not None:
            return w
    return None


def _axiom_two_defect(t, dt, a, n):
    """[a, D(b)] − [b, D(a)] − Σ_k D(b₁..[a,b_k]..) as a tensor over b."""
    adm = np.moveaxis(t[a], -1, 0)
    lhs = np.tensordot(dt, adm.T, axes=([n - 1], [0]))
    lhs = lhs - np.tensordot(t, dt[a], axes=([n - 1], [0]))
    rhs = sum(act_on_slot(dt, adm, k) for k in range(n - 1))
    return lhs, rhs


def _axiom_two(t, dt, n, d) -> Optional[Witness]:
    rows = _increasing(n - 1, d)
    for a in wedge_basis(n - 1, d):
        lhs, rhs = _axiom_two_defect(t, dt, a, n)
        i = _first_nonzero_row(lhs - rhs, rows)
        if i is not None:
            b = tuple(int(x) for x in rows[i])
            return Witness("generalized derivation axiom II", (a, b), _as_list(lhs[b]),
                           _as_list(rhs[b]))
    return None


def as_algebra(D: GeneralizedDerivation) -> Optional[NLieAlgebra]:
    """(L, D) as an (n−1)-ary algebra, or None when n − 1 < 2."""
    if D.n - 1 < 2:
        return None
    return NLieAlgebra(D.n - 1, D.dim, D.values)


def _axiom_three(D: GeneralizedDerivation) -> Optional[Witness]:
    alg = as_algebra(D)
    if alg is None:
        return None  # a unary map satisfies the identity trivially
    w = validate_fundamental_identity(alg)
    if w is not None:
        w.axiom = "generalized derivation axiom III"
    return w


def is_generalized_derivation(A: NLieAlgebra, D: GeneralizedDerivation) -> GenDerReport:
    """Checks the three axioms separately on increasing basis tuples.

    Axiom III is the fundamental identity of D regarded as an (n−1)-ary bracket.
    """
    t, dt = _obj(A.tensor), _obj(D.tensor)
    n, d = A.n, A.dim
    return GenDerReport(_axiom_one(t, dt, n, d), _axiom_two(t, dt, n, d), _axiom_three(D))


def generalized_derivation_solutions(A: NLieAlgebra, axioms: str = "I,II") -> List[List[Scalar]]:
    """Basis of the (linear) solution space of the requested axioms among I, II."""
    wanted = {a.strip() for a in axioms.split(",")}
    if not wanted <= {"I", "II"}:
        raise ValueError("only axioms I and II are linear")
    n, d = A.n, A.dim
    t = _obj(A.tensor)
    nd = wedge_dim(n - 1, d) * d
    rows1 = _increasing(n, d)
    rows2 = _increasing(n - 1, d)

    def defect(u):
        vec = [0] * nd
        vec[u] = 1
        dt = _obj(GeneralizedDerivation.from_vector(n, d, vec).tensor)
        parts = []
        if "I" in wanted and len(rows1):
            for z in wedge_basis(n - 2, d):
                lhs, rhs = derivation_defect(t, np.moveaxis(dt[z], -1, 0))
                parts.append((lhs - rhs)[tuple(rows1.T)].ravel())
        if "II" in wanted:
            for a in wedge_basis(n - 1, d):
                lhs, rhs = _axiom_two_defect(t, dt, a, n)
                parts.append((lhs - rhs)[tuple(rows2.T)].ravel())
        return np.concatenate(parts) if parts else np.zeros(0, dtype=object)

    return kernel_basis(_linear_conditions(nd, defect))


def d_sharp(A: NLieAlgebra, D: GeneralizedDerivation) -> List[Scalar]:
    """D^♯ as a degree-1 alternate cochain with values in gl(L) = Hom(L, L).

    Coordinates follow hom_representation(adjoint, dim): T[s, y] at s·d + y,
    so the entry for (z, s, y) is the e_s coefficient of D(z, y).
    """
    n, d = A.n, A.dim
    dt = D.tensor
    out = []
    for z in wedge_basis(n - 2, d):
        block = dt[z]  # block[y, s] = coefficient of e_s in D(z, y)
        for s in range(d):
            for y in range(d):
                out.append(to_scalar(block[y, s]))
    return out


def gl_representation(A: NLieAlgebra) -> Representation:
    """gl(L) = Hom(L, L) with μ(x)(T) = −T∘ad(x)."""
    return hom_representation(adjoint_representation(A), A.dim)


def gen_der_cocycle_check(A: NLieAlgebra, D: GeneralizedDerivation,
                          require_axiom_two: bool = True) -> Optional[Witness]:
    """δ(D^♯) = 0 in the alternate complex with coefficients in gl(L).

    Raises ValueError with the axiom-II witness when the precondition fails
    and ``require_axiom_two`` is set.
    """
    if require_axiom_two:
        w = _axiom_two(_obj(A.tensor), _obj(D.tensor), A.n, A.dim)
        if w is not None:
            raise ValueError(f"axiom II fails at {w.to_json()['args']}")
    R = gl_representation(A)
    delta = delta_alternate(A, R, 1)
    image = matvec(delta.matrix, d_sharp(A, D))
    for i, v in enumerate(image):
        if v != 0:
            return Witness("δ(D♯) = 0", delta.codomain.labels(i), v, 0)
    return None


def gen_der_extension(A: NLieAlgebra, D: GeneralizedDerivation) -> NLieAlgebra:
    """L ⊕_D k with the new basis vector last.

    [x₁+α₁, …, xₙ+αₙ] = [x₁..xₙ] + Σ_k (−1)^{k+1} α_k D(x₁..x̂_k..xₙ), so on
    basis tuples [e_{i₁}..e_{i_{n−1}}, e_new] = (−1)^{n+1} D(e_{i₁}..e_{i_{n−1}}).
    """
    n, d = A.n, A.dim
    structure = {k: dict(v) for k, v in A.structure.items()}
    sign = 1 if n % 2 else -1
    for w, v in D.values.items():
        structure[w + (d,)] = {s: sign * c for s, c in v.items()}
    names = A.names + ("c",) if A.names else None
    return NLieAlgebra(n, d + 1, structure, names)


def leibniz_derivation_lift_check(A: NLieAlgebra, D: GeneralizedDerivation) -> Optional[Witness]:
    """D(y + x) := D(x) is a derivation of the Leibniz algebra L ⋊ Λ^{n−1}L."""
    lb = semidirect_sum_leibniz(induced_leibniz(A), fundamental_rep(A))
    d = A.dim
    size = lb.dim
    dm = np.zeros((size, size), dtype=object)
    dm[...] = 0
    for a, w in enumerate(wedge_basis(A.n - 1, d)):
        for s, c in D.apply(w).items():
            dm[s, d + a] = c
    b = _obj(lb.tensor)  # b[x, y, t]: coefficient of e_t in [e_x, e_y]
    lhs = np.tensordot(b, dm.T, axes=([2], [0]))
    rhs = np.tensordot(dm, b, axes=([0], [0])) + np.moveaxis(
        np.tensordot(dm, b, axes=([0], [1])), 0, 1)
    diff = lhs - rhs
    nz = np.argwhere(np.any(diff != 0, axis=2))
    if len(nz):
        x, y = (int(v) for v in nz[0])
        return Witness("Leibniz derivation", (x, y), _as_list(lhs[x, y]), _as_list(rhs[x, y]))
    return None


# -- abelian extensions ----------------------------------------------------------------


def _c2_index(A: NLieAlgebra, dv: int, a: int, y: int, v: int) -> int:
    return (a * A.dim + y) * dv + v


def alternating_violation(A: NLieAlgebra, dv: int, f: Sequence) -> Optional[Tuple]:
    """First (a, y) where f ∈ C²(L, V) is not the restriction of an alternating n-form."""
    d, n = A.dim, A.n
    pos = wedge_positions(n - 1, d)
    for a, w in enumerate(wedge_basis(n - 1, d)):
        for y in range(d):
            vals = [f[_c2_index(A, dv, a, y, v)] for v in range(dv)]
            s = sort_with_sign(w + (y,))
            if s is None:
                if any(x != 0 for x in vals):
                    return (w, y)
                continue
            key, sign = s
            ref = [sign * f[_c2_index(A, dv, pos[key[:-1]], key[-1], v)] for v in range(dv)]
            if ref != vals:
                return (w, y)
    return None


def alternating_embedding(A: NLieAlgebra, dv: int) -> SparseMatrix:
    """Matrix from (increasing n-tuple, V) coordinates to C²(L, V)."""
    d, n = A.dim, A.n
    pos = wedge_positions(n - 1, d)
    entries = {}
    for c, key in enumerate(wedge_basis(n, d)):
        for k in range(n):
            w = key[:k] + key[k + 1:]
            sign = 1 if (n - 1 - k) % 2 == 0 else -1  # move key[k] to the end
            for v in range(dv):
                entries[_c2_index(A, dv, pos[w], key[k], v), c * dv + v] = sign
    return SparseMatrix.from_dict(wedge_dim(n - 1, d) * d * dv, wedge_dim(n, d) * dv, entries)


def alternating_cochain(A: NLieAlgebra, dv: int, values: Dict[Tuple[int, ...], Sequence]) -> List:
    """C² cochain from its values on increasing n-tuples."""
    pos = wedge_positions(A.n, A.dim)
    coeffs = [0] * (wedge_dim(A.n, A.dim) * dv)
    for key, vec in values.items():
        for v, c in enumerate(vec):
            coeffs[pos[tuple(key)] * dv + v] = to_scalar(c)
    return matvec(alternating_embedding(A, dv), coeffs)


def _form_value(A: NLieAlgebra, dv: int, f: Sequence, key: Tuple[int, ...]) -> List:
    pos = wedge_positions(A.n - 1, A.dim)
    return [f[_c2_index(A, dv, pos[key[:-1]], key[-1], v)] for v in range(dv)]


def abelian_extension(A: NLieAlgebra, R: Representation, f: Sequence) -> NLieAlgebra:
    """V ⊕ L (V first) with bracket

    [v₁+x₁, …, vₙ+xₙ] = Σ_k (−1)^{k+1} μ(x₁..x̂_k..xₙ)v_k + (−1)^{n+1}(f(x₁..xₙ) + [x₁..xₙ]).

    ``f`` must be alternating (ValueError otherwise): the bracket is only
    antisymmetric for an alternating f.
    """
    dv, n = R.dim_v, A.n
    bad = alternating_violation(A, dv, f)
    if bad is not None:
        w, y = bad
        raise ValueError(f"cochain is not alternating at x={[i + 1 for i in w]}, y={y + 1}")
    sign = 1 if n % 2 else -1
    semi = semidirect_sum_nlie(R)
    structure = {}
    for key, vec in semi.structure.items():
        structure[key] = {i: sign * c for i, c in vec.items()}
    for key in wedge_basis(n, A.dim):
        val = _form_value(A, dv, f, key)
        if any(c != 0 for c in val):
            k = tuple(dv + i for i in key)
            entry = structure.setdefault(k, {})
            for v, c in enumerate(val):
                entry[v] = entry.get(v, 0) + sign * c
    return NLieAlgebra(n, dv + A.dim, structure)


def cochain_witness(delta, vector) -> Optional[Witness]:
    image = matvec(delta.matrix, vector)
    for i, v in enumerate(image):
        if v != 0:
            return Witness("cocycle", delta.codomain.labels(i), v, 0)
    return None


def is_cocycle(A: NLieAlgebra, R: Representation, f: Sequence, degree: int = 2) -> bool:
    return cochain_witness(delta_standard(A, R, degree), f) is None


def _extension_map(A: NLieAlgebra, dv: int, h: Sequence) -> np.ndarray:
    """H(v + x) = v + h(x) + x on V ⊕ L as a dense matrix."""
    size = dv + A.dim
    H = np.zeros((size, size), dtype=object)
    H[...] = 0
    for i in range(size):
        H[i, i] = 1
    for x in range(A.dim):
        for v in range(dv):
            H[v, dv + x] = h[x * dv + v]
    return H


def is_homomorphism(H: np.ndarray, src: NLieAlgebra, dst: NLieAlgebra) -> Optional[Witness]:
    """H[a₁..aₙ]_src = [Ha₁..Haₙ]_dst on all increasing basis tuples."""
    t1, t2 = _obj(src.tensor), _obj(dst.tensor)
    n = src.n
    lhs = np.tensordot(t1, H.T, axes=([n], [0]))
    rhs = t2
    for k in range(n):
        rhs = act_on_slot(rhs, H, k)
    rows = _increasing(n, src.dim)
    i = _first_nonzero_row(lhs - rhs, rows)
    if i is None:
        return None
    b = tuple(int(x) for x in rows[i])
    return Witness("homomorphism", (b,), _as_list(lhs[b]), _as_list(rhs[b]))


@dataclass
class EquivalenceResult:
    equivalent: bool
    h: Optional[List[Scalar]] = None
    verified: Optional[bool] = None
    witness: Optional[Witness] = None


def extensions_equivalent(A: NLieAlgebra, R: Representation, f: Sequence,
                          g: Sequence) -> EquivalenceResult:
    """Solve δh = f − g; when solvable, verify H(v+x) = v + h(x) + x maps the
    f-extension isomorphically onto the g-extension."""
    d2 = delta_standard(A, R, 2)
    for name, c in (("f", f), ("g", g)):
        if cochain_witness(d2, c) is not None:
            raise ValueError(f"{name} is not a cocycle")
    d1 = delta_standard(A, R, 1)
    diff = [to_scalar(a - b) for a, b in zip(f, g)]
    h = solve_in_image(d1.matrix, diff)
    if h is None:
        return EquivalenceResult(False)
    H = _extension_map(A, R.dim_v, h)
    w = is_homomorphism(H, abelian_extension(A, R, f), abelian_extension(A, R, g))
    return EquivalenceResult(True, h, w is None, w)


# -- infinitesimal deformations ---------------------------------------------------------


def infinitesimal_deformation_check(A: NLieAlgebra, eta: Sequence) -> Optional[Witness]:
    """δη = 0 in C³(L, L) with adjoint coefficients."""
    w = cochain_witness(delta_standard(A, adjoint_representation(A), 2), eta)
    if w is not None:
        w.axiom = "deformation cocycle"
    return w


def deformations_equivalent(A: NLieAlgebra, eta1: Sequence, eta2: Sequence) -> Optional[List]:
    """Some g ∈ C¹(L, L) with η₁ − η₂ = δg, or None."""
    d1 = delta_standard(A, adjoint_representation(A), 1)
    return solve_in_image(d1.matrix, [to_scalar(a - b) for a, b in zip(eta1, eta2)])


def random_cochain(dim: int, rng, low: int = -2, high: int = 2) -> List[int]:
    return [int(x) for x in rng.integers(low, high + 1, size=dim)]


def alternating_cocycle_basis(A: NLieAlgebra, R: Representation) -> List[List[Scalar]]:
    """Alternating 2-cocycles, as coefficient vectors on (increasing n-tuple, V)."""
    P = alternating_embedding(A, R.dim_v)
    return kernel_basis(delta_standard(A, R, 2).matrix @ P)


@dataclass
class ExtensionSample:
    samples: int
    cocycles: int
    agree: int
    first_disagreement: Optional[List] = None

    @property
    def ok(self) -> bool:
        return self.agree == self.samples

    def to_json(self) -> dict:
        return {"samples": self.samples, "cocycles": self.cocycles, "agree": self.agree,
                "ok": self.ok, "first_disagreement": self.first_disagreement}


def sample_extension_theorem(A: NLieAlgebra, R: Representation, samples: int,
                             rng) -> ExtensionSample:
    """Compare FI-validity of the abelian extension with δf = 0 on random
    alternating 2-cochains.  Half the draws are random combinations of a cocycle
    basis so that both outcomes are exercised."""
    P = alternating_embedding(A, R.dim_v)
    basis = alternating_cocycle_basis(A, R)
    cocycles = agree = 0
    first = None
    for k in range(samples):
        if k % 2 and basis:
            coeffs = [0] * P.ncols
            for b in basis:
                c = int(rng.integers(-2, 3))
                coeffs = [x + c * y for x, y in zip(coeffs, b)]
        else:
            coeffs = random_cochain(P.ncols, rng)
        f = matvec(P, coeffs)
        closed = is_cocycle(A, R, f)
        valid = validate_fundamental_identity(abelian_extension(A, R, f)) is None
        cocycles += closed
        if closed == valid:
            agree += 1
        elif first is None:
            first = [to_scalar(x) for x in f]
    return ExtensionSample(samples, cocycles, agree, first)

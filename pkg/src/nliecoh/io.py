"""JSON file formats.

All indices in files are 1-based; rationals are strings ``"p"`` or ``"p/q"``.
Output is canonical: sorted keys, increasing index tuples, lowest terms.
"""

from __future__ import annotations

import json
from typing import Dict, List, Sequence, Tuple

from .algebra import NLieAlgebra, Representation, adjoint_representation, trivial_representation
from .linalg import SparseMatrix, format_rational, parse_rational, to_scalar
from .multiindex import BasisDescriptor, normalize


class InputError(ValueError):
    """Malformed or inconsistent input file."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _rational(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(f"{where}: rational must be a string like \"p/q\", got {x!r}")
    try:
        return parse_rational(str(x))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: cannot parse rational {x!r}") from None


def _index(x, dim, where) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= dim:
        raise InputError(f"{where}: index {x!r} is not in 1..{dim}")
    return x - 1


def _tuple(xs, k, dim, where, increasing=True) -> Tuple[int, ...]:
    if not isinstance(xs, list) or len(xs) != k:
        raise InputError(f"{where}: expected a list of {k} indices, got {xs!r}")
    t = tuple(_index(x, dim, where) for x in xs)
    if increasing and any(b <= a for a, b in zip(t, t[1:])):
        raise InputError(f"{where}: indices {xs} are not strictly increasing")
    return t


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    return obj[key]


def _sparse_vector(value, dim, where) -> Dict[int, object]:
    """Accepts {"i": "q"} (1-based keys) or a dense list of length dim."""
    if isinstance(value, dict):
        out = {}
        for k, v in value.items():
            try:
                i = int(k)
            except ValueError:
                raise InputError(f"{where}: bad index key {k!r}") from None
            c = _rational(v, where)
            if c != 0:
                out[_index(i, dim, where)] = c
        return out
    if isinstance(value, list):
        if len(value) != dim:
            raise InputError(f"{where}: vector has length {len(value)}, expected {dim}")
        return {i: c for i, c in ((i, _rational(v, where)) for i, v in enumerate(value)) if c != 0}
    raise InputError(f"{where}: vector must be a map or a list")


def _vector_json(vec: Dict[int, object]) -> Dict[str, str]:
    return {str(i + 1): format_rational(to_scalar(c)) for i, c in sorted(vec.items()) if c != 0}


# -- algebras --------------------------------------------------------------------


def algebra_from_json(obj) -> NLieAlgebra:
    n = _require(obj, "n", "algebra")
    dim = _require(obj, "dim", "algebra")
    if not isinstance(n, int) or n < 2 or not isinstance(dim, int) or dim < 0:
        raise InputError("algebra: n must be an integer ≥ 2 and dim a non-negative integer")
    names = obj.get("basis_names")
    if names is not None and (not isinstance(names, list) or len(names) != dim):
        raise InputError("algebra: basis_names must list one name per basis vector")
    brackets = obj.get("brackets", [])
    if not isinstance(brackets, list):
        raise InputError("algebra: brackets must be a list")
    structure = {}
    for k, b in enumerate(brackets):
        where = f"algebra bracket #{k + 1}"
        key = _tuple(_require(b, "args", where), n, dim, where)
        if key in structure:
            raise InputError(f"{where}: duplicate args {list(b['args'])}")
        structure[key] = _sparse_vector(_require(b, "value", where), dim, where)
    return NLieAlgebra(n, dim, structure, tuple(names) if names else None)


def algebra_to_json(A: NLieAlgebra) -> dict:
    out = {"n": A.n, "dim": A.dim, "brackets": [
        {"args": [i + 1 for i in key], "value": _vector_json(vec)}
        for key, vec in sorted(A.structure.items())]}
    if A.names:
        out["basis_names"] = list(A.names)
    return out


# -- representations ------------------------------------------------------------


def rep_from_json(obj, A: NLieAlgebra) -> Representation:
    dv = _require(obj, "dim_v", "representation")
    if not isinstance(dv, int) or dv < 0:
        raise InputError("representation: dim_v must be a non-negative integer")
    mu = {}
    for k, entry in enumerate(obj.get("mu", [])):
        where = f"representation entry #{k + 1}"
        key = _tuple(_require(entry, "args", where), A.n - 1, A.dim, where)
        rows = _require(entry, "matrix", where)
        if not isinstance(rows, list) or len(rows) != dv or any(
                not isinstance(r, list) or len(r) != dv for r in rows):
            raise InputError(f"{where}: matrix must be {dv}×{dv}")
        if key in mu:
            raise InputError(f"{where}: duplicate args")
        mu[key] = SparseMatrix.from_dense([[_rational(x, where) for x in r] for r in rows])
    return Representation(A, dv, mu, name=obj.get("name"))


def rep_to_json(R: Representation) -> dict:
    return {"dim_v": R.dim_v, "mu": [
        {"args": [i + 1 for i in key],
         "matrix": [[format_rational(to_scalar(x)) for x in row] for row in m.to_dense()]}
        for key, m in sorted(R.mu.items()) if m.nnz]}


def rep_spec(spec: str, A: NLieAlgebra) -> Representation:
    """``adjoint``, ``trivial:<dim>`` or the path of a representation file."""
    if spec == "adjoint":
        return adjoint_representation(A)
    if spec.startswith("trivial:"):
        try:
            dv = int(spec.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad representation spec {spec!r}") from None
        if dv < 0:
            raise InputError("trivial representation needs a non-negative dimension")
        return trivial_representation(A, dv)
    return rep_from_json(load_json(spec), A)


# -- cochains -------------------------------------------------------------------


def _slot_layout(space: BasisDescriptor, kind: str, degree: int):
    """Split the factors of a cochain space into (x slots, y slot or None, value factor)."""
    slots = space.factors[:-1]
    if kind in ("leibniz", "lie") or (kind == "map"):
        return slots, None, space.factors[-1]
    return slots[:-1], slots[-1], space.factors[-1]


def _label_json(factor, i):
    lab = factor.label(i)
    if isinstance(lab, tuple):
        return [x + 1 for x in lab]
    return lab + 1


def cochain_terms(space: BasisDescriptor, vector: Sequence, kind: str = "standard",
                  degree: int = 0) -> List[dict]:
    """Nonzero values of a cochain grouped by argument tuple, in index order."""
    xs, y, value = _slot_layout(space, kind, degree)
    vdim = value.dim
    terms = []
    for start in range(0, len(vector), vdim):
        chunk = vector[start:start + vdim]
        if not any(c != 0 for c in chunk):
            continue
        coords = space.coords(start)
        term = {"x": [_label_json(f, c) for f, c in zip(xs, coords)],
                "value": [format_rational(to_scalar(c)) for c in chunk]}
        for k, f in enumerate(xs):
            if f.k == 1:
                term["x"][k] = [term["x"][k]]
        if y is not None:
            term["y"] = _label_json(y, coords[len(xs)])
            if y.k != 1 and not isinstance(term["y"], list):
                term["y"] = [term["y"]]
        terms.append(term)
    return terms


def cochain_to_json(space: BasisDescriptor, vector: Sequence, kind: str, degree: int) -> dict:
    return {"complex": kind, "degree": degree,
            "terms": cochain_terms(space, vector, kind, degree)}


def _wedge_coord(factor, raw, where):
    """Coordinate and sign of an argument given as an index or an index list."""
    if factor.k == 1 and isinstance(raw, int) and not isinstance(raw, bool):
        raw = [raw]
    if not isinstance(raw, list) or len(raw) != factor.k:
        raise InputError(f"{where}: expected {factor.k} indices, got {raw!r}")
    t = tuple(_index(x, factor.d, where) for x in raw)
    nb = normalize(t, factor.d)
    if nb is None:
        return None
    return nb


def cochain_from_json(obj, space: BasisDescriptor, kind: str, degree: int) -> List:
    """Dense coordinate vector of a cochain file against ``space``.

    Argument tuples may be given in any order; they are normalized with the
    antisymmetry sign.  A tuple with a repeated index must carry a zero value.
    """
    if "complex" in obj and obj["complex"] != kind:
        raise InputError(f"cochain: file is for the {obj['complex']!r} complex, expected {kind!r}")
    if "degree" in obj and obj["degree"] != degree:
        raise InputError(f"cochain: file has degree {obj['degree']!r}, expected {degree}")
    xs, y, value = _slot_layout(space, kind, degree)
    vec = [0] * space.dim
    terms = _require(obj, "terms", "cochain")
    if not isinstance(terms, list):
        raise InputError("cochain: terms must be a list")
    for k, term in enumerate(terms):
        where = f"cochain term #{k + 1}"
        raw_x = term.get("x", [])
        if not isinstance(raw_x, list) or len(raw_x) != len(xs):
            raise InputError(f"{where}: expected {len(xs)} wedge arguments in x")
        coords, sign = [], 1
        for f, raw in zip(xs, raw_x):
            nb = _wedge_coord(f, raw, where)
            if nb is None:
                coords = None
                break
            coords.append(nb[0])
            sign *= nb[1]
        if y is not None:
            if "y" not in term:
                raise InputError(f"{where}: missing y")
            nb = _wedge_coord(y, term["y"], where) if coords is not None else None
            if nb is None:
                coords = None
            else:
                coords.append(nb[0])
                sign *= nb[1]
        vals = _sparse_vector(_require(term, "value", where), value.dim, where)
        if coords is None:
            if vals:
                raise InputError(f"{where}: repeated index in a wedge argument with nonzero value")
            continue
        base = space.index(tuple(coords) + (0,))
        for i, c in vals.items():
            vec[base + i] += sign * c
    return [to_scalar(v) for v in vec]


# -- subalgebras ----------------------------------------------------------------


def subalgebra_from_json(obj, dim: int):
    where = "subalgebra"
    indices = _require(obj, "indices", where)
    kind = obj.get("kind", "subalgebra")
    if kind not in ("subalgebra", "ideal"):
        raise InputError(f"{where}: kind must be 'subalgebra' or 'ideal'")
    if not isinstance(indices, list):
        raise InputError(f"{where}: indices must be a list")
    idx = sorted({_index(i, dim, where) for i in indices})
    if len(idx) != len(indices):
        raise InputError(f"{where}: repeated index")
    return idx, kind

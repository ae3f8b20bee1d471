"""Regenerate the JSON fixture corpus in tests/data (inputs only; goldens are
written by ``make_golden.py``)."""

from __future__ import annotations

from pathlib import Path

from nliecoh import io
from nliecoh.algebra import abelian, adjoint_representation, direct_sum, simple, sl2
from nliecoh.extensions import (alternating_cocycle_basis, alternating_embedding,
                                inner_generalized_derivation, gen_der_extension)
from nliecoh.complexes import cochain_space
from nliecoh.linalg import matvec
from nliecoh.multiindex import BasisDescriptor, Factor

DATA = Path(__file__).parent / "data"


def write(name, obj):
    (DATA / name).write_text(io.dumps(obj), encoding="utf-8")


def gen_der_file(A, D):
    space = BasisDescriptor((Factor("L", A.n - 1, A.dim), Factor("L", 1, A.dim)))
    return {"complex": "map", "degree": 1, "terms": io.cochain_terms(space, D.vector, "map", 1)}


def main():
    DATA.mkdir(exist_ok=True)
    s3 = simple(3)
    write("simple2.json", io.algebra_to_json(simple(2)))
    write("simple3.json", io.algebra_to_json(s3))
    write("simple4.json", io.algebra_to_json(simple(4)))
    write("sl2.json", io.algebra_to_json(sl2()))
    write("abelian3_3.json", io.algebra_to_json(abelian(3, 3)))
    write("sum_simple3_abelian2.json", io.algebra_to_json(direct_sum(s3, abelian(3, 2))))

    broken = io.algebra_to_json(s3)
    # rescaling a constant of the simple algebra keeps the identity, an extra
    # entry does not
    broken["brackets"][0]["value"]["1"] = "1"
    write("broken.json", broken)
    (DATA / "malformed.json").write_text('{"n": 3, "dim": 4, "brackets": [\n', encoding="utf-8")
    write("bad_index.json", {"n": 3, "dim": 3, "brackets": [{"args": [1, 2, 4], "value": {"1": "1"}}]})

    write("simple3_adjoint_rep.json", io.rep_to_json(adjoint_representation(s3)))

    D = inner_generalized_derivation(s3, 0)
    write("inner_ad_e1.json", gen_der_file(s3, D))
    write("identity_map.json", gen_der_file(s3, type(D).from_vector(
        3, 4, [1 if s == a % 4 else 0 for a in range(6) for s in range(4)])))
    write("simple3_ext_ad_e1.json", io.algebra_to_json(gen_der_extension(s3, D)))

    R = adjoint_representation(s3)
    P = alternating_embedding(s3, R.dim_v)
    basis = alternating_cocycle_basis(s3, R)
    space = cochain_space(s3, R.dim_v, "standard", 2)
    f = matvec(P, basis[0])
    write("f_cocycle.json", io.cochain_to_json(space, f, "standard", 2))
    coeffs = [0] * P.ncols
    coeffs[0] = 1
    write("f_noncocycle.json", io.cochain_to_json(space, matvec(P, coeffs), "standard", 2))
    write("derivation_zero.json", {"matrix": [["0"] * 4 for _ in range(4)]})
    write("derivation_identity.json",
          {"matrix": [["1" if i == j else "0" for j in range(4)] for i in range(4)]})
    write("ideal_abelian_part.json", {"indices": [5, 6], "kind": "ideal"})


if __name__ == "__main__":
    main()

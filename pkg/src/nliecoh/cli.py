"""Command line interface.

Exit codes: 0 ok, 1 input error, 2 mathematical violation (a JSON report with
the witness is printed).
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

import numpy as np

from . import io
from .algebra import (NLieAlgebra, check_rep_identity, validate_fundamental_identity,
                      validate_representation)
from .complexes import KINDS, cochain_space, cohomology, complexes_coincide_check
from .extensions import (GeneralizedDerivation, abelian_extension, deformations_equivalent,
                         extensions_equivalent, gen_der_cocycle_check, gen_der_extension,
                         infinitesimal_deformation_check, is_derivation,
                         is_generalized_derivation, leibniz_derivation_lift_check,
                         sample_extension_theorem)
from .multiindex import BasisDescriptor, Factor
from .spectral import (e1_page, e2_page, filtration_preserved, gen_der_ext_cohomology_compare,
                       make_subalgebra)

OK, INPUT_ERROR, VIOLATION = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _witness(w):
    return None if w is None else w.to_json()


def _emit(obj, out: Optional[str] = None):
    text = io.dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_algebra(path) -> NLieAlgebra:
    return io.algebra_from_json(io.load_json(path))


def _map_space(A: NLieAlgebra) -> BasisDescriptor:
    """Λ^{n−1}L → L, the layout of a generalized derivation."""
    return BasisDescriptor((Factor("L", A.n - 1, A.dim), Factor("L", 1, A.dim)))


def _load_gen_der(path, A) -> GeneralizedDerivation:
    vec = io.cochain_from_json(io.load_json(path), _map_space(A), "map", 1)
    return GeneralizedDerivation.from_vector(A.n, A.dim, vec)


def _load_cochain(path, A, dim_v, degree=2):
    return io.cochain_from_json(io.load_json(path), cochain_space(A, dim_v, "standard", degree),
                                "standard", degree)


def _load_matrix(path, d):
    obj = io.load_json(path)
    rows = obj.get("matrix") if isinstance(obj, dict) else None
    if not isinstance(rows, list) or len(rows) != d or any(
            not isinstance(r, list) or len(r) != d for r in rows):
        raise io.InputError(f"{path}: expected {{\"matrix\": {d}×{d} rationals}}")
    return [[io._rational(x, path) for x in r] for r in rows]


def _subalgebra(spec: str, A: NLieAlgebra, kind: str):
    """A SubalgebraFile path, a comma list of 1-based indices, or ``last``."""
    if spec == "last":
        idx = [A.dim - 1]
    elif all(part.strip().isdigit() for part in spec.split(",")) and spec.strip():
        idx = [io._index(int(p), A.dim, "subalgebra") for p in spec.split(",")]
    else:
        idx, kind_file = io.subalgebra_from_json(io.load_json(spec), A.dim)
        if kind_file != kind:
            raise io.InputError(f"{spec}: file declares kind {kind_file!r} but --{kind} was given")
    return make_subalgebra(A, idx, kind)


# -- commands ---------------------------------------------------------------------


def cmd_validate(args) -> int:
    A = _load_algebra(args.algebra)
    report = {"n": A.n, "dim": A.dim}
    w = validate_fundamental_identity(A)
    report["fundamental_identity"] = {"ok": w is None, "witness": _witness(w)}
    bad = w is not None
    if args.rep:
        R = io.rep_spec(args.rep, A)
        w1 = validate_representation(R)
        w2 = check_rep_identity(R)
        report["representation"] = {"ok": w1 is None, "witness": _witness(w1)}
        report["two_sum_identity"] = {"ok": w2 is None, "witness": _witness(w2)}
        bad = bad or w1 is not None or w2 is not None
    _emit(report)
    return VIOLATION if bad else OK


def cmd_cohomology(args) -> int:
    A = _load_algebra(args.algebra)
    R = io.rep_spec(args.rep, A)
    if args.complex == "lie" and A.n != 2:
        raise io.InputError(f"the lie complex needs n = 2, the algebra has n = {A.n}")
    if args.degree < 0:
        raise io.InputError("degree must be non-negative")
    rep = cohomology(A, R, args.complex, args.degree,
                     representatives=not args.no_representatives)
    report = rep.to_json()
    if args.out:
        _emit(report, args.out)
        print(f"H^{args.degree} ({args.complex}): dim C = {rep.dim_cochains}, "
              f"dim Z = {rep.dim_cocycles}, dim B = {rep.dim_coboundaries}, dim H = {rep.dim_H}")
    else:
        _emit(report)
    return OK


def cmd_check_derivation(args) -> int:
    A = _load_algebra(args.algebra)
    w = is_derivation(A, _load_matrix(args.derivation, A.dim))
    _emit({"derivation": {"ok": w is None, "witness": _witness(w)}})
    return OK if w is None else VIOLATION


def cmd_check_gen_derivation(args) -> int:
    A = _load_algebra(args.algebra)
    D = _load_gen_der(args.derivation, A)
    rep = is_generalized_derivation(A, D)
    report = rep.to_json()
    cw = gen_der_cocycle_check(A, D, require_axiom_two=False)
    report["cocycle"] = {"ok": cw is None, "witness": _witness(cw)}
    if rep.axiom_II is None:
        lw = leibniz_derivation_lift_check(A, D)
        report["leibniz_lift"] = {"ok": lw is None, "witness": _witness(lw)}
    else:
        report["leibniz_lift"] = {"ok": None, "witness": None, "skipped": "axiom II fails"}
    report["all_ok"] = rep.all_ok
    _emit(report)
    return OK if rep.all_ok else VIOLATION


def _finish_extension(E: NLieAlgebra, out: Optional[str]) -> int:
    w = validate_fundamental_identity(E)
    report = {"dim": E.dim, "fundamental_identity": {"ok": w is None, "witness": _witness(w)}}
    if out:
        _emit(io.algebra_to_json(E), out)
        _emit(report)
    else:
        _emit(io.algebra_to_json(E))
        sys.stderr.write(io.dumps(report))
    return OK if w is None else VIOLATION


def cmd_extend(args) -> int:
    A = _load_algebra(args.algebra)
    if args.what == "abelian":
        if not args.rep or not args.cochain:
            raise io.InputError("extend abelian needs a representation and a cochain file")
        R = io.rep_spec(args.rep, A)
        f = _load_cochain(args.cochain, A, R.dim_v)
        try:
            E = abelian_extension(A, R, f)
        except ValueError as exc:
            raise io.InputError(str(exc)) from None
    else:
        if not args.rep:
            raise io.InputError("extend gen-der needs a generalized derivation file")
        E = gen_der_extension(A, _load_gen_der(args.rep, A))
    return _finish_extension(E, args.out)


def _cochain_json(A, dim_v, vec, degree):
    if vec is None:
        return None
    return io.cochain_terms(cochain_space(A, dim_v, "standard", degree), vec, "standard", degree)


def cmd_equivalent(args) -> int:
    A = _load_algebra(args.algebra)
    R = io.rep_spec(args.rep, A)
    f = _load_cochain(args.f, A, R.dim_v)
    g = _load_cochain(args.g, A, R.dim_v)
    try:
        res = extensions_equivalent(A, R, f, g)
    except ValueError as exc:
        _emit({"error": str(exc)})
        return VIOLATION
    _emit({"equivalent": res.equivalent, "verified": res.verified,
           "h": _cochain_json(A, R.dim_v, res.h, 1), "witness": _witness(res.witness)})
    return VIOLATION if res.verified is False else OK


def cmd_deform_check(args) -> int:
    A = _load_algebra(args.algebra)
    eta = _load_cochain(args.eta, A, A.dim)
    w = infinitesimal_deformation_check(A, eta)
    report = {"cocycle": {"ok": w is None, "witness": _witness(w)}}
    bad = w is not None
    if args.other:
        eta2 = _load_cochain(args.other, A, A.dim)
        w2 = infinitesimal_deformation_check(A, eta2)
        report["other_cocycle"] = {"ok": w2 is None, "witness": _witness(w2)}
        bad = bad or w2 is not None
        g = deformations_equivalent(A, eta, eta2)
        report["equivalent"] = g is not None
        report["g"] = _cochain_json(A, A.dim, g, 1)
    _emit(report)
    return VIOLATION if bad else OK


def cmd_spectral(args) -> int:
    A = _load_algebra(args.algebra)
    R = io.rep_spec(args.rep, A)
    if args.subalgebra:
        K = _subalgebra(args.subalgebra, A, "subalgebra")
    else:
        K = _subalgebra(args.ideal, A, "ideal")
    bound = args.degree_bound
    if bound < 0:
        raise io.InputError("degree bound must be non-negative")
    report = {"K": [i + 1 for i in K.indices], "kind": K.kind, "degree_bound": bound}
    filt = {}
    bad = False
    for m in range(min(bound, 2) + 1):
        w = filtration_preserved(A, R, K, m)
        filt[str(m)] = {"ok": w is None, "witness": _witness(w)}
        bad = bad or w is not None
    report["filtration"] = filt
    e1 = e1_page(A, R, K, bound)
    report["E1"] = e1.to_json()
    bad = bad or not e1.agree
    if K.kind == "ideal":
        e2 = e2_page(A, R, K, bound)
        report["E2"] = e2.to_json()
        bad = bad or e2.witness is not None
    _emit(report)
    return VIOLATION if bad else OK


def cmd_compare_complexes(args) -> int:
    A = _load_algebra(args.algebra)
    R = io.rep_spec(args.rep, A)
    rows = [complexes_coincide_check(A, R, m) for m in range(args.max_degree + 1)]
    _emit({"n": A.n, "degrees": rows})
    if A.n == 3 and not all(r["identical"] for r in rows):
        return VIOLATION
    return OK


def cmd_compare_extension_cohomology(args) -> int:
    A = _load_algebra(args.algebra)
    D = _load_gen_der(args.derivation, A)
    E = gen_der_extension(A, D)
    R = io.rep_spec(args.rep, E)
    gd = is_generalized_derivation(A, D)
    report = gen_der_ext_cohomology_compare(A, D, R, args.max_degree, args.complex)
    report["generalized_derivation"] = gd.to_json()
    _emit(report)
    return OK if report["all_equal"] else VIOLATION


def cmd_sample_extensions(args) -> int:
    A = _load_algebra(args.algebra)
    R = io.rep_spec(args.rep, A)
    rng = np.random.default_rng(args.seed)
    res = sample_extension_theorem(A, R, args.samples, rng)
    report = res.to_json()
    if res.first_disagreement is not None:
        report["first_disagreement"] = _cochain_json(A, R.dim_v, res.first_disagreement, 2)
    report["seed"] = args.seed
    _emit(report)
    return OK if res.ok else VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nliecoh", description="Exact cohomology of n-Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    rep_help = "adjoint, trivial:<dim> or a representation file"

    s = sub.add_parser("validate", help="check the fundamental identity (and a representation)")
    s.add_argument("algebra")
    s.add_argument("--rep")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("cohomology", help="cochain, cocycle, coboundary and cohomology dims")
    s.add_argument("algebra")
    s.add_argument("--rep", required=True, help=rep_help)
    s.add_argument("--complex", required=True, choices=KINDS)
    s.add_argument("--degree", required=True, type=int)
    s.add_argument("--out")
    s.add_argument("--no-representatives", action="store_true")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("check-derivation", help="is a d×d matrix a derivation")
    s.add_argument("algebra")
    s.add_argument("derivation", help='{"matrix": rows}, entry [s][y] = coefficient of e_s in D(e_y)')
    s.set_defaults(func=cmd_check_derivation)

    s = sub.add_parser("check-gen-derivation", help="the three generalized-derivation axioms")
    s.add_argument("algebra")
    s.add_argument("derivation", help="cochain file with complex \"map\", degree 1")
    s.set_defaults(func=cmd_check_gen_derivation)

    s = sub.add_parser("extend", help="abelian or generalized-derivation extension")
    s.add_argument("what", choices=("abelian", "gen-der"))
    s.add_argument("algebra")
    s.add_argument("rep", nargs="?", help=f"{rep_help} (abelian); derivation file (gen-der)")
    s.add_argument("cochain", nargs="?", help="alternating standard 2-cochain (abelian)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("equivalent", help="are two abelian extensions equivalent")
    s.add_argument("algebra")
    s.add_argument("rep", help=rep_help)
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(func=cmd_equivalent)

    s = sub.add_parser("deform-check", help="infinitesimal deformation cocycle check")
    s.add_argument("algebra")
    s.add_argument("eta")
    s.add_argument("--other", help="second deformation, tested for equivalence")
    s.set_defaults(func=cmd_deform_check)

    s = sub.add_parser("spectral", help="filtration and pages relative to K")
    s.add_argument("algebra")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--subalgebra", help="file, comma list of indices, or 'last'")
    g.add_argument("--ideal", help="file, comma list of indices, or 'last'")
    s.add_argument("--rep", default="adjoint", help=rep_help)
    s.add_argument("--degree-bound", type=int, default=3)
    s.set_defaults(func=cmd_spectral)

    s = sub.add_parser("compare-complexes", help="standard against alternate differentials")
    s.add_argument("algebra")
    s.add_argument("--rep", default="adjoint", help=rep_help)
    s.add_argument("--max-degree", type=int, default=2)
    s.set_defaults(func=cmd_compare_complexes)

    s = sub.add_parser("compare-extension-cohomology",
                       help="dim H^m of L ⊕_D k against dim H^m of L")
    s.add_argument("algebra")
    s.add_argument("derivation")
    s.add_argument("--rep", default="trivial:1", help=f"{rep_help}, on the extension")
    s.add_argument("--max-degree", type=int, default=2)
    s.add_argument("--complex", default="standard", choices=("standard", "alternate"))
    s.set_defaults(func=cmd_compare_extension_cohomology)

    s = sub.add_parser("sample-extensions",
                       help="FI of random abelian extensions against the cocycle condition")
    s.add_argument("algebra")
    s.add_argument("--rep", default="adjoint", help=rep_help)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_sample_extensions)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else INPUT_ERROR
    try:
        return args.func(args)
    except io.InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INPUT_ERROR
    except ValueError as exc:
        # shape or hypothesis errors raised by the library on bad input
        sys.stderr.write(f"error: {exc}\n")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())

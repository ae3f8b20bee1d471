"""CLI golden cases: (name, argv relative to tests/data, expected exit code)."""

CASES = [
    ("validate_simple3", ["validate", "simple3.json"], 0),
    ("validate_simple3_rep", ["validate", "simple3.json", "--rep", "simple3_adjoint_rep.json"], 0),
    ("validate_broken", ["validate", "broken.json"], 2),
    ("validate_sl2_adjoint", ["validate", "sl2.json", "--rep", "adjoint"], 0),
    ("cohomology_abelian_trivial", ["cohomology", "abelian3_3.json", "--rep", "trivial:1",
                                    "--complex", "standard", "--degree", "1"], 0),
    ("cohomology_simple3_adjoint", ["cohomology", "simple3.json", "--rep", "adjoint",
                                    "--complex", "standard", "--degree", "2"], 0),
    ("cohomology_sl2_lie", ["cohomology", "sl2.json", "--rep", "trivial:1",
                            "--complex", "lie", "--degree", "3"], 0),
    ("cohomology_simple4_alternate", ["cohomology", "simple4.json", "--rep", "adjoint",
                                      "--complex", "alternate", "--degree", "2"], 0),
    ("cohomology_simple3_leibniz", ["cohomology", "simple3.json", "--rep", "trivial:1",
                                    "--complex", "leibniz", "--degree", "1"], 0),
    ("extend_abelian", ["extend", "abelian", "simple3.json", "adjoint", "f_cocycle.json"], 0),
    ("extend_abelian_noncocycle", ["extend", "abelian", "simple3.json", "adjoint",
                                   "f_noncocycle.json"], 2),
    ("extend_gen_der", ["extend", "gen-der", "simple3.json", "inner_ad_e1.json"], 0),
    ("extend_gen_der_bad", ["extend", "gen-der", "simple3.json", "identity_map.json"], 2),
    ("check_gen_derivation_inner", ["check-gen-derivation", "simple3.json", "inner_ad_e1.json"], 0),
    ("check_derivation_identity", ["check-derivation", "simple3.json", "derivation_identity.json"], 2),
    ("equivalent_self", ["equivalent", "simple3.json", "adjoint", "f_cocycle.json",
                         "f_cocycle.json"], 0),
    ("deform_check", ["deform-check", "simple3.json", "f_cocycle.json"], 0),
    ("compare_complexes_simple3", ["compare-complexes", "simple3.json"], 0),
    ("spectral_direct_sum", ["spectral", "sum_simple3_abelian2.json", "--ideal",
                             "ideal_abelian_part.json", "--degree-bound", "2"], 2),
    ("sample_extensions", ["sample-extensions", "simple3.json", "--samples", "6", "--seed", "5"], 0),
]

INPUT_ERRORS = [
    ["validate", "malformed.json"],
    ["validate", "bad_index.json"],
    ["validate", "missing_file.json"],
    ["cohomology", "simple3.json", "--rep", "adjoint", "--complex", "lie", "--degree", "1"],
    ["cohomology", "simple3.json", "--rep", "trivial:x", "--complex", "standard", "--degree", "1"],
    ["cohomology", "simple3.json", "--rep", "adjoint", "--complex", "nope", "--degree", "1"],
    ["extend", "abelian", "simple3.json", "adjoint", "inner_ad_e1.json"],
    ["spectral", "simple3.json", "--subalgebra", "1,2,3"],
    ["frobnicate"],
]

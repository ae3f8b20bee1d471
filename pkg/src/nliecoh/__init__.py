"""Exact-rational cohomology of n-Lie (Filippov) algebras."""

from .algebra import (NLieAlgebra, Representation, Witness, abelian, adjoint_representation,
                      check_rep_identity, direct_sum, hom_representation, semidirect_sum_nlie,
                      simple, sl2, trivial_representation, validate_fundamental_identity,
                      validate_representation)
from .complexes import (CohomologyReport, chain_map_Delta, chain_map_Theta, cochain_space,
                        cohomology, complexes_coincide_check, delta_alternate, delta_leibniz,
                        delta_lie, delta_standard, differential, square_is_zero)
from .extensions import (GeneralizedDerivation, abelian_extension, derivation_space,
                         extensions_equivalent, gen_der_extension, generalized_derivation_solutions,
                         inner_derivations, inner_generalized_derivation, is_derivation,
                         is_generalized_derivation)
from .leibniz import LeibnizAlgebra, LeibnizRep, induced_leibniz, leibniz_differential
from .spectral import (SubalgebraSpec, e1_page, e2_page, filtration_level,
                       gen_der_ext_cohomology_compare, make_subalgebra)

__version__ = "0.1.0"

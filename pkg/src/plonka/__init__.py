"""Finite universal algebra toolkit for Płonka sums and left normal bands."""

from .adjunction import (Decomposition, SumElement, counit, decompose, is_on_morphism,
                         pl_on_morphism, plonka_sum, unit, universal_extension,
                         verify_adjunction)
from .band import (BandMorphism, LeftNormalBand, band_morphism_to_sl_morphism,
                   factor_through_sl, induced_relation, iterate_d, sl_reflect, ssl_to_band,
                   validate_lnb)
from .core import (Congruence, FiniteAlgebra, Homomorphism, Signature, check_homomorphism,
                   factor_map, generated_congruence, generated_subalgebra, power_algebra,
                   quotient_algebra, restrict_nonzero, validate_algebra)
from .errors import Check
from .plonka_algebra import (PlonkaAlgebra, PlonkaMorphism, TensorObject,
                             check_plonka_morphism, enumerate_plonka_operators, tensor_embed,
                             validate_plonka, verify_derived_laws)
from .semilattice import (SslMorphism, SupSemilattice, check_ssl_morphism, factor_through_reflection,
                          free_ssl, join_algebra, residual_left_adjoint,
                          ssl_reflection_of_algebra, validate_ssl)
from .systems import (InductiveSystem, SystemMorphism, canonical_comparison,
                      compose_system_morphisms, constant_final_system, constant_initial_system,
                      inverse_transpose, reindex, residuated_transpose, validate_indsys,
                      validate_system_morphism)
from .terms import Op, Var, enumerate_terms, evaluate_term, parse_term

__version__ = "0.1.0"

__all__ = [
    "BandMorphism",
    "Check",
    "Congruence",
    "Decomposition",
    "FiniteAlgebra",
    "Homomorphism",
    "InductiveSystem",
    "LeftNormalBand",
    "Op",
    "PlonkaAlgebra",
    "PlonkaMorphism",
    "Signature",
    "SslMorphism",
    "SumElement",
    "SupSemilattice",
    "SystemMorphism",
    "TensorObject",
    "Var",
    "band_morphism_to_sl_morphism",
    "canonical_comparison",
    "check_homomorphism",
    "check_plonka_morphism",
    "check_ssl_morphism",
    "compose_system_morphisms",
    "constant_final_system",
    "constant_initial_system",
    "counit",
    "decompose",
    "enumerate_plonka_operators",
    "enumerate_terms",
    "evaluate_term",
    "factor_map",
    "factor_through_reflection",
    "factor_through_sl",
    "free_ssl",
    "generated_congruence",
    "generated_subalgebra",
    "induced_relation",
    "inverse_transpose",
    "is_on_morphism",
    "iterate_d",
    "join_algebra",
    "parse_term",
    "pl_on_morphism",
    "plonka_sum",
    "power_algebra",
    "quotient_algebra",
    "reindex",
    "residual_left_adjoint",
    "residuated_transpose",
    "restrict_nonzero",
    "sl_reflect",
    "ssl_reflection_of_algebra",
    "ssl_to_band",
    "tensor_embed",
    "unit",
    "universal_extension",
    "validate_algebra",
    "validate_indsys",
    "validate_lnb",
    "validate_plonka",
    "validate_ssl",
    "validate_system_morphism",
    "verify_adjunction",
    "verify_derived_laws",
]

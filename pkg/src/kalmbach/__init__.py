"""The Kalmbach monad on bounded posets and its algebras, which are effect algebras."""

from .algebras import (
    MonadAlgebra,
    check_algebra_laws,
    check_auxiliary_claim,
    check_g_morphism_equation,
    ea_from_algebra,
    enumerate_algebras,
    roundtrip_EG,
    roundtrip_GE,
    structure_map_mA,
)
from .effect import (
    UNDEFINED,
    DPoset,
    EAMorphism,
    EffectAlgebra,
    check_dposet_axioms,
    check_ea_axioms,
    check_ea_morphism,
    derived_ominus,
    derived_order,
    dposet_to_ea,
    ea_to_dposet,
    enumerate_effect_algebras,
    lemma1_suite,
)
from .errors import Verdict
from .extension import (
    KalmbachPoset,
    check_lattice_property,
    check_monad_laws,
    check_naturality,
    counit_epsilon,
    kalmbach_extend,
    kalmbach_leq,
    kalmbach_map,
    kalmbach_perp,
    monad_mu,
    unit_eta,
)
from .omp import OMPMorphism, OrthomodularPoset, check_omp_axioms, check_omp_morphism, omp_to_ea
from .poset import (
    BoundedPoset,
    PosetMorphism,
    all_chains,
    enumerate_bounded_posets,
    enumerate_morphisms,
    is_morphism,
    validate_poset,
)

__version__ = "0.1.0"

__all__ = [
    "BoundedPoset",
    "DPoset",
    "EAMorphism",
    "EffectAlgebra",
    "KalmbachPoset",
    "MonadAlgebra",
    "OMPMorphism",
    "OrthomodularPoset",
    "PosetMorphism",
    "UNDEFINED",
    "Verdict",
    "all_chains",
    "check_algebra_laws",
    "check_auxiliary_claim",
    "check_dposet_axioms",
    "check_ea_axioms",
    "check_ea_morphism",
    "check_g_morphism_equation",
    "check_lattice_property",
    "check_monad_laws",
    "check_naturality",
    "check_omp_axioms",
    "check_omp_morphism",
    "counit_epsilon",
    "derived_ominus",
    "derived_order",
    "dposet_to_ea",
    "ea_from_algebra",
    "ea_to_dposet",
    "enumerate_algebras",
    "enumerate_bounded_posets",
    "enumerate_effect_algebras",
    "enumerate_morphisms",
    "is_morphism",
    "kalmbach_extend",
    "kalmbach_leq",
    "kalmbach_map",
    "kalmbach_perp",
    "lemma1_suite",
    "monad_mu",
    "omp_to_ea",
    "roundtrip_EG",
    "roundtrip_GE",
    "structure_map_mA",
    "unit_eta",
    "validate_poset",
]

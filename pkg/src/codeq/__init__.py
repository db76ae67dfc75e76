"""Toolkit for cyclic and constacyclic codes over small finite fields.

Builds codes from defining sets, certifies equivalences between them,
derives quantum codes from Hermitian hulls, and searches defining-set
spaces with certificate-based pruning.
"""

from .fields import (
    GaloisField,
    RootOfUnity,
    anchored_root,
    build_field,
    embed_subfield,
    field_for_order,
    gf4,
    multiplicative_order,
    primitive_nth_root,
    splitting_field,
)
from .cosets import (
    CosetTable,
    DefiningSet,
    IndexMap,
    affine_map,
    all_defining_sets,
    apply_map,
    coset_table,
    enumerate_affine_witnesses,
    generalized_multiplier,
    multiplier,
    progression_set,
    shift_divisibility_constacyclic,
    shift_divisibility_cyclic,
    shift_map,
    units,
)
from .linear import (
    DistanceResult,
    EquivalenceResult,
    LinearCode,
    MonomialTransform,
    WeightDistribution,
    apply_monomial,
    brute_force_equivalence,
    min_distance,
    min_weight_outside,
    rref,
    weight_distribution,
)
from .cyclic import (
    CyclicCertificate,
    CyclicCode,
    build_cyclic,
    certify_equivalence,
    classify_cyclic,
    cyclic_from_generator,
    dual_defining_set,
    half_twist_pair,
    half_twist_transform,
    hermitian_dual_defining_set,
    multiplier_transform,
    odd_step_pair,
    odd_step_transform,
    triple_step_pair,
    triple_step_transform,
)
from .constacyclic import (
    ConstacyclicCode,
    MultiplierOrbit,
    affine_partner_sets,
    build_constacyclic,
    conjugate_code,
    embed_as_cyclic,
    lane_cosets,
    palfy_classify,
    power_substitution,
)
from .quantum import (
    QuantumParameters,
    crss,
    hermitian_hull,
    nearly_self_orthogonal,
)
from .search import (
    EvalGroup,
    Orbit,
    SearchJob,
    SearchRecord,
    enumerate_orbits,
    evaluate,
    group_orbits,
    load_targets,
    report,
    search,
)

__all__ = [
    "GaloisField",
    "RootOfUnity",
    "anchored_root",
    "build_field",
    "embed_subfield",
    "field_for_order",
    "gf4",
    "multiplicative_order",
    "primitive_nth_root",
    "splitting_field",
    "CosetTable",
    "DefiningSet",
    "IndexMap",
    "affine_map",
    "all_defining_sets",
    "apply_map",
    "coset_table",
    "enumerate_affine_witnesses",
    "generalized_multiplier",
    "multiplier",
    "progression_set",
    "shift_divisibility_constacyclic",
    "shift_divisibility_cyclic",
    "shift_map",
    "units",
    "DistanceResult",
    "EquivalenceResult",
    "LinearCode",
    "MonomialTransform",
    "WeightDistribution",
    "apply_monomial",
    "brute_force_equivalence",
    "min_distance",
    "min_weight_outside",
    "rref",
    "weight_distribution",
    "CyclicCertificate",
    "CyclicCode",
    "build_cyclic",
    "certify_equivalence",
    "classify_cyclic",
    "cyclic_from_generator",
    "dual_defining_set",
    "half_twist_pair",
    "half_twist_transform",
    "hermitian_dual_defining_set",
    "multiplier_transform",
    "odd_step_pair",
    "odd_step_transform",
    "triple_step_pair",
    "triple_step_transform",
    "ConstacyclicCode",
    "MultiplierOrbit",
    "affine_partner_sets",
    "build_constacyclic",
    "conjugate_code",
    "embed_as_cyclic",
    "lane_cosets",
    "palfy_classify",
    "power_substitution",
    "QuantumParameters",
    "crss",
    "hermitian_hull",
    "nearly_self_orthogonal",
    "EvalGroup",
    "Orbit",
    "SearchJob",
    "SearchRecord",
    "enumerate_orbits",
    "evaluate",
    "group_orbits",
    "load_targets",
    "report",
    "search",
]

__version__ = "0.1.0"

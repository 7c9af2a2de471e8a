"""Degrees of irrationality for deterministic and stochastic choice behavior.

Deterministic side: quasi-choice correspondences over a finite ground set,
rationalizability by a binary relation (contraction plus expansion
consistency), the symmetric-difference and localization metrics, and
irrationality degrees as minimum distances to rationalizable benchmarks,
optionally weighted by how demanding the nearest benchmark's preference
relation is on the Ferrers grading.

Stochastic side: exact-probability choice functions, the alternating
superset-sum polynomials whose nonnegativity characterizes random utility
(mixtures of linear orders), negativity vectors, and the permutation-
invariant irrationality preorder built on them.
"""

from .core import (
    BinaryRelation,
    ChoiceCorrespondence,
    GroundSet,
    Menu,
    QuasiChoice,
    RationalChoice,
    all_menus,
    enumerate_rational_choices,
    enumerate_rational_quasi_choices,
    enumeration_cap,
    induced_quasi_choice,
    is_rationalizable,
    iter_submasks,
    max_set,
    nonempty_menus,
    revealed_preference,
    satisfies_alpha,
    satisfies_gamma,
)
from .datasets import (
    canonical_dumps,
    dump_quasi_choice,
    dump_stochastic,
    dump_weights,
    format_fraction,
    load_quasi_choice,
    load_relation,
    load_stochastic,
    load_weights,
    parse_fraction,
    read_json,
    relation_payload,
)
from .errors import (
    DatasetError,
    EmptyBaseMenu,
    GroundMismatch,
    GroundSetTooLarge,
    InfeasibleWeightingMap,
    IrrError,
    ItemNotInMenu,
    NotABijection,
    NotADistribution,
    NotASubset,
    NotRationalizable,
    PreconditionViolated,
)
from .irrationality import (
    DegreeReport,
    WeightingMap,
    benchmark_classes,
    irr_degree,
    validate_weighting_map,
    weighted_irr_degree,
)
from .metrics import (
    AXIOM_NAMES,
    DELTA,
    METRICS,
    RAT,
    AxiomResult,
    LocalizedQuasiChoice,
    MetricHandle,
    MetricReport,
    characteristic_metric,
    check_klamler_axioms,
    delta_distance,
    elementary_quasi_choice,
    is_between,
    rat_distance,
    rational_localization,
)
from .relations import (
    TRACKED_FERRERS,
    DesirabilityClass,
    RelationProfile,
    canonical_completion,
    desirability_class,
    is_mn_ferrers,
    relation_profile,
)
from .stochastic import (
    BMTable,
    NegativityVector,
    PreorderVerdict,
    StochasticChoiceFunction,
    Verdict,
    apply_permutation,
    are_isomorphic,
    bm_polynomial,
    bm_table,
    compare_irrationality,
    is_monotonic,
    is_rum,
    kl_divergence,
    negativity_vector,
    sample_rum,
    total_variation,
)

__version__ = "0.1.0"

__all__ = [
    "AXIOM_NAMES",
    "AxiomResult",
    "BMTable",
    "BinaryRelation",
    "ChoiceCorrespondence",
    "DELTA",
    "DatasetError",
    "DegreeReport",
    "DesirabilityClass",
    "EmptyBaseMenu",
    "GroundMismatch",
    "GroundSet",
    "GroundSetTooLarge",
    "InfeasibleWeightingMap",
    "IrrError",
    "ItemNotInMenu",
    "LocalizedQuasiChoice",
    "METRICS",
    "Menu",
    "MetricHandle",
    "MetricReport",
    "NegativityVector",
    "NotABijection",
    "NotADistribution",
    "NotASubset",
    "NotRationalizable",
    "PreconditionViolated",
    "PreorderVerdict",
    "QuasiChoice",
    "RAT",
    "RationalChoice",
    "RelationProfile",
    "StochasticChoiceFunction",
    "TRACKED_FERRERS",
    "Verdict",
    "WeightingMap",
    "all_menus",
    "apply_permutation",
    "are_isomorphic",
    "benchmark_classes",
    "bm_polynomial",
    "bm_table",
    "canonical_completion",
    "canonical_dumps",
    "characteristic_metric",
    "check_klamler_axioms",
    "compare_irrationality",
    "delta_distance",
    "desirability_class",
    "dump_quasi_choice",
    "dump_stochastic",
    "dump_weights",
    "elementary_quasi_choice",
    "enumerate_rational_choices",
    "enumerate_rational_quasi_choices",
    "enumeration_cap",
    "format_fraction",
    "induced_quasi_choice",
    "irr_degree",
    "is_between",
    "is_mn_ferrers",
    "is_monotonic",
    "is_rationalizable",
    "is_rum",
    "iter_submasks",
    "kl_divergence",
    "load_quasi_choice",
    "load_relation",
    "load_stochastic",
    "load_weights",
    "max_set",
    "negativity_vector",
    "nonempty_menus",
    "parse_fraction",
    "rat_distance",
    "rational_localization",
    "read_json",
    "relation_payload",
    "relation_profile",
    "revealed_preference",
    "sample_rum",
    "satisfies_alpha",
    "satisfies_gamma",
    "total_variation",
    "validate_weighting_map",
    "weighted_irr_degree",
]

"""
Services package - contains the counting engine.
"""

from .errors import (
    ConfigurationError,
    DegenerateConfigurationError,
    RetryBudgetExhausted,
    OrientationError,
    NotLaurentError,
    DegenerateBracketError,
    UnsupportedFeatureError,
    NotWelschingerError,
)
from .laurent import (
    QLaurent,
    YLaurent,
    QFraction,
    bracket_minus,
    bracket_plus,
    end_mult,
    end_mult_simple,
    to_y,
    eval_y,
    plus_divisibility_order,
    is_symmetric,
)
from .curve_model import (
    Degree,
    CombType,
    PlacedCurve,
    MarkingKind,
    VertexTag,
    classify_vertex,
    classify_old_vertex,
    natural_orient,
    cell_dimension,
    curve_class_predicates,
    has_broccoli_orientation,
)
from .enumeration import (
    Config,
    LineCondition,
    EnumerationReport,
    Rejection,
    RejectionReason,
    enumerate_types,
    enumerate_through,
    solve_placement,
    random_config,
    generic_configuration,
)
from .invariants import (
    InvariantKind,
    InvariantResult,
    CurveMultiplicities,
    MultiplicityScheme,
    VertexScheme,
    refined_mult,
    refined_severi_mult,
    real_mult,
    broccoli_index,
    descendant_mult,
    curve_multiplicities,
    invariant_rB,
    invariant_desc,
    invariant_desc_star,
    invariant_severi,
    trop_descendant,
    trop_descendant_unordered,
    refined_welschinger_mult,
    welschinger_mult_from_vertices,
)
from .broccolization import BroccolizedCurve, broccolize
from .verification import (
    RelationReport,
    InvarianceReport,
    PropertyReport,
    relation_A,
    relation_B,
    relation_C,
    fuzz_relation,
    kontsevich_N,
    welschinger_total,
    invariance_harness,
    check_curve_properties,
)

__all__ = [
    # Errors
    "ConfigurationError",
    "DegenerateConfigurationError",
    "RetryBudgetExhausted",
    "OrientationError",
    "NotLaurentError",
    "DegenerateBracketError",
    "UnsupportedFeatureError",
    "NotWelschingerError",
    # Laurent algebra
    "QLaurent",
    "YLaurent",
    "QFraction",
    "bracket_minus",
    "bracket_plus",
    "end_mult",
    "end_mult_simple",
    "to_y",
    "eval_y",
    "plus_divisibility_order",
    "is_symmetric",
    # Curve model
    "Degree",
    "CombType",
    "PlacedCurve",
    "MarkingKind",
    "VertexTag",
    "classify_vertex",
    "classify_old_vertex",
    "natural_orient",
    "cell_dimension",
    "curve_class_predicates",
    "has_broccoli_orientation",
    # Enumeration
    "Config",
    "LineCondition",
    "EnumerationReport",
    "Rejection",
    "RejectionReason",
    "enumerate_types",
    "enumerate_through",
    "solve_placement",
    "random_config",
    "generic_configuration",
    # Invariants
    "InvariantKind",
    "InvariantResult",
    "CurveMultiplicities",
    "MultiplicityScheme",
    "VertexScheme",
    "refined_mult",
    "refined_severi_mult",
    "real_mult",
    "broccoli_index",
    "descendant_mult",
    "curve_multiplicities",
    "invariant_rB",
    "invariant_desc",
    "invariant_desc_star",
    "invariant_severi",
    "trop_descendant",
    "trop_descendant_unordered",
    "refined_welschinger_mult",
    "welschinger_mult_from_vertices",
    # Broccolization
    "BroccolizedCurve",
    "broccolize",
    # Verification
    "RelationReport",
    "InvarianceReport",
    "PropertyReport",
    "relation_A",
    "relation_B",
    "relation_C",
    "fuzz_relation",
    "kontsevich_N",
    "welschinger_total",
    "invariance_harness",
    "check_curve_properties",
]

"""Exact toolkit for edge-antipodal and subequilateral polytopes."""
from .antipodality import (
    CheckReport,
    LambdaValue,
    Lemma3Certificate,
    SlabWitness,
    Status,
    antipodal_pair,
    bridge_check,
    diameter,
    is_antipodal,
    is_edge_antipodal,
    is_equidistant,
    is_subequilateral,
    lambda_monotonicity_check,
    lambda_value,
    lemma2_check,
    lemma3_certificate,
    lemma3_check,
    theorem3_check_euclidean,
    theorem_bound_check,
)
from .constructions import FamilySpec, generate
from .exact_core import LinearProgram, LpOutcome, rank, solve_lp
from .norms import L1, L2, LINF, NormValue, RelativeNorm, distance, dual_eval, norm_eval
from .polytope import (
    VertexSet,
    caratheodory,
    difference_generators,
    edges,
    is_edge,
    is_vertex,
    membership,
    segment_entry,
)

__version__ = "0.1.0"

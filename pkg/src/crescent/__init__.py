"""Crescent configurations: enumeration, classification, realizability, rigidity.

n points in general position (no 3 collinear, no 4 concyclic) form a crescent
configuration when they determine n-1 distinct distances with the i-th distance
occurring exactly i times.  This package enumerates all candidate labelings,
groups them into distance-set classes, filters label patterns that force a
general-position violation, searches for planar realizations, and analyzes the
rigidity of every witness.
"""

from .classify import (ClassificationReport, IsoClass, classify_pipeline,
                       distance_coordinate, distance_set, filter_shared_base,
                       filter_star, filter_trapezoid, group_by_distance_set)
from .geometry import (DistanceAssignment, PositionMargins, Verdict, cm_det,
                       edm_det, exact_det, general_position_margins,
                       margins_from_points, squared_distances, verify_realizable)
from .labelcore import (LabelMatrix, count_matrices, edge_multiset,
                        enumerate_matrices, principal_submatrix, unrank_upper)
from .rigidity import (Framework, RigidityReport, census_rigidity, numeric_rank,
                       rigidity_matrix, rigidity_report, s_allowed)
from .solver import (Census, Realization, SolverConfig, embed_from_distances,
                     realizable_census, solve_realization)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Census", "ClassificationReport", "DistanceAssignment", "Framework",
    "IsoClass", "LabelMatrix", "PositionMargins", "Realization",
    "RigidityReport", "SolverConfig", "Verdict",
    "census_rigidity", "classify_pipeline", "cm_det", "count_matrices",
    "distance_coordinate", "distance_set", "edge_multiset", "edm_det",
    "embed_from_distances", "enumerate_matrices", "exact_det",
    "filter_shared_base", "filter_star", "filter_trapezoid",
    "general_position_margins", "group_by_distance_set", "margins_from_points",
    "numeric_rank", "principal_submatrix", "realizable_census",
    "rigidity_matrix", "rigidity_report", "s_allowed", "solve_realization",
    "squared_distances", "unrank_upper", "verify_realizable",
]

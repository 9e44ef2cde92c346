"""Favourite-distance digraphs on point sets in 3-space."""
from .bounds import (BoundReport, decomposition_rhs, f3_bounds, induction_rhs, kst_bipartite,
                     kst_digraph, newman_enumerate)
from .core import (ArcDecomposition, DuplicatePointError, FavDigraph, PointSet3, build_digraph,
                   contains_krs, count_between, optimal_radii)
from .detect import DetectionResult, detect_suspension, stability_experiment
from .line import (DyadicAngle, LineComponentStructure, alpha_of_point, analyze_line_digraph,
                   build_tree_line_set, dy_shift, point_of_alpha, pred, succ)
from .search import SearchConfig, local_search
from .suspension import (CountReport, NotASuspensionError, SuspensionSpec, build_extremal,
                         build_hexagon_variant, embed, verify_suspension_counts)

__all__ = [
    "ArcDecomposition", "BoundReport", "CountReport", "DetectionResult", "DuplicatePointError",
    "DyadicAngle", "FavDigraph", "LineComponentStructure", "NotASuspensionError", "PointSet3",
    "SearchConfig", "SuspensionSpec", "alpha_of_point", "analyze_line_digraph", "build_digraph",
    "build_extremal", "build_hexagon_variant", "build_tree_line_set", "contains_krs",
    "count_between", "decomposition_rhs", "detect_suspension", "dy_shift", "embed", "f3_bounds",
    "induction_rhs", "kst_bipartite", "kst_digraph", "local_search", "newman_enumerate",
    "optimal_radii", "point_of_alpha", "pred", "stability_experiment", "succ",
    "verify_suspension_counts",
]

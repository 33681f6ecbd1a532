"""Simplices with prescribed facet volumes, and the loop-space maps behind them."""
from .errors import (AngleDegenerate, ArityTooSmall, ClosureViolation, ContractViolation,
                     CrossCheckFailure, DimensionMismatch, InfeasibleInput, NonPositiveLength,
                     NotPositive, ParseError, RoundTripFailure, SimplexError,
                     UnsupportedDimension, ValidationError)
from .linalg import cofactor_matrix, determinant, vector_product
from .loops import (Loop, LoopClass, Role, SimilarityReport, classify, complete_from_main,
                    edge_map, edge_map_inverse, facet_map, facet_normals, make_loop,
                    similarity_iterate)
from .minkowski import RealizationResult, invert_facet_map, realize_simplex, verify_realization
from .realization import (FeasibilityReport, PointChain, VolumeSpec, check_inequalities,
                          choose_reduced_length, construct_points, realize_facet_vectors)

__version__ = "0.1.0"

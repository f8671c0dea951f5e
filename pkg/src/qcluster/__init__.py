"""Exact-arithmetic engine for rank-2 symplectic quantum cluster algebras
attached to decorated triangulations of unpunctured marked surfaces."""

from .qlaurent import NotDivisible, QLaurent
from .qtorus import SkewForm, TorusElement, left_divide, monomial, weyl
from .qseed import (CompatibilityFailure, ExchangeRelation, IllegalPermutation,
                    LaurentFailure, QuantumSeed, canonical_form,
                    check_bar_invariance, check_compatibility,
                    check_frame_commutation, check_positivity, explore,
                    initial_frame, mutate, mutate_word, permute,
                    predict_exchange)
from .wquiver import (DoubleIdentification, FrozenMutation, NonIntegral,
                      WeightedQuiver, WeightMismatch, amalgamate,
                      base_triangle_quiver, from_exchange, mutate_quiver)
from .surface import (BoundaryEdge, DecoratedTriangle, DecoratedTriangulation,
                      MissingPi, build_seed, case_dt, dt_transform,
                      flip_sequence, rotation_sequence, square_dt, triangle_dt)
from .grading import (DegreeImbalance, NoConvergence, NotKronecker,
                      asymptotic_degree, dt_on_degrees)
from .webcat import (PolygonMismatch, WebSkeleton, dt_on_skeleton,
                     endpoint_degree, pi_matrix, pi_of, pinwheel,
                     quadrilateral_catalog, triangle_catalog)

__version__ = "0.1.0"

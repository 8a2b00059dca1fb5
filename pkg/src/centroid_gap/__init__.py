"""Convex-polygon centroid-gap verification library.

Computes area and boundary centroids of planar convex polygons and
numerically certifies that the projection of the vector between them onto
any direction never exceeds one sixth of the body width in that
direction, together with every slicing identity, lemma, and algebraic
inequality the proof of that bound rests on.
"""

from .checks import CheckReport
from .errors import (CentroidGapError, DegenerateInput, DomainError,
                     InternalInvariantViolation, OutOfRange,
                     PolygonFileError, SkippedDegenerate)
from .frame import (NormalizedFrame, frame_scalars_valid, normalize,
                    support_parallelogram)
from .geometry import (CentroidPair, ConvexPolygon, area_centroid,
                       boundary_centroid, centroid_pair, chord_length,
                       clip_below, contains_point, diameter,
                       diameter_bruteforce, gap_projection, gap_ratio,
                       make_polygon, measures, oracle_centroid_mc,
                       support_value, unit_from_angle, width)
from .lemmas import (LemmaSuiteReport, RegionSample, lemma1_check,
                     lemma2_check, lemma3_check, lemma4_check, lemma5_check,
                     pointwise_bounds_check, quintic_check,
                     region_inequalities_check, run_lemma_suite,
                     star_star_check, star_star_star_check,
                     tan_inequality_check, tan_inequality_iterated)
from .search import (SearchState, TriangleFamily, closed_form_gap,
                     closed_form_ratio, convergence_table, corpus_polygons,
                     maximize_ratio, random_convex_polygon, triangle)
from .sweep import (Profile, SliceCache, concavity_check,
                    integral_identity_check, profile, verify_cp_identity)

__version__ = "0.1.0"

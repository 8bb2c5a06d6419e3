"""Arc coordinates on bordered hyperbolic surfaces.

Widths of the spine, flips between maximal arc systems, the Weil-Petersson
Poisson bivector in a-lengths, and the flat Jenkins-Strebel tile complex.
"""
from .errors import *  # noqa: F401,F403
from .ribbon import (RibbonStructure, SurfaceSignature, classify_complement,  # noqa: F401
                     find_isomorphism, is_maximal, perm_orbits, validate)
from .hexagon import (hexagon_boundary_segment, oriented_width_direct,  # noqa: F401
                      oriented_width_from_segments, s_length, t_length)
from .surface import (DecoratedStructure, MaximalCoordinates, all_widths,  # noqa: F401
                      boundary_layout, lambda_lengths, normalized_widths,
                      simplicial_coordinates, t_lengths)
from .spine import (WeightedArcSystem, find_spine, flip, realize_hexagon,  # noqa: F401
                    solve_widths, spine_isomorphic)
from .poisson import (casimir_residual, kontsevich_bivector, limit_deviation,  # noqa: F401
                      normalized_bivector, penner_form, poisson_bivector)
from .strebel import (FlatTileComplex, WeightedRibbonGraph,  # noqa: F401
                      build_flat_surface, degree_identity, render_svg)
from .interpolation import family_scan, limit_scan  # noqa: F401

__version__ = "0.1.0"

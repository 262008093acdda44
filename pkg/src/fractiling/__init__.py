"""Self-similar tilings generated by a seed of square symmetries.

A seed is an ``n x n`` grid whose occupied cells each carry one of the
eight symmetries of the square.  Expanding it replaces every occupied
cell by the transformed current pattern, giving a fractal in the limit.
The package renders these patterns and counts the distinct ones.
"""

from .census import (CensusReport, census_2x2, classify_masks, closed_form_3x3,
                     closed_form_symmetric, list_motifs_2x2, parse_report)
from .equivalence import (act, canonical_rep, count_orbits_burnside, count_orbits_direct,
                          fractal_equal, is_redundant_diag, orbit_of, redundancy_partners)
from .group import D4, SquareGroup, Transform, apply_transform, compose, conjugate, inverse
from .tile import (Configuration, ConfigParseError, SizeLimitError, expand, expand_labeled,
                   format_config, from_motif, motif_id, parse_config, transform_config)

__version__ = "0.1.0"

__all__ = [
    "CensusReport", "census_2x2", "classify_masks", "closed_form_3x3", "closed_form_symmetric",
    "list_motifs_2x2", "parse_report",
    "act", "canonical_rep", "count_orbits_burnside", "count_orbits_direct", "fractal_equal",
    "is_redundant_diag", "orbit_of", "redundancy_partners",
    "D4", "SquareGroup", "Transform", "apply_transform", "compose", "conjugate", "inverse",
    "Configuration", "ConfigParseError", "SizeLimitError", "expand", "expand_labeled",
    "format_config", "from_motif", "motif_id", "parse_config", "transform_config",
]

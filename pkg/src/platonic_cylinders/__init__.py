"""Congruent cylinder compounds around the unit sphere from rotated Platonic edges."""

from platonic_cylinders.geom import (
    TangentLine,
    distance_from_radius,
    line_distance,
    radius_from_distance,
    rotate_tangent_line,
    rotation_about_axis,
)
from platonic_cylinders.platonic import (
    PairKind,
    Solid,
    build_solid,
    edge_pair_orbits,
    edge_tangent_lines,
    neighboring_pairs,
    rotation_group,
)
from platonic_cylinders.rotation import (
    branch_distance_sq,
    closed_form_branch,
    configuration_min_distance,
    min_distance_sq,
    neighbor_distance_sq_general,
    rotated_configuration,
)
from platonic_cylinders.criticality import (
    CriticalPoint,
    Polynomial,
    critical_catalog,
    maximize_branch,
    radii_identity_check,
    real_roots,
)
from platonic_cylinders.compounds import (
    extract_compound,
    id_ball_radius,
    intersection_graph,
    linking_number,
    star_inner_pentagons,
    vertex_stats,
)

__version__ = "0.1.0"

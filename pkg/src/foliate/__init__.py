"""Combinatorial checks for directed triangulations of closed 3-manifolds.

Validation of simplicial triangulations, local orientation and recurrence of
edge directions, exact positive solutions of the triangle equations with
Farkas certificates, circle-valued maps and their fibers as normal surfaces,
cyclic covers, and bounded-area path germs.
"""

__version__ = "0.1.0"

from .direction import (
    Direction,
    check_expanding,
    check_local_orientation,
    cyclic_cover,
    isoperimetric_constant,
    parse_direction,
    quasigeodesic_margin,
    render_direction,
)
from .errors import FoliateError
from .fibration import (
    build_fibration_map,
    default_theta,
    extract_fiber,
    solve_triangle_system,
    triangle_system,
    verify_vertex_links,
)
from .generators import generate_pentachoron, generate_product, seven_vertex_torus, tetrahedron_boundary
from .germ import build_germ, fill_area_at_most, germ_acyclic
from .lp import solve_positive_kernel
from .normal import NormalVector, surface_stats, validate_normal_vector
from .triangulation import Triangulation, parse_triangulation, render_triangulation

__all__ = [
    "Direction",
    "FoliateError",
    "NormalVector",
    "Triangulation",
    "build_fibration_map",
    "build_germ",
    "check_expanding",
    "check_local_orientation",
    "cyclic_cover",
    "default_theta",
    "extract_fiber",
    "fill_area_at_most",
    "generate_pentachoron",
    "generate_product",
    "germ_acyclic",
    "isoperimetric_constant",
    "parse_direction",
    "parse_triangulation",
    "quasigeodesic_margin",
    "render_direction",
    "render_triangulation",
    "seven_vertex_torus",
    "solve_positive_kernel",
    "solve_triangle_system",
    "surface_stats",
    "tetrahedron_boundary",
    "triangle_system",
    "validate_normal_vector",
    "verify_vertex_links",
]

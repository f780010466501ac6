"""Exact tilt-stability walls and kernel-sheaf stability checks on polarized surfaces."""

from .chern import (
    STRUCTURE_SHEAF,
    ChernClass,
    Order,
    ReducedHilbertPolynomial,
    bogomolov_check,
    discriminant,
    euler_characteristic,
    gieseker_compare,
    is_lattice_class,
    linear_combine,
    parse_class,
    reduced_hilbert_polynomial,
    slope,
    twist,
)
from .core import INF, SlicePoint, Surface, format_rational, in_slice, make_surface, parse_rational
from .kernel import (
    KernelReport,
    check_theorem_hypotheses,
    destabilizer_filter,
    destabilizing_wall,
    kernel_class,
    slope_gap,
    twist_bound,
)
from .tilt import ProjectiveSlope, compare_tilt, heart_contains, tilt_slope
from .walls import (
    CandidateWall,
    EnumerationConfig,
    Semicircle,
    VerticalLine,
    classify_wall,
    enumerate_candidate_walls,
    largest_wall_bound,
    radius_sq_via_discriminant,
    vertical_wall,
    wall_coefficients,
    walls_disjoint,
)

__version__ = "0.1.0"

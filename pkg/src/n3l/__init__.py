"""Exact tools for the no-three-in-line problem and the compression calculus."""

from .bounds import BoundsRow, paper_bound
from .claims import (
    ClaimDomain,
    ClaimReport,
    Counterexample,
    check_admissible_equiv,
    check_ballnest,
    check_cornerstone,
    check_decider,
    check_gap_shell,
    check_involution,
    recheck,
)
from .compression import (
    Ball,
    CompressionLine,
    CompressionScale,
    CompressionVector,
    ball_contains,
    ball_of,
    compress,
    gap_sq_bounds,
    gap_squared,
    harmonic_sum,
    line_contains,
    line_of,
    line_point,
    mass,
    mass_bounds,
    on_boundary,
)
from .constructions import (
    ConstructionReport,
    SphereSpec,
    best_sphere,
    erdos_parabola,
    greedy,
    sphere_section,
)
from .errors import ConsistencyError, ContractError, DegenerateError, DomainError, N3LError
from .geometry import PointSet, Verdict, collinear3, grid_points, primitive_direction, verify_no_three
from .solver import SolveResult, exact_max, is_maximal
from .table import compare_table

__version__ = "0.1.0"

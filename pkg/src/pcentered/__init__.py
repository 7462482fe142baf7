"""p-centered and p-linear colourings: constructions, verification, exact search."""

from .compose import compose_genus, compose_planar
from .degree import DegreeColorConfig, color_bounded_degree, color_with_retries, palette_size
from .errors import InputError, InvariantError, PCenteredError, ResourceError
from .graph import (
    ColorAssignment,
    Graph,
    Layering,
    TreeDecomposition,
    VertexPartition,
    bfs_layering,
    quotient,
    validate_decomposition,
)
from .oracle import chi_p_exact, lin_p_exact
from .outerplanar import color_outerplanar, outerplanar_palette_bound
from .stw import chordal_completion, color_simple_treewidth, stw_palette_bound
from .verify import (
    Violation,
    check_violation,
    find_centered_violation,
    find_linear_violation,
    is_p_centered,
    is_p_linear,
)

__all__ = [
    "ColorAssignment",
    "DegreeColorConfig",
    "Graph",
    "InputError",
    "InvariantError",
    "Layering",
    "PCenteredError",
    "ResourceError",
    "TreeDecomposition",
    "VertexPartition",
    "Violation",
    "bfs_layering",
    "check_violation",
    "chi_p_exact",
    "chordal_completion",
    "color_bounded_degree",
    "color_outerplanar",
    "color_simple_treewidth",
    "color_with_retries",
    "compose_genus",
    "compose_planar",
    "find_centered_violation",
    "find_linear_violation",
    "is_p_centered",
    "is_p_linear",
    "lin_p_exact",
    "outerplanar_palette_bound",
    "palette_size",
    "quotient",
    "stw_palette_bound",
    "validate_decomposition",
]

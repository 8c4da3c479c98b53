"""Fox and Dehn coloring groups of link diagrams via the unreduced Goeritz matrix."""

from .colorings import (
    DehnColoring,
    FoxColoring,
    dehn_group,
    enumerate_dehn_mod_m,
    enumerate_fox_mod_m,
    extend_kernel_to_dehn,
    fox_group,
    lift_fox_to_dehn,
    phi_map,
    v_map,
    verify_theorems,
)
from .diagram import Diagram, DiagramError, parse_diagram, validate_diagram
from .linalg import (
    FgAbelianGroup,
    IntMatrix,
    groups_isomorphic,
    kernel_structure,
    smith_normal_form,
    solution_count_mod_m,
)
from .shading import beta_count, checkerboard_shade, goeritz_matrix

__version__ = "0.1.0"

__all__ = [
    "DehnColoring",
    "Diagram",
    "DiagramError",
    "FgAbelianGroup",
    "FoxColoring",
    "IntMatrix",
    "beta_count",
    "checkerboard_shade",
    "dehn_group",
    "enumerate_dehn_mod_m",
    "enumerate_fox_mod_m",
    "extend_kernel_to_dehn",
    "fox_group",
    "goeritz_matrix",
    "groups_isomorphic",
    "kernel_structure",
    "lift_fox_to_dehn",
    "parse_diagram",
    "phi_map",
    "smith_normal_form",
    "solution_count_mod_m",
    "v_map",
    "validate_diagram",
    "verify_theorems",
]

"""Exact cop numbers of small graphs and census tooling."""

GENERATOR_VERSION = "augment-mindeg-1"
SOLVER_VERSION = "retrograde-tensor-1"

from .graph import Graph, emit_graph6, parse_graph6  # noqa: E402
from .canon import canonical_form, is_isomorphic  # noqa: E402
from .solver import cop_number, cops_win  # noqa: E402

__all__ = [
    "Graph",
    "canonical_form",
    "cop_number",
    "cops_win",
    "emit_graph6",
    "is_isomorphic",
    "parse_graph6",
]

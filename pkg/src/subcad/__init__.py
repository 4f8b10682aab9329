"""Exact cylindrical algebraic decomposition with sub-CADs.

Complete CADs, variety, layered and layered-variety sub-CADs and their
truth-table invariant counterparts, for quantifier-free Tarski formulae
with rational coefficients.
"""

from .complexity import ComplexityParams, bound_value, figure7_table
from .formula import Formula, Problem, evaluate_on_cell, load_problem, parse, parse_problem
from .lifting import Cell, NotWellOriented
from .polynomial import Polynomial, VarOrder
from .projection import ProjectionRun, projection_phase
from .subcad import (
    LayeredState,
    SubCAD,
    complete_cad,
    layered_recursive,
    layered_subcad,
    layered_variety_subcad,
    sub_tticad,
    variety_subcad,
    variety_subcad_lower,
)

__version__ = "0.1.0"

__all__ = [
    "Cell",
    "ComplexityParams",
    "Formula",
    "LayeredState",
    "NotWellOriented",
    "Polynomial",
    "Problem",
    "ProjectionRun",
    "SubCAD",
    "VarOrder",
    "bound_value",
    "complete_cad",
    "evaluate_on_cell",
    "figure7_table",
    "layered_recursive",
    "layered_subcad",
    "layered_variety_subcad",
    "load_problem",
    "parse",
    "parse_problem",
    "projection_phase",
    "sub_tticad",
    "variety_subcad",
    "variety_subcad_lower",
]

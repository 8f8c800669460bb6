"""Exact Segre classes of monomial schemes as integrals over the Newton region."""

from .classes import (
    ClassExpr,
    ClassTerm,
    ClosedForm,
    Excess,
    TruncatedSeries,
    cell_integral,
    classes_equal,
    closed_form,
    evaluate_exact,
    excess,
    specialize,
    sum_cells,
    to_series,
)
from .decompose import Cell, CellSet, decompose_fan, decompose_staircase, validate_tiling
from .ideal import IdealParseError, MonomialIdealSpec, make_spec, minimalize, parse_ideal
from .oracles import OracleReport, cross_check, quadrature_cell
from .pipeline import EngineMismatch, SegreOutput, compute_segre, decompose
from .polyhedron import Membership, NewtonPolyhedron, build_polyhedron, compact_faces, contains

__version__ = "0.1.0"

__all__ = [
    "Cell",
    "CellSet",
    "ClassExpr",
    "ClassTerm",
    "ClosedForm",
    "EngineMismatch",
    "Excess",
    "IdealParseError",
    "Membership",
    "MonomialIdealSpec",
    "NewtonPolyhedron",
    "OracleReport",
    "SegreOutput",
    "TruncatedSeries",
    "build_polyhedron",
    "cell_integral",
    "classes_equal",
    "closed_form",
    "compact_faces",
    "compute_segre",
    "contains",
    "cross_check",
    "decompose",
    "decompose_fan",
    "decompose_staircase",
    "evaluate_exact",
    "excess",
    "make_spec",
    "minimalize",
    "parse_ideal",
    "quadrature_cell",
    "sum_cells",
    "specialize",
    "to_series",
    "validate_tiling",
]

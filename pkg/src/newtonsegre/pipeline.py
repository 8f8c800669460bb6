"""End-to-end computation: ideal -> Newton region -> cells -> class."""

from dataclasses import dataclass
from fractions import Fraction

from .classes import (
    ClassExpr,
    cell_integral,
    classes_equal,
    closed_form,
    excess,
    specialize,
    sum_cells,
    to_series,
)
from .decompose import CellSet, decompose_fan, decompose_staircase
from .ideal import minimalize
from .poly import format_coeff
from .polyhedron import build_polyhedron

__all__ = ["SegreOutput", "EngineMismatch", "compute_segre", "decompose", "bracket_form"]

ENGINES = ("fan", "staircase", "both")


class EngineMismatch(RuntimeError):
    """Fan and staircase decompositions gave different classes."""


def _num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def bracket_form(h_coeffs, ambient_dim):
    """``[0, 2, 18]`` in P^5 -> ``'2[P^4] + 18[P^3]'``."""
    pieces = []
    for j, c in enumerate(h_coeffs):
        if c:
            pieces.append((c, f"{format_coeff(abs(c))}[P^{ambient_dim - j}]"))
    if not pieces:
        return "0"
    out = ("- " if pieces[0][0] < 0 else "") + pieces[0][1]
    for c, body in pieces[1:]:
        out += f" {'-' if c < 0 else '+'} {body}"
    return out


@dataclass
class SegreOutput:
    spec: object
    minimal: object
    engine: str
    polyhedron: object
    cells: CellSet
    breakdown: list
    class_expr: ClassExpr
    series: object
    degrees: tuple
    ambient_dim: int
    specialized: object
    closed_form: object
    symbolic_closed_form: object
    excess: object = None

    @property
    def conjectural(self):
        return self.spec.n > 2

    def to_json(self):
        out = {
            "ideal": self.spec.to_text(),
            "n": self.spec.n,
            "generators": [list(g) for g in self.spec.generators],
            "minimal_generators": [list(g) for g in self.minimal.generators],
            "engine": self.engine,
            "conjectural": self.conjectural,
            "class": self.class_expr.format(),
            "series": {
                "max_degree": self.series.max_degree,
                "terms": [
                    {"exponent": list(e), "coeff": _num(c)}
                    for e, c in sorted(self.series.coefficients.items(), key=lambda kv: (sum(kv[0]), kv[0]))
                ],
                "degrees": list(self.degrees),
                "ambient_dim": self.ambient_dim,
                "H_coeffs": [_num(c) for c in self.specialized.h_coeffs()],
            },
            "closed_form": {
                "num": self.closed_form.format_numerator(),
                "den_factors": [
                    f"(1 + {format_coeff(v[0])}H)" + (f"^{k}" if k > 1 else "")
                    for v, k in self.closed_form.denominator
                ],
                "text": self.closed_form.format(),
            },
            "symbolic_closed_form": self.symbolic_closed_form.format(),
            "cells": [dict(cell.to_json(), term=term.format()) for cell, term in self.breakdown],
        }
        if self.excess is not None:
            out["excess"] = self.excess.to_json()
        return out

    def format_text(self):
        coeffs = self.specialized.h_coeffs()
        lines = [
            f"ideal: {self.spec.to_text()}",
            f"minimal generators: {self.minimal.to_text()}",
            f"engine: {self.engine}",
            f"class: {self.class_expr.format()}",
            f"        = {self.symbolic_closed_form.format()}",
            f"specialized at X = ({', '.join(f'{d}H' for d in self.degrees)}) in P^{self.ambient_dim}:",
            f"Segre class : {self.specialized.format(descending=True)}",
            f"series: {self.specialized.format()}",
            f"        = {bracket_form(coeffs, self.ambient_dim)}",
            f"closed form: {self.closed_form.format()}",
        ]
        if self.excess is not None:
            e = self.excess
            lines.append(
                f"equivalence: {format_coeff(e.equivalence)}  bezout: {e.bezout}  "
                f"excess: {format_coeff(e.excess)}"
            )
        if self.conjectural:
            lines.append("conjectural (n > 2): the integral formula is only proven for n <= 2")
        return "\n".join(lines)


def decompose(spec, engine="fan"):
    """Minimalize, build P and decompose N with the chosen engine."""
    minimal = minimalize(spec)
    if spec.is_unit:
        return minimal, None, CellSet(spec.n, (), spec)
    poly = build_polyhedron(minimal)
    if engine == "fan":
        cells = decompose_fan(poly, minimal)
    elif engine == "staircase":
        cells = decompose_staircase(minimal)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return minimal, poly, cells


def compute_segre(
    spec,
    engine="fan",
    max_degree=None,
    degrees=None,
    ambient_dim=None,
    excess_degrees=None,
    jobs=None,
):
    """Run the whole pipeline and collect every derived form of the class.

    ``degrees`` are the weights in ``X_i = d_i H`` (default all 1),
    ``ambient_dim`` the dimension N of the ambient projective space (default
    n), and ``excess_degrees`` the degrees of N hypersurfaces containing S.
    With ``engine="both"`` the staircase engine is run as a cross-check and a
    mismatch raises :class:`EngineMismatch`.
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if engine in ("staircase", "both") and spec.n != 2:
        raise ValueError("the staircase engine only handles n = 2")
    n = spec.n
    degrees = tuple(degrees) if degrees is not None else (1,) * n
    if len(degrees) != n:
        raise ValueError(f"need {n} degrees, got {len(degrees)}")
    if excess_degrees is not None:
        if ambient_dim is None:
            ambient_dim = len(excess_degrees)
        elif len(excess_degrees) != ambient_dim:
            raise ValueError("number of hypersurface degrees must equal the ambient dimension")
    ambient_dim = ambient_dim if ambient_dim is not None else n
    max_degree = max_degree if max_degree is not None else n

    minimal, poly, cells = decompose(spec, "fan" if engine == "both" else engine)
    breakdown = [(c, cell_integral(c)) for c in cells]
    expr = sum_cells(cells.cells, n, jobs) if cells.cells else ClassExpr.zero(n)
    if engine == "both" and not spec.is_unit:
        _, _, other = decompose(spec, "staircase")
        other_expr = sum_cells(other.cells, n)
        if not classes_equal(expr, other_expr):
            raise EngineMismatch(f"fan and staircase disagree for {spec.to_text()}")

    specialized = specialize(expr, degrees, ambient_dim)
    return SegreOutput(
        spec=spec,
        minimal=minimal,
        engine=engine,
        polyhedron=poly,
        cells=cells,
        breakdown=breakdown,
        class_expr=expr,
        series=to_series(expr, max_degree),
        degrees=degrees,
        ambient_dim=ambient_dim,
        specialized=specialized,
        closed_form=closed_form(expr, degrees),
        symbolic_closed_form=closed_form(expr),
        excess=excess(specialized, excess_degrees) if excess_degrees is not None else None,
    )


"""Decompositions of the Newton region N into extended simplices.

A cell is ``conv(v_0..v_k) + cone(e_w : w in W)`` with ``|W| + k = n``; the
integral over such a cell has a closed form (see :mod:`newtonsegre.classes`).

Two independent engines are provided:

* :func:`decompose_fan` cones the lower boundary of P to the origin. Each
  facet G of P is pushed down along its recession directions (smallest index
  first) onto the faces of G that are not parallel to that direction; this
  recursion ends at compact faces, which get a pulling triangulation.
* :func:`decompose_staircase` (n = 2) follows the blow-up recursion: a
  triangle of side ``m = min(i_k1 + i_k2)`` plus the two residual regions,
  which are themselves Newton regions in sheared coordinates.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, sqrt

import numpy as np

from ._linalg import det, solve
from .ideal import make_spec, minimalize

__all__ = [
    "Cell",
    "CellSet",
    "StaircaseDepthError",
    "decompose_fan",
    "decompose_staircase",
    "validate_tiling",
    "TilingReport",
]


def _vec(p):
    return tuple(Fraction(x) for x in p)


@dataclass(frozen=True)
class Cell:
    """A k-simplex extended along the coordinate directions in ``extensions``.

    ``extensions`` holds 0-based coordinate indices.
    """

    simplex: tuple
    extensions: frozenset
    engine: str = "fan"
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "simplex", tuple(_vec(p) for p in self.simplex))
        object.__setattr__(self, "extensions", frozenset(self.extensions))

    @property
    def n(self):
        return len(self.simplex[0])

    @property
    def k(self):
        return len(self.simplex) - 1

    @property
    def J(self):
        return tuple(i for i in range(self.n) if i not in self.extensions)

    def projected_det(self):
        """Determinant of the edge vectors projected onto the J coordinates."""
        J = self.J
        if len(J) != self.k:
            raise ValueError(
                f"cell has a {self.k}-simplex but {len(J)} non-extended coordinates"
            )
        v0 = self.simplex[0]
        return det([[v[j] - v0[j] for j in J] for v in self.simplex[1:]])

    @property
    def degenerate(self):
        return self.projected_det() == 0

    def to_json(self):
        def num(x):
            return x.numerator if x.denominator == 1 else str(x)

        return {
            "simplex": [[num(x) for x in p] for p in self.simplex],
            "extensions": sorted(i + 1 for i in self.extensions),
            "engine": self.engine,
            "degenerate": self.degenerate,
        }


@dataclass(frozen=True)
class CellSet:
    n: int
    cells: tuple
    spec: object = None
    dropped: int = field(default=0, compare=False)

    def effective(self):
        return [c for c in self.cells if not c.degenerate]

    def __iter__(self):
        return iter(self.cells)

    def __len__(self):
        return len(self.cells)

    def to_json(self):
        return {"cells": [c.to_json() for c in self.cells]}


# -- fan engine ---------------------------------------------------------------


def _pulling_triangulation(poly, face, memo):
    key = face.verts
    if key in memo:
        return memo[key]
    pts = poly.points(face)
    if face.dim == 0:
        out = [(pts[0],)]
    else:
        apex = min(pts)
        out = []
        for sub in poly.subfacets(face):
            if apex in poly.points(sub):
                continue
            for simplex in _pulling_triangulation(poly, sub, memo):
                out.append((apex,) + simplex)
    memo[key] = out
    return out


def _pushdown_pieces(poly, face, memo, tri_memo):
    """Split ``face`` into pieces ``conv(simplex) + cone(e_W)``."""
    key = (face.verts, face.rec)
    if key in memo:
        return memo[key]
    if face.is_compact:
        out = [(s, frozenset()) for s in _pulling_triangulation(poly, face, tri_memo)]
    else:
        r = min(face.rec)
        out = []
        for sub in poly.subfacets(face):
            # sub is a lower facet of face in direction e_r iff e_r is not tangent to it
            if r in sub.rec:
                continue
            for simplex, W in _pushdown_pieces(poly, sub, memo, tri_memo):
                out.append((simplex, W | {r}))
    memo[key] = out
    return out


def decompose_fan(poly, spec=None):
    """Cone every facet of P (pushed down to compact faces) to the origin.

    Facets through the origin's coordinate hyperplanes produce degenerate
    cells; they are kept and flagged.
    """
    n = poly.n
    origin = (0,) * n
    memo, tri_memo = {}, {}
    cells = []
    for j, face in enumerate(poly.facet_faces):
        for simplex, W in _pushdown_pieces(poly, face, memo, tri_memo):
            cells.append(
                Cell((origin,) + tuple(sorted(simplex)), W, "fan", f"facet {j}: {poly.facets[j]}")
            )
    return CellSet(n, tuple(cells), spec)


# -- staircase engine (n = 2) -------------------------------------------------


class StaircaseDepthError(RuntimeError):
    """The blow-up recursion did not terminate within the depth limit."""


def _staircase(gens, depth, max_depth):
    if depth > max_depth:
        raise StaircaseDepthError(
            f"staircase recursion exceeded depth {max_depth} at generators {gens}"
        )
    spec = make_spec(gens, 2)
    if spec.is_unit:
        return []
    gens = minimalize(spec).generators
    if len(gens) == 1:
        (i, j) = gens[0]
        seg = ((0, 0), (i, j))
        return [(seg, ((1, 0),), depth), (seg, ((0, 1),), depth)]
    m = min(a + b for a, b in gens)
    out = [(((0, 0), (m, 0), (0, m)), (), depth)]

    # S1 lives in coordinates (a~, e) with a = (a~, e - a~ + m)
    for simplex, dirs, d in _staircase([(a, a + b - m) for a, b in gens], depth + 1, max_depth):
        out.append(
            (
                tuple((p[0], p[1] - p[0] + m) for p in simplex),
                tuple((v[0], v[1] - v[0]) for v in dirs),
                d,
            )
        )
    # S2 lives in coordinates (e, a~) with a = (e - a~ + m, a~)
    for simplex, dirs, d in _staircase([(a + b - m, b) for a, b in gens], depth + 1, max_depth):
        out.append(
            (
                tuple((p[0] - p[1] + m, p[1]) for p in simplex),
                tuple((v[0] - v[1], v[1]) for v in dirs),
                d,
            )
        )
    return out


def decompose_staircase(spec, max_depth=64):
    """Blow-up recursion for two-variable ideals, mapped back to the original plane.

    Pieces whose mapped extension is not a coordinate direction must have zero
    area (they come from the degenerate strip of a principal base case); they
    are dropped and counted in ``CellSet.dropped``.
    """
    if spec.n != 2:
        raise ValueError("the staircase engine only handles n = 2")
    if spec.is_unit:
        return CellSet(2, (), spec)
    cells = []
    dropped = 0
    for simplex, dirs, depth in _staircase(list(spec.generators), 0, max_depth):
        W = set()
        ok = True
        for v in dirs:
            if v == (1, 0):
                W.add(0)
            elif v == (0, 1):
                W.add(1)
            else:
                ok = False
        if not ok:
            (p, q), (v,) = simplex, dirs
            area = (q[0] - p[0]) * v[1] - (q[1] - p[1]) * v[0]
            if area != 0:
                raise StaircaseDepthError(
                    f"non-degenerate staircase piece along non-coordinate direction {v}"
                )
            dropped += 1
            continue
        cells.append(Cell(simplex, W, "staircase", f"depth {depth}"))
    return CellSet(2, tuple(cells), spec, dropped)


# -- tiling validation --------------------------------------------------------


def _cell_inequalities(cell):
    """Affine functions ``h . a + h0 >= 0`` cutting out a non-degenerate cell."""
    n, J, v0 = cell.n, cell.J, cell.simplex[0]
    k = len(J)
    edges = [[v[j] - v0[j] for v in cell.simplex[1:]] for j in J]  # k x k, columns = edges
    inv_cols = []
    for c in range(k):
        unit = [1 if r == c else 0 for r in range(k)]
        inv_cols.append(solve(edges, unit))
    # t_i = sum_c inv[i][c] * (a_{J_c} - v0_{J_c})
    t_rows = []
    for i in range(k):
        h = [Fraction(0)] * n
        h0 = Fraction(0)
        for c in range(k):
            coef = inv_cols[c][i]
            h[J[c]] += coef
            h0 -= coef * v0[J[c]]
        t_rows.append((h, h0))
    ineqs = list(t_rows)
    if k:
        h = [-sum(r[0][j] for r in t_rows) for j in range(n)]
        h0 = 1 - sum(r[1] for r in t_rows)
        ineqs.append((h, h0))
    for w in sorted(cell.extensions):
        # lambda_w = a_w - v0_w - sum_i (v_i - v0)_w t_i
        h = [Fraction(0)] * n
        h[w] += 1
        h0 = -v0[w]
        for i in range(k):
            d = cell.simplex[i + 1][w] - v0[w]
            if d:
                h = [x - d * y for x, y in zip(h, t_rows[i][0])]
                h0 -= d * t_rows[i][1]
        ineqs.append((h, h0))
    return ineqs


def _to_int_rows(ineqs):
    H, H0, norms = [], [], []
    for h, h0 in ineqs:
        den = 1
        for x in list(h) + [h0]:
            den = lcm(den, Fraction(x).denominator)
        hi = [int(Fraction(x) * den) for x in h]
        H.append(hi)
        H0.append(int(Fraction(h0) * den))
        norms.append(sqrt(sum(x * x for x in hi)))
    return np.array(H, dtype=np.int64), np.array(H0, dtype=np.int64), np.array(norms)


@dataclass
class TilingReport:
    grid_points: int
    checked: int
    skipped: int
    violations: list
    n_violations: int
    sampled: bool

    @property
    def ok(self):
        return self.n_violations == 0


def validate_tiling(cells, poly, grid_step=Fraction(1, 4), box_margin=13, max_points=200_000, seed=0):
    """Check on an exact grid that the cells tile N.

    Every grid point farther than ``grid_step`` from all cell and region
    boundaries must lie in exactly one cell if it is in N, and in none if it
    is in P. When the grid has more than ``max_points`` points, a seeded
    uniform sample of grid points is checked instead.
    """
    n = poly.n
    step = Fraction(grid_step)
    p, q = step.numerator, step.denominator
    M = max(sum(v) for v in poly.vertices) + Fraction(box_margin)
    K = int(M / step)
    total = (K + 1) ** n
    sampled = total > max_points

    region = _to_int_rows(
        [(list(f.normal), -f.offset) for f in poly.facets]
    )
    cell_rows = [_to_int_rows(_cell_inequalities(c)) for c in cells if not c.degenerate]

    def chunks():
        if sampled:
            rng = np.random.default_rng(seed)
            yield rng.integers(0, K + 1, size=(max_points, n), dtype=np.int64)
            return
        flat = np.arange(total, dtype=np.int64)
        for start in range(0, total, 50_000):
            idx = flat[start:start + 50_000]
            pts = np.empty((idx.size, n), dtype=np.int64)
            rest = idx.copy()
            for d in range(n - 1, -1, -1):
                pts[:, d] = rest % (K + 1)
                rest //= K + 1
            yield pts

    def scaled(rows, pts):
        H, H0, norms = rows
        vals = (pts @ H.T) * p + H0 * q  # q * (h . a + h0)
        thr = p * norms
        return vals > thr, vals < -thr

    checked = skipped = nviol = 0
    violations = []
    for pts in chunks():
        in_p_clear, out_p = scaled(region, pts)
        clear_p = in_p_clear.all(axis=1)
        off_axes = (pts > 1).all(axis=1)  # distance to coordinate hyperplanes > step
        clear_n = out_p.any(axis=1) & off_axes
        ambiguous = ~(clear_p | clear_n)
        count = np.zeros(len(pts), dtype=np.int64)
        for rows in cell_rows:
            inside, outside = scaled(rows, pts)
            c_in = inside.all(axis=1)
            c_out = outside.any(axis=1)
            ambiguous |= ~(c_in | c_out)
            count += c_in
        good = ~ambiguous
        bad = good & ((clear_n & (count != 1)) | (clear_p & (count != 0)))
        checked += int(good.sum())
        skipped += int(ambiguous.sum())
        nviol += int(bad.sum())
        for i in np.flatnonzero(bad)[: max(0, 20 - len(violations))]:
            point = tuple(Fraction(int(g)) * step for g in pts[i])
            violations.append(
                {"point": point, "in_N": bool(clear_n[i]), "covered": int(count[i])}
            )
    return TilingReport(total, checked, skipped, violations, nviol, sampled)

"""Independent ground truths for the cell-sum engine.

* closed forms for families whose Segre class is known by other means
  (principal ideals, complete intersections, singularity subschemes of
  normal crossing divisors);
* numerical cubature of the integrand over a single cell;
* :func:`cross_check`, which runs every applicable comparison for one ideal.
"""

import heapq
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .classes import (
    ClassExpr,
    ClassTerm,
    cell_integral,
    classes_equal,
    closed_form,
    specialize,
    sum_cells,
)
from .decompose import validate_tiling
from .ideal import make_spec
from .pipeline import _num, decompose
from .poly import Poly

__all__ = [
    "principal_class",
    "complete_intersection_class",
    "singularity_family_class",
    "singularity_exponents",
    "times_term",
    "QuadratureError",
    "quadrature_cell",
    "Check",
    "OracleReport",
    "cross_check",
    "REFERENCE_FIXTURES",
]


def _unit(n, i, m=1):
    return tuple(m if j == i else 0 for j in range(n))


def principal_class(exps):
    """Class of the divisor ``X^I``: ``(I . X) / (1 + I . X)``."""
    exps = tuple(exps)
    n = len(exps)
    return ClassExpr(n, [ClassTerm(e, _unit(n, i), [exps]) for i, e in enumerate(exps) if e])


def complete_intersection_class(mults):
    """``prod_i m_i X_i / (1 + m_i X_i)`` for the ideal ``(x_1^m_1, ..., x_n^m_n)``."""
    n = len(mults)
    if any(m < 1 for m in mults):
        raise ValueError("multiplicities must be positive")
    coeff = math.prod(mults)
    return ClassExpr(n, [ClassTerm(coeff, (1,) * n, [_unit(n, i, m) for i, m in enumerate(mults)])])


def singularity_exponents(n):
    """The exponents ``f_j = (1, .., 1) - e_j``."""
    return [tuple(0 if i == j else 1 for i in range(n)) for j in range(n)]


def singularity_family_class(n):
    """``1 - (1 + X_1 + .. + X_n)^(n-1) / prod_j (1 + f_j . X)``."""
    if n < 2:
        raise ValueError("the singularity family needs n >= 2")
    denom = singularity_exponents(n)
    power = Poly.linear((1,) * n) ** (n - 1)
    terms = [ClassTerm(1, (0,) * n, ())]
    terms += [ClassTerm(-c, e, denom) for e, c in power.terms.items()]
    return ClassExpr(n, terms)


def times_term(expr, term):
    """Product of a class with a single term (exact)."""
    return ClassExpr(
        expr.n,
        [
            ClassTerm(
                t.coeff * term.coeff,
                tuple(a + b for a, b in zip(t.numer, term.numer)),
                t.denom + term.denom,
            )
            for t in expr.terms
        ],
    )


# -- cubature -----------------------------------------------------------------


class QuadratureError(RuntimeError):
    """Adaptive cubature did not reach the requested tolerance."""


_RULES = {}


def _rule(order, dim):
    key = (order, dim)
    if key not in _RULES:
        x, w = np.polynomial.legendre.leggauss(order)
        x = (x + 1) / 2
        w = w / 2
        if dim == 0:
            _RULES[key] = (np.zeros((1, 0)), np.ones(1))
        else:
            grids = np.meshgrid(*([x] * dim), indexing="ij")
            wgrids = np.meshgrid(*([w] * dim), indexing="ij")
            nodes = np.stack([g.ravel() for g in grids], axis=1)
            weights = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
            _RULES[key] = (nodes, weights)
    return _RULES[key]


def _cell_integrand(cell, X):
    n, k = cell.n, cell.k
    W = sorted(cell.extensions)
    v0 = np.array([float(x) for x in cell.simplex[0]])
    E = np.array([[float(a - b) for a, b in zip(v, cell.simplex[0])] for v in cell.simplex[1:]]).reshape(k, n)
    const = math.factorial(n) * float(np.prod(X)) * abs(float(cell.projected_det()))
    scales = 1.0 / X[W]

    def f(Y):
        m = Y.shape[0]
        jac = np.full(m, const)
        rem = np.ones(m)
        t = np.empty((m, k))
        for i in range(k):
            jac *= rem
            t[:, i] = Y[:, i] * rem
            rem = rem * (1 - Y[:, i])
        a = v0 + t @ E
        for j, w in enumerate(W):
            u = Y[:, k + j]
            r = u / (1 - u)
            a[:, w] += scales[j] * r**3
            jac *= scales[j] * 3 * r * r / (1 - u) ** 2
        return jac / (1 + a @ X) ** (n + 1)

    return f


def quadrature_cell(cell, X, tol=1e-10, max_boxes=4000, orders=(5, 8)):
    """Numerically integrate ``n! X_1..X_n / (1 + a.X)^(n+1)`` over one cell.

    The simplex part is pulled back from the unit cube by the collapsed
    (Duffy) map, each extension coordinate by ``lambda = (u / (1 - u))^3 / X_w``; the power
    keeps the integrand smooth where several rays go to infinity together.
    Boxes of the unit cube are refined dyadically, worst error first, until
    the estimated relative error is below ``tol``.
    """
    X = np.array([float(x) for x in X])
    if np.any(X <= 0):
        raise ValueError("cubature needs a positive point X")
    if cell.degenerate:
        return 0.0
    n = cell.n
    f = _cell_integrand(cell, X)
    lo_rule, hi_rule = _rule(orders[0], n), _rule(orders[1], n)

    def estimate(lo, hi):
        width = hi - lo
        vol = float(np.prod(width))
        q_lo = vol * float(f(lo + lo_rule[0] * width) @ lo_rule[1])
        q_hi = vol * float(f(lo + hi_rule[0] * width) @ hi_rule[1])
        return q_hi, abs(q_hi - q_lo)

    lo, hi = np.zeros(n), np.ones(n)
    val, err = estimate(lo, hi)
    heap = [(-err, 0, lo, hi, val)]
    total, total_err = val, err
    counter = 1
    while total_err > tol * abs(total):
        if counter > max_boxes:
            raise QuadratureError(
                f"cubature stalled at relative error {total_err / abs(total):.3g} after {counter} boxes"
            )
        neg_err, _, lo, hi, val = heapq.heappop(heap)
        total -= val
        total_err += neg_err
        mid = (lo + hi) / 2
        for corner in product((0, 1), repeat=n):
            c = np.array(corner)
            clo = np.where(c, mid, lo)
            chi = np.where(c, hi, mid)
            cval, cerr = estimate(clo, chi)
            heapq.heappush(heap, (-cerr, counter, clo, chi, cval))
            counter += 1
            total += cval
            total_err += cerr
    return total


# -- cross check --------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    lhs: str
    rhs: str
    tolerance: str = "exact"
    basis: str = ""

    @property
    def status(self):
        return "pass" if self.passed else "FAIL"


@dataclass
class OracleReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def add(self, check):
        self.checks.append(check)

    def sorted(self):
        return sorted(self.checks, key=lambda c: c.name)

    def format_table(self):
        rows = [("check", "status", "tolerance", "lhs", "rhs")]
        for c in self.sorted():
            rows.append((c.name, c.status, c.tolerance, c.lhs, c.rhs))
        widths = [min(60, max(len(r[i]) for r in rows)) for i in range(5)]
        lines = []
        for r in rows:
            cells = [s if len(s) <= widths[i] else s[: widths[i] - 3] + "..." for i, s in enumerate(r)]
            lines.append("  ".join(s.ljust(w) for s, w in zip(cells, widths)).rstrip())
        return "\n".join(lines)

    def to_json(self):
        return {
            "ok": self.ok,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "lhs": c.lhs,
                    "rhs": c.rhs,
                    "tolerance": c.tolerance,
                    "basis": c.basis,
                }
                for c in self.sorted()
            ],
        }


# Reference values quoted with the ideals they belong to.
REFERENCE_FIXTURES = [
    {
        "name": "five-generator plane ideal in P^5",
        "generators": [(2, 6), (3, 4), (4, 3), (5, 1), (7, 0)],
        "degrees": (1, 1),
        "ambient_dim": 5,
        "h_coeffs": (0, 2, 18, -334, 3714, -35278),
        "closed_form": "2H(1 + 30H + 168H^2) / (1 + 6H)(1 + 7H)(1 + 8H)",
    },
    {
        "name": "three coordinate axes in P^3",
        "generators": [(0, 1, 1), (1, 0, 1), (1, 1, 0)],
        "degrees": (1, 1, 1),
        "ambient_dim": 3,
        "h_coeffs": (0, 0, 3, -10),
        "closed_form": "H^2(3 + 8H) / (1 + 2H)^3",
    },
]


def random_positive_point(rng, n, max_num=5, max_den=7):
    return tuple(Fraction(rng.randint(1, max_num), rng.randint(1, max_den)) for _ in range(n))


def _family_oracles(minimal):
    n = minimal.n
    gens = list(minimal.generators)
    out = []
    if len(gens) == 1:
        out.append(("principal formula", principal_class(gens[0]), "principal divisor: I.X/(1+I.X)"))
    axes = {}
    for g in gens:
        support = [i for i, e in enumerate(g) if e]
        if len(support) == 1:
            axes[support[0]] = g[support[0]]
    if len(gens) == n and len(axes) == n:
        mults = [axes[i] for i in range(n)]
        out.append(
            ("complete intersection formula", complete_intersection_class(mults),
             "complete intersection: prod m_i X_i/(1+m_i X_i)")
        )
    if n >= 2 and sorted(gens) == sorted(singularity_exponents(n)):
        out.append(
            ("singularity subscheme formula", singularity_family_class(n),
             "CSM identity for normal crossings: 1-(1+sum X)^(n-1)/prod(1+f_j.X)")
        )
    return out


def _cone_oracle(minimal, expr):
    """If x_i appears only through a pure power x_i^m, peel it off."""
    n = minimal.n
    if n < 2:
        return None
    for i in range(n):
        users = [g for g in minimal.generators if g[i]]
        if len(users) != 1 or any(e for j, e in enumerate(users[0]) if j != i):
            continue
        m = users[0][i]
        rest = [tuple(e for j, e in enumerate(g) if j != i) for g in minimal.generators if not g[i]]
        if not rest:
            continue
        sub = make_spec(rest, n - 1)
        if sub.is_unit:
            continue
        _, _, cells = decompose(sub)
        sub_expr = sum_cells(cells.cells, n - 1)

        def lift(v):
            v = list(v)
            v.insert(i, 0)
            return tuple(v)

        lifted = ClassExpr(n, [ClassTerm(t.coeff, lift(t.numer), [lift(v) for v in t.denom]) for t in sub_expr])
        return i, m, times_term(lifted, ClassTerm(m, _unit(n, i), [_unit(n, i, m)]))
    return None


def cross_check(spec, seed=0, quad_points=5, quad_tol=1e-6, grid_step=Fraction(1, 4), box_margin=13,
                staircase=True, quadrature=True, tiling=True):
    """Run every applicable independent check for ``spec``."""
    rng = random.Random(seed)
    report = OracleReport()
    minimal, poly, cells = decompose(spec, "fan")
    n = spec.n
    expr = sum_cells(cells.cells, n) if cells.cells else ClassExpr.zero(n)

    if spec.is_unit:
        report.add(Check("unit ideal gives zero class", not expr, expr.format(), "0", basis="empty subscheme"))
        return report

    if staircase and n == 2:
        _, _, st = decompose(spec, "staircase")
        st_expr = sum_cells(st.cells, 2)
        same = classes_equal(expr, st_expr)
        pts = [random_positive_point(rng, 2) for _ in range(20)]
        same_pts = all(expr.evaluate(p) == st_expr.evaluate(p) for p in pts)
        report.add(Check("fan = staircase (polynomial identity)", same, expr.format(), st_expr.format(),
                         basis="two-variable case is a theorem; decomposition independence"))
        report.add(Check("fan = staircase (20 exact points)", same_pts, "fan", "staircase",
                         basis="decomposition independence"))
        if tiling:
            rep = validate_tiling(st, poly, grid_step, box_margin, seed=seed)
            report.add(Check("staircase cells tile N", rep.ok, f"{rep.n_violations} violations",
                             f"{rep.checked} grid points", f"grid {grid_step}", "tiling"))

    for name, oracle, basis in _family_oracles(minimal):
        report.add(Check(name, classes_equal(expr, oracle), expr.format(), oracle.format(), basis=basis))

    cone = _cone_oracle(minimal, expr)
    if cone is not None:
        i, m, rhs = cone
        report.add(Check(f"cone over x{i + 1}^{m}", classes_equal(expr, rhs), expr.format(), rhs.format(),
                         basis="cone over the Newton region of the other generators"))

    for fx in REFERENCE_FIXTURES:
        fx_spec = make_spec(fx["generators"], len(fx["generators"][0]))
        if fx_spec.n == n and minimal.generators == decompose(fx_spec)[0].generators:
            series = specialize(expr, fx["degrees"], fx["ambient_dim"])
            got = tuple(series.h_coeffs())
            report.add(Check(f"fixture series: {fx['name']}", got == fx["h_coeffs"],
                             str([_num(c) for c in got]), str(list(fx["h_coeffs"])), basis="reference values"))
            cf = closed_form(expr, fx["degrees"]).format()
            report.add(Check(f"fixture closed form: {fx['name']}", cf == fx["closed_form"], cf,
                             fx["closed_form"], basis="reference values"))

    # cubature is only practical up to four variables
    if quadrature and n <= 4:
        worst = 0.0
        ok = True
        for _ in range(quad_points):
            X = tuple(Fraction(rng.randint(1, 20), 100) for _ in range(n))
            for c in cells.effective():
                exact = float(cell_integral(c).evaluate(X))
                try:
                    num = quadrature_cell(c, X, tol=quad_tol)
                except QuadratureError:
                    ok = False
                    continue
                rel = abs(num - exact) / abs(exact)
                worst = max(worst, rel)
        report.add(Check("cell integrals vs cubature", ok and worst < quad_tol, f"max rel err {worst:.2e}",
                         f"< {quad_tol:g}", f"rel {quad_tol:g}", "numerical integration of the integrand"))

    if tiling:
        rep = validate_tiling(cells, poly, grid_step, box_margin, seed=seed)
        report.add(Check("fan cells tile N", rep.ok, f"{rep.n_violations} violations",
                         f"{rep.checked} grid points", f"grid {grid_step}", "tiling"))
    return report

"""Exact rational classes ``sum coeff * X^alpha / prod (1 + v . X)``.

Every cell integral has this shape, so sums of cells stay in it. The
denominator factors ``1 + v . X`` are linear with constant term 1, hence
irreducible and pairwise coprime when the vectors differ; that makes the
common denominator a plain multiset union and cancellation a matter of
trial division by the known factors.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .poly import Poly, format_coeff

__all__ = [
    "ClassTerm",
    "ClassExpr",
    "TruncatedSeries",
    "ClosedForm",
    "Excess",
    "cell_integral",
    "sum_cells",
    "to_series",
    "specialize",
    "closed_form",
    "evaluate_exact",
    "excess",
    "classes_equal",
]


def _frac_vec(v):
    return tuple(Fraction(x) for x in v)


def _names(n):
    return ["H"] if n == 1 else [f"X{i + 1}" for i in range(n)]


def format_linear(v, names=None):
    names = names or _names(len(v))
    out = "1"
    for x, name in zip(v, names):
        if x:
            sign = "-" if x < 0 else "+"
            mag = abs(x)
            coef = "" if mag == 1 else format_coeff(mag)
            out += f" {sign} {coef}{name}"
    return f"({out})"


@dataclass(frozen=True)
class ClassTerm:
    """``coeff * X^numer / prod_{v in denom} (1 + v . X)``.

    ``denom`` is stored sorted with trivial (zero) factors removed.
    """

    coeff: Fraction
    numer: tuple
    denom: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "numer", tuple(self.numer))
        factors = sorted(_frac_vec(v) for v in self.denom if any(v))
        object.__setattr__(self, "denom", tuple(factors))

    @property
    def n(self):
        return len(self.numer)

    @property
    def key(self):
        return (self.numer, self.denom)

    def evaluate(self, point):
        num = self.coeff
        for x, k in zip(point, self.numer):
            num *= Fraction(x) ** k
        den = Fraction(1)
        for v in self.denom:
            den *= 1 + sum(a * Fraction(x) for a, x in zip(v, point))
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes at {tuple(point)}")
        return num / den

    def substitute(self, weights):
        """Set ``X_i = weights[i] * H``."""
        c = self.coeff
        for w, k in zip(weights, self.numer):
            c *= Fraction(w) ** k
        denom = [(sum(a * Fraction(w) for a, w in zip(v, weights)),) for v in self.denom]
        return ClassTerm(c, (sum(self.numer),), denom)

    def format(self, names=None):
        n = self.n
        names = names or _names(n)
        mono = Poly.monomial(self.numer, self.coeff).format(names)
        if not self.denom:
            return mono
        den = "".join(format_linear(v, names) for v in self.denom)
        return f"{mono}/({den})" if len(self.denom) > 1 else f"{mono}/{den}"

    def __str__(self):
        return self.format()


class ClassExpr:
    """A normalized finite sum of :class:`ClassTerm` objects.

    Terms with the same numerator monomial and denominator multiset are merged,
    zero terms are dropped, and the terms are kept in sorted order, so two
    expressions built from the same terms in any order compare equal.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=()):
        self.n = n
        acc = {}
        for t in terms:
            if t.n != n:
                raise ValueError("term has the wrong number of variables")
            if t.coeff:
                acc[t.key] = acc.get(t.key, 0) + t.coeff
        self.terms = tuple(
            ClassTerm(c, numer, denom) for (numer, denom), c in sorted(acc.items()) if c
        )

    @classmethod
    def zero(cls, n):
        return cls(n)

    def __add__(self, other):
        return ClassExpr(self.n, self.terms + other.terms)

    def __neg__(self):
        return ClassExpr(self.n, [ClassTerm(-t.coeff, t.numer, t.denom) for t in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, ClassExpr) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"ClassExpr({self.format()})"

    def format(self, names=None):
        if not self.terms:
            return "0"
        parts = [t.format(names) for t in self.terms]
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:].lstrip()}" if p.startswith("-") else f" + {p}"
        return out

    def substitute(self, weights):
        if len(weights) != self.n:
            raise ValueError("need one weight per variable")
        return ClassExpr(1, [t.substitute(weights) for t in self.terms])

    def permute(self, perm):
        """Relabel variables: old variable ``i`` becomes ``perm[i]``."""

        def move(v):
            out = [0] * self.n
            for i, x in enumerate(v):
                out[perm[i]] = x
            return tuple(out)

        return ClassExpr(
            self.n,
            [ClassTerm(t.coeff, move(t.numer), [move(v) for v in t.denom]) for t in self.terms],
        )

    def evaluate(self, point):
        if len(point) != self.n:
            raise ValueError("point has the wrong dimension")
        return sum((t.evaluate(point) for t in self.terms), Fraction(0))

    def common_form(self):
        """Numerator polynomial and ``[(v, multiplicity)]`` with all common factors cancelled."""
        mult = Counter()
        for t in self.terms:
            for v, c in Counter(t.denom).items():
                mult[v] = max(mult[v], c)
        num = Poly(self.n)
        for t in self.terms:
            p = Poly.monomial(t.numer, t.coeff)
            rest = mult - Counter(t.denom)
            for v in sorted(rest):
                p = p * (Poly.linear(v) ** rest[v])
            num = num + p
        if not num:
            return num, []
        for v in sorted(mult):
            lin = Poly.linear(v)
            while mult[v]:
                q = num.divide(lin)
                if q is None:
                    break
                num = q
                mult[v] -= 1
        return num, [(v, mult[v]) for v in sorted(mult) if mult[v]]


@lru_cache(maxsize=4096)
def _inverse_linear(v, max_degree):
    """Truncated expansion of ``1 / (1 + v . X)``."""
    n = len(v)
    neg = Poly.linear(v, 0).scale(-1)
    out = Poly.constant(n, 1)
    power = Poly.constant(n, 1)
    for _ in range(max_degree):
        power = power.mul(neg, max_degree)
        out = out + power
    return out


class TruncatedSeries:
    """Power series in ``X_1..X_n`` known up to total degree ``max_degree``."""

    __slots__ = ("n", "max_degree", "poly")

    def __init__(self, n, max_degree, poly=None):
        if max_degree < 0:
            raise ValueError("truncation degree must be >= 0")
        self.n = n
        self.max_degree = max_degree
        self.poly = (poly or Poly(n)).truncate(max_degree)

    @property
    def coefficients(self):
        return dict(self.poly.terms)

    def coefficient(self, exps):
        return self.poly.terms.get(tuple(exps), Fraction(0))

    def h_coeffs(self):
        """Univariate series as the list of coefficients of ``H^0 .. H^D``."""
        if self.n != 1:
            raise ValueError("h_coeffs needs a univariate series")
        return [self.coefficient((j,)) for j in range(self.max_degree + 1)]

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.n == other.n
            and self.max_degree == other.max_degree
            and self.poly == other.poly
        )

    def __mul__(self, other):
        D = min(self.max_degree, other.max_degree)
        return TruncatedSeries(self.n, D, self.poly.mul(other.poly, D))

    def __add__(self, other):
        D = min(self.max_degree, other.max_degree)
        return TruncatedSeries(self.n, D, self.poly + other.poly)

    def format(self, names=None, descending=False):
        return self.poly.format(names, descending)

    def __repr__(self):
        return f"TruncatedSeries({self.format()} + O(deg {self.max_degree + 1}))"


@dataclass(frozen=True)
class ClosedForm:
    numerator: Poly
    denominator: tuple  # ((v, multiplicity), ...)

    def format_numerator(self, names=None):
        c, m, prim = self.numerator.content_split()
        if not self.numerator:
            return "0"
        names = names or _names(self.numerator.n)
        lead = Poly.monomial(m, c).format(names)
        if prim == 1:
            return lead
        inner = prim.format(names)
        if lead == "1":
            return inner
        if lead == "-1":
            return f"-({inner})"
        return f"{lead}({inner})"

    def format_denominator(self, names=None):
        out = ""
        for v, k in self.denominator:
            out += format_linear(v, names) + (f"^{k}" if k > 1 else "")
        return out or "1"

    def format(self, names=None):
        den = self.format_denominator(names)
        num = self.format_numerator(names)
        if den == "1":
            return num
        if len(self.numerator.terms) > 1 and not num.endswith(")"):
            num = f"({num})"
        return f"{num} / {den}"

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class Excess:
    equivalence: Fraction
    bezout: int
    excess: Fraction

    def to_json(self):
        def num(x):
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else str(x)

        return {
            "equivalence": num(self.equivalence),
            "bezout": self.bezout,
            "excess": num(self.excess),
        }


def cell_integral(cell):
    """Closed-form integral of ``n! X_1..X_n / (1 + a.X)^(n+1)`` over a cell.

    For a k-simplex T extended along the coordinates outside J (|J| = k) this
    is ``k! Vol(pi_J T) * prod_{j in J} X_j / prod_{v in T} (1 + v . X)``,
    and ``k! Vol`` is just the absolute projected edge determinant.
    """
    d = cell.projected_det()
    numer = tuple(0 if i in cell.extensions else 1 for i in range(cell.n))
    if d == 0:
        return ClassTerm(0, numer, ())
    return ClassTerm(abs(d), numer, cell.simplex)


def _integrate_all(cells, jobs):
    if jobs and jobs > 1 and len(cells) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(cell_integral, cells))
    return [cell_integral(c) for c in cells]


def sum_cells(cells, n=None, jobs=None):
    """Normalized sum of the cell integrals (order independent)."""
    cells = list(cells)
    if n is None:
        n = getattr(cells, "n", None) or (cells[0].n if cells else None)
    if n is None:
        raise ValueError("cannot infer n from an empty cell list")
    return ClassExpr(n, [t for t in _integrate_all(cells, jobs) if t.coeff])


def to_series(expr, max_degree):
    """Exact expansion of a class up to total degree ``max_degree``."""
    if max_degree < 0:
        raise ValueError("truncation degree must be >= 0")
    total = Poly(expr.n)
    for t in expr.terms:
        d = sum(t.numer)
        if d > max_degree:
            continue
        p = Poly.monomial(t.numer, t.coeff)
        for v in t.denom:
            p = p.mul(_inverse_linear(v, max_degree - d), max_degree)
        total = total + p
    return TruncatedSeries(expr.n, max_degree, total)


def specialize(obj, degrees, ambient_dim):
    """Substitute ``X_i = d_i H`` and truncate at ``H^ambient_dim``.

    Accepts a :class:`ClassExpr` or a :class:`TruncatedSeries` (which must be
    known at least to degree ``ambient_dim``). The coefficient of ``H^j`` is
    the coefficient of ``[P^(ambient_dim - j)]``.
    """
    if ambient_dim < 1:
        raise ValueError("ambient dimension must be >= 1")
    if any(d <= 0 for d in degrees):
        raise ValueError("degrees must be positive")
    if isinstance(obj, ClassExpr):
        if len(degrees) != obj.n:
            raise ValueError("need one degree per variable")
        return to_series(obj.substitute(degrees), ambient_dim)
    if len(degrees) != obj.n:
        raise ValueError("need one degree per variable")
    if obj.max_degree < ambient_dim:
        raise ValueError("series is not known to the ambient dimension")
    return TruncatedSeries(1, ambient_dim, obj.poly.substitute_linear(degrees))


def closed_form(expr, degrees=None):
    """Common-denominator form, optionally after ``X_i = d_i H``."""
    if degrees is not None:
        expr = expr.substitute(degrees)
    num, den = expr.common_form()
    return ClosedForm(num, tuple(den))


def evaluate_exact(expr, point):
    return expr.evaluate([Fraction(x) for x in point])


def excess(series, degrees):
    """Equivalence, Bezout number and excess for hypersurfaces of the given degrees.

    ``series`` is a univariate series in H known up to ``H^N``, where N is the
    number of degrees (the ambient dimension).
    """
    N = len(degrees)
    if isinstance(series, TruncatedSeries):
        if series.n != 1:
            raise ValueError("excess needs a series specialized to H")
        if series.max_degree != N:
            raise ValueError(
                f"series lives in P^{series.max_degree} but {N} hypersurface degrees were given"
            )
        coeffs = series.h_coeffs()
    else:
        coeffs = [Fraction(c) for c in series]
        if len(coeffs) < N + 1:
            raise ValueError("degree count does not match the ambient dimension")
    if any(d <= 0 for d in degrees):
        raise ValueError("degrees must be positive")
    chern = [Fraction(1)]
    for d in degrees:
        chern = [a + d * b for a, b in zip(chern + [0], [0] + chern)]
    equivalence = sum(chern[i] * coeffs[N - i] for i in range(N + 1))
    bezout = 1
    for d in degrees:
        bezout *= d
    return Excess(equivalence, bezout, bezout - equivalence)


def classes_equal(a, b):
    """Exact equality of two classes as rational functions (cross-multiplied)."""
    if a.n != b.n:
        return False
    na, da = a.common_form()
    nb, db = b.common_form()

    def expand(den, n):
        p = Poly.constant(n, 1)
        for v, k in den:
            p = p * (Poly.linear(v) ** k)
        return p

    return na * expand(db, b.n) == nb * expand(da, a.n)

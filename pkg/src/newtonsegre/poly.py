"""Sparse multivariate polynomials with exact rational coefficients."""

from fractions import Fraction

__all__ = ["Poly", "format_coeff"]


def format_coeff(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Poly:
    """A polynomial stored as ``{exponent tuple: Fraction}`` with no zero entries."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, exps, c=1):
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def linear(cls, v, const=1):
        """``const + v . X``"""
        n = len(v)
        terms = {(0,) * n: const}
        for i, a in enumerate(v):
            if a:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = a
        return cls(n, terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.n, out)

    def __neg__(self):
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Poly(self.n, {e: c * v for e, v in self.terms.items()})

    def mul(self, other, max_degree=None):
        out = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if max_degree is not None and d1 + sum(e2) > max_degree:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.n, out)

    __mul__ = mul

    def __pow__(self, k):
        out = Poly.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def truncate(self, max_degree):
        return Poly(self.n, {e: c for e, c in self.terms.items() if sum(e) <= max_degree})

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self):
        """Leading (exponent, coeff) in lex order."""
        e = max(self.terms)
        return e, self.terms[e]

    def divide(self, divisor):
        """Exact quotient ``self / divisor``, or None if it does not divide."""
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        rem = dict(self.terms)
        quot = {}
        le, lc = divisor.leading()
        while rem:
            e = max(rem)
            c = rem[e]
            shift = tuple(a - b for a, b in zip(e, le))
            if any(s < 0 for s in shift):
                return None
            q = c / lc
            quot[shift] = q
            for de, dc in divisor.terms.items():
                t = tuple(a + b for a, b in zip(de, shift))
                v = rem.get(t, 0) - q * dc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Poly(self.n, quot)

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= Fraction(x) ** k
            total += t
        return total

    def substitute_linear(self, weights):
        """Substitute ``X_i -> weights[i] * H``: returns a univariate Poly."""
        out = {}
        for e, c in self.terms.items():
            t = c
            for w, k in zip(weights, e):
                t *= Fraction(w) ** k
            d = (sum(e),)
            out[d] = out.get(d, 0) + t
        return Poly(1, out)

    def content_split(self):
        """Return ``(c, m, prim)`` with ``self = c * X^m * prim``.

        ``m`` is the componentwise minimum exponent and ``prim`` has integer
        coefficients with gcd 1 and positive lowest-order coefficient.
        """
        if not self.terms:
            return Fraction(0), (0,) * self.n, Poly(self.n)
        from math import gcd, lcm

        m = tuple(min(e[i] for e in self.terms) for i in range(self.n))
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        lowest = min(ints, key=lambda e: (sum(e), tuple(-x for x in e)))
        if ints[lowest] < 0:
            g = -g
        prim = Poly(self.n, {tuple(a - b for a, b in zip(e, m)): Fraction(v, g) for e, v in ints.items()})
        return Fraction(g, den), m, prim

    def format(self, names=None, descending=False):
        if not self.terms:
            return "0"
        if names is None:
            names = ["H"] if self.n == 1 else [f"X{i + 1}" for i in range(self.n)]
        order = sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e)), reverse=descending)
        pieces = []
        for e in order:
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if self.n == 1:
                mono = mono.replace("*", "")
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{format_coeff(mag)}{mono}" if self.n == 1 else f"{format_coeff(mag)}*{mono}"
            else:
                body = format_coeff(mag)
            pieces.append(("-" if c < 0 else "+", body))
        text = ("- " if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Poly({self.format()})"

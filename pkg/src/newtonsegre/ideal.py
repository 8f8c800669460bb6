"""Monomial ideal input: parsing, canonical form and minimalization.

Two input styles are accepted::

    x1^2*x2^6, x1^3*x2^4, x1^7      # monomials, Macaulay2 style
    2 6, 3 4, 7 0                   # one exponent row per term

Rows may also be separated by newlines, ``;`` or ``/``. In monomial mode the
bare token ``1`` denotes the empty product, i.e. the unit ideal.
"""

import re
from dataclasses import dataclass

__all__ = [
    "IdealParseError",
    "MonomialIdealSpec",
    "make_spec",
    "parse_ideal",
    "minimalize",
    "format_monomial",
]


class IdealParseError(ValueError):
    """Raised for malformed ideal text or invalid exponent data."""


@dataclass(frozen=True)
class MonomialIdealSpec:
    """A monomial ideal in ``n`` variables given by exponent vectors.

    ``generators`` is kept sorted and duplicate free; construct through
    :func:`make_spec` to get that canonical form.
    """

    n: int
    generators: tuple
    labels: tuple = None

    @property
    def is_unit(self):
        return any(not any(g) for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def to_text(self):
        return ", ".join(format_monomial(g) for g in self.generators)


def make_spec(generators, n=None, labels=None):
    """Validate and canonicalize a list of exponent vectors."""
    gens = [tuple(g) for g in generators]
    if not gens:
        raise IdealParseError("an ideal needs at least one generator")
    if n is None:
        n = len(gens[0])
    if n < 1:
        raise IdealParseError("need at least one variable")
    for g in gens:
        if len(g) != n:
            raise IdealParseError(f"exponent vector {g} does not have length {n}")
        for e in g:
            if not isinstance(e, int) or isinstance(e, bool):
                raise IdealParseError(f"exponent {e!r} is not an integer")
            if e < 0:
                raise IdealParseError(f"negative exponent in {g}")
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != n:
            raise IdealParseError("number of labels must match n")
    return MonomialIdealSpec(n, tuple(sorted(set(gens))), labels)


_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?\Z")
_INT = re.compile(r"\d+\Z")


def _parse_monomial(token):
    if token == "1":
        return {}
    exps = {}
    for factor in token.split("*"):
        if factor.startswith("x") and "^-" in factor:
            raise IdealParseError(f"negative exponent in {token!r}")
        m = _FACTOR.match(factor)
        if m is None:
            raise IdealParseError(f"malformed monomial token {token!r}")
        idx = int(m.group(1))
        if idx < 1:
            raise IdealParseError(f"variable index must be >= 1 in {token!r}")
        exps[idx] = exps.get(idx, 0) + (int(m.group(2)) if m.group(2) else 1)
    return exps


def parse_ideal(text, n=None):
    """Parse ideal text into a canonical :class:`MonomialIdealSpec`.

    ``n`` defaults to the highest variable index (monomial mode) or the row
    length (row mode).
    """
    if text is None or not text.strip():
        raise IdealParseError("empty ideal input")
    if "x" in text:
        cleaned = re.sub(r"\s*([*^])\s*", r"\1", text.strip())
        tokens = [t for t in re.split(r"[,\s]+", cleaned) if t]
        monos = [_parse_monomial(t) for t in tokens]
        top = max((max(m) for m in monos if m), default=1)
        if n is None:
            n = top
        elif top > n:
            raise IdealParseError(f"variable x{top} exceeds declared n={n}")
        gens = [tuple(m.get(i, 0) for i in range(1, n + 1)) for m in monos]
        return make_spec(gens, n)

    rows = []
    for chunk in re.split(r"[,;/\n]+", text):
        entries = chunk.split()
        if not entries:
            continue
        row = []
        for e in entries:
            if e.startswith("-") and _INT.match(e[1:]):
                raise IdealParseError(f"negative exponent {e!r}")
            if not _INT.match(e):
                raise IdealParseError(f"malformed integer {e!r}")
            row.append(int(e))
        rows.append(tuple(row))
    if not rows:
        raise IdealParseError("empty ideal input")
    lengths = {len(r) for r in rows}
    if len(lengths) != 1:
        raise IdealParseError("inconsistent row lengths")
    if n is not None and lengths != {n}:
        raise IdealParseError(f"rows have length {lengths.pop()}, expected {n}")
    return make_spec(rows, n)


def minimalize(spec):
    """Keep only the generators that are vertices of the Newton polyhedron.

    The unit ideal is passed through, reduced to the single zero generator.
    """
    from .polyhedron import build_polyhedron

    if spec.is_unit:
        return MonomialIdealSpec(spec.n, ((0,) * spec.n,), spec.labels)
    poly = build_polyhedron(spec)
    return MonomialIdealSpec(spec.n, tuple(poly.vertices), spec.labels)


def format_monomial(exps, names=None):
    """``(2, 0, 1)`` -> ``'x1^2*x3'``; the zero vector gives ``'1'``."""
    parts = []
    for i, e in enumerate(exps):
        if e == 0:
            continue
        name = names[i] if names else f"x{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"

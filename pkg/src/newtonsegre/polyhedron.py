"""Exact Newton polyhedron ``P = conv(U_k (I_k + R>=0^n))`` of a monomial ideal.

Facets are found by brute force: every facet hyperplane passes through some
affinely independent generators and is parallel to the remaining coordinate
directions, so it suffices to try all (generator subset, direction subset)
pairs spanning a hyperplane. This is fine at the sizes the package targets
(n <= 5, a few dozen generators).
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from ._linalg import dot, normal_vector, rank

__all__ = [
    "Facet",
    "Face",
    "CompactFace",
    "Membership",
    "NewtonPolyhedron",
    "build_polyhedron",
    "contains",
    "compact_faces",
]


@dataclass(frozen=True, order=True)
class Facet:
    """The inequality ``normal . x >= offset``; normal is nonnegative, primitive."""

    normal: tuple
    offset: int

    def slack(self, x):
        return dot(self.normal, x) - self.offset

    def zeros(self):
        return frozenset(i for i, c in enumerate(self.normal) if c == 0)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.normal):
            if c:
                terms.append(f"x{i + 1}" if c == 1 else f"{c}x{i + 1}")
        return " + ".join(terms) + f" >= {self.offset}"


@dataclass(frozen=True)
class Face:
    """A nonempty face ``conv(vertices) + cone(e_i : i in rec)`` of P.

    ``verts`` holds indices into ``NewtonPolyhedron.vertices`` and ``facets``
    indices into ``NewtonPolyhedron.facets`` (all facets containing the face).
    Coordinates in ``rec`` are 0-based.
    """

    verts: frozenset
    rec: frozenset
    facets: frozenset
    dim: int

    @property
    def is_compact(self):
        return not self.rec

    def __le__(self, other):
        return self.verts <= other.verts and self.rec <= other.rec


@dataclass(frozen=True)
class CompactFace:
    vertices: tuple
    dim: int
    facets: tuple
    extensions: frozenset  # 0-based U(F)

    def to_json(self):
        return {
            "verts": [list(v) for v in self.vertices],
            "dim": self.dim,
            "U": sorted(i + 1 for i in self.extensions),
        }


class Membership(enum.Enum):
    INSIDE = "inside P"
    BOUNDARY = "boundary of P"
    IN_N = "in N"
    OUTSIDE = "outside orthant"


def _undominated(gens):
    """Drop generators that dominate another one componentwise."""
    keep = []
    for g in gens:
        if not any(h != g and all(a >= b for a, b in zip(g, h)) for h in gens):
            keep.append(g)
    return keep


def _face_dim(points, rec, n):
    rows = [[a - b for a, b in zip(p, points[0])] for p in points[1:]]
    rows += [[1 if j == i else 0 for j in range(n)] for i in rec]
    return rank(rows) if rows else 0


class NewtonPolyhedron:
    """H- and V-description of P plus its face lattice (built lazily)."""

    def __init__(self, n, vertices, facets):
        self.n = n
        self.vertices = tuple(vertices)
        self.facets = tuple(facets)

    def __repr__(self):
        return f"NewtonPolyhedron(n={self.n}, vertices={self.vertices}, facets={len(self.facets)})"

    def face_of(self, verts, rec):
        """Close ``(verts, rec)`` to the smallest face containing it."""
        active = frozenset(
            j
            for j, f in enumerate(self.facets)
            if all(f.slack(self.vertices[v]) == 0 for v in verts)
            and all(f.normal[i] == 0 for i in rec)
        )
        verts = frozenset(
            v
            for v in range(len(self.vertices))
            if all(self.facets[j].slack(self.vertices[v]) == 0 for j in active)
        )
        rec = frozenset(
            i for i in range(self.n) if all(self.facets[j].normal[i] == 0 for j in active)
        )
        dim = _face_dim([self.vertices[v] for v in sorted(verts)], rec, self.n)
        return Face(verts, rec, active, dim)

    @cached_property
    def faces(self):
        """All nonempty proper faces, sorted by dimension then vertex list."""
        seen = {}
        frontier = []
        for j, f in enumerate(self.facets):
            verts = frozenset(
                v for v, p in enumerate(self.vertices) if f.slack(p) == 0
            )
            face = self.face_of(verts, f.zeros())
            key = (face.verts, face.rec)
            if key not in seen:
                seen[key] = face
                frontier.append(face)
        while frontier:
            nxt = []
            for face in frontier:
                for j, f in enumerate(self.facets):
                    if j in face.facets:
                        continue
                    verts = frozenset(
                        v for v in face.verts if f.slack(self.vertices[v]) == 0
                    )
                    if not verts:
                        continue
                    sub = self.face_of(verts, face.rec & f.zeros())
                    key = (sub.verts, sub.rec)
                    if key not in seen:
                        seen[key] = sub
                        nxt.append(sub)
            frontier = nxt
        return sorted(
            seen.values(),
            key=lambda F: (F.dim, sorted(self.vertices[v] for v in F.verts), sorted(F.rec)),
        )

    @cached_property
    def facet_faces(self):
        """The facets of P as :class:`Face` objects, in facet order."""
        top = self.n - 1
        by_facet = {}
        for face in self.faces:
            if face.dim == top:
                (j,) = face.facets
                by_facet[j] = face
        return [by_facet[j] for j in range(len(self.facets))]

    def subfacets(self, face):
        """Faces of codimension one inside ``face``, deterministic order."""
        return [F for F in self.faces if F.dim == face.dim - 1 and F <= face]

    def points(self, face):
        return [self.vertices[v] for v in sorted(face.verts)]

    def to_json(self):
        return {
            "facets": [{"normal": list(f.normal), "offset": f.offset} for f in self.facets],
            "vertices": [list(v) for v in self.vertices],
            "compact_faces": [cf.to_json() for cf in compact_faces(self)],
        }


def build_polyhedron(spec):
    """Build the Newton polyhedron of a non-unit spec (or a list of generators)."""
    gens = list(getattr(spec, "generators", spec))
    if not gens:
        raise ValueError("no generators")
    n = len(gens[0])
    if any(not any(g) for g in gens):
        raise ValueError("the unit ideal has an empty Newton polyhedron")
    gens = sorted(_undominated(sorted(set(map(tuple, gens)))))

    found = set()
    for s in range(1, n + 1):
        for pts in combinations(gens, s):
            base = pts[0]
            diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
            for dirs in combinations(range(n), n - s):
                rows = diffs + [[1 if j == i else 0 for j in range(n)] for i in dirs]
                c = normal_vector(rows) if rows else (1,)
                if c is None:
                    continue
                if any(x < 0 for x in c):
                    if any(x > 0 for x in c):
                        continue
                    c = tuple(-x for x in c)
                b = dot(c, base)
                if (c, b) in found:
                    continue
                if all(dot(c, g) >= b for g in gens):
                    found.add((c, b))
    facets = sorted(Facet(c, b) for c, b in found)

    vertices = []
    for g in gens:
        active = [f.normal for f in facets if f.slack(g) == 0]
        if rank(active) == n:
            vertices.append(g)
    return NewtonPolyhedron(n, sorted(vertices), facets)


def contains(poly, point):
    """Classify ``point`` by exact sign tests against the facet inequalities."""
    point = [Fraction(x) for x in point]
    if len(point) != poly.n:
        raise ValueError("point has the wrong dimension")
    if any(x < 0 for x in point):
        return Membership.OUTSIDE
    slacks = [f.slack(point) for f in poly.facets]
    if any(s < 0 for s in slacks):
        return Membership.IN_N
    if any(s == 0 for s in slacks):
        return Membership.BOUNDARY
    return Membership.INSIDE


def compact_faces(poly):
    """Bounded faces of P (vertices up to compact facets) with their U(F).

    ``U(F)`` collects the coordinates along which some facet through F is
    unbounded: ``{i : c_i = 0 for some active facet normal c}``.
    """
    out = []
    for face in poly.faces:
        if not face.is_compact:
            continue
        ext = frozenset(
            i for j in face.facets for i in poly.facets[j].zeros()
        )
        out.append(
            CompactFace(
                tuple(poly.points(face)),
                face.dim,
                tuple(sorted(face.facets)),
                ext,
            )
        )
    return out

from fractions import Fraction

import pytest

from newtonsegre import Membership, build_polyhedron, compact_faces, contains, make_spec, minimalize


def facet_set(poly):
    return {(f.normal, f.offset) for f in poly.facets}


def test_plane5_facets(plane5):
    poly = build_polyhedron(plane5)
    assert facet_set(poly) == {
        ((1, 0), 2),
        ((2, 1), 10),
        ((3, 2), 17),
        ((1, 2), 7),
        ((0, 1), 0),
    }
    assert poly.vertices == ((2, 6), (3, 4), (5, 1), (7, 0))


def test_single_generator():
    poly = build_polyhedron(make_spec([(3, 4)]))
    assert facet_set(poly) == {((1, 0), 3), ((0, 1), 4)}
    assert poly.vertices == ((3, 4),)


def test_axes3_facets(axes3):
    poly = build_polyhedron(axes3)
    facets = facet_set(poly)
    for expected in [((1, 1, 1), 2), ((1, 1, 0), 1), ((1, 0, 1), 1), ((0, 1, 1), 1),
                     ((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0)]:
        assert expected in facets
    assert set(poly.vertices) == set(axes3.generators)


def test_unit_ideal_rejected():
    with pytest.raises(ValueError):
        build_polyhedron(make_spec([(0, 0), (1, 1)]))


def test_facet_str(plane5):
    assert [str(f) for f in build_polyhedron(plane5).facets if f.offset == 10] == ["2x1 + x2 >= 10"]


@pytest.mark.parametrize(
    "point, expected",
    [
        ((1, 0), Membership.IN_N),
        ((7, 0), Membership.BOUNDARY),
        ((5, Fraction(1, 2)), Membership.IN_N),
        ((5, Fraction(3, 2)), Membership.INSIDE),
        ((10, 10), Membership.INSIDE),
        ((-1, 3), Membership.OUTSIDE),
    ],
)
def test_contains(plane5, point, expected):
    assert contains(build_polyhedron(plane5), point) is expected


def test_contains_dimension_check(plane5):
    with pytest.raises(ValueError):
        contains(build_polyhedron(plane5), (1, 2, 3))


def test_compact_faces_plane5(plane5):
    faces = compact_faces(build_polyhedron(plane5))
    vertices = {cf.vertices[0]: cf.extensions for cf in faces if cf.dim == 0}
    assert vertices == {(2, 6): {1}, (3, 4): set(), (5, 1): set(), (7, 0): {0}}
    edges = [cf for cf in faces if cf.dim == 1]
    assert len(edges) == 3
    assert all(not cf.extensions for cf in edges)


def test_compact_faces_single_generator():
    faces = compact_faces(build_polyhedron(make_spec([(3, 4)])))
    assert len(faces) == 1
    assert faces[0].extensions == {0, 1}


def test_compact_faces_axes3(axes3):
    faces = compact_faces(build_polyhedron(axes3))
    by_dim = {}
    for cf in faces:
        by_dim.setdefault(cf.dim, []).append(len(cf.extensions))
    assert by_dim == {0: [2, 2, 2], 1: [1, 1, 1], 2: [0]}


def test_generators_satisfy_facets(plane5, axes3):
    for spec in (plane5, axes3):
        poly = build_polyhedron(spec)
        for g in spec.generators:
            assert all(f.slack(g) >= 0 for f in poly.facets)


def test_boundary_rays_stay_on_boundary(axes3):
    poly = build_polyhedron(axes3)
    for cf in compact_faces(poly):
        for i in cf.extensions:
            for v in cf.vertices:
                for lam in (Fraction(1, 3), 1, 7, 1000):
                    p = list(v)
                    p[i] += lam
                    assert contains(poly, p) is Membership.BOUNDARY


def test_vertices_are_minimal_generators(plane5):
    assert build_polyhedron(plane5).vertices == minimalize(plane5).generators


def test_json_shape(plane5):
    data = build_polyhedron(plane5).to_json()
    assert set(data) == {"facets", "vertices", "compact_faces"}
    assert {"normal": [3, 2], "offset": 17} in data["facets"]
    assert {"verts": [[2, 6]], "dim": 0, "U": [2]} in data["compact_faces"]

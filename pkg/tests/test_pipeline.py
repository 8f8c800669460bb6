import json

import pytest

from newtonsegre import EngineMismatch, compute_segre, make_spec, parse_ideal
from newtonsegre.pipeline import bracket_form


def test_plane5_output(plane5):
    out = compute_segre(plane5, degrees=(1, 1), ambient_dim=5)
    assert out.specialized.h_coeffs() == [0, 2, 18, -334, 3714, -35278]
    assert not out.conjectural
    text = out.format_text()
    assert "- 35278H^5 + 3714H^4 - 334H^3 + 18H^2 + 2H" in text
    assert "2[P^4] + 18[P^3] - 334[P^2] + 3714[P^1] - 35278[P^0]" in text


def test_axes3_marked_conjectural(axes3):
    out = compute_segre(axes3)
    assert out.conjectural
    assert "conjectural" in out.format_text()
    assert "3H^2 - 10H^3" in out.format_text()


def test_unit_vectors_give_complete_intersection():
    out = compute_segre(make_spec([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
    assert out.closed_form.format() == "H^3 / (1 + H)^3"


def test_series_recomputable(axes3):
    out = compute_segre(axes3, max_degree=4)
    assert out.series.max_degree == 4
    assert out.series.coefficient((1, 1, 0)) == 1


def test_excess_through_pipeline(axes3):
    out = compute_segre(axes3, excess_degrees=(2, 2, 2))
    assert (out.excess.equivalence, out.excess.bezout, out.excess.excess) == (8, 8, 0)


def test_excess_length_must_match_ambient(axes3):
    with pytest.raises(ValueError):
        compute_segre(axes3, ambient_dim=4, excess_degrees=(2, 2, 2))


def test_bad_options(axes3, plane5):
    with pytest.raises(ValueError):
        compute_segre(axes3, engine="staircase")
    with pytest.raises(ValueError):
        compute_segre(plane5, engine="simplex")
    with pytest.raises(ValueError):
        compute_segre(plane5, degrees=(1, 1, 1))


def test_both_engines(plane5):
    out = compute_segre(plane5, engine="both")
    assert out.engine == "both"
    assert isinstance(EngineMismatch("x"), RuntimeError)


def test_unit_ideal_zero_everything():
    out = compute_segre(parse_ideal("1, x1*x2"))
    assert not out.class_expr
    assert out.specialized.h_coeffs() == [0, 0, 0]
    assert out.cells.cells == ()


def test_json_round_trip(plane5):
    out = compute_segre(plane5, degrees=(1, 1), ambient_dim=5)
    data = json.loads(json.dumps(out.to_json()))
    again = compute_segre(make_spec([tuple(g) for g in data["generators"]], data["n"]), degrees=(1, 1), ambient_dim=5)
    assert again.to_json() == data


def test_bracket_form():
    assert bracket_form([0, 0, 3, -10], 3) == "3[P^1] - 10[P^0]"
    assert bracket_form([0, 0], 1) == "0"
    assert bracket_form([0, -1], 1) == "- 1[P^0]"

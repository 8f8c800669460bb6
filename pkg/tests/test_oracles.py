from fractions import Fraction
from itertools import product

import pytest

from newtonsegre import Cell, cell_integral, closed_form, compute_segre, cross_check, make_spec, quadrature_cell
from newtonsegre.oracles import (
    REFERENCE_FIXTURES,
    Check,
    OracleReport,
    QuadratureError,
    complete_intersection_class,
    principal_class,
    singularity_exponents,
    singularity_family_class,
)
from newtonsegre.classes import ClassExpr, ClassTerm, classes_equal

F = Fraction


def test_principal_class_formula():
    assert closed_form(principal_class((3, 4))).format() == "(3*X1 + 4*X2) / (1 + 3X1 + 4X2)"
    assert not principal_class((0, 0, 0))
    assert closed_form(principal_class((7, 0))).format() == "7*X1 / (1 + 7X1)"


def test_complete_intersection_formula():
    e = complete_intersection_class((2, 3))
    assert e == ClassExpr(2, [ClassTerm(F(6), (1, 1), [(F(2), F(0)), (F(0), F(3))])])
    assert closed_form(complete_intersection_class((1, 1, 1))).format() == \
        "X1*X2*X3 / (1 + X3)(1 + X2)(1 + X1)"


def test_singularity_family_small_cases():
    assert set(singularity_exponents(2)) == {(0, 1), (1, 0)}
    assert classes_equal(singularity_family_class(2), complete_intersection_class((1, 1)))
    assert closed_form(singularity_family_class(3), (1, 1, 1)).format() == "H^2(3 + 8H) / (1 + 2H)^3"


def test_singularity_exponents_are_axes3_for_n3(axes3):
    assert set(singularity_exponents(3)) == set(axes3.generators)


def test_quadrature_strip():
    c = Cell(((0, 0), (2, 6)), {1})
    val = quadrature_cell(c, (F(1, 10), F(1, 10)), tol=1e-8)
    assert val == pytest.approx(2 * 0.1 / 1.8, rel=1e-8)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_quadrature_full_orthant(n):
    c = Cell(((0,) * n,), set(range(n)))
    assert quadrature_cell(c, (F(1, 7),) * n, tol=1e-9) == pytest.approx(1.0, rel=1e-8)


def test_quadrature_translated_orthant():
    # sum of the segment cells of a principal ideal is 1 - 1/(1 + I.X)
    I, X = (3, 4), (F(1, 5), F(1, 9))
    cells = [Cell(((0, 0), I), {0}), Cell(((0, 0), I), {1})]
    total = sum(quadrature_cell(c, X, tol=1e-9) for c in cells)
    assert 1 - total == pytest.approx(1 / (1 + 3 / 5 + 4 / 9), rel=1e-7)


def test_quadrature_degenerate_and_bad_point():
    assert quadrature_cell(Cell(((0, 0), (7, 0)), {0}), (F(1, 2), F(1, 2))) == 0.0
    with pytest.raises(ValueError):
        quadrature_cell(Cell(((0, 0), (2, 6)), {1}), (0, F(1, 2)))


def test_quadrature_budget_exhaustion():
    c = Cell(((0, 0, 0), (1, 0, 1), (0, 1, 1)), {2})
    with pytest.raises(QuadratureError):
        quadrature_cell(c, (F(1, 10),) * 3, tol=1e-15, max_boxes=10)


def test_quadrature_matches_cell_integrals(axes3):
    from newtonsegre import decompose

    X = (F(1, 10), F(3, 20), F(1, 5))
    for c in decompose(axes3)[2].effective():
        exact = float(cell_integral(c).evaluate(X))
        assert quadrature_cell(c, X, tol=1e-9) == pytest.approx(exact, rel=1e-7)


def test_fixtures_match_pipeline():
    for fx in REFERENCE_FIXTURES:
        spec = make_spec(fx["generators"])
        out = compute_segre(spec, degrees=fx["degrees"], ambient_dim=fx["ambient_dim"])
        assert tuple(out.specialized.h_coeffs()) == fx["h_coeffs"]
        assert out.closed_form.format() == fx["closed_form"]


def test_cross_check_plane5(plane5):
    report = cross_check(plane5)
    assert report.ok, report.format_table()
    names = {c.name for c in report.checks}
    assert "fan = staircase (polynomial identity)" in names
    assert any(n.startswith("fixture series") for n in names)
    assert "cell integrals vs cubature" in names
    assert "fan cells tile N" in names


def test_cross_check_axes3(axes3):
    report = cross_check(axes3, quadrature=False)
    assert report.ok, report.format_table()
    assert "singularity subscheme formula" in {c.name for c in report.checks}


def test_cross_check_singularity_family_n4():
    spec = make_spec(singularity_exponents(4))
    report = cross_check(spec, quadrature=False, tiling=False)
    assert report.ok
    assert "singularity subscheme formula" in {c.name for c in report.checks}


def test_cross_check_cone():
    spec = make_spec([(2, 1, 0), (0, 3, 0), (0, 0, 4)])
    report = cross_check(spec, quadrature=False, tiling=False)
    assert any(c.name.startswith("cone over x3^4") and c.passed for c in report.checks)


def test_cross_check_unit_ideal():
    report = cross_check(make_spec([(0, 0)]))
    assert report.ok and len(report.checks) == 1


@pytest.mark.parametrize("gens", [list(g) for g in product([(1, 3), (2, 2)], [(4, 0), (3, 1)])])
def test_cross_check_small_planar(gens):
    report = cross_check(make_spec([(0, 5)] + gens), quadrature=False)
    assert report.ok, report.format_table()


def test_report_sorted_and_failure_visible():
    r = OracleReport()
    r.add(Check("b", True, "1", "1"))
    r.add(Check("a", False, "1", "2"))
    assert not r.ok
    assert [c["name"] for c in r.to_json()["checks"]] == ["a", "b"]
    table = r.format_table().splitlines()
    assert table[1].startswith("a") and "FAIL" in table[1]

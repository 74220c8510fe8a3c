import math
from fractions import Fraction

import pytest
import sympy

from hopflab import classifier as cl
from hopflab.exact_scalar import Poly, RatFunc, fmt, normalize, sqrt_exact
from hopflab.model_catalog import DomainError
from hopflab.projector_embedding import SpaceForm

CP = {m: SpaceForm(1, m) for m in range(2, 9)}
CH = {m: SpaceForm(-1, m) for m in range(2, 9)}


def test_even_to_square():
    x = RatFunc(Poly([1, 0, 3, 0, 2]), Poly([0, 0, 1]), "s")
    y = cl.even_to_square(x, "u")
    assert y.num == Poly([1, 3, 2]) and y.den == Poly([0, 1])
    with pytest.raises(ValueError):
        cl.even_to_square(RatFunc(Poly([0, 1]), Poly([1]), "s"), "u")


# --- spheres


def test_sphere_points_projective():
    entries = cl.a1_classify(CP[2])
    by_anchor = {e.anchor: e for e in entries}
    assert by_anchor["sphere-family one-type point"].param == Fraction(1, 5)
    assert by_anchor["sphere-family one-type point"].verdict == 1
    ms = by_anchor["sphere-family mass-symmetric point"]
    assert ms.param == Fraction(1, 2) and sorted(ms.eigenvalues) == [Fraction(15, 2), 12]


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_sphere_points_closed_forms(m):
    entries = cl.a1_classify(CP[m])
    assert [e.param for e in entries if e.verdict == 1] == [Fraction(1, 2 * m + 1)]
    assert [e.param for e in entries if e.anchor.endswith("mass-symmetric point")] == [Fraction(1, m)]


@pytest.mark.parametrize("m", [2, 3, 4])
def test_sphere_families_hyperbolic(m):
    entries = cl.a1_classify(CH[m])
    generic = [e for e in entries if e.anchor == "sphere-family"]
    assert [e.family for e in generic] == ["A1'", "A1''"]
    assert all(e.verdict == 2 and not e.mass_symmetric for e in generic)
    assert not [e for e in entries if e.anchor.endswith("mass-symmetric point")]
    null = [e for e in entries if e.anchor == "sphere-family null point"]
    assert [(e.family, e.param) for e in null] == [("A1''", Fraction(1, 2 * m - 1))]
    assert 0 in null[0].eigenvalues


# --- tubes about complex subspaces


def test_m3_two_type_cases():
    entries = cl.a2_two_type_solve(CP[3], 1)
    got = {e.anchor: (e.param, sorted(e.eigenvalues)) for e in entries}
    assert got["A2 case (a)"] == (1, [12, 16])
    assert got["A2 case (b)"] == (Fraction(3, 5), [Fraction(64, 5), Fraction(64, 3)])
    assert got["A2 case (c)"] == (Fraction(5, 3), [Fraction(64, 5), Fraction(64, 3)])
    assert [e.mass_symmetric for e in entries] == [True, False, False]


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_two_type_radii_closed_forms(m):
    for k in range(1, m - 1):
        K, L = 2 * k + 1, 2 * (m - 1 - k) + 1
        entries = cl.a2_two_type_solve(CP[m], k)
        params = sorted(e.param for e in entries)
        assert params == sorted({Fraction(K + 1, L + 1), Fraction(K, L + 2), Fraction(K + 2, L)})


def test_two_type_none_hyperbolic():
    assert cl.a2_two_type_solve(CH[4], 1) == []


@pytest.mark.parametrize("k, l", [(1, 1), (1, 2), (2, 3)])
def test_coincidence_product_oracle(k, l):
    # independent: expand the three coincidence factors with sympy
    t = sympy.symbols("t")
    K, L = 2 * k + 1, 2 * l + 1
    expr = ((L + 1) * t - (K + 1)) * (L * (L + 2) * t**2 - 2 * (L * K + K + L + 2) * t + K * (K + 2))
    want = [Fraction(int(x.p), int(x.q)) for x in reversed(sympy.Poly(sympy.expand(expr), t).monic().all_coeffs())]
    assert cl.a2_coincidence_poly(k, l, 1).monic() == Poly(want)


@pytest.mark.parametrize("m, k", [(3, 1), (4, 1), (4, 2), (5, 2)])
def test_radius_complement(m, k):
    rep = cl.radius_complement_check(m, k)
    assert rep["t_b matches"] and rep["t_c matches"] and rep["complement"]


# --- ruled-out class B tubes


@pytest.mark.parametrize("m", range(2, 9))
def test_class_b_two_type_condition_oracle(m):
    k2 = sympy.symbols("k2")
    n = 2 * m - 1
    factored = (k2 - 2 * (n + 1)) * (k2**2 + 4 * k2 - 2 * (n - 1) * (n + 3))
    want = [int(x) for x in reversed(sympy.Poly(sympy.expand(factored), k2).all_coeffs())]
    assert cl.b_two_type_cubic(m, 1) == Poly(want)
    f1, f2 = cl.b_two_type_factors(m, 1)
    assert f1 * f2 == cl.b_two_type_cubic(m, 1)


@pytest.mark.parametrize("m", range(2, 7))
def test_class_b_two_type_solutions(m):
    entries = cl.b_two_type_solve(CP[m])
    assert [e.anchor for e in entries] == ["B two-type (iv)", "B two-type (v)"]
    iv, v = entries
    assert iv.param == 4 * m
    assert sorted(iv.eigenvalues) == [Fraction(4 * (m * m - 1), m), 4 * (m + 1)]
    k2v = normalize(2 * (sqrt_exact(Fraction(2 * m * m - 1)) - 1))
    assert normalize(v.param - k2v) == 0
    assert all(e.mass_symmetric for e in entries)


def test_class_b_m5_rational_root():
    v = cl.b_two_type_solve(CP[5])[1]
    assert v.param == 12


def test_class_b_radii_strings():
    iv, v = cl.b_two_type_solve(CP[2])
    assert iv.radius == "cot r = sqrt(2) + sqrt(3)"
    assert v.radius == "cot r = sqrt(sqrt(6) + sqrt(7))"


@pytest.mark.parametrize("m", [2, 3, 4])
def test_class_b_radius_oracle(m):
    # cot r solves x - 1/x = kappa with x > 0
    for e in cl.b_two_type_solve(CP[m]):
        k2 = float(sympy.sympify(fmt(e.param)))
        x = (math.sqrt(k2) + math.sqrt(k2 + 4)) / 2
        cot2 = float(sympy.sympify(fmt(cl.cot_squared_b(e.param))))
        assert abs(x * x - cot2) < 1e-9


def test_class_b_none_hyperbolic():
    assert cl.b_two_type_solve(CH[2]) == []
    assert cl.b_two_type_solve(CH[5]) == []


def test_class_b_three_type_numbers():
    e = cl.b_three_type(CP[2], Fraction(4))
    assert e.verdict == 3
    want = {Fraction(8), normalize(20 + 4 * sqrt_exact(7)), normalize(20 - 4 * sqrt_exact(7))}
    assert {normalize(x) for x in e.eigenvalues} == want
    assert normalize(sum(e.eigenvalues) - 48) == 0


def test_class_b_three_type_symbolic():
    e = cl.b_three_type(CP[2])
    assert e.verdict == 3 and e.mass_symmetric


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_degenerate_point(m):
    pts = cl.b_degenerate_points(m, 1)
    assert len(pts) == 1
    assert normalize(pts[0] - 2 * (sqrt_exact(Fraction(2 * m * m - 1)) - 1)) == 0


@pytest.mark.parametrize("m", range(2, 7))
def test_cubic_factorization_at_tube(m):
    assert cl.b_factorization_at_tube(m)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_tube_components(m):
    rep = cl.b_tube_components(m)
    assert rep["x_u match"] and rep["x_v match"]


def test_case_v_closed_eigenvalues():
    rep = cl.b_case_b_closed(2)
    v = cl.b_two_type_solve(CP[2])[1]
    assert {normalize(x) for x in v.eigenvalues} == {rep["lambda_u"], rep["lambda_v"]}


# --- exclusions


@pytest.mark.parametrize("family, m", [("C", 5), ("C", 7), ("D", 9), ("E", 15)])
def test_cde_exclusion(family, m):
    rep = cl.cde_exclude(family, m)
    assert rep["f"] == "-kappa"
    assert rep["witness numerator"] == "-8*kappa^2 - 32"
    assert rep["positive roots"] == 0 and rep["excluded"]


def test_cde_wrong_dimension():
    with pytest.raises(DomainError):
        cl.cde_exclude("D", 5)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_horosphere(m):
    e = cl.horosphere_exclude(m)
    assert e.note == "minimal polynomial t^3"
    assert e.verdict == "not finite type within module"


# --- reports


@pytest.mark.parametrize("m", [2, 3, 4])
def test_theorem1_items(m):
    rep = cl.theorem_report("1", m)
    assert [i["item"] for i in rep["items"]] == ["(i)", "(ii)", "(iii)", "(iv)", "(v)"]
    items = {i["item"]: i["entries"] for i in rep["items"]}
    assert sorted({e["k"] for e in items["(ii)"]}) == list(range(1, m - 1))
    assert rep["banner"] == cl.BANNER


def test_theorem_reports_deterministic():
    assert cl.theorem_report("1", 3) == cl.theorem_report("1", 3)


def test_theorem_m2_only():
    with pytest.raises(DomainError):
        cl.theorem_report("3", 3)
    with pytest.raises(ValueError):
        cl.theorem_report("9", 2)


def test_theorem2_items():
    rep = cl.theorem_report("2", 3)
    assert [i["item"] for i in rep["items"]] == ["geodesic sphere", "tube about hyperplane"]


def test_mass_symmetric_report_lists_hyperbolic_null_tube():
    rep = cl.theorem_report("C1", 2)
    items = {i["item"]: i["entries"] for i in rep["items"]}
    assert [e["param"] for e in items["ch null 2-type"]] == ["1/3"]


def test_guard_report():
    rep = cl.theorem_report("C2", 2)
    assert all("0 roots" in e["note"] for e in rep["items"][0]["entries"])

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hopflab import block_laplace as bl
from hopflab.exact_scalar import normalize
from hopflab.model_catalog import ModelSpec
from hopflab.projector_embedding import SpaceForm

# --- chart oracle for the quadric Laplacian

a, b, c_, R = sympy.symbols("a b c R", positive=True)


def chart_laplacian(expr, coords, metric, vol):
    """``-(1/sqrt|g|) d_i (sqrt|g| g^ij d_j f)`` in a chart; ``vol`` is ``sqrt|g|``."""
    g = sympy.Matrix(metric)
    ginv = g.inv()
    assert sympy.simplify(vol**2 - abs(sympy.prod(g.diagonal()))) == 0
    out = 0
    for i, xi in enumerate(coords):
        inner = sum(ginv[i, j] * sympy.diff(expr, xj) for j, xj in enumerate(coords))
        out += sympy.diff(vol * inner, xi)
    return sympy.simplify(-out / vol)


CHARTS = {
    # S^2 of radius R
    "S2": (
        (1, 1, 1),
        lambda: [R * sympy.sin(a) * sympy.cos(b), R * sympy.sin(a) * sympy.sin(b), R * sympy.cos(a)],
        (a, b),
        lambda: sympy.diag(R**2, R**2 * sympy.sin(a) ** 2),
        lambda: R**2 * sympy.sin(a),
        1,
    ),
    # S^3 of radius R in Hopf coordinates
    "S3": (
        (1, 1, 1, 1),
        lambda: [
            R * sympy.cos(a) * sympy.cos(b), R * sympy.cos(a) * sympy.sin(b),
            R * sympy.sin(a) * sympy.cos(c_), R * sympy.sin(a) * sympy.sin(c_),
        ],
        (a, b, c_),
        lambda: sympy.diag(R**2, R**2 * sympy.cos(a) ** 2, R**2 * sympy.sin(a) ** 2),
        lambda: R**3 * sympy.cos(a) * sympy.sin(a),
        1,
    ),
    # hyperbolic plane: -x0^2 + x1^2 + x2^2 = -R^2
    "H2": (
        (-1, 1, 1),
        lambda: [R * sympy.cosh(a), R * sympy.sinh(a) * sympy.cos(b), R * sympy.sinh(a) * sympy.sin(b)],
        (a, b),
        lambda: sympy.diag(R**2, R**2 * sympy.sinh(a) ** 2),
        lambda: R**2 * sympy.sinh(a),
        -1,
    ),
    # the Lorentzian quadric -x0^2 - x1^2 + x2^2 + x3^2 = -R^2 of the hyperbolic tubes
    "H31": (
        (-1, -1, 1, 1),
        lambda: [
            R * sympy.cosh(a) * sympy.cos(b), R * sympy.cosh(a) * sympy.sin(b),
            R * sympy.sinh(a) * sympy.cos(c_), R * sympy.sinh(a) * sympy.sin(c_),
        ],
        (a, b, c_),
        lambda: sympy.diag(R**2, -(R**2) * sympy.cosh(a) ** 2, R**2 * sympy.sinh(a) ** 2),
        lambda: R**3 * sympy.cosh(a) * sympy.sinh(a),
        -1,
    ),
}


def to_sympy(poly, xs):
    out = 0
    for mono, coef in poly.terms.items():
        term = sympy.Rational(coef.numerator, coef.denominator)
        for x, e in zip(xs, mono):
            term *= x**e
        out += term
    return out


@pytest.mark.parametrize("name", list(CHARTS))
def test_quadric_laplacian_matches_chart(name):
    signs, xs_fn, coords, metric_fn, vol_fn, sign_rho = CHARTS[name]
    rho_val = Fraction(9)  # R = 3
    space = bl.ProductSpace((bl.Quadric(signs, sign_rho * rho_val),))
    X = [space.coord(i) for i in range(len(signs))]
    polys = [X[0], X[0] * X[1], X[0] * X[0] * X[1] + X[-1] * 2, X[1] * X[-1] * X[-1] - X[0] * 3 + 1]
    xs = [e.subs(R, 3) for e in xs_fn()]
    metric = metric_fn().subs(R, 3)
    vol = vol_fn().subs(R, 3)
    for p in polys:
        got = to_sympy(bl.quadric_poly_laplacian(p), xs)
        want = chart_laplacian(to_sympy(p, xs), coords, metric, vol)
        assert sympy.simplify(got - want) == 0


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_laplacian_is_linear(cs):
    space = bl.ProductSpace((bl.Quadric((1, 1, 1), Fraction(2)),))
    x, y, z = (space.coord(i) for i in range(3))
    f = x * y * cs[0] + z * cs[1]
    g = x * x * cs[2] + y * z * cs[3]
    lap = bl.quadric_poly_laplacian
    assert lap(f + g) == lap(f) + lap(g)


def test_reduction_is_canonical():
    space = bl.ProductSpace((bl.Quadric((1, 1, 1), Fraction(1)),))
    x, y, z = (space.coord(i) for i in range(3))
    assert x * x + y * y + z * z == 1


def test_non_basic_function_refused():
    tm = bl.TubeModel(1, 1, 1, Fraction(1))
    sp = tm.space()
    with pytest.raises(ValueError, match="basic"):
        bl.product_laplacian(sp.coord(0))


# --- tube blocks


@pytest.mark.parametrize("k, l", [(0, 1), (1, 0), (1, 1), (0, 2), (2, 0)])
@pytest.mark.parametrize("c", [1, -1])
def test_block_formulas_symbolic(k, l, c):
    rep = bl.verify_block_formulas(k, l, c)
    assert rep["ok"], rep["failures"]


@given(st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10))
def test_block_formulas_concrete_t(t):
    assert bl.verify_block_formulas(1, 1, 1, t, smax=2)["ok"]


@pytest.mark.parametrize("k, l", [(0, 1), (1, 1), (1, 2)])
@pytest.mark.parametrize("c", [1, -1])
def test_cubic_two_routes(k, l, c):
    tm = bl.TubeModel(k, l, c, Fraction(7, 3) if c == 1 else Fraction(9, 4))
    assert all(x == 0 for x in bl.cubic_residual_rep(tm))
    assert bl.cubic_residual_oracle(tm)


def test_cubic_symbolic():
    tm = bl.TubeModel(2, 1, -1, bl.t_symbol())
    assert all(x == 0 for x in bl.cubic_residual_rep(tm))


def test_m3_two_type_values():
    a_ = bl.a2_type_analysis(1, 1, 1, Fraction(1))
    assert a_.verdict == 2 and sorted(a_.distinct) == [12, 16] and a_.mass_symmetric
    b_ = bl.a2_type_analysis(1, 1, 1, Fraction(3, 5))
    assert b_.verdict == 2 and sorted(b_.distinct) == [Fraction(64, 5), Fraction(64, 3)]
    assert not b_.mass_symmetric


@pytest.mark.parametrize("k, l", [(2, 1), (3, 1), (3, 2)])
def test_null_three_type_hyperbolic(k, l):
    K, L = 2 * k + 1, 2 * l + 1
    rep = bl.a2_type_analysis(k, l, -1, Fraction(K, L))
    assert rep.null_type and rep.verdict == 3 and rep.mass_symmetric
    assert bl.special_points(k, l, -1)["u=0"] == [Fraction(K, L)]


@pytest.mark.parametrize("k, l", [(1, 1), (1, 2), (2, 1), (2, 3)])
def test_special_points_closed_forms(k, l):
    K, L = 2 * k + 1, 2 * l + 1
    pts = bl.special_points(k, l, 1)
    assert pts["v=w"] == [Fraction(K + 1, L + 1)]
    assert pts["u=w"] == [Fraction(K, L + 2)]
    assert pts["u=v"] == [Fraction(K + 2, L)]
    hyp = bl.special_points(k, l, -1)
    assert hyp["v=w"] == hyp["u=w"] == hyp["u=v"] == []


def test_mass_symmetric_points():
    assert bl.mass_symmetric_points(1, 1, 1) == [Fraction(1)]
    assert bl.mass_symmetric_points(1, 2, 1) == [Fraction(2, 3)]


@given(st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=12))
def test_generic_tube_is_three_type(t):
    rep = bl.a2_type_analysis(1, 1, 1, t)
    assert all(rep.checks.values())
    special = {Fraction(1), Fraction(3, 5), Fraction(5, 3)}
    assert rep.verdict == (2 if t in special else 3)


@pytest.mark.parametrize(
    "spec",
    [
        ModelSpec("A1", SpaceForm(1, 2), Fraction(1, 5)),
        ModelSpec("A1", SpaceForm(1, 3), Fraction(1, 3)),
        ModelSpec("A1", SpaceForm(1, 4), Fraction(7, 2)),
        ModelSpec("A1", SpaceForm(-1, 3), Fraction(9, 4)),
        ModelSpec("A1tube", SpaceForm(-1, 2), Fraction(1, 3)),
    ],
)
def test_engines_agree_on_spheres(spec):
    assert bl.cross_check_frame_vs_block(spec)["agree"]


def test_center_values():
    b1, b2 = bl.TubeModel(1, 1, 1, Fraction(1)).center()
    assert b1 == b2 == Fraction(1, 4)
    b1, b2 = bl.TubeModel(1, 1, 1, Fraction(3, 5)).center()
    assert (b1, b2) == (Fraction(3, 16), Fraction(5, 16))


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_hyperplane_tube_null_point(m):
    # the second closed-form eigenvalue vanishes at tanh^2 r = 1/(2m-1)
    spec = ModelSpec("A1tube", SpaceForm(-1, m), Fraction(1, 2 * m - 1))
    x = bl.cross_check_frame_vs_block(spec)
    assert x["agree"]
    assert 0 in x["block"]["eigenvalues"] and x["block"]["type"] == 2

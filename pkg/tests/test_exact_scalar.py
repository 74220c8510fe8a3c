import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hopflab.exact_scalar import (
    Poly,
    QuadExt,
    RadicalScalar,
    RatFunc,
    fmt,
    isolate_real_roots,
    normalize,
    parse_scalar,
    poly_roots,
    rational_roots,
    sign_of,
    sqrt_exact,
    to_decimal,
    to_float,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radicands = st.sampled_from([2, 3, 5, 6, 7, 10])


@st.composite
def radicals(draw):
    out = RadicalScalar.of(draw(small))
    for d in draw(st.lists(radicands, max_size=2)):
        out = out + draw(small) * RadicalScalar.sqrt_int(d)
    return out


def close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9)


# --- radicals


def test_sqrt_of_rationals():
    assert sqrt_exact(Fraction(9, 4)) == Fraction(3, 2)
    assert fmt(sqrt_exact(Fraction(8))) == "2*sqrt(2)"
    with pytest.raises(ValueError):
        sqrt_exact(Fraction(-1))


def test_sum_of_square_roots_squares_back():
    r = sqrt_exact(Fraction(2)) + sqrt_exact(Fraction(3))
    assert normalize(r * r) == normalize(5 + 2 * sqrt_exact(Fraction(6)))


def test_nested_radical_round_trip():
    x = parse_scalar("sqrt(sqrt(6)+sqrt(7))")
    assert isinstance(x, QuadExt)
    assert normalize(x * x - parse_scalar("sqrt(6)+sqrt(7)")) == 0
    assert close(to_float(x), math.sqrt(math.sqrt(6) + math.sqrt(7)))


def test_multiquadratic_square_root_is_found():
    # (sqrt(2) + sqrt(3))^2 = 5 + 2 sqrt(6)
    s = sqrt_exact(normalize(5 + 2 * sqrt_exact(Fraction(6))))
    assert normalize(s - sqrt_exact(Fraction(2)) - sqrt_exact(Fraction(3))) == 0


def test_sign_decides_close_values():
    a = parse_scalar("sqrt(2)+sqrt(3)")
    b = parse_scalar("sqrt(10)")  # 3.146 vs 3.162
    assert sign_of(a - b) == -1
    assert sign_of(normalize(a - a)) == 0


def test_to_decimal_fifteen_digits():
    assert to_decimal(parse_scalar("sqrt(2)"), 15) == "1.41421356237310"
    assert to_decimal(Fraction(9, 4)) == "2.25"


@given(radicals(), radicals())
def test_radical_field_ops_match_floats(a, b):
    assert close(to_float(a + b), to_float(a) + to_float(b))
    assert close(to_float(a * b), to_float(a) * to_float(b))
    if a != 0:
        assert normalize(a * (1 / a)) == 1


@given(radicals())
def test_sign_matches_float(a):
    f = to_float(a)
    if abs(f) > 1e-9:
        assert sign_of(a) == (1 if f > 0 else -1)


@given(radicals())
def test_fmt_reparses(a):
    assert normalize(parse_scalar(fmt(normalize(a))) - a) == 0


# --- parsing


@pytest.mark.parametrize("text", ["0.5", "1e3", "sqrt(-2)", "x", "2**0.5"])
def test_parse_rejects_inexact_or_invalid(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


def test_parse_accepts_documented_shapes():
    assert parse_scalar("3/7") == Fraction(3, 7)
    assert close(to_float(parse_scalar("sqrt(2)+sqrt(3)")), math.sqrt(2) + math.sqrt(3))
    assert close(to_float(parse_scalar("-2+sqrt(28)")), -2 + math.sqrt(28))


# --- polynomials


coeff_lists = st.lists(st.integers(-6, 6), min_size=1, max_size=5)


@given(coeff_lists, st.lists(st.integers(-6, 6), min_size=2, max_size=4))
def test_poly_divmod_identity(a, b):
    pa, pb = Poly(a), Poly(b)
    if pb.degree < 1:
        return
    q, r = divmod(pa, pb)
    assert q * pb + r == pa
    assert r.degree < pb.degree


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=4))
def test_rational_roots_recovers_roots(roots):
    p = Poly.from_roots(roots) * Poly([1, 0, 1])  # x^2 + 1 adds no real root
    assert sorted(set(rational_roots(p))) == sorted(set(roots))


@given(st.lists(st.integers(-8, 8), min_size=2, max_size=6))
def test_root_isolation_count_matches_sympy(cs):
    p = Poly(cs)
    if p.degree < 1:
        return
    x = sympy.Symbol("x")
    expr = sum(sympy.Integer(c) * x**i for i, c in enumerate(cs))
    # real_roots repeats a root by its multiplicity
    want = len(sympy.Poly(expr, x).real_roots())
    assert sum(m for _, m in isolate_real_roots(p)) == want


def test_isolation_respects_open_interval():
    p = Poly.from_roots([Fraction(0), Fraction(4), Fraction(2)])
    got = isolate_real_roots(p, Fraction(0), Fraction(4))
    assert len(got) == 1


def test_poly_roots_with_radical_hint():
    # x^2 - 4x - 24 has roots 2 +- 2 sqrt(7)
    p = Poly([-24, -4, 1])
    roots, rest = poly_roots(p, hints=[parse_scalar("2+2*sqrt(7)")])
    assert rest.degree < 1
    got = sorted(to_float(r) for r, _ in roots)
    assert close(got[0], 2 - 2 * math.sqrt(7)) and close(got[1], 2 + 2 * math.sqrt(7))


# --- rational functions


def test_ratfunc_normal_form():
    t = RatFunc.variable("t")
    x = (t * t - 1) / (t - 1)
    assert x == t + 1
    assert x.den == Poly([1])


def test_symbolic_square_root():
    k = RatFunc.variable("kappa")
    r = sqrt_exact(k * k + 4)
    assert isinstance(r, QuadExt)
    assert normalize(r * r - (k * k + 4)) == 0
    assert sqrt_exact(k * k) == k

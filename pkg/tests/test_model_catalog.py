from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopflab.exact_scalar import RatFunc, normalize, sqrt_exact
from hopflab.model_catalog import (
    DomainError,
    ModelSpec,
    catalog,
    family_constraints,
    mu_star,
    param_conversions,
    power_traces,
    spectrum,
)
from hopflab.projector_embedding import SpaceForm

CP = lambda m: SpaceForm(1, m)  # noqa: E731
CH = lambda m: SpaceForm(-1, m)  # noqa: E731


def families(rows):
    return [(r["family"], r.get("k")) for r in rows]


def test_catalog_hyperbolic_m3():
    assert families(catalog(CH(3))) == [("A0", None), ("A1'", None), ("A1''", None), ("A2", 1), ("B", None)]


def test_catalog_projective_m9_has_D():
    fams = [f for f, _ in families(catalog(CP(9)))]
    assert "D" in fams and "C" in fams and "E" not in fams


def test_catalog_hyperbolic_m2_has_no_A2():
    assert "A2" not in [f for f, _ in families(catalog(CH(2)))]


@pytest.mark.parametrize(
    "spec, reason",
    [
        (ModelSpec("A2", CP(3), Fraction(1), k=0), "A2 needs"),
        (ModelSpec("C", CP(4), Fraction(1)), "C needs"),
        (ModelSpec("D", CP(7), Fraction(1)), "D needs"),
        (ModelSpec("E", CP(9), Fraction(1)), "E needs"),
        (ModelSpec("B", CH(2), Fraction(4)), "outside"),
        (ModelSpec("A1", CH(2), Fraction(1, 2)), "outside"),
        (ModelSpec("A1tube", CH(2), Fraction(2)), "outside"),
        (ModelSpec("A0", CP(2)), "does not occur"),
        (ModelSpec("C", CH(5), Fraction(1)), "does not occur"),
    ],
)
def test_illegal_parameters(spec, reason):
    rep = family_constraints(spec)
    assert not rep["valid"] and reason in rep["reason"]
    with pytest.raises(DomainError):
        spectrum(spec)


def test_a2_endpoint_flags_degeneration():
    rep = family_constraints(ModelSpec("A2", CP(3), Fraction(1), k=2))
    assert "degenerates to A1" in rep["flags"]


def test_b_hyperbolic_coincidence_flag():
    rep = family_constraints(ModelSpec("B", CH(2), Fraction(3)))
    assert rep["valid"] and rep["flags"]


def test_b_spectrum_values_m2():
    sp = spectrum(ModelSpec("B", CP(2), Fraction(8)))
    assert sp.kappa == sqrt_exact(Fraction(8))
    vals = sorted(float(b.value) for b in sp.blocks)
    assert vals == pytest.approx([-(2**0.5 + 6**0.5) / 2, (6**0.5 - 2**0.5) / 2])
    assert [b.multiplicity for b in sp.blocks] == [1, 1]


@pytest.mark.parametrize("fam, m", [("C", 5), ("D", 9), ("E", 15), ("B", 4)])
def test_multiplicities_sum_to_n_minus_1(fam, m):
    sp = spectrum(ModelSpec(fam, CP(m), symbolic=True))
    assert sum(b.multiplicity for b in sp.blocks) == 2 * m - 2


@given(
    st.sampled_from(["B", "C", "D", "E"]),
    st.fractions(min_value=Fraction(1, 10), max_value=20, max_denominator=20),
)
def test_hopf_partner_relation(fam, k2):
    m = {"B": 3, "C": 5, "D": 9, "E": 15}[fam]
    spec = ModelSpec(fam, CP(m), k2)
    sp = spectrum(spec)
    kappa = sp.kappa
    for b in sp.blocks:
        mus = mu_star(b.value, kappa, 1)
        assert normalize((2 * b.value - kappa) * (2 * mus - kappa) - (kappa * kappa + 4)) == 0
        # the partner is an involution and matches the declared J-action
        assert normalize(mu_star(mus, kappa, 1) - b.value) == 0
        target = b.value if b.invariant else sp.blocks[b.j_action].value
        assert normalize(mus - target) == 0


@given(st.fractions(min_value=Fraction(1, 10), max_value=Fraction(39, 10), max_denominator=30))
def test_hopf_partner_relation_hyperbolic_b(k2):
    sp = spectrum(ModelSpec("B", CH(3), k2))
    for b in sp.blocks:
        mus = mu_star(b.value, sp.kappa, -1)
        assert normalize((2 * b.value - sp.kappa) * (2 * mus - sp.kappa) - (sp.kappa**2 - 4)) == 0


def test_power_traces_symbolic_a1():
    spec = ModelSpec("A1", CP(3), symbolic=True)
    sp = spectrum(spec)
    mu = RatFunc.variable("mu")
    assert power_traces(sp, 1) == normalize(mu - 1 / mu + 4 * mu)
    assert power_traces(sp, 2) == normalize((mu - 1 / mu) ** 2 + 4 * mu * mu)


def test_param_conversions():
    conv = param_conversions(ModelSpec("A1", CP(2), Fraction(3)))
    assert conv["r1_sq"] == Fraction(3, 4) and conv["r2_sq"] == Fraction(1, 4)
    tube = param_conversions(ModelSpec("A1tube", CH(2), Fraction(1, 4)))
    assert tube["t_block"] == 4 and tube["r1_sq"] == Fraction(4, 3) and tube["r2_sq"] == Fraction(1, 3)
    with pytest.raises(ValueError):
        param_conversions(ModelSpec("B", CP(2), Fraction(8)))


def test_mu_star_pole():
    with pytest.raises(ValueError):
        mu_star(Fraction(1), Fraction(2), 1)

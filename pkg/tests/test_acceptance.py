"""One PASS/FAIL line per acceptance criterion, printed straight to the terminal."""

from fractions import Fraction

import pytest

from hopflab import block_laplace as bl
from hopflab import classifier as cl
from hopflab import cli
from hopflab.delta_module import (
    build_frame_module,
    center_of_mass_A1,
    chen_type_evidence,
    frame_expand_x,
    verify_closed_iterates,
)
from hopflab.exact_scalar import Poly, RatFunc, isolate_real_roots, normalize, sqrt_exact
from hopflab.model_catalog import ModelSpec
from hopflab.projector_embedding import SpaceForm


@pytest.fixture
def verdict(capsys, request):
    def emit(n: int, ok: bool, what: str) -> bool:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {what}")
        return ok

    return emit


def _failures(checks):
    return [c.line() for c in checks if not c.ok]


def test_criterion_1_embedding(verdict):
    bad = _failures(cli.suite_embedding(samples=100, seed=7, ms=range(2, 6)))
    assert verdict(1, not bad, "projector embedding exact and float samples, c = +-1, m = 2..5"), bad


def test_criterion_2_block_oracle(verdict):
    bad = _failures(cli.suite_block(max_kl=4, smax=3))
    assert verdict(2, not bad, "block Laplacian iterates s = 1..3, k + l <= 4, symbolic t"), bad


def test_criterion_3_block_cubic(verdict):
    ok = True
    t = bl.t_symbol()
    for s in range(1, 5):
        for k in range(s + 1):
            l = s - k
            K, L = 2 * k + 1, 2 * l + 1
            for c in (1, -1):
                tm = bl.TubeModel(k, l, c, t)
                ok &= all(x == 0 for x in bl.cubic_residual_rep(tm))
                ev = tm.eigenvalues()
                r1, r2 = tm.r1_sq, tm.r2_sq
                ok &= normalize(ev["u"] - (c * K / r1 + L / r2)) == 0
                ok &= normalize(ev["v"] - 2 * c * (K + 1) / r1) == 0
                ok &= normalize(ev["w"] - 2 * (L + 1) / r2) == 0
            if k >= 1 and l >= 1:
                zeros = bl.special_points(k, l, -1)["u=0"]
                ok &= zeros == ([Fraction(K, L)] if K > L else [])
                if K > L:
                    ok &= bl.a2_type_analysis(k, l, -1, Fraction(K, L)).null_type
    assert verdict(3, ok, "tube cubic residual zero, closed-form roots, null 3-type exactly at t = K/L")


@pytest.mark.xfail(strict=True, reason="stated case (b) pair {64/3, 16} is not attained; the tube gives {64/3, 64/5}")
def test_criterion_4_three_dimensional_cases(verdict):
    entries = {e.anchor: e for e in cl.a2_two_type_solve(SpaceForm(1, 3), 1)}
    a_ok = sorted(entries["A2 case (a)"].eigenvalues) == [12, 16]
    b_got = sorted(entries["A2 case (b)"].eigenvalues)
    b_ok = b_got == [16, Fraction(64, 3)]
    c_entry = entries["A2 case (c)"]
    twin = bl.a2_type_analysis(1, 1, 1, 1 / c_entry.param)
    c_ok = sorted(c_entry.eigenvalues) == sorted(twin.distinct) == b_got
    ok = a_ok and b_ok and c_ok
    assert verdict(4, ok, f"case (a) {a_ok}; case (b) {[str(x) for x in b_got]} vs stated ['16', '64/3']; "
                          f"case (c) twin of (b) {c_ok}")


def test_criterion_4_attained_values():
    # the values that the tube actually has; recorded alongside the strict failure above
    entries = {e.anchor: e for e in cl.a2_two_type_solve(SpaceForm(1, 3), 1)}
    assert sorted(entries["A2 case (b)"].eigenvalues) == [Fraction(64, 5), Fraction(64, 3)]
    assert cl.radius_complement_check(3, 1)["complement"]


def test_criterion_5_sphere_family(verdict):
    ok = True
    for m in range(2, 7):
        for c in (1, -1):
            fams = ("A1",) if c == 1 else ("A1", "A1tube")
            for fam in fams:
                com = center_of_mass_A1(ModelSpec(fam, SpaceForm(c, m), symbolic=True))
                ok &= com["quadratic identity"] and com["Lw=0"] and com["w match"]
        cp = cl.a1_classify(SpaceForm(1, m))
        ok &= [e.param for e in cp if e.verdict == 1] == [Fraction(1, 2 * m + 1)]
        ok &= [e.param for e in cp if e.anchor.endswith("mass-symmetric point")] == [Fraction(1, m)]
        ch = cl.a1_classify(SpaceForm(-1, m))
        ok &= not [e for e in ch if e.anchor.endswith("mass-symmetric point")]
    assert verdict(5, ok, "(L - lu)(L - lv) v = lu lv w, Lw = 0, one-type at 1/(2m+1), centroid I/(m+1) only at 1/m")


def test_criterion_6_class_b_two_type(verdict):
    ok = True
    for m in range(2, 7):
        rep = chen_type_evidence(ModelSpec("B", SpaceForm(1, m), Fraction(4 * m)))
        ok &= rep.verdict == 2
        ok &= sorted(rep.eigenvalues) == [Fraction(4 * m * m - 4, m), 4 * (m + 1)]
        comp = cl.b_tube_components(m)
        ok &= comp["x_u match"] and comp["x_v match"]
    for m in range(2, 9):
        p70 = cl.b_two_type_cubic(m, 1)
        f1, f2 = cl.b_two_type_factors(m, 1)
        ok &= p70 == f1 * f2
        ok &= cl._strip_monomial(cl.b_krylov_locus(m, 1)) == p70.monic()
        hyp = cl.b_two_type_cubic(m, -1)
        ok &= cl._strip_monomial(cl.b_krylov_locus(m, -1)) == hyp.monic()
        ok &= not isolate_real_roots(hyp, Fraction(0), Fraction(4))
    assert verdict(6, ok, "kappa^2 = 4m eigenvalues and components, two-type condition factorization, "
                          "no hyperbolic root in (0, 4)")


def test_criterion_7_class_b_module(verdict):
    ok = True
    kappa = RatFunc.variable("kappa")
    for m in range(2, 7):
        for c in (1, -1):
            spec = ModelSpec("B", SpaceForm(c, m), symbolic=True)
            ok &= verify_closed_iterates(spec)["ok"]
            rep = chen_type_evidence(spec, cubic=cl.b_cubic_coefficients(m, c, kappa * kappa))
            ok &= rep.checks["cubic residual"]
        ok &= cl.b_three_type(SpaceForm(1, m)).verdict == 3
        pts = cl.b_degenerate_points(m, 1)
        ok &= len(pts) == 1 and normalize(pts[0] - 2 * (sqrt_exact(Fraction(2 * m * m - 1)) - 1)) == 0
    assert verdict(7, ok, "class-B iterates, cubic residual zero, degenerate coincidence at 2(sqrt(2m^2-1)-1)")


def test_criterion_8_horosphere(verdict):
    ok = True
    for m in (2, 3, 4):
        spec = ModelSpec("A0", SpaceForm(-1, m))
        mod = build_frame_module(spec)
        v = frame_expand_x(spec)
        ok &= mod.apply(v, 3).is_zero() and not mod.apply(v, 2).is_zero()
        ok &= chen_type_evidence(spec).min_poly == Poly([0, 0, 0, 1])
    assert verdict(8, ok, "horosphere minimal polynomial t^3, m = 2, 3, 4")


def test_criterion_9_excluded_classes(verdict):
    ok = True
    for fam, m in (("C", 5), ("C", 7), ("D", 9), ("E", 15)):
        rep = cl.cde_exclude(fam, m)
        ok &= rep["f"] == "-kappa" and rep["positive roots"] == 0 and rep["excluded"]
    assert verdict(9, ok, "C (m = 5, 7), D (m = 9), E (m = 15) eliminate to f = -kappa with a rootless witness")


def test_criterion_10_theorem_reports(verdict):
    ok = True
    for m in range(2, 6):
        rep = cl.theorem_report("1", m)
        items = {i["item"]: i["entries"] for i in rep["items"]}
        ok &= list(items) == ["(i)", "(ii)", "(iii)", "(iv)", "(v)"]
        ok &= sorted({e["k"] for e in items["(ii)"]}) == list(range(1, m - 1))
        ok &= sorted({e["k"] for e in items["(iii)"]}) == list(range(1, m - 1))
        ok &= len(items["(iv)"]) == 1 and len(items["(v)"]) == 1
    t2 = cl.theorem_report("2", 3)
    ok &= [[e["family"] for e in i["entries"]] for i in t2["items"]] == [["A1'"], ["A1''"]]
    t3 = cl.theorem_report("3", 2)
    ok &= [e["family"] for i in t3["items"] for e in i["entries"]] == ["B"]
    radii = sorted(x["radius"] for x in t3["excluded"] if x.get("family") == "B")
    ok &= radii == ["cot r = sqrt(2) + sqrt(3)", "cot r = sqrt(sqrt(6) + sqrt(7))"]
    t4 = cl.theorem_report("4", 2)
    ok &= [e["family"] for i in t4["items"] for e in i["entries"]] == ["B"]
    assert verdict(10, ok, "theorem reports: five items for m = 2..5, two hyperbolic branches, class B at m = 2")


def test_criterion_11_cross_engine(verdict):
    ok = True
    count = 0
    for m in range(2, 7):
        specs = [ModelSpec("A1", SpaceForm(1, m), t)
                 for t in (Fraction(1, 2 * m + 1), Fraction(1, m), Fraction(1, 2), Fraction(1), Fraction(7, 2))]
        specs += [ModelSpec("A1", SpaceForm(-1, m), t) for t in (Fraction(9, 4), Fraction(2), Fraction(5))]
        specs += [ModelSpec("A1tube", SpaceForm(-1, m), t)
                  for t in (Fraction(1, 2 * m - 1), Fraction(1, 4), Fraction(1, 2))]
        for spec in specs:
            ok &= bl.cross_check_frame_vs_block(spec)["agree"]
            count += 1
    ok &= cli.main(["--out", "/dev/null", "classify", "--space", "ch", "--m", "3", "--family", "A1''",
                    "--t", "1/5"]) == cli.EXIT_OK
    assert verdict(11, ok, f"frame and block engines agree on {count} sphere-family instances")


def test_criterion_12_auxiliary_identities(verdict):
    bad = _failures(cli.suite_traces(ms=range(2, 5)))
    assert verdict(12, not bad, "pairings with the position, trace identities, Simons value vs brute force"), bad

"""Type classification of the Hopf hypersurfaces with constant principal curvatures.

Every solver derives its special parameters from exact polynomial conditions
and re-checks each emitted entry with an engine: the frame module
(:mod:`hopflab.delta_module`) for A0/A1/B and the polynomial block Laplacian
(:mod:`hopflab.block_laplace`) for A1/A2.  "If and only if" statements are
certified relative to the catalog only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import block_laplace as bl
from .delta_module import (
    FrameVector,
    build_frame_module,
    center_of_mass_A1,
    chen_type_evidence,
    eigencomponents,
    frame_expand_x,
)
from .exact_scalar import (
    Poly,
    RatFunc,
    fmt,
    isolate_real_roots,
    normalize,
    poly_roots,
    rational_roots,
    sign_of,
    sqrt_exact,
    to_decimal,
)
from .linalg import MPoly, det
from .model_catalog import (
    DomainError,
    ModelSpec,
    family_constraints,
    mu_star,
    power_traces,
    spectrum,
)
from .projector_embedding import SpaceForm
from .tangent_algebra import check_E_conditions, e3_residual, e50_residual

BANNER = "relative to catalog"


@dataclass
class ClassificationEntry:
    family: str
    space: str
    m: int
    param: object
    radius: str
    verdict: object
    eigenvalues: list
    mass_symmetric: Optional[bool]
    anchor: str
    engines: list = field(default_factory=list)
    k: Optional[int] = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "space": self.space,
            "m": self.m,
            "param": self.param if isinstance(self.param, str) or self.param is None else fmt(self.param),
            "radius": self.radius,
            "type": self.verdict,
            "eigenvalues": [_eig_json(x) for x in self.eigenvalues],
            "mass_symmetric": self.mass_symmetric,
            "anchor": self.anchor,
            "engines": list(self.engines),
        }
        if self.k is not None:
            out["k"] = self.k
        if self.note:
            out["note"] = self.note
        return out


def _eig_json(x) -> dict:
    try:
        dec = to_decimal(x, 15)
    except (TypeError, ValueError):
        dec = None
    return {"exact": fmt(x), "decimal": dec}


class VerificationMismatch(RuntimeError):
    """Two engines disagree; treated as a build failure."""


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise VerificationMismatch(what)


# ---------------------------------------------------------------------------
# helpers


def even_to_square(x: RatFunc, var: str) -> RatFunc:
    """Rewrite an even rational function of ``s`` as a rational function of ``s^2``."""
    def half(p: Poly) -> Poly:
        if any(c != 0 for c in p.coeffs[1::2]):
            raise ValueError("rational function is not even")
        return Poly(p.coeffs[0::2])

    if not isinstance(x, RatFunc):
        return x
    return RatFunc(half(x.num), half(x.den), var)


def _numerator(x) -> Poly:
    x = normalize(x)
    if isinstance(x, RatFunc):
        return x.num
    return Poly([x])


def _positive_rational_roots(p: Poly, lo=Fraction(0), hi=None) -> list[Fraction]:
    if p.degree < 1:
        return []
    return [r for r in rational_roots(p) if r > lo and (hi is None or r < hi)]


def _interior_sample(lo, hi, avoid) -> Fraction:
    cands = [Fraction(2), Fraction(3), Fraction(5, 2), Fraction(7, 3)] if hi is None else [
        (lo + hi) / 2, (2 * lo + hi) / 3, (lo + 2 * hi) / 3
    ]
    for x in cands:
        if x > lo and (hi is None or x < hi) and all(x != a for a in avoid):
            return x
    raise ValueError("no sample point")


def cot_squared_b(kappa2):
    """``cot^2 r`` of a class-B tube in the projective space from ``kappa^2``.

    ``cot r - tan r = kappa`` gives ``cot^2 r = (kappa^2 + 2 + sqrt(kappa^2 (kappa^2 + 4)))/2``.
    """
    return normalize((kappa2 + 2 + sqrt_exact(normalize(kappa2 * (kappa2 + 4)))) / 2)


def cot_string(cot2) -> str:
    r = sqrt_exact(cot2)
    return f"cot r = {fmt(r)}"


# ---------------------------------------------------------------------------
# class A1


def a1_classify(sf: SpaceForm) -> list[ClassificationEntry]:
    """Geodesic spheres (and the tube about the hyperplane in the hyperbolic space)."""
    fams = ["A1"] if sf.c == 1 else ["A1", "A1tube"]
    out = []
    for fam in fams:
        out.extend(_a1_family(sf, fam))
    return out


def _a1_family(sf: SpaceForm, fam: str) -> list[ClassificationEntry]:
    c, m = sf.c, sf.m
    sym = ModelSpec(fam, sf, symbolic=True)
    rep = chen_type_evidence(sym)
    _require(rep.verdict == 2, f"{fam} symbolic type")
    lu, lv = (even_to_square(normalize(x), "t") for x in rep.eigenvalues)
    lo, hi = {("A1", 1): (Fraction(0), None), ("A1", -1): (Fraction(1), None), ("A1tube", -1): (Fraction(0), Fraction(1))}[(fam, c)]
    one_type = _positive_rational_roots(_numerator(lu - lv), lo, hi)
    w = center_of_mass_A1(sym)["w"]
    w_sb = even_to_square(normalize(w["SB"]), "t")
    mass_pts = _positive_rational_roots(_numerator(w_sb), lo, hi)
    null_pts = [t for lam in (lu, lv) for t in _positive_rational_roots(_numerator(lam), lo, hi)]
    display = ModelSpec(fam, sf, Fraction(2) if hi is None else Fraction(1, 2)).display
    entries = []
    sample = _interior_sample(lo, hi, one_type + mass_pts + null_pts)
    srep = bl.cross_check_frame_vs_block(ModelSpec(fam, sf, sample))
    if not srep["agree"]:
        raise VerificationMismatch(f"{fam} engines disagree at t={sample}")
    excl = ", ".join(str(x) for x in one_type)
    rng = family_constraints(sym)["range"]
    rvar = rng.split(" in ")[0].removeprefix("t = ")
    entries.append(
        ClassificationEntry(
            display, sf.name, m, f"{rng}" + (f", t != {excl}" if excl else ""),
            "any radius" + (f" except t = {excl}" if excl else ""),
            2, [lu, lv], False,
            "sphere-family", ["delta_module", "block_laplace"],
        )
    )
    for t in one_type:
        x = bl.cross_check_frame_vs_block(ModelSpec(fam, sf, t))
        _require(x["agree"] and x["frame"]["type"] == 1, f"{fam} one-type point")
        entries.append(
            ClassificationEntry(display, sf.name, m, t, f"{rvar} = {t}", 1, x["frame"]["eigenvalues"],
                                x["frame"]["mass_symmetric"], "sphere-family one-type point",
                                ["delta_module", "block_laplace"])
        )
    for t in mass_pts:
        x = bl.cross_check_frame_vs_block(ModelSpec(fam, sf, t))
        _require(x["agree"] and x["frame"]["mass_symmetric"], f"{fam} mass-symmetric point")
        entries.append(
            ClassificationEntry(display, sf.name, m, t, f"{rvar} = {t}", x["frame"]["type"],
                                x["frame"]["eigenvalues"], True, "sphere-family mass-symmetric point",
                                ["delta_module", "block_laplace"])
        )
    for t in null_pts:
        x = bl.cross_check_frame_vs_block(ModelSpec(fam, sf, t))
        _require(x["agree"] and x["frame"]["type"] == 2 and 0 in x["frame"]["eigenvalues"], f"{fam} null point")
        entries.append(
            ClassificationEntry(display, sf.name, m, t, f"{rvar} = {t}", 2, x["frame"]["eigenvalues"],
                                True, "sphere-family null point", ["delta_module", "block_laplace"],
                                note="null 2-type; mass-symmetric only after moving the constant into the harmonic part")
        )
    return entries


# ---------------------------------------------------------------------------
# class A2


def a2_coincidence_poly(k: int, l: int, c: int) -> Poly:
    """Product of the three linear/quadratic coincidence conditions in ``t``."""
    K, L = 2 * k + 1, 2 * l + 1
    lin = Poly([-c * (K + 1), L + 1])
    quad = Poly([K * (K + 2), -2 * c * (L * K + K + L + 2), L * (L + 2)])
    return lin * quad


def a2_spectrum_condition(spec: ModelSpec):
    """Compatibility of the two values of ``p`` from the principal-curvature conditions."""
    sp = spectrum(spec)
    c, n, kappa = spec.c, spec.n, sp.kappa
    f, f2 = power_traces(sp, 1), power_traces(sp, 2)
    cond = f * (f2 + f * f) + 2 * kappa * f * (f + kappa) - c * (n + 3) * f - 4 * c * kappa
    p62 = f2 + c * (3 * n + 13) + 4 * c * kappa / f
    p63 = 2 * f2 + f * f + 2 * kappa * (f + kappa) + 2 * c * (n + 5)
    return normalize(cond), normalize(f * (p63 - p62) - cond)


def a2_two_type_solve(sf: SpaceForm, k: int) -> list[ClassificationEntry]:
    c, m = sf.c, sf.m
    l = m - 1 - k
    if not 1 <= k <= m - 2:
        raise DomainError("A2 needs 1 <= k <= m-2")
    pts = bl.special_points(k, l, c)
    # the coincidence numerators multiply to (t + c)^3 times the closed-form product
    tm = bl.TubeModel(k, l, c, bl.t_symbol())
    ev = tm.eigenvalues()
    prod = Poly([1])
    for a, b in (("v", "w"), ("u", "w"), ("u", "v")):
        prod = prod * _numerator(ev[a] - ev[b])
    expected = Poly([c, 1]) ** 3 * a2_coincidence_poly(k, l, c)
    _require(prod.monic() == expected.monic(), "A2 coincidence factorization")
    out = []
    for case, key in (("a", "v=w"), ("b", "u=w"), ("c", "u=v")):
        for t in pts[key]:
            rep = bl.a2_type_analysis(k, l, c, t)
            _require(rep.verdict == 2 and all(rep.checks.values()), "A2 two-type verdict")
            lams = sorted(rep.distinct, reverse=True)
            spec = ModelSpec("A2", sf, t, k=k)
            res = check_E_conditions(spec, sum(lams, Fraction(0)), lams[0] * lams[1])
            _require(res["E1"] == 0 and all(x == 0 for x in res["E2"] + res["E3"]) and res["E4"] == 0,
                     "A2 component conditions")
            note = ""
            if case == "c":
                twin = bl.a2_type_analysis(l, k, c, 1 / t)
                _require(sorted(twin.distinct) == sorted(rep.distinct), "case (c) twin eigenvalues")
                note = f"same hypersurface as case (b) with k={l}, t={1 / t}"
            out.append(
                ClassificationEntry("A2", sf.name, m, t, f"cot^2 r = {t}", 2, lams, rep.mass_symmetric,
                                    f"A2 case ({case})", ["block_laplace", "tangent_algebra"], k=k, note=note)
            )
    return out


def radius_complement_check(m: int, k: int) -> dict:
    """The two non-mass-symmetric two-type radii and their complement relation."""
    l = m - 1 - k
    t_b = Fraction(2 * k + 1, 2 * (m - k) + 1)
    t_c = Fraction(2 * k + 3, 2 * (m - k) - 1)
    pts = bl.special_points(k, l, 1)
    twin = bl.special_points(l, k, 1)
    return {
        "t_b": t_b,
        "t_c": t_c,
        "t_b matches": pts["u=w"] == [t_b],
        "t_c matches": pts["u=v"] == [t_c],
        "complement": twin["u=w"] == [1 / t_c],
    }


# ---------------------------------------------------------------------------
# class B


def b_two_type_cubic(m: int, c: int) -> Poly:
    """Two-type condition of class B as a cubic in ``kappa^2``."""
    return Poly([32 * c * m * (m * m - 1), -8 * (m * m + 2 * m - 1), -4 * c * (m - 1), 1])


def b_two_type_factors(m: int, c: int) -> tuple[Poly, Poly]:
    n = 2 * m - 1
    return Poly([-2 * c * (n + 1), 1]), Poly([-2 * (n - 1) * (n + 3), 4 * c, 1])


def b_krylov_locus(m: int, c: int) -> Poly:
    """Numerator in ``kappa^2`` of ``det[v, Lv, L^2 v]`` for the symbolic class-B module."""
    spec = ModelSpec("B", SpaceForm(c, m), symbolic=True)
    mod = build_frame_module(spec)
    v = frame_expand_x(spec)
    cols = [v, mod.apply(v), mod.apply(v, 2)]
    d = normalize(det([[cols[j].coeffs[i] for j in range(3)] for i in range(3)]))
    return even_to_square(RatFunc(_numerator(d), var="kappa"), "k2").num


def _strip_monomial(p: Poly) -> Poly:
    while p.degree >= 1 and p.coeff(0) == 0:
        p = Poly(p.coeffs[1:])
    return p.monic()


def b_pq_two_type(m: int, c: int, kappa2) -> tuple:
    n = 2 * m - 1
    p = 4 * (n * n + 6 * n + 1) / kappa2 + 4 * c * n - kappa2
    q = 2 * c * (n + 3) * (4 * (n * n + 4 * n - 1) / kappa2 + 2 * c * (n - 1) - kappa2)
    return normalize(p), normalize(q)


def b_case_b_closed(m: int) -> dict:
    n = 2 * m - 1
    s = sqrt_exact(Fraction(2 * (n * n + 2 * n - 1)))
    return {
        "p": normalize((2 * (2 * n**3 + 7 * n**2 + 8 * n - 1) + (n * n + 10 * n + 5) * s) / ((n - 1) * (n + 3))),
        "q": normalize(Fraction(2, n - 1) * (2 * (n**3 + 4 * n**2 + 5 * n - 2) + (n * n + 6 * n + 1) * s)),
        "lambda_u": normalize(Fraction(2, n + 3) * (2 * s + (n + 1) ** 2)),
        "lambda_v": normalize(Fraction(n + 3, n - 1) * (s + 2 * n)),
    }


def b_tube_components(m: int) -> dict:
    """Eigencomponents of the tube with ``kappa^2 = 4m`` against their closed forms."""
    n = 2 * m - 1
    spec = ModelSpec("B", SpaceForm(1, m), Fraction(4 * m))
    mod = build_frame_module(spec)
    lu, lv = Fraction(4 * (m * m - 1), m), Fraction(4 * (m + 1))
    xu, xv = eigencomponents(mod, frame_expand_x(spec), [lu, lv])
    s = sqrt_exact(Fraction(2 * (n + 1)))
    exp_u = FrameVector.of([s / (2 * (n + 3)), Fraction(-(n + 1), 4 * (n + 3)), 0])
    exp_v = FrameVector.of([-s / (2 * (n + 3)), Fraction(n - 3, 4 * (n + 3)), Fraction(-1, 2 * (n + 3))])
    return {"x_u": xu, "x_v": xv, "x_u match": xu == exp_u, "x_v match": xv == exp_v}


def b_two_type_solve(sf: SpaceForm) -> list[ClassificationEntry]:
    c, m = sf.c, sf.m
    p70 = b_two_type_cubic(m, c)
    f1, f2 = b_two_type_factors(m, c)
    _require(p70 == f1 * f2, "two-type condition factorization")
    _require(_strip_monomial(b_krylov_locus(m, c)) == p70.monic(), "two-type condition from the module")
    if c == -1:
        _require(not isolate_real_roots(p70, Fraction(0), Fraction(4)), "hyperbolic class-B roots")
        return []
    roots = [r for r, _ in poly_roots(f1)[0] + poly_roots(f2)[0] if sign_of(r) > 0]
    out = []
    for i, k2 in enumerate(roots):
        spec = ModelSpec("B", sf, k2)
        rep = chen_type_evidence(spec)
        _require(rep.verdict == 2 and rep.mass_symmetric, "class-B two-type verdict")
        p, q = b_pq_two_type(m, c, k2)
        lams = sorted(rep.eigenvalues, key=lambda x: sign_of(x - rep.eigenvalues[0]))
        _require(normalize(sum(lams, Fraction(0)) - p) == 0 and normalize(lams[0] * lams[1] - q) == 0,
                 "class-B p, q")
        res = check_E_conditions(spec, p, q)
        _require(res["E1"] == 0 and all(x == 0 for x in res["E2"] + res["E3"]), "class-B component conditions")
        if k2 == 4 * m:
            item, expected = "iv", {Fraction(4 * (m * m - 1), m), Fraction(4 * (m + 1))}
            _require(set(normalize(x) for x in rep.eigenvalues) == expected, "case (iv) eigenvalues")
            comps = b_tube_components(m)
            _require(comps["x_u match"] and comps["x_v match"], "case (iv) components")
            cot2 = normalize((sqrt_exact(Fraction(m)) + sqrt_exact(Fraction(m + 1))) ** 2)
        else:
            item = "v"
            closed = b_case_b_closed(m)
            _require(normalize(closed["p"] - p) == 0 and normalize(closed["q"] - q) == 0, "case (v) p, q")
            _require(
                any(normalize(x - closed["lambda_u"]) == 0 for x in rep.eigenvalues)
                and any(normalize(x - closed["lambda_v"]) == 0 for x in rep.eigenvalues),
                "case (v) eigenvalues",
            )
            cot2 = normalize(sqrt_exact(Fraction(2 * m * m - 1)) + sqrt_exact(Fraction(2 * m * m - 2)))
        _require(normalize(cot_squared_b(k2) - cot2) == 0, "class-B radius")
        out.append(
            ClassificationEntry("B", sf.name, m, k2, cot_string(cot2), 2, rep.eigenvalues, True,
                                f"B two-type ({item})", ["delta_module", "tangent_algebra"])
        )
    return out


def b_cubic_coefficients(m: int, c: int, kappa2) -> tuple:
    n = 2 * m - 1
    k2 = kappa2
    s = k2 + 4 * c
    p = -s * (k2 + 2 * c * (3 * n + 1)) / k2
    q = 4 * s * (c * (n + 1) * k2 * k2 + (3 * n * n + 6 * n - 1) * k2 + 8 * c * (n * n - 1)) / (k2 * k2)
    r = -4 * (n - 1) * (n + 3) * s * s * (k2 + 2 * c * (n + 1)) / (k2 * k2)
    return normalize(p), normalize(q), normalize(r)


def b_cubic_roots(m: int, c: int, kappa2) -> tuple:
    n = 2 * m - 1
    k2 = kappa2
    s = k2 + 4 * c
    lu = 2 * c * (n - 1) * s / k2
    rad = sqrt_exact(normalize(s * (k2**3 - 12 * c * k2 * k2 + 64 * c * (n + 1) ** 2)))
    base = s * (k2 + 4 * c * (n + 1))
    return normalize(lu), normalize((base + rad) / (2 * k2)), normalize((base - rad) / (2 * k2))


def b_degenerate_points(m: int, c: int) -> list:
    """Positive ``kappa^2`` where ``lambda_u`` is also a root of the remaining quadratic."""
    kappa = RatFunc.variable("kappa")
    k2 = kappa * kappa
    p, q, r = b_cubic_coefficients(m, c, k2)
    lu = b_cubic_roots(m, c, k2)[0]
    cubic = Poly([r, q, p, Fraction(1)])
    quad, rem = divmod(cubic, Poly([-lu, Fraction(1)]))
    _require(rem.is_zero(), "lambda_u divides the cubic")
    val = normalize(quad(lu))
    num = even_to_square(RatFunc(_numerator(val), var="kappa"), "k2").num
    roots, rest = poly_roots(num)
    _require(rest.degree < 1, "degenerate locus splits")
    hi = Fraction(4) if c == -1 else None
    return [x for x, _ in roots if sign_of(x) > 0 and (hi is None or sign_of(x - hi) < 0)]


def b_three_type(sf: SpaceForm, kappa2=None) -> ClassificationEntry:
    """Class-B tube with the given ``kappa^2`` (symbolic when ``None``)."""
    c, m = sf.c, sf.m
    spec = ModelSpec("B", sf, kappa2, symbolic=kappa2 is None)
    rep_c = family_constraints(spec)
    if not rep_c["valid"]:
        raise DomainError(rep_c["reason"])
    k2 = spectrum(spec).kappa ** 2
    p, q, r = b_cubic_coefficients(m, c, k2)
    rep = chen_type_evidence(spec, cubic=(p, q, r))
    _require(rep.checks.get("cubic residual", False), "class-B cubic equation")
    closed = b_cubic_roots(m, c, k2)
    if rep.verdict == 3:
        _require(
            all(any(normalize(x - y) == 0 for y in rep.eigenvalues) for x in closed), "class-B three roots"
        )
        _require(normalize(rep.min_poly.coeff(2) - p) == 0 and normalize(rep.min_poly.coeff(1) - q) == 0
                 and normalize(rep.min_poly.coeff(0) - r) == 0, "class-B minimal polynomial")
    radius = "kappa = 2 tanh 2r" if c == -1 else (
        "r in (0, pi/4), cot r - tan r = kappa" if kappa2 is None else cot_string(cot_squared_b(normalize(k2)))
    )
    anchor = "B three-type"
    if rep.verdict != 3 and kappa2 is not None:
        f1, _ = b_two_type_factors(m, c)
        anchor = "B two-type (iv)" if normalize(f1(k2)) == 0 else "B two-type (v)"
    return ClassificationEntry("B", sf.name, m, "symbolic" if kappa2 is None else normalize(kappa2), radius,
                               rep.verdict, rep.eigenvalues, rep.mass_symmetric, anchor,
                               ["delta_module"])


def b_factorization_at_tube(m: int) -> bool:
    """At ``kappa^2 = 4m`` the cubic splits off the two-type minimal polynomial."""
    p, q, r = b_cubic_coefficients(m, 1, Fraction(4 * m))
    cubic = Poly([r, q, p, Fraction(1)])
    quad = Poly([Fraction(16 * (m - 1) * (m + 1) ** 2, m), Fraction(-4 * (m + 1) * (2 * m - 1), m), 1])
    return cubic == quad * Poly([-8 * (m + 1), 1])


# ---------------------------------------------------------------------------
# classes C, D, E and the horosphere


def cde_exclude(family: str, m: int) -> dict:
    """Eliminate ``p`` and ``f2`` from the component conditions; no positive ``kappa`` survives."""
    sf = SpaceForm(1, m)
    spec = ModelSpec(family, sf, symbolic=True)
    rep = family_constraints(spec)
    if not rep["valid"]:
        raise DomainError(rep["reason"])
    sp = spectrum(spec)
    n, c, kappa = sf.n, 1, sp.kappa
    names = ("p", "f", "f2")
    P, F, F2 = (MPoly.var(names, x) for x in names)
    by_label = {b.label: b.value for b in sp.blocks}

    def diff(form, a, b):
        ma, mb = by_label[a], by_label[b]
        ea = form(ma, mu_star(ma, kappa, c), kappa, F, F2, n, c, P)
        eb = form(mb, mu_star(mb, kappa, c), kappa, F, F2, n, c, P)
        return (ea - eb) / normalize(ma - mb)

    e13, e24 = diff(e3_residual, "mu1", "mu3"), diff(e3_residual, "mu2", "mu4")
    g13, g24 = diff(e50_residual, "mu1", "mu3"), diff(e50_residual, "mu2", "mu4")
    p_a = _clean(e13).solve_linear("p")
    p_b = _clean(e24).solve_linear("p")
    f_val = _clean(g13 - g24).solve_linear("f")
    _require(_clean(f_val - kappa * -1).is_zero(), f"{family}: f = -kappa")
    rel = _clean(p_a - p_b)
    # the remaining relation is linear in f; substitute f = -kappa
    witness = _clean(rel.subs("f", f_val)).constant_value()
    witness = normalize(witness)
    num = even_to_square(RatFunc(_numerator(witness), var="kappa"), "k2").num
    pos = isolate_real_roots(num, Fraction(0), None)
    return {
        "family": family,
        "m": m,
        "f": fmt(normalize(f_val.constant_value())),
        "relation": rel,
        "witness": fmt(witness),
        "witness numerator": num.to_str("kappa^2"),
        "positive roots": len(pos),
        "excluded": not pos,
    }


def _clean(p: MPoly) -> MPoly:
    return MPoly(p.vars, {k: normalize(v) for k, v in p.terms.items()})


def horosphere_exclude(m: int) -> ClassificationEntry:
    spec = ModelSpec("A0", SpaceForm(-1, m))
    mod = build_frame_module(spec)
    v = frame_expand_x(spec)
    _require(mod.apply(v, 3).is_zero() and not mod.apply(v, 2).is_zero(), "horosphere nilpotency")
    rep = chen_type_evidence(spec)
    return ClassificationEntry("A0", "ch", m, None, "horosphere", rep.verdict, [], None, "horosphere",
                               ["delta_module"], note=f"minimal polynomial {rep.min_poly.to_str('t')}")


# ---------------------------------------------------------------------------
# theorem reports


THEOREMS = ("1", "2", "3", "4", "C1", "C2")


def theorem_report(theorem: str, m: int = 2) -> dict:
    theorem = theorem.upper().lstrip("T")
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem}")
    if theorem in ("3", "4") and m != 2:
        raise DomainError("this statement concerns m = 2 only")
    build = {"1": _t1, "2": _t2, "3": _t3, "4": _t4, "C1": _c1, "C2": _c2}[theorem]
    items, excluded = build(m)
    return {
        "theorem": theorem,
        "m": m,
        "banner": BANNER,
        "items": [
            {"item": name, "entries": [e.to_json() for e in entries]} for name, entries in items
        ],
        "excluded": excluded,
    }


def _t1(m: int):
    sf = SpaceForm(1, m)
    a1 = a1_classify(sf)
    generic = [e for e in a1 if e.anchor == "sphere-family"]
    for e in generic:
        e.anchor = "T1.(i)"
    ii, iii = [], []
    # case (c) is listed under (iii): it is the case (b) tube with k and l exchanged
    for k in range(1, m - 1):
        for e in a2_two_type_solve(sf, k):
            if e.anchor.endswith("(a)"):
                e.anchor = "T1.(ii)"
                ii.append(e)
            else:
                e.anchor = "T1.(iii)"
                iii.append(e)
    b = b_two_type_solve(sf)
    iv = [e for e in b if e.anchor.endswith("(iv)")]
    v = [e for e in b if e.anchor.endswith("(v)")]
    for e in iv:
        e.anchor = "T1.(iv)"
    for e in v:
        e.anchor = "T1.(v)"
    excluded = _cde_exclusions(m)
    one = [e for e in a1 if e.verdict == 1]
    excluded += [{"family": "A1", "param": fmt(e.param), "reason": "1-type"} for e in one]
    return [("(i)", generic), ("(ii)", ii), ("(iii)", iii), ("(iv)", iv), ("(v)", v)], excluded


def _cde_exclusions(m: int) -> list:
    out = []
    for fam in ("C", "D", "E"):
        if family_constraints(ModelSpec(fam, SpaceForm(1, m), symbolic=True))["valid"]:
            rep = cde_exclude(fam, m)
            _require(rep["excluded"], f"{fam} exclusion")
            out.append({"family": fam, "reason": f"f = {rep['f']} contradicts witness {rep['witness']}"})
    return out


def _t2(m: int):
    sf = SpaceForm(-1, m)
    entries = a1_classify(sf)
    a1 = [e for e in entries if e.anchor == "sphere-family"]
    null = [e for e in entries if e.anchor == "sphere-family null point"]
    _require(all(e.verdict == 2 for e in a1) and len(a1) == 2, "hyperbolic sphere families")
    spheres = [e for e in a1 if e.family == "A1'"]
    tubes = [e for e in a1 if e.family == "A1''"]
    for e in spheres:
        e.anchor, e.radius = "T2.sphere", "any r > 0"
    for e in tubes:
        e.anchor, e.radius = "T2.tube", "any r > 0"
        e.note = "; ".join(f"null 2-type at {x.radius}" for x in null)
    excluded = [{"family": "A0", "reason": horosphere_exclude(m).verdict}]
    for k in range(1, m - 1):
        _require(not a2_two_type_solve(sf, k), "hyperbolic A2 two-type")
        excluded.append({"family": "A2", "k": k, "reason": "no coincident eigenvalues"})
    _require(not b_two_type_solve(sf), "hyperbolic B two-type")
    excluded.append({"family": "B", "reason": "no two-type root in (0, 4)"})
    return [("geodesic sphere", spheres), ("tube about hyperplane", tubes)], excluded


def _t3(m: int):
    sf = SpaceForm(1, m)
    entry = b_three_type(sf)
    _require(entry.verdict == 3 and entry.mass_symmetric, "class-B symbolic three-type")
    two = b_two_type_solve(sf)
    degenerate = b_degenerate_points(m, 1)
    _require(all(any(normalize(d - e.param) == 0 for e in two) for d in degenerate), "degenerate point")
    entry.anchor = "T3"
    entry.note = "excluded: " + "; ".join(e.radius for e in two)
    entry.param = "kappa^2 in (0, oo) except " + ", ".join(fmt(e.param) for e in two)
    excluded = [{"family": "A1", "reason": "types 1 and 2 only"}]
    excluded += [{"family": "B", "param": fmt(e.param), "radius": e.radius, "reason": "2-type"} for e in two]
    return [("class B", [entry])], excluded


def _t4(m: int):
    sf = SpaceForm(-1, m)
    entry = b_three_type(sf)
    _require(entry.verdict == 3 and entry.mass_symmetric, "class-B symbolic three-type")
    sp = spectrum(ModelSpec("B", sf, symbolic=True))
    f = power_traces(sp, 1)
    guard = even_to_square(RatFunc(_numerator(f * f - 4), var="kappa"), "k2").num
    _require(not isolate_real_roots(guard, Fraction(0), Fraction(4)), "(tr A)^2 != 4")
    entry.anchor = "T4"
    entry.param = "kappa^2 in (0, 4)"
    entry.radius = "any r > 0"
    entry.note = "(tr A)^2 != 4 on the whole family"
    excluded = [
        {"family": "A0", "reason": horosphere_exclude(m).verdict},
        {"family": "A1", "reason": "2-type"},
    ]
    return [("class B", [entry])], excluded


def _c1(m: int):
    cp = SpaceForm(1, m)
    items = []
    sphere = [e for e in a1_classify(cp) if e.anchor == "sphere-family mass-symmetric point"]
    items.append(("geodesic sphere", sphere))
    ii = []
    for k in range(1, m - 1):
        ii += [e for e in a2_two_type_solve(cp, k) if e.mass_symmetric]
    items.append(("(ii)", ii))
    items.append(("(iv), (v)", b_two_type_solve(cp)))
    ch = SpaceForm(-1, m)
    ch_a1 = a1_classify(ch)
    _require(not [e for e in ch_a1 if e.anchor == "sphere-family mass-symmetric point"], "hyperbolic centroid")
    # null 2-type tubes are mass-symmetric by convention only; no hyperbolic centroid equals I/(m+1)
    items.append(("ch null 2-type", [e for e in ch_a1 if e.anchor == "sphere-family null point"]))
    return items, [{"space": "ch", "reason": "no 2-type hypersurface with centroid I/(m+1)"}]


def _c2(m: int):
    """Guard ``(tr A)^2 != -4c`` evaluated on the class-B families."""
    out = []
    for c in (1, -1):
        sp = spectrum(ModelSpec("B", SpaceForm(c, m), symbolic=True))
        f = power_traces(sp, 1)
        num = even_to_square(RatFunc(_numerator(f * f + 4 * c), var="kappa"), "k2").num
        hi = Fraction(4) if c == -1 else None
        roots = isolate_real_roots(num, Fraction(0), hi)
        out.append(ClassificationEntry("B", "cp" if c == 1 else "ch", m, None, "", None, [], None,
                                       "C2 guard", ["model_catalog"],
                                       note=f"(tr A)^2 + 4c has {len(roots)} roots in range"))
    return [("guard", out)], []

"""The Laplacian acting on a three-dimensional frame module.

Basis: ``XI`` (the unit normal), ``SXX`` (second fundamental form on the
normal, ``sigma(xi, xi)``) and ``SB`` (the sum of ``sigma(e, e)`` over an
orthonormal basis of the holomorphic distribution).  For the families whose
distribution collapses to a single frame field under the Laplacian (A0, A1,
the A1 tube in the hyperbolic space, and B) the Laplacian maps this span into
itself; ``L`` is its exact 3x3 matrix, column ``j`` being the image of basis
vector ``j``.

The position satisfies ``x~ = I/(m+1) + v`` with ``v`` a frame vector; the
constant ``I`` is killed by the Laplacian and never enters ``L``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact_scalar import (
    Poly,
    RatFunc,
    fmt,
    normalize,
    poly_roots,
    sign_of,
    to_decimal,
)
from .linalg import (
    bilinear,
    det,
    krylov_minimal_polynomial,
    mat_vec,
    poly_at_matrix,
    vec_add,
    vec_scale,
    vec_sub,
)
from .model_catalog import ModelSpec, PrincipalSpectrum, power_traces, spectrum
from .projector_embedding import frame_gram, frame_position_pairing

LABELS = ("XI", "SXX", "SB")
FRAME_FAMILIES = ("A0", "A1", "A1tube", "B")


@dataclass(frozen=True)
class FrameVector:
    coeffs: tuple

    def __getitem__(self, label: str):
        return self.coeffs[LABELS.index(label)]

    def as_list(self) -> list:
        return list(self.coeffs)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs)

    def strings(self) -> dict[str, str]:
        return {k: fmt(v) for k, v in zip(LABELS, self.coeffs)}

    @classmethod
    def of(cls, xs: Sequence) -> FrameVector:
        return cls(tuple(normalize(x) for x in xs))


@dataclass
class DeltaModule:
    spec: ModelSpec
    spectrum: PrincipalSpectrum
    L: list
    gram: list
    position: list
    checks: dict = field(default_factory=dict)

    @property
    def c(self) -> int:
        return self.spec.c

    @property
    def n(self) -> int:
        return self.spec.n

    def apply(self, v: FrameVector, times: int = 1) -> FrameVector:
        xs = v.as_list()
        for _ in range(times):
            xs = mat_vec(self.L, xs)
        return FrameVector.of(xs)

    def pair(self, u: FrameVector, v: FrameVector):
        return normalize(bilinear(self.gram, u.as_list(), v.as_list()))


def _d_sums(sp: PrincipalSpectrum, fam: str, c: int):
    """Scalars ``s1, s2`` with ``sum_D A sigma(e,e)``-type contractions.

    For a single block of value ``mu`` they are ``mu`` and ``mu^2``; for the
    swapped pair of class B they come from ``mu + mu* = kappa`` and
    ``mu mu* = -c`` averaged over the two blocks.
    """
    kappa = sp.kappa
    if fam == "B":
        return -2 * c / kappa, 8 / (kappa * kappa) + c
    mu = sp.blocks[0].value
    return mu, mu * mu


def general_L(sp: PrincipalSpectrum, fam: str) -> list:
    c, n, kappa = sp.c, sp.n, sp.kappa
    f, f2 = power_traces(sp, 1), power_traces(sp, 2)
    s1, s2 = _d_sums(sp, fam, c)
    col_xi = [f2 + c * (n - 1), 2 * kappa - f, 2 * s1]
    col_sxx = [4 * c * kappa, 4 * c + 2 * f2 - 2 * kappa * kappa, 2 * c - 2 * s2]
    col_sb = [
        2 * c * (n + 3) * f - 8 * c * kappa,
        2 * c * (n - 1) + 4 * kappa * kappa - 4 * f2,
        2 * c * (n + 1) + 4 * s2,
    ]
    cols = [col_xi, col_sxx, col_sb]
    return [[normalize(cols[j][i]) for j in range(3)] for i in range(3)]


def b_direct_L(sp: PrincipalSpectrum) -> list:
    """Class-B matrix transcribed term by term from the three frame Laplacians."""
    c, n, kappa = sp.c, sp.n, sp.kappa
    f, f2 = power_traces(sp, 1), power_traces(sp, 2)
    k2 = kappa * kappa
    col_xi = [f2 + c * (n - 1), 2 * kappa - f, -4 * c / kappa]
    col_sxx = [4 * c * kappa, 2 * (8 * (n - 1) / k2 + c * (n + 1)), -16 / k2]
    col_sb = [
        2 * c * ((n - 1) * kappa - 2 * c * (n - 1) * (n + 3) / kappa),
        -2 * (16 * (n - 1) / k2 + c * (n - 1)),
        2 * (16 / k2 + c * (n + 3)),
    ]
    cols = [col_xi, col_sxx, col_sb]
    return [[normalize(cols[j][i]) for j in range(3)] for i in range(3)]


def build_frame_module(spec: ModelSpec) -> DeltaModule:
    if spec.family not in FRAME_FAMILIES:
        raise ValueError(
            "per-block Δ action underdetermined; use block_laplace (A2) or classifier (C/D/E)"
        )
    sp = spectrum(spec)
    L = general_L(sp, spec.family)
    gram = frame_gram(spec.sf)
    mod = DeltaModule(spec, sp, L, gram, frame_position_pairing(spec.sf))
    mod.checks["gram nonsingular"] = det(gram) != 0
    if spec.family == "B":
        direct = b_direct_L(sp)
        mod.checks["B direct transcription"] = all(
            direct[i][j] == L[i][j] for i in range(3) for j in range(3)
        )
    return mod


def frame_expand_x(spec: ModelSpec) -> FrameVector:
    """Frame part ``v`` of ``x~ - I/(m+1)``."""
    c, m = spec.c, spec.m
    return FrameVector.of([0, Fraction(-c, 2 * (m + 1)), Fraction(-c, 4 * (m + 1))])


def position_norm(mod: DeltaModule):
    """``<v, v>``; the hyperquadric value is ``cm/(2(m+1))``."""
    v = frame_expand_x(mod.spec)
    return mod.pair(v, v)


# ---------------------------------------------------------------------------
# closed forms of the iterated Laplacian


def expected_iterates(spec: ModelSpec) -> dict[int, list]:
    """Closed-form coefficients of ``Delta^s x~`` in the frame basis."""
    sp = spectrum(spec)
    c, n, kappa = spec.c, spec.n, sp.kappa
    f = power_traces(sp, 1)
    out: dict[int, list] = {1: [-f, Fraction(-1), Fraction(-1)]}
    if spec.family in ("A0", "A1", "A1tube"):
        mu = sp.blocks[0].value
        out[2] = [None, None, -2 * (n + 1) * (mu * mu + c)]
        return out
    k = kappa
    out[1] = [2 * c * (n - 1) / k - k, Fraction(-1), Fraction(-1)]
    out[2] = [
        16 * c * (n - 1) ** 2 / k**3 + 8 * n * (n - 1) / k - 2 * c * (n + 1) * k - k**3,
        4 * (n - 1) * (n + 3) / k**2 - 4 * c - k**2,
        -2 * (n + 1) * (4 / k**2 + c),
    ]
    out[3] = [
        128 * c * (n - 1) ** 3 / k**5
        + 128 * (n - 1) * (n * n + 1) / k**3
        + 8 * c * (n - 1) * (3 * n * n + 2 * n + 3) / k
        - 16 * n * k
        - 4 * c * (n + 1) * k**3
        - k**5,
        32 * (n - 1) * (n + 3) * (3 * n + 1) / k**4
        + 8 * c * (n - 1) * (3 * n * n + 14 * n + 3) / k**2
        + 8 * (n * n - 4 * n + 1)
        - 2 * c * (3 * n + 1) * k**2
        - k**4,
        -(128 * (n + 1) ** 2 / k**4 + 48 * c * (n + 1) ** 2 / k**2 + 4 * (n - 1) * (n + 3) - 4 * c * k**2),
    ]
    return out


def verify_closed_iterates(spec: ModelSpec) -> dict:
    """Residuals ``L^s v - closed form`` per coefficient; ``None`` entries are not quoted."""
    mod = build_frame_module(spec)
    v = frame_expand_x(spec)
    rep: dict = {"ok": True, "residuals": {}}
    for s, expected in expected_iterates(spec).items():
        got = mod.apply(v, s)
        res = {}
        for lab, g, e in zip(LABELS, got.coeffs, expected):
            if e is None:
                continue
            r = normalize(g - e)
            res[lab] = r
            if r != 0:
                rep["ok"] = False
        rep["residuals"][s] = res
    return rep


# ---------------------------------------------------------------------------
# minimal polynomial and type


def minimal_polynomial(mod: DeltaModule, v: FrameVector) -> Poly:
    return krylov_minimal_polynomial(mod.L, v.as_list())


def closed_form_eigenvalues(spec: ModelSpec) -> list:
    """Candidate eigenvalues used as hints when splitting the minimal polynomial."""
    sp = spectrum(spec)
    c, n = spec.c, spec.n
    if spec.family in ("A0", "A1", "A1tube"):
        mu = sp.blocks[0].value
        t = mu * mu
        return [2 * (n + 1) * (t + c), (t + c) * (n * t + c) / t, Fraction(0)]
    k2 = sp.kappa * sp.kappa
    return [2 * c * (n - 1) * (k2 + 4 * c) / k2, Fraction(0)]


def _is_symbolic(x) -> bool:
    x = normalize(x)
    if isinstance(x, RatFunc):
        return not x.is_constant()
    base = getattr(x, "a", None)
    return base is not None and (_is_symbolic(x.a) or _is_symbolic(x.b))


@dataclass
class TypeReport:
    family: str
    space: str
    m: int
    param: object
    min_poly: Poly
    eigenvalues: list
    components: list
    kernel_residual: Optional[FrameVector]
    verdict: object
    mass_symmetric: Optional[bool]
    witness: str = ""
    null_type: bool = False
    checks: dict = field(default_factory=dict)

    @property
    def chen_type(self):
        return self.verdict

    def to_json(self) -> dict:
        var = "t"
        return {
            "family": self.family,
            "space": self.space,
            "m": self.m,
            "param": None if self.param is None else fmt(self.param),
            "min_poly": self.min_poly.to_str(var),
            "eigenvalues": [
                {"exact": fmt(x), "decimal": _decimal(x)} for x in self.eigenvalues
            ],
            "type": self.verdict,
            "mass_symmetric": self.mass_symmetric,
            "null_type": self.null_type,
            "residual": None if self.kernel_residual is None else self.kernel_residual.strings(),
            "witness": self.witness,
            "checks": {k: _jsonable(v) for k, v in self.checks.items()},
        }


def _decimal(x):
    try:
        return to_decimal(x, 15)
    except (TypeError, ValueError):
        return None


def _jsonable(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return fmt(v)


def split_roots(p: Poly, hints: Sequence = ()) -> tuple[list[tuple[object, int]], Poly, str]:
    """Roots with multiplicity; a negative discriminant leaves the factor unsplit."""
    roots, rest = poly_roots(p, hints=[h for h in hints])
    return roots, rest, "" if rest.degree < 1 else f"unsplit factor {rest.to_str('t')}"


def eigencomponents(mod: DeltaModule, v: FrameVector, eigenvalues: Sequence) -> list[FrameVector]:
    """Lagrange projections of ``v`` onto the eigenvalues (distinct, exact)."""
    lams = [normalize(x) for x in eigenvalues]
    for i in range(len(lams)):
        for j in range(i):
            if lams[i] == lams[j]:
                raise ValueError("repeated eigenvalues")
    out = []
    for i, li in enumerate(lams):
        p = Poly([1])
        scale = Fraction(1)
        for j, lj in enumerate(lams):
            if j != i:
                p = p * Poly([-lj, 1])
                scale = scale * (li - lj)
        comp = poly_at_matrix(p, mod.L, v.as_list())
        out.append(FrameVector.of(vec_scale(comp, 1 / scale)))
    return out


def _real_quadratic_ok(p: Poly) -> bool:
    if p.degree != 2:
        return True
    disc = normalize(p.coeff(1) ** 2 - 4 * p.coeff(0) * p.coeff(2))
    if _is_symbolic(disc):
        return True
    return sign_of(disc) > 0


def chen_type_evidence(spec: ModelSpec, cubic: Optional[tuple] = None) -> TypeReport:
    """Type verdict from the minimal polynomial of ``L`` on the cyclic span of ``v``.

    ``cubic = (p, q, r)`` additionally checks ``L^3 v + p L^2 v + q L v + r v = 0``.
    """
    mod = build_frame_module(spec)
    v = frame_expand_x(spec)
    P = minimal_polynomial(mod, v)
    checks = dict(mod.checks)
    if cubic is not None:
        p, q, r = cubic
        res = vec_add(
            vec_add(mod.apply(v, 3).as_list(), vec_scale(mod.apply(v, 2).as_list(), p)),
            vec_add(vec_scale(mod.apply(v).as_list(), q), vec_scale(v.as_list(), r)),
        )
        checks["cubic residual"] = FrameVector.of(res).is_zero()
    report = TypeReport(
        spec.display, spec.sf.name, spec.m, spec.param, P, [], [], None, None, None, checks=checks
    )
    if not _real_quadratic_ok(_nonzero_part(P)):
        report.verdict = "not finite type within module"
        report.witness = "minimal polynomial has non-real roots"
        return report
    roots, rest, note = split_roots(P, closed_form_eigenvalues(spec))
    if rest.degree >= 1:
        report.verdict = "undecided"
        report.witness = note
        return report
    if any(mult > 1 for _, mult in roots):
        report.verdict = "not finite type within module"
        report.witness = f"repeated root in minimal polynomial {P.to_str('t')}"
        report.mass_symmetric = False
        return report
    lams = [r for r, _ in roots]
    comps = eigencomponents(mod, v, lams)
    nonzero = [(lam, comp) for lam, comp in zip(lams, comps) if lam != 0]
    kernel = next((comp for lam, comp in zip(lams, comps) if lam == 0), FrameVector.of([0, 0, 0]))
    report.eigenvalues = [lam for lam, _ in nonzero]
    report.components = [comp for _, comp in nonzero]
    report.kernel_residual = kernel
    report.verdict = len(nonzero)
    report.mass_symmetric = kernel.is_zero()
    if spec.family in ("A1", "A1tube") and not kernel.is_zero():
        # the closed-form constant stays regular where lambda_v vanishes; any excess is harmonic
        excess = FrameVector.of(vec_sub(kernel.as_list(), a1_closed_components(spec)["w"].as_list()))
        if not excess.is_zero():
            report.null_type = True
            report.eigenvalues.append(Fraction(0))
            report.components.append(excess)
            report.kernel_residual = a1_closed_components(spec)["w"]
            report.verdict = len(nonzero) + 1
            # a harmonic component lets the constant be moved to I/(m+1)
            report.mass_symmetric = True
    total = [Fraction(0)] * 3
    for comp in comps:
        total = vec_add(total, comp.as_list())
    checks["partition"] = FrameVector.of(vec_sub(total, v.as_list())).is_zero()
    checks["eigen"] = all(
        FrameVector.of(vec_sub(mod.apply(comp).as_list(), vec_scale(comp.as_list(), lam))).is_zero()
        for lam, comp in zip(lams, comps)
    )
    return report


def _nonzero_part(P: Poly) -> Poly:
    while P.degree >= 1 and P.coeff(0) == 0:
        P = Poly(P.coeffs[1:])
    return P


# ---------------------------------------------------------------------------
# A1 components and center of mass


def a1_closed_components(spec: ModelSpec) -> dict:
    """Closed-form eigencomponents and kernel residual of the geodesic-sphere family."""
    sp = spectrum(spec)
    c, m, n = spec.c, spec.m, spec.n
    mu = sp.blocks[0].value
    t = mu * mu
    s = t + c
    x_u = [
        Fraction(m - 1) / (4 * m * s * s) * (-4 * c * mu),
        Fraction(m - 1) / (4 * m * s * s) * (2 * t),
        Fraction(m - 1) / (4 * m * s * s) * (-s / (m - 1)),
    ]
    x_v = [-mu / (s * s) * (t - c), -mu / (s * s) * mu, Fraction(0)]
    v = frame_expand_x(spec).as_list()
    scale = (m * t - c) / (m * s * s)
    w = [scale * (mu + s * v[0]), scale * (Fraction(1, 2) + s * v[1]), scale * s * v[2]]
    return {
        "lambda_u": normalize(2 * (n + 1) * s),
        "lambda_v": normalize(s * (n * t + c) / t),
        "x_u": FrameVector.of(x_u),
        "x_v": FrameVector.of(x_v),
        "w": FrameVector.of(w),
    }


def center_of_mass_A1(spec: ModelSpec) -> dict:
    """Kernel residual ``w = v - x_u - x_v`` against its closed form.

    ``(L - lambda_u)(L - lambda_v) v = lambda_u lambda_v w`` and ``L w = 0``.
    """
    if spec.family not in ("A1", "A1tube"):
        raise ValueError("center of mass formula needs an A1 model")
    mod = build_frame_module(spec)
    v = frame_expand_x(spec)
    cf = a1_closed_components(spec)
    lu, lv = cf["lambda_u"], cf["lambda_v"]
    quad = Poly([lu * lv, -(lu + lv), 1])
    lhs = FrameVector.of(poly_at_matrix(quad, mod.L, v.as_list()))
    w = cf["w"]
    rhs = FrameVector.of(vec_scale(w.as_list(), lu * lv))
    out = {
        "w": w,
        "quadratic identity": FrameVector.of(vec_sub(lhs.as_list(), rhs.as_list())).is_zero(),
        "Lw=0": mod.apply(w).is_zero(),
        "mass_symmetric": w.is_zero(),
    }
    if normalize(lu - lv) != 0:
        xu, xv = eigencomponents(mod, v, [lu, lv, Fraction(0)])[:2]
        out["x_u match"] = xu == cf["x_u"]
        out["x_v match"] = xv == cf["x_v"]
        rest = FrameVector.of(vec_sub(vec_sub(v.as_list(), xu.as_list()), xv.as_list()))
        out["w match"] = rest == w
    return out


# ---------------------------------------------------------------------------
# pairings with the position


def inner_product_identities(spec: ModelSpec) -> dict:
    """``<Delta x~, x~>`` and ``<Delta^2 x~, x~>`` by two routes each.

    Route one pairs with the position vector directly; route two goes through
    the frame Gram matrix using ``x~ = I/(m+1) + v`` and that frame fields are
    trace-free.
    """
    mod = build_frame_module(spec)
    v = frame_expand_x(spec)
    c, n = spec.c, spec.n
    f = power_traces(mod.spectrum, 1)
    out = {}
    expected = {1: Fraction(n), 2: normalize(f * f + 2 * c * (n * n + 2 * n - 1))}
    for s in (1, 2):
        w = mod.apply(v, s)
        direct = normalize(sum((a * b for a, b in zip(w.coeffs, mod.position)), Fraction(0)))
        via_gram = mod.pair(w, v)
        out[s] = {
            "position": direct,
            "gram": via_gram,
            "expected": expected[s],
            "ok": direct == expected[s] and via_gram == expected[s],
        }
    return out

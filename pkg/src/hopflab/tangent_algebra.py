"""Matrix models of the tangent space of a Hopf hypersurface.

Basis index 0 is the structure vector ``U``; the holomorphic distribution
``D`` follows block by block.  Inside a J-invariant block ``S`` rotates
consecutive pairs ``(e, Se)``; between two swapped blocks it is the signed swap
``e -> Se``, ``Se -> -e``.  All entries are exact scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_scalar import normalize, sign_of
from .linalg import (
    Matrix,
    diag,
    dot,
    mat_add,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_vec,
    trace,
    zeros,
)
from .model_catalog import (
    CLASS_A,
    ModelSpec,
    PrincipalSpectrum,
    mu_star,
    power_traces,
    spectrum,
)


@dataclass
class TangentModel:
    n: int
    c: int
    A: Matrix
    S: Matrix
    spectrum: PrincipalSpectrum
    block_slices: list[range]
    family: str = ""

    @property
    def U(self) -> list:
        v = [Fraction(0)] * self.n
        v[0] = Fraction(1)
        return v

    @property
    def d_indices(self) -> range:
        return range(1, self.n)

    def basis(self, i: int) -> list:
        v = [Fraction(0)] * self.n
        v[i] = Fraction(1)
        return v


def build_matrices(sp: PrincipalSpectrum, family: str = "") -> TangentModel:
    """Block-diagonal ``A`` and the structure tensor ``S`` for a spectrum."""
    n = sp.n
    values = [sp.kappa]
    slices = []
    pos = 1
    for b in sp.blocks:
        if b.invariant and b.multiplicity % 2:
            raise ValueError(f"odd multiplicity {b.multiplicity} in a J-invariant block")
        slices.append(range(pos, pos + b.multiplicity))
        values.extend([b.value] * b.multiplicity)
        pos += b.multiplicity
    if pos != n:
        raise ValueError(f"multiplicities sum to {pos - 1}, expected {n - 1}")
    S = zeros(n)
    for i, b in enumerate(sp.blocks):
        sl = slices[i]
        if b.invariant:
            for a in range(sl.start, sl.stop, 2):
                S[a + 1][a] = Fraction(1)
                S[a][a + 1] = Fraction(-1)
        else:
            j = b.j_action
            partner = sp.blocks[j]
            if partner.multiplicity != b.multiplicity or partner.j_action != i:
                raise ValueError("swapped blocks must pair with equal multiplicity")
            if j < i:
                continue
            for a, bb in zip(sl, slices[j]):
                S[bb][a] = Fraction(1)
                S[a][bb] = Fraction(-1)
    return TangentModel(n, sp.c, diag(values), S, sp, slices, family)


def model(spec: ModelSpec) -> TangentModel:
    return build_matrices(spectrum(spec), spec.family)


def structure_residuals(tm: TangentModel) -> dict[str, bool]:
    """``SU = 0``, ``S^2 = -Id + U U^T``, ``AU = kappa U``, ``S`` skew."""
    n = tm.n
    s2 = mat_mul(tm.S, tm.S)
    target = [[(-1 if i == j else 0) + (1 if i == j == 0 else 0) for j in range(n)] for i in range(n)]
    su = mat_vec(tm.S, tm.U)
    au = mat_vec(tm.A, tm.U)
    return {
        "SU=0": all(x == 0 for x in su),
        "S^2=-Id+UU": all(s2[i][j] == target[i][j] for i in range(n) for j in range(n)),
        "AU=kappaU": au[0] == tm.spectrum.kappa and all(x == 0 for x in au[1:]),
        "S skew": all(tm.S[i][j] == -tm.S[j][i] for i in range(n) for j in range(n)),
    }


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def trace_identities(tm: TangentModel) -> dict:
    """Matrix traces next to their closed forms in ``kappa, f, f2``."""
    A, S, c, n = tm.A, tm.S, tm.c, tm.n
    kappa = tm.spectrum.kappa
    f = power_traces(tm.spectrum, 1)
    f2 = power_traces(tm.spectrum, 2)
    SA = mat_mul(S, A)
    A2 = mat_mul(A, A)
    out = {
        "tr(SAS)": (normalize(trace(mat_mul(SA, S))), normalize(kappa - f)),
        "tr(SA^2S)": (normalize(trace(mat_mul(mat_mul(S, A2), S))), normalize(kappa**2 - f2)),
        "tr((SA)^2)": (normalize(trace(mat_mul(SA, SA))), normalize(kappa**2 - kappa * f - (n - 1) * c)),
    }
    return out


# ---------------------------------------------------------------------------
# conditions for the quadratic Laplacian relation


def e1_residual(kappa, f, f2, n, c, p, q):
    rhs = q + kappa * f * (f2 + 3 * c * (n + 3)) - 4 * c * f2 + 4 * n * (n + 3)
    return rhs - (2 * c * (n + 1) + kappa * f) * p


def e2_residual(mu, mus, kappa, f, f2, n, c, p, q):
    rhs = (
        q
        + 2 * c * f * f
        + 4 * c * f * mus
        + 4 * c * mus * mus
        + 4 * c * mu * mu
        + (f * (f2 + 3 * c * (n + 3)) - 4 * c * kappa) * mu
        + 4 * (n + 1) * (n + 3)
    )
    return rhs - (2 * c * (n + 2) + mu * f) * p


def e3_residual(mu, mus, kappa, f, f2, n, c, p):
    rhs = (
        -4 * c * kappa
        + 4 * mu * (f * mu + mu * mu + f * mus + mus * mus)
        + 2 * mu * (2 * f2 + f * f + 2 * c * (n + 3) - 2 * f * kappa - 2 * kappa * kappa)
        + f * (f2 + c * (3 * n + 5))
    )
    return rhs - (f + 2 * mu) * p


def e50_residual(mu, mus, kappa, f, f2, n, c, p):
    """``q`` eliminated between the first two conditions."""
    rhs = (
        4 * c * (mu * mu + mus * mus)
        + 4 * c * f * mus
        - 4 * c * kappa * mu
        + 4 * (n + 3)
        + 4 * c * f2
        + 2 * c * f * f
        + f * (mu - kappa) * (f2 + 3 * c * (n + 3))
    )
    return rhs - (2 * c + f * (mu - kappa)) * p


def distinct_d_values(sp: PrincipalSpectrum) -> list:
    out = []
    for b in sp.blocks:
        if not any(b.value == v for v in out):
            out.append(b.value)
    return out


def check_E_conditions(spec: ModelSpec, p, q) -> dict:
    """Residuals (right side minus left side) of the four component conditions."""
    sp = spectrum(spec)
    c, n = spec.c, spec.n
    kappa = sp.kappa
    f, f2 = power_traces(sp, 1), power_traces(sp, 2)
    out = {"E1": normalize(e1_residual(kappa, f, f2, n, c, p, q)), "E2": [], "E3": []}
    for mu in distinct_d_values(sp):
        mus = mu_star(mu, kappa, c)
        out["E2"].append(normalize(e2_residual(mu, mus, kappa, f, f2, n, c, p, q)))
        out["E3"].append(normalize(e3_residual(mu, mus, kappa, f, f2, n, c, p)))
    if spec.family in CLASS_A:
        out["E4"] = e4_residual(model(spec))
    else:
        out["E4"] = "not checkable"
    return out


# ---------------------------------------------------------------------------
# covariant derivative of A for class A


def nr_nabla_A(tm: TangentModel, x: list, y: list) -> list:
    """``(nabla_X A) Y = -c [<SX, Y> U + <U, Y> SX]`` (class A only)."""
    if tm.family not in CLASS_A:
        raise ValueError("∇A unavailable")
    sx = mat_vec(tm.S, x)
    a = dot(sx, y)
    b = y[0]
    return [-tm.c * (a * u + b * s) for u, s in zip(tm.U, sx)]


def nabla_matrix(tm: TangentModel, x: list) -> Matrix:
    """Matrix of ``Y -> (nabla_X A) Y``."""
    cols = [nr_nabla_A(tm, x, tm.basis(j)) for j in range(tm.n)]
    return [[cols[j][i] for j in range(tm.n)] for i in range(tm.n)]


def codazzi_residual(tm: TangentModel, x: list, y: list) -> list:
    lhs = [a - b for a, b in zip(nr_nabla_A(tm, x, y), nr_nabla_A(tm, y, x))]
    sx, sy = mat_vec(tm.S, x), mat_vec(tm.S, y)
    rhs = [
        tm.c * (x[0] * syi - y[0] * sxi - 2 * dot(sx, y) * ui)
        for sxi, syi, ui in zip(sx, sy, tm.U)
    ]
    return [a - b for a, b in zip(lhs, rhs)]


def e4_residual(tm: TangentModel):
    """Largest |residual| of the D-triple condition over basis vectors (exactly 0 expected)."""
    f = power_traces(tm.spectrum, 1)
    worst = Fraction(0)
    for i in tm.d_indices:
        X = tm.basis(i)
        N = nabla_matrix(tm, X)
        N2 = mat_add(mat_mul(N, tm.A), mat_mul(tm.A, N))
        for j in tm.d_indices:
            Y = tm.basis(j)
            SY = mat_vec(tm.S, Y)
            for k in tm.d_indices:
                Z = tm.basis(k)
                SZ = mat_vec(tm.S, Z)
                val = (
                    f * dot(mat_vec(N, Y), Z)
                    + f * dot(mat_vec(N, SY), SZ)
                    + dot(mat_vec(N2, Y), Z)
                    + dot(mat_vec(N2, SY), SZ)
                )
                if val != 0:
                    worst = val if sign_of(abs_like(val) - worst) > 0 else worst
    return normalize(worst)


def abs_like(x):
    return -x if sign_of(x) < 0 else x


def nabla_A_norm_sq(tm: TangentModel):
    """Brute-force ``||nabla A||^2 = sum_{i,j} |(nabla_{e_i} A) e_j|^2``."""
    acc = Fraction(0)
    for i in range(tm.n):
        N = nabla_matrix(tm, tm.basis(i))
        for row in N:
            for x in row:
                acc = acc + x * x
    return normalize(acc)


def simons_norm_nablaA(spec: ModelSpec):
    """``||nabla A||^2`` from the Simons-type formula for constant principal curvatures."""
    sp = spectrum(spec)
    tm = build_matrices(sp, spec.family)
    c, n, kappa = spec.c, spec.n, sp.kappa
    f, f2, f3 = (power_traces(sp, k) for k in (1, 2, 3))
    SA = mat_mul(tm.S, tm.A)
    tr_sa2 = trace(mat_mul(SA, SA))
    val = (
        6 * c * kappa * kappa
        - 3 * c * f * kappa
        - 6 * c * tr_sa2
        + c * f * f
        + (f2 - c * (n + 3)) * f2
        - f * f3
    )
    return normalize(val)


# ---------------------------------------------------------------------------
# necessary conditions for mass-symmetric three-type hypersurfaces


def three_type_constants(spec: ModelSpec, p, q, r) -> dict:
    """Constants ``a, b, d`` of the D-endomorphism condition from ``p, q, r``."""
    sp = spectrum(spec)
    c, n, kappa = spec.c, spec.n, sp.kappa
    f, f2 = power_traces(sp, 1), power_traces(sp, 2)
    a = p / 2 + 2 * (c + f2)
    b = p * f / 2 + c * f * (c * f2 + n + 7)
    d = (
        n**3
        + 6 * n**2
        + 10 * n
        + 7
        + Fraction(c, 4) * (5 * n + 19) * f * f
        + f * f * f2 / 4
        + c * f2
        - 2 * c * kappa * f
        - c * kappa * kappa
        + p / 4 * (2 * c * (n + 1) * (n + 3) + f * f)
        + q / 4 * (n + 2)
        + c * r / 8
    )
    return {"a": normalize(a), "b": normalize(b), "d": normalize(d)}


def b_endomorphism(tm: TangentModel) -> Matrix:
    """``B = sum_j (nabla_{e_j} A)^2`` as an explicit matrix."""
    acc = zeros(tm.n)
    for j in range(tm.n):
        N = nabla_matrix(tm, tm.basis(j))
        acc = mat_add(acc, mat_mul(N, N))
    return acc


def three_type_necessary_checks(spec: ModelSpec, a=None, b=None, d=None) -> dict:
    """Three necessary conditions; (ii)-(iii) only for class A."""
    sp = spectrum(spec)
    tm = build_matrices(sp, spec.family)
    f = power_traces(sp, 1)
    rep: dict = {
        "(i)": "constant: catalog spectra are constant",
        "traces": [power_traces(sp, k) for k in (1, 2, 3, 4)],
    }
    if spec.c == -1:
        rep["(trA)^2 != 4"] = normalize(f * f - 4) != 0
    if spec.family not in CLASS_A:
        rep["(ii)"] = "out of scope"
        rep["(iii)"] = "out of scope"
        return rep
    A, S = tm.A, tm.S
    comm = commutator(A, S)
    worst = Fraction(0)
    for i in tm.d_indices:
        N = nabla_matrix(tm, tm.basis(i))
        val = trace(mat_mul(N, comm))
        if val != 0:
            worst = val
    rep["(ii)"] = normalize(worst)
    B = b_endomorphism(tm)
    rep["B"] = B
    if a is None:
        return rep
    SBS = mat_mul(mat_mul(S, B), S)
    A2 = mat_mul(A, A)
    A4 = mat_mul(A2, A2)
    SA = mat_mul(S, A)
    AS = mat_mul(A, S)

    def sxs(M):
        return mat_mul(mat_mul(S, M), S)

    ident = diag([Fraction(1)] * tm.n)
    rhs = mat_sub(A4, sxs(A4))
    rhs = mat_add(rhs, mat_scale(mat_sub(A2, sxs(A2)), a))
    rhs = mat_add(rhs, mat_scale(mat_sub(A, sxs(A)), b))
    rhs = mat_sub(rhs, mat_scale(mat_add(mat_mul(SA, SA), mat_mul(AS, AS)), 4 * spec.c))
    rhs = mat_add(rhs, mat_scale(ident, d))
    lhs = mat_sub(B, SBS)
    res = mat_sub(lhs, rhs)
    rows = list(tm.d_indices)
    rep["(iii)"] = [[normalize(res[i][j]) for j in rows] for i in rows]
    return rep

"""Polynomial Laplacian on products of (pseudo-)spheres and the A-family blocks.

A tube about a totally geodesic ``CQ^k`` is the Hopf projection of
``N^{2k+1}(r1) x S^{2l+1}(r2)`` with ``k + l = m - 1``; the position matrix
``x~`` splits into blocks ``a`` (k+1 square), ``b`` (off-diagonal) and ``d``
(l+1 square) whose entries are quadratic polynomials in the real coordinates.
Functions invariant under the diagonal circle action are basic for the Hopf
submersion, whose fibers are totally geodesic, so the Laplacian of the base
equals the Laplacian of the product applied to the lifted polynomial.

Sign convention: ``Delta = -tr Hess``.  On ``Q = {<x,x>_eps = rho}`` of
dimension ``N`` a homogeneous polynomial ``F`` of degree ``d`` restricts with

    Delta F = -Box F + d (d + N - 1) / rho * F,    Box = sum eps_i d^2/dx_i^2.

Polynomials are reduced eagerly modulo ``<x,x>_eps = rho`` by eliminating the
square of the last coordinate of each factor, so equality on the quadric is
syntactic equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .delta_module import chen_type_evidence
from .exact_scalar import RatFunc, normalize, rational_roots
from .model_catalog import ModelSpec, param_conversions

Mono = tuple


@dataclass(frozen=True)
class Quadric:
    """``{x : sum eps_i x_i^2 = rho}`` in real coordinates ``offset .. offset+len(signs)-1``."""

    signs: tuple
    rho: object
    offset: int = 0

    @property
    def dim(self) -> int:
        return len(self.signs) - 1

    @property
    def last(self) -> int:
        return self.offset + len(self.signs) - 1

    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.signs))


class QuadricPoly:
    """Polynomial in real coordinates, stored reduced modulo each factor relation."""

    __slots__ = ("space", "terms")

    def __init__(self, space: "ProductSpace", terms: Optional[dict] = None, reduce: bool = True):
        self.space = space
        t: dict = {}
        for mono, c in (terms or {}).items():
            c = normalize(c)
            if c != 0:
                t[mono] = t[mono] + c if mono in t else c
        self.terms = {k: v for k, v in t.items() if v != 0}
        if reduce:
            self.terms = space.reduce_terms(self.terms)

    def _lift(self, other) -> "QuadricPoly":
        if isinstance(other, QuadricPoly):
            return other
        return QuadricPoly(self.space, {self.space.one(): other})

    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t[k] + c if k in t else c
        return QuadricPoly(self.space, t, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return QuadricPoly(self.space, {k: -c for k, c in self.terms.items()}, reduce=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, QuadricPoly):
            return QuadricPoly(self.space, {k: c * other for k, c in self.terms.items()}, reduce=False)
        t: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                t[k] = t[k] + c1 * c2 if k in t else c1 * c2
        return QuadricPoly(self.space, t)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (self - self._lift(other)).is_zero()

    __hash__ = None

    def constant_value(self):
        """The value if the polynomial is constant on the quadric, else ``None``."""
        if any(any(k) for k in self.terms):
            return None
        return self.terms.get(self.space.one(), Fraction(0))

    def __repr__(self):
        return f"QuadricPoly({len(self.terms)} terms)"


@dataclass
class ProductSpace:
    """Product of quadrics in disjoint blocks of real coordinates."""

    factors: tuple
    nvars: int = field(init=False)

    def __post_init__(self):
        self.nvars = sum(len(q.signs) for q in self.factors)

    def one(self) -> Mono:
        return (0,) * self.nvars

    def coord(self, i: int) -> QuadricPoly:
        e = [0] * self.nvars
        e[i] = 1
        return QuadricPoly(self, {tuple(e): Fraction(1)})

    def const(self, c) -> QuadricPoly:
        return QuadricPoly(self, {self.one(): c})

    def reduce_terms(self, terms: dict) -> dict:
        out: dict = {}
        work = list(terms.items())
        while work:
            mono, c = work.pop()
            q = next((q for q in self.factors if mono[q.last] >= 2), None)
            if q is None:
                out[mono] = out[mono] + c if mono in out else c
                continue
            # x_last^2 = eps_last * (rho - sum_{i != last} eps_i x_i^2)
            base = list(mono)
            base[q.last] -= 2
            el = q.signs[-1]
            work.append((tuple(base), c * el * q.rho))
            for i, ei in zip(q.indices(), q.signs):
                if i == q.last:
                    continue
                e = list(base)
                e[i] += 2
                work.append((tuple(e), -c * el * ei))
        return {k: v for k, v in ((k, normalize(v)) for k, v in out.items()) if v != 0}

    def laplacian(self, f: QuadricPoly) -> QuadricPoly:
        """Exact Laplacian of ``f`` on the product (factor Laplacians summed)."""
        t: dict = {}

        def add(mono, c):
            t[mono] = t[mono] + c if mono in t else c

        for mono, c in f.terms.items():
            for q in self.factors:
                d = sum(mono[i] for i in q.indices())
                if d:
                    add(mono, c * d * (d + q.dim - 1) / q.rho)
                for i, ei in zip(q.indices(), q.signs):
                    e = mono[i]
                    if e >= 2:
                        m2 = list(mono)
                        m2[i] -= 2
                        add(tuple(m2), -c * ei * e * (e - 1))
        return QuadricPoly(self, t)

    def derivative(self, f: QuadricPoly, i: int) -> QuadricPoly:
        t: dict = {}
        for mono, c in f.terms.items():
            e = mono[i]
            if e:
                m2 = list(mono)
                m2[i] -= 1
                m2 = tuple(m2)
                t[m2] = t[m2] + c * e if m2 in t else c * e
        return QuadricPoly(self, t)

    def circle_field(self, f: QuadricPoly) -> QuadricPoly:
        """``V f`` for the diagonal circle generator ``V = sum x d/dy - y d/dx``."""
        acc = QuadricPoly(self, {})
        for i in range(0, self.nvars, 2):
            x, y = self.coord(i), self.coord(i + 1)
            acc = acc + x * self.derivative(f, i + 1) - y * self.derivative(f, i)
        return acc


def quadric_poly_laplacian(f: QuadricPoly) -> QuadricPoly:
    return f.space.laplacian(f)


def product_laplacian(f: QuadricPoly) -> QuadricPoly:
    """Laplacian of a circle-invariant polynomial, i.e. of the function on the base."""
    if not f.space.circle_field(f).is_zero():
        raise ValueError("not a basic function")
    return f.space.laplacian(f)


# ---------------------------------------------------------------------------
# the tube model


def t_symbol() -> RatFunc:
    return RatFunc.variable("t")


@dataclass
class TubeModel:
    k: int
    l: int
    c: int
    t: object

    @property
    def m(self) -> int:
        return self.k + self.l + 1

    @property
    def K(self) -> int:
        return 2 * self.k + 1

    @property
    def L(self) -> int:
        return 2 * self.l + 1

    @property
    def r1_sq(self):
        return normalize(self.t / (self.t + self.c))

    @property
    def r2_sq(self):
        return normalize(1 / (self.t + self.c))

    def space(self) -> ProductSpace:
        # first factor: eps_0 = c on the distinguished complex coordinate
        s1 = (self.c, self.c) + (1,) * (2 * self.k)
        s2 = (1,) * (2 * self.l + 2)
        q1 = Quadric(s1, normalize(self.c * self.r1_sq), 0)
        q2 = Quadric(s2, self.r2_sq, len(s1))
        return ProductSpace((q1, q2))

    def eigenvalues(self) -> dict:
        c, K, L = self.c, self.K, self.L
        return {
            "u": normalize(c * K / self.r1_sq + L / self.r2_sq),
            "v": normalize(2 * c * (K + 1) / self.r1_sq),
            "w": normalize(2 * (L + 1) / self.r2_sq),
        }

    def center(self) -> tuple:
        """Constant part: ``beta1 I_{k+1}`` and ``beta2 I_{l+1}``."""
        return (
            normalize(2 * self.r1_sq / (self.K + 1)),
            normalize(2 * self.c * self.r2_sq / (self.L + 1)),
        )


def _block(j: int, k: int) -> str:
    return "a" if j <= k else "d"


def position_entries(tm: TubeModel, space: Optional[ProductSpace] = None) -> dict:
    """Entries ``P_jk = eps'_k z_j conj(z_k)`` as (real, imaginary) polynomial pairs."""
    sp = space or tm.space()
    m = tm.m
    out = {}
    for j in range(m + 1):
        for kk in range(m + 1):
            eps = 1 if kk == 0 else tm.c
            xj, yj = sp.coord(2 * j), sp.coord(2 * j + 1)
            xk, yk = sp.coord(2 * kk), sp.coord(2 * kk + 1)
            re = (xj * xk + yj * yk) * eps
            im = (yj * xk - xj * yk) * eps
            out[(j, kk)] = (re, im)
    return out


def entry_block(tm: TubeModel, j: int, kk: int) -> str:
    bj, bk = _block(j, tm.k), _block(kk, tm.k)
    return bj if bj == bk else "b"


@dataclass
class BlockRep:
    """``alpha_a a + alpha_b b + alpha_d d + gamma_a I_{k+1} + gamma_d I_{l+1}``."""

    k: int
    l: int
    c: int
    alpha_a: object
    alpha_b: object
    alpha_d: object
    gamma_a: object
    gamma_d: object

    def slots(self) -> tuple:
        return (self.alpha_a, self.alpha_b, self.alpha_d, self.gamma_a, self.gamma_d)


def delta_power_blocks(k: int, l: int, c: int, t, s: int) -> BlockRep:
    """Closed-form block coefficients of ``Delta^s x~``."""
    tm = TubeModel(k, l, c, t)
    ev = tm.eigenvalues()
    if s == 0:
        return BlockRep(k, l, c, Fraction(1), Fraction(1), Fraction(1), Fraction(0), Fraction(0))
    K, L = tm.K, tm.L
    r1, r2 = tm.r1_sq, tm.r2_sq
    ga = -(2 ** (s + 1)) * c**s * Fraction(K + 1) ** (s - 1) / r1 ** (s - 1)
    gd = -(2 ** (s + 1)) * c * Fraction(L + 1) ** (s - 1) / r2 ** (s - 1)
    return BlockRep(
        k, l, c,
        normalize(ev["v"] ** s), normalize(ev["u"] ** s), normalize(ev["w"] ** s),
        normalize(ga), normalize(gd),
    )


def apply_delta_rep(rep: BlockRep, tm: TubeModel) -> BlockRep:
    """One more Laplacian on the affine block representation."""
    ev = tm.eigenvalues()
    return BlockRep(
        rep.k, rep.l, rep.c,
        normalize(rep.alpha_a * ev["v"]),
        normalize(rep.alpha_b * ev["u"]),
        normalize(rep.alpha_d * ev["w"]),
        normalize(-4 * tm.c * rep.alpha_a),
        normalize(-4 * tm.c * rep.alpha_d),
    )


def expected_entry(rep: BlockRep, tm: TubeModel, j: int, kk: int, entry: tuple) -> tuple:
    blk = entry_block(tm, j, kk)
    alpha = {"a": rep.alpha_a, "b": rep.alpha_b, "d": rep.alpha_d}[blk]
    gamma = {"a": rep.gamma_a, "d": rep.gamma_d}.get(blk, Fraction(0)) if j == kk else Fraction(0)
    re, im = entry
    return re * alpha + gamma, im * alpha


def verify_block_formulas(k: int, l: int, c: int, t=None, smax: int = 3) -> dict:
    """Apply the polynomial Laplacian ``s`` times to every entry; compare with the closed form."""
    tm = TubeModel(k, l, c, t_symbol() if t is None else t)
    sp = tm.space()
    entries = position_entries(tm, sp)
    rep_chain = BlockRep(k, l, c, Fraction(1), Fraction(1), Fraction(1), Fraction(0), Fraction(0))
    failures = []
    current = dict(entries)
    for s in range(1, smax + 1):
        closed = delta_power_blocks(k, l, c, tm.t, s)
        rep_chain = apply_delta_rep(rep_chain, tm)
        if not all(normalize(a - b) == 0 for a, b in zip(rep_chain.slots(), closed.slots())):
            failures.append((s, "affine recursion", None))
        for key, (re, im) in current.items():
            current[key] = (product_laplacian(re), product_laplacian(im))
            exp_re, exp_im = expected_entry(closed, tm, key[0], key[1], entries[key])
            if not (current[key][0] == exp_re and current[key][1] == exp_im):
                failures.append((s, key, entry_block(tm, *key)))
    return {"k": k, "l": l, "c": c, "smax": smax, "entries": len(entries), "failures": failures,
            "ok": not failures}


# ---------------------------------------------------------------------------
# three-type analysis


def cubic_coefficients(tm: TubeModel) -> tuple:
    """``p, q, r`` of ``Delta^3 x~ + p Delta^2 x~ + q Delta x~ + r (x~ - x~0) = 0``."""
    c, K, L = tm.c, tm.K, tm.L
    r1, r2 = tm.r1_sq, tm.r2_sq
    p = -(c * (3 * K + 2) / r1 + (3 * L + 2) / r2)
    q = 2 * (K * (K + 1) / (r1 * r1) + L * (L + 1) / (r2 * r2) + c * (4 * K * L + 3 * K + 3 * L + 2) / (r1 * r2))
    r = -4 * c * (K + 1) * (L + 1) / (r1 * r2) * (c * K / r1 + L / r2)
    return normalize(p), normalize(q), normalize(r)


def cubic_residual_rep(tm: TubeModel) -> tuple:
    """Slots of the cubic combination on the block representation; all zero when it holds."""
    p, q, r = cubic_coefficients(tm)
    reps = [delta_power_blocks(tm.k, tm.l, tm.c, tm.t, s) for s in range(4)]
    b1, b2 = tm.center()
    coeffs = (q, p, Fraction(1))
    out = []
    for i in range(5):
        acc = reps[0].slots()[i] * r
        for s, cf in zip((1, 2, 3), coeffs):
            acc = acc + reps[s].slots()[i] * cf
        if i == 3:
            acc = acc - r * b1
        if i == 4:
            acc = acc - r * b2
        out.append(normalize(acc))
    return tuple(out)


def cubic_residual_oracle(tm: TubeModel) -> bool:
    """The same combination with polynomial Laplacians on every entry."""
    p, q, r = cubic_coefficients(tm)
    sp = tm.space()
    entries = position_entries(tm, sp)
    b1, b2 = tm.center()
    for key, (re, im) in entries.items():
        chain = [(re, im)]
        for _ in range(3):
            chain.append((product_laplacian(chain[-1][0]), product_laplacian(chain[-1][1])))
        x0 = (b1 if key[0] <= tm.k else b2) if key[0] == key[1] else Fraction(0)
        for part in (0, 1):
            acc = chain[3][part] + chain[2][part] * p + chain[1][part] * q + (chain[0][part] - (x0 if part == 0 else 0)) * r
            if not acc.is_zero():
                return False
    return True


def component_polys(tm: TubeModel) -> dict:
    """Eigencomponents as entry polynomials: ``a - beta1 I``, ``b``, ``d - beta2 I``."""
    sp = tm.space()
    entries = position_entries(tm, sp)
    b1, b2 = tm.center()
    comps: dict = {"v": {}, "u": {}, "w": {}}
    for (j, kk), (re, im) in entries.items():
        blk = entry_block(tm, j, kk)
        if blk == "a":
            comps["v"][(j, kk)] = (re - (b1 if j == kk else 0), im)
        elif blk == "d":
            comps["w"][(j, kk)] = (re - (b2 if j == kk else 0), im)
        else:
            comps["u"][(j, kk)] = (re, im)
    return comps


@dataclass
class BlockTypeReport:
    k: int
    l: int
    c: int
    t: object
    eigenvalues: dict
    present: dict
    verdict: object
    distinct: list
    null_type: bool
    mass_symmetric: bool
    center: tuple
    checks: dict


def a2_type_analysis(k: int, l: int, c: int, t) -> BlockTypeReport:
    """Type, eigenvalues, vanishing components and mass symmetry of the tube."""
    tm = TubeModel(k, l, c, t)
    ev = tm.eigenvalues()
    comps = component_polys(tm)
    present = {
        lab: any(not re.is_zero() or not im.is_zero() for re, im in comps[lab].values())
        for lab in ("u", "v", "w")
    }
    eig_ok = all(
        product_laplacian(re) == re * ev[lab] and product_laplacian(im) == im * ev[lab]
        for lab in comps
        for re, im in comps[lab].values()
    )
    distinct: list = []
    for lab in ("u", "v", "w"):
        if present[lab] and not any(normalize(ev[lab] - x) == 0 for x in distinct):
            distinct.append(ev[lab])
    null_type = any(x == 0 for x in distinct)
    b1, b2 = tm.center()
    target = Fraction(1, tm.m + 1)
    # a vanishing eigenvalue lets the constant absorb the kernel component
    mass = null_type or (normalize(b1 - target) == 0 and normalize(b2 - target) == 0)
    res = cubic_residual_rep(tm)
    checks = {
        "cubic (block)": all(x == 0 for x in res),
        "eigencomponents": eig_ok,
        "root sum": normalize(ev["u"] + ev["v"] + ev["w"] + cubic_coefficients(tm)[0]) == 0,
        "root product": normalize(ev["u"] * ev["v"] * ev["w"] + cubic_coefficients(tm)[2]) == 0,
    }
    return BlockTypeReport(k, l, c, t, ev, present, len(distinct), distinct, null_type, mass, (b1, b2), checks)


def special_points(k: int, l: int, c: int) -> dict:
    """Legal ``t`` where two eigenvalues coincide or ``lambda_u`` vanishes."""
    tm = TubeModel(k, l, c, t_symbol())
    ev = tm.eigenvalues()
    lo = Fraction(0) if c == 1 else Fraction(1)
    out = {}
    for name, expr in (
        ("v=w", ev["v"] - ev["w"]),
        ("u=w", ev["u"] - ev["w"]),
        ("u=v", ev["u"] - ev["v"]),
        ("u=0", ev["u"]),
    ):
        expr = normalize(expr)
        num = expr.num if isinstance(expr, RatFunc) else None
        roots = [] if num is None else rational_roots(num)
        out[name] = [x for x in roots if x > lo]
    return out


def mass_symmetric_points(k: int, l: int, c: int) -> list:
    """Legal ``t`` with ``x~0 = I/(m+1)``."""
    tm = TubeModel(k, l, c, t_symbol())
    b1, b2 = tm.center()
    target = Fraction(1, tm.m + 1)
    lo = Fraction(0) if c == 1 else Fraction(1)
    sols = None
    for expr in (b1 - target, b2 - target):
        expr = normalize(expr)
        roots = set(rational_roots(expr.num)) if isinstance(expr, RatFunc) else (set() if expr != 0 else None)
        if roots is None:
            continue
        sols = roots if sols is None else sols & roots
    return sorted(x for x in (sols or set()) if x > lo)


def cross_check_frame_vs_block(spec: ModelSpec) -> dict:
    """A geodesic sphere or the tube about the hyperplane through both engines."""
    if spec.family not in ("A1", "A1tube"):
        raise ValueError("cross check needs an A1 model")
    conv = param_conversions(spec)
    m = spec.m
    k, l = (0, m - 1) if spec.family == "A1" else (m - 1, 0)
    block = a2_type_analysis(k, l, spec.c, conv["t_block"])
    frame = chen_type_evidence(spec)
    fe = sorted(normalize(x) for x in frame.eigenvalues) if frame.eigenvalues else []
    be = sorted(normalize(x) for x in block.distinct)
    agree = frame.verdict == block.verdict and len(fe) == len(be) and all(
        normalize(a - b) == 0 for a, b in zip(fe, be)
    )
    return {
        "frame": {"type": frame.verdict, "eigenvalues": fe, "mass_symmetric": frame.mass_symmetric},
        "block": {"type": block.verdict, "eigenvalues": be, "mass_symmetric": block.mass_symmetric},
        "k": k,
        "l": l,
        "agree": agree and frame.mass_symmetric == block.mass_symmetric,
    }

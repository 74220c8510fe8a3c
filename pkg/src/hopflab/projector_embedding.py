"""Projector embedding of the complex projective and hyperbolic spaces.

A point ``[z]`` with ``Psi_c(z, z) = c`` maps to the matrix
``P[j][k] = eps_k * z_j * conj(z_k)`` where ``eps_0 = 1`` and ``eps_k = c``
otherwise.  ``Psi_c(z, w) = c*conj(z0)*w0 + sum_j conj(z_j)*w_j``.  The ambient
metric is ``<A, B> = (c/2) tr(AB)``.

Exact points are Gaussian-rational (or radical) vectors; the float path uses
numpy and is only a smoke test.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact_scalar import normalize


@dataclass(frozen=True)
class SpaceForm:
    c: int
    m: int

    def __post_init__(self):
        if self.c not in (1, -1):
            raise ValueError("c must be +1 or -1")
        if self.m < 2:
            raise ValueError("m must be at least 2")

    @property
    def n(self) -> int:
        return 2 * self.m - 1

    @property
    def N(self) -> int:
        """Real dimension of the space of Psi-Hermitian matrices."""
        return (self.m + 1) ** 2

    @property
    def signs(self) -> tuple[int, ...]:
        """Column signs ``eps_k`` of the projector matrix."""
        return (1,) + (self.c,) * self.m

    @property
    def name(self) -> str:
        return "cp" if self.c == 1 else "ch"


# ---------------------------------------------------------------------------
# exact complex numbers


class Gauss:
    """Complex number ``re + i*im`` with exact real parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re) if isinstance(re, int) else re
        self.im = Fraction(im) if isinstance(im, int) else im

    def _lift(self, o):
        return o if isinstance(o, Gauss) else Gauss(o, 0)

    def __add__(self, o):
        o = self._lift(o)
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> Gauss:
        return Gauss(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o):
        o = self._lift(o)
        d = o.abs2()
        num = self * o.conj()
        return Gauss(num.re / d, num.im / d)

    def __eq__(self, o):
        o = self._lift(o)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"({self.re} + {self.im}i)"


def psi(z: Sequence, w: Sequence, c: int):
    """Hermitian form ``c*conj(z0)*w0 + sum conj(zj)*wj``."""
    acc = z[0].conj() * w[0] * c
    for a, b in zip(z[1:], w[1:]):
        acc = acc + a.conj() * b
    return acc


def _as_gauss(z) -> list[Gauss]:
    return [x if isinstance(x, Gauss) else Gauss(x, 0) for x in z]


# ---------------------------------------------------------------------------
# embedding


def embed_point(z: Sequence, sf: SpaceForm, tol: float = 1e-12):
    """Projector matrix of the line through ``z``.

    Exact input (Gauss/Fraction/radical entries) gives a list-of-rows matrix of
    :class:`Gauss`; a numpy complex array gives a numpy array.
    """
    if len(z) != sf.m + 1:
        raise ValueError("point has the wrong number of coordinates")
    if isinstance(z, np.ndarray):
        zz = np.asarray(z, dtype=complex)
        val = sf.c * abs(zz[0]) ** 2 + float(np.sum(np.abs(zz[1:]) ** 2))
        if abs(val - sf.c) > tol:
            raise ValueError("not on quadric N^{2m+1}")
        eps = np.array(sf.signs, dtype=float)
        return np.outer(zz, zz.conj()) * eps[None, :]
    zg = _as_gauss(z)
    val = psi(zg, zg, sf.c)
    if val != Gauss(sf.c, 0):
        raise ValueError("not on quadric N^{2m+1}")
    eps = sf.signs
    return [[zg[j] * zg[k].conj() * eps[k] for k in range(sf.m + 1)] for j in range(sf.m + 1)]


def _cmat_mul(a, b):
    n = len(a)
    return [
        [sum((a[i][l] * b[l][j] for l in range(n)), Gauss()) for j in range(n)]
        for i in range(n)
    ]


def identity_matrix(sf: SpaceForm):
    n = sf.m + 1
    return [[Gauss(1 if i == j else 0) for j in range(n)] for i in range(n)]


def trace_metric(a, b, c: int):
    """``(c/2) tr(AB)``; real part only (the value is real on Hermitian input)."""
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        a, b = np.asarray(a), np.asarray(b)
        if a.shape != b.shape:
            raise ValueError("shape mismatch")
        return (c / 2) * np.trace(a @ b).real
    if len(a) != len(b) or any(len(r) != len(s) for r, s in zip(a, b)):
        raise ValueError("shape mismatch")
    prod = _cmat_mul(a, b)
    tr = sum((prod[i][i] for i in range(len(a))), Gauss())
    if tr.im != 0:
        raise ValueError("trace metric is not real on these matrices")
    return normalize(tr.re * Fraction(c, 2))


def projector_defects(p, sf: SpaceForm):
    """``(P^2 - P, tr P - 1)`` as exact matrix/scalar, or float norms for numpy input."""
    if isinstance(p, np.ndarray):
        return float(np.max(np.abs(p @ p - p))), float(abs(np.trace(p) - 1))
    sq = _cmat_mul(p, p)
    diff = [[sq[i][j] - p[i][j] for j in range(len(p))] for i in range(len(p))]
    tr = sum((p[i][i] for i in range(len(p))), Gauss())
    return diff, tr - 1


def hyperquadric_residual(p, sf: SpaceForm):
    """``<P - I/(m+1), P - I/(m+1)> - cm/(2(m+1))``."""
    k = sf.m + 1
    if isinstance(p, np.ndarray):
        d = p - np.eye(k) / k
        return trace_metric(d, d, sf.c) - sf.c * sf.m / (2 * k)
    ident = identity_matrix(sf)
    d = [[p[i][j] - ident[i][j] * Fraction(1, k) for j in range(k)] for i in range(k)]
    return trace_metric(d, d, sf.c) - Fraction(sf.c * sf.m, 2 * k)


def phase(z: Sequence, u: Gauss) -> list[Gauss]:
    """Multiply every coordinate by a unit complex number."""
    return [x * u for x in _as_gauss(z)]


GAUSSIAN_UNIT = Gauss(Fraction(3, 5), Fraction(4, 5))


def sample_exact_point(sf: SpaceForm, rng: random.Random, spread: int = 5) -> list[Gauss]:
    """Gaussian-rational point on the quadric, by secant through ``e0``.

    ``e0`` lies on the quadric for both signs; the second intersection of the
    line ``e0 + s*d`` has rational ``s = -2 Re Psi(e0, d) / Psi(d, d)``.
    """
    e0 = [Gauss(1)] + [Gauss(0)] * sf.m
    while True:
        d = [Gauss(rng.randint(-spread, spread), rng.randint(-spread, spread)) for _ in range(sf.m + 1)]
        qd = psi(d, d, sf.c).re
        b = psi(e0, d, sf.c).re
        if qd == 0 or b == 0:
            continue
        s = -2 * b / qd
        z = [a + x * s for a, x in zip(e0, d)]
        turns = rng.randint(0, 3)
        for _ in range(turns):
            z = phase(z, GAUSSIAN_UNIT)
        return z


def sample_float_point(sf: SpaceForm, rng: np.random.Generator) -> np.ndarray:
    """Random float point on the quadric."""
    z = rng.normal(size=sf.m + 1) + 1j * rng.normal(size=sf.m + 1)
    if sf.c == 1:
        return z / np.linalg.norm(z)
    # -|z0|^2 + |w|^2 = -1: rescale w then solve for |z0|
    w = z[1:] / np.linalg.norm(z[1:]) * abs(rng.normal())
    r0 = np.sqrt(1 + np.sum(np.abs(w) ** 2))
    return np.concatenate([[r0 * np.exp(1j * rng.uniform(0, 2 * np.pi))], w])


# ---------------------------------------------------------------------------
# second fundamental form pairings


def _j_matrix(dim: int) -> list[list[int]]:
    """Standard complex structure on R^dim: J e_{2i} = e_{2i+1}."""
    j = [[0] * dim for _ in range(dim)]
    for i in range(0, dim, 2):
        j[i + 1][i] = 1
        j[i][i + 1] = -1
    return j


def _apply(mat, v):
    return [sum(mat[i][k] * v[k] for k in range(len(v))) for i in range(len(mat))]


def _ip(u, v):
    return sum(a * b for a, b in zip(u, v))


def ros_pairing(x, y, v, w, c: int, jmat) -> Fraction:
    """``<sigma(X,Y), sigma(V,W)>`` from the Ros formula on explicit tangent vectors."""
    jx, jy = _apply(jmat, x), _apply(jmat, y)
    val = (
        2 * _ip(x, y) * _ip(v, w)
        + _ip(x, v) * _ip(y, w)
        + _ip(x, w) * _ip(y, v)
        + _ip(jx, v) * _ip(jy, w)
        + _ip(jx, w) * _ip(jy, v)
    )
    return Fraction(c * val)


def ros_shape_operator(x, y, v, c: int, jmat) -> list:
    """``A_{sigma(X,Y)} V`` of the embedding, as an explicit vector."""
    jx, jy = _apply(jmat, x), _apply(jmat, y)
    out = []
    for i in range(len(v)):
        out.append(
            c
            * (
                2 * _ip(x, y) * v[i]
                + _ip(x, v) * y[i]
                + _ip(y, v) * x[i]
                + _ip(jx, v) * jy[i]
                + _ip(jy, v) * jx[i]
            )
        )
    return out


@dataclass
class SigmaGram:
    """Pairing table for sigma on labeled orthonormal tangent vectors."""

    c: int
    vectors: dict[str, list[int]]
    jmat: list[list[int]]

    def pair(self, x: str, y: str, v: str, w: str) -> Fraction:
        vx = self.vectors
        return ros_pairing(vx[x], vx[y], vx[v], vx[w], self.c, self.jmat)

    def with_position(self, x: str, y: str) -> Fraction:
        """``<sigma(X,Y), x~> = -<X,Y>``."""
        return Fraction(-_ip(self.vectors[x], self.vectors[y]))

    def with_identity(self, x: str, y: str) -> Fraction:
        """``<sigma(X,Y), I> = 0``."""
        return Fraction(0)

    def j_label(self, x: str) -> tuple[int, str]:
        jv = _apply(self.jmat, self.vectors[x])
        for name, vec in self.vectors.items():
            if vec == jv:
                return 1, name
            if [-a for a in vec] == jv:
                return -1, name
        raise KeyError(x)

    def table(self) -> dict[tuple[str, str, str, str], Fraction]:
        names = list(self.vectors)
        out = {}
        for x in names:
            for y in names:
                for v in names:
                    for w in names:
                        out[(x, y, v, w)] = self.pair(x, y, v, w)
        return out


def sigma_gram(sf: SpaceForm, labels: Sequence[tuple[str, str]]) -> SigmaGram:
    """Pairing table for orthonormal vectors declared as J-pairs ``(a, Ja)``.

    The pair ``("U", "xi")`` is mandatory: ``U = -J xi`` means ``J U = xi``.
    """
    names = [n for pair in labels for n in pair]
    if len(set(names)) != len(names):
        raise ValueError("inconsistent J-relations in labels")
    if ("U", "xi") not in [tuple(p) for p in labels]:
        raise ValueError("inconsistent J-relations in labels: need the pair (U, xi)")
    if len(labels) > sf.m:
        raise ValueError("more J-pairs than the complex dimension")
    dim = 2 * sf.m
    vectors = {}
    for i, (a, b) in enumerate(labels):
        ea = [0] * dim
        eb = [0] * dim
        ea[2 * i] = 1
        eb[2 * i + 1] = 1
        vectors[a], vectors[b] = ea, eb
    return SigmaGram(sf.c, vectors, _j_matrix(dim))


def standard_labels(sf: SpaceForm) -> list[tuple[str, str]]:
    return [("U", "xi")] + [(f"e{i}", f"Je{i}") for i in range(1, sf.m)]


def block_sum_pairing(sf: SpaceForm, gram: SigmaGram, block_a: Sequence[str], block_b: Sequence[str]):
    """``< sum_{e in a} sigma(e,e), sum_{e' in b} sigma(e',e') >`` by brute force."""
    acc = Fraction(0)
    for x in block_a:
        for y in block_b:
            acc += gram.pair(x, x, y, y)
    return acc


def frame_gram(sf: SpaceForm) -> list[list[Fraction]]:
    """Gram matrix of ``[xi, sigma(xi,xi), sum_D sigma(e,e)]`` in the ambient metric.

    ``xi`` is tangent to the space form, so it is orthogonal to every sigma value
    and has unit length.  The sigma entries come from the Ros table.
    """
    g = sigma_gram(sf, standard_labels(sf))
    d = [n for n in g.vectors if n not in ("U", "xi")]
    sxx = g.pair("xi", "xi", "xi", "xi")
    cross = block_sum_pairing(sf, g, ["xi"], d)
    sb = block_sum_pairing(sf, g, d, d)
    return [
        [Fraction(1), Fraction(0), Fraction(0)],
        [Fraction(0), sxx, cross],
        [Fraction(0), cross, sb],
    ]


def frame_position_pairing(sf: SpaceForm) -> list[Fraction]:
    """Pairings of ``[xi, sigma(xi,xi), sum_D sigma(e,e)]`` with the position ``x~``."""
    g = sigma_gram(sf, standard_labels(sf))
    d = [n for n in g.vectors if n not in ("U", "xi")]
    return [
        Fraction(0),
        g.with_position("xi", "xi"),
        sum((g.with_position(e, e) for e in d), Fraction(0)),
    ]

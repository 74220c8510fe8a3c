"""Dense linear algebra over an exact field, plus a sparse multivariate polynomial.

Matrices are lists of rows.  Entries are any exact scalars from
:mod:`hopflab.exact_scalar`; pivots are chosen by exact ``!= 0`` tests.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact_scalar import Poly, normalize

Matrix = list[list]
Vector = list


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def diag(values: Sequence) -> Matrix:
    out = zeros(len(values))
    for i, v in enumerate(values):
        out[i][i] = v
    return out


def mat_vec(a: Matrix, v: Vector) -> Vector:
    out = []
    for row in a:
        acc = Fraction(0)
        for x, y in zip(row, v):
            if x != 0 and y != 0:
                acc = acc + x * y
        out.append(acc)
    return out


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return [mat_vec([list(c) for c in cols], row) for row in a]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, s) -> Matrix:
    return [[x * s for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def trace(a: Matrix):
    acc = Fraction(0)
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def vec_add(u: Vector, v: Vector) -> Vector:
    return [x + y for x, y in zip(u, v)]


def vec_sub(u: Vector, v: Vector) -> Vector:
    return [x - y for x, y in zip(u, v)]


def vec_scale(u: Vector, s) -> Vector:
    return [x * s for x in u]


def dot(u: Vector, v: Vector):
    acc = Fraction(0)
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


def bilinear(g: Matrix, u: Vector, v: Vector):
    return dot(u, mat_vec(g, v))


def is_zero_vec(v: Vector) -> bool:
    return all(x == 0 for x in v)


def is_zero_mat(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _inv(x):
    return 1 / x if isinstance(x, (int, Fraction)) else x.inverse()


def row_reduce(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in a]
    pivots: list[int] = []
    row = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = _inv(m[row][col])
        m[row] = [x * inv for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(row_reduce(a)[1]) if a else 0


def det(a: Matrix):
    n = len(a)
    m = [list(r) for r in a]
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            out = -out
        out = out * m[col][col]
        inv = _inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return out


def solve(a: Matrix, b: Vector) -> Vector | None:
    """Unique solution of ``a x = b`` for square nonsingular ``a``; None if singular."""
    n = len(a)
    aug = [list(r) + [b[i]] for i, r in enumerate(a)]
    red, piv = row_reduce(aug)
    if piv != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def krylov_minimal_polynomial(a: Matrix, v: Vector) -> Poly:
    """Monic minimal polynomial of ``a`` restricted to the cyclic span of ``v``.

    Iterates ``v, a v, a^2 v, ...`` until the next vector depends linearly on
    the previous ones and reads the relation off the reduced system.
    """
    if is_zero_vec(v):
        return Poly([1])
    krylov = [list(v)]
    while True:
        nxt = mat_vec(a, krylov[-1])
        d = len(krylov)
        # columns: krylov vectors; right-hand side: nxt
        sys = [[krylov[j][i] for j in range(d)] + [nxt[i]] for i in range(len(v))]
        red, piv = row_reduce(sys)
        if d not in piv:
            coeffs = [Fraction(0)] * d
            for r, pc in enumerate(piv):
                coeffs[pc] = red[r][d]
            return Poly([normalize(-c) for c in coeffs] + [Fraction(1)])
        krylov.append(nxt)
        if d + 1 > len(v):
            raise ArithmeticError("Krylov sequence exceeded the ambient dimension")


def poly_at_matrix(p: Poly, a: Matrix, v: Vector) -> Vector:
    """``p(a) v`` by Horner's scheme on vectors."""
    acc = [Fraction(0)] * len(v)
    for coef in reversed(p.coeffs):
        acc = vec_add(mat_vec(a, acc), vec_scale(v, coef))
    return acc


# ---------------------------------------------------------------------------
# sparse multivariate polynomials over a scalar field


class MPoly:
    """Sparse polynomial in named variables with exact scalar coefficients.

    Used to carry unknowns such as ``p``, ``q``, ``f`` and ``f2`` through
    elimination steps where the coefficients are already exact scalars.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(variables)
        t = {}
        for mono, c in (terms or {}).items():
            if c != 0:
                t[tuple(mono)] = c
        self.terms = t

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> MPoly:
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {e: Fraction(1)})

    @classmethod
    def const(cls, variables: Sequence[str], c) -> MPoly:
        return cls(variables, {(0,) * len(variables): c})

    def _lift(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError("variable mismatch")
            return other
        return MPoly.const(self.vars, other)

    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t[k] + c if k in t else c
        return MPoly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return MPoly(self.vars, {k: c * other for k, c in self.terms.items()})
        o = self._lift(other)
        t: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                t[k] = t[k] + c1 * c2 if k in t else c1 * c2
        return MPoly(self.vars, t)

    __rmul__ = __mul__

    def __truediv__(self, s):
        inv = _inv(s)
        return self * inv

    def __pow__(self, e: int):
        out = MPoly.const(self.vars, Fraction(1))
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        o = self._lift(other)
        d = self - o
        return d.is_zero()

    __hash__ = None

    def coeff(self, **exps):
        key = tuple(exps.get(v, 0) for v in self.vars)
        return self.terms.get(key, Fraction(0))

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((k[i] for k in self.terms), default=-1)

    def subs(self, name: str, value) -> MPoly:
        """Substitute a scalar or MPoly for one variable."""
        i = self.vars.index(name)
        val = self._lift(value)
        out = MPoly(self.vars)
        for k, c in self.terms.items():
            base = MPoly(self.vars, {k[:i] + (0,) + k[i + 1 :]: c})
            out = out + base * (val ** k[i])
        return out

    def constant_value(self):
        if any(any(k) for k in self.terms):
            raise ValueError("polynomial still has free variables")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def solve_linear(self, name: str) -> MPoly:
        """Solve ``self == 0`` for a variable that occurs linearly with a scalar coefficient."""
        i = self.vars.index(name)
        lin, rest = MPoly(self.vars), MPoly(self.vars)
        for k, c in self.terms.items():
            if k[i] == 1:
                lin.terms[k[:i] + (0,) + k[i + 1 :]] = c
            elif k[i] == 0:
                rest.terms[k] = c
            else:
                raise ValueError(f"{name} occurs non-linearly")
        if any(any(k) for k in lin.terms):
            raise ValueError(f"coefficient of {name} is not a scalar")
        return -rest / lin.constant_value()

    def __repr__(self):
        parts = []
        for k, c in sorted(self.terms.items()):
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip(self.vars, k) if e
            )
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"


def mpoly_vars(names: Iterable[str]) -> tuple[MPoly, ...]:
    names = tuple(names)
    return tuple(MPoly.var(names, n) for n in names)

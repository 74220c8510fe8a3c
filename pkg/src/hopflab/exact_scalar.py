"""Exact scalars for the classification engine.

Four kinds of numbers appear:

* ``Fraction`` (aliased as :data:`Rational`) for plain rationals;
* :class:`RadicalScalar`, an element of a multi-quadratic field
  ``Q(sqrt(p1), ..., sqrt(pj))`` stored over the basis of square-free products;
* :class:`QuadExt`, a quadratic extension ``a + b*sqrt(D)`` of any exact field.
  Over :class:`RadicalScalar` it carries nested radicals such as
  ``sqrt(sqrt(6) + sqrt(7))``; over :class:`RatFunc` it carries symbolic
  radicals such as ``sqrt(kappa^2 + 4)``;
* :class:`RatFunc`, a univariate rational function over the rationals.

Signs of real scalars are decided by :class:`Interval` refinement, with an
exact norm-form recursion as fallback.  Zero tests never use floats.
"""

from __future__ import annotations

import ast
import math
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction

__all__ = [
    "Rational",
    "Poly",
    "RatFunc",
    "RadicalScalar",
    "QuadExt",
    "Interval",
    "normalize",
    "sign_of",
    "sqrt_exact",
    "isolate_real_roots",
    "square_free_decomposition",
    "rational_roots",
    "poly_roots",
    "parse_scalar",
    "fmt",
    "to_decimal",
    "to_float",
    "squarefree_split",
]


# ---------------------------------------------------------------------------
# integers


def _icbrt(n: int) -> int:
    r = int(round(n ** (1.0 / 3.0))) if n < (1 << 1000) else 1 << (n.bit_length() // 3)
    while r * r * r > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, s)`` with ``n == k*k*s`` and ``s`` square-free (``n > 0``)."""
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    limit = _icbrt(n) + 1
    if limit > 2_000_000:
        from sympy import factorint  # only reached for very large radicands

        k = s = 1
        for p, e in factorint(n).items():
            k *= p ** (e // 2)
            if e % 2:
                s *= p
        return k, s
    k = s = 1
    rest = n
    p = 2
    while p <= limit and p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            k *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    # at most two prime factors above the cube root remain
    if rest > 1:
        r = math.isqrt(rest)
        if r * r == rest:
            k *= r
        else:
            s *= rest
    return k, s


@lru_cache(maxsize=4096)
def _primes_of(s: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= s:
        if s % p == 0:
            out.append(p)
            s //= p
        p += 1 if p == 2 else 2
    if s > 1:
        out.append(s)
    return tuple(out)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


# ---------------------------------------------------------------------------
# dense univariate polynomials over an exact field


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``x**i``.

    Coefficients may be any exact field element supporting ``+ - * /`` and
    comparison with ``0``.  Integers are promoted to ``Fraction``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> Poly:
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def _lift(self, other) -> Poly:
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other: Poly):
        if other.is_zero():
            raise ZeroDivisionError("zero denominator")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        q = [Fraction(0)] * (dq + 1)
        inv = 1 / other.lc if _is_rational(other.lc) else other.lc ** -1
        for i in range(dq, -1, -1):
            c = rem[i + len(other.coeffs) - 1] * inv
            q[i] = c
            if c == 0:
                continue
            for j, b in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - c * b
        return Poly(q), Poly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, c):
        return Poly(a / c for a in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self / self.lc

    def derivative(self) -> Poly:
        return Poly(c * i for i, c in enumerate(self.coeffs) if i)

    def gcd(self, other: Poly) -> Poly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, (a % b).monic()
        return a.monic()

    def compose(self, inner) -> object:
        """Evaluate at ``inner`` (a Poly, RatFunc, or scalar)."""
        acc = Poly([0]) if isinstance(inner, Poly) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def content_primitive(self) -> Poly:
        """Scale a rational polynomial to coprime integer coefficients, positive lc."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        g = g or 1
        if ints and ints[-1] < 0:
            g = -g
        return Poly(Fraction(v, g) for v in ints)

    def sqrt(self) -> Poly | None:
        """Exact square root over the rationals, or None."""
        if self.is_zero():
            return self
        lc = self.lc
        if not _is_rational(lc):
            return None
        r = sqrt_exact(lc) if lc > 0 else None
        if r is None or not _is_rational(r):
            return None
        out = Poly([r])
        for f, mult in square_free_decomposition(self.monic()):
            if mult % 2:
                return None
            out = out * f ** (mult // 2)
        return out

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            terms.append((c, mono))
        return _join_terms(terms)

    def __repr__(self):
        return f"Poly({self.to_str()})"


def _join_terms(terms: Sequence[tuple[object, str]]) -> str:
    out = ""
    for idx, (c, mono) in enumerate(terms):
        neg = _is_rational(c) and c < 0
        mag = -c if neg else c
        if mono:
            if mag == 1:
                body = mono
            else:
                cs = fmt(mag)
                cs = f"({cs})" if not _is_rational(mag) or "/" in cs else cs
                body = f"{cs}*{mono}"
        else:
            body = fmt(mag)
            if not _is_rational(mag):
                body = f"({body})"
        if idx == 0:
            out = f"-{body}" if neg else body
        else:
            out += f" - {body}" if neg else f" + {body}"
    return out


def square_free_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic square-free factors with their multiplicities."""
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    a = p.gcd(dp)
    b = p // a
    c = dp // a
    out = []
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        y = b.gcd(d)
        if y.degree > 0:
            out.append((y, i))
        b = b // y
        c = d // y
        i += 1
    return out


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Univariate rational function over the rationals in a named variable.

    Normal form: ``gcd(num, den) == 1`` and ``den`` monic.
    """

    __slots__ = ("num", "den", "var")

    def __init__(self, num: Poly, den: Poly | None = None, var: str = "t"):
        if den is None:
            den = Poly([1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        elif den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num, den = num / lc, den / lc
        self.num, self.den, self.var = num, den, var

    @classmethod
    def variable(cls, var: str) -> RatFunc:
        return cls(Poly([0, 1]), var=var)

    @classmethod
    def const(cls, c, var: str) -> RatFunc:
        return cls(Poly([_frac(c)]), var=var)

    def _lift(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            if other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if _is_rational(other):
            return RatFunc(Poly([_frac(other)]), var=self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den, self.var)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, self.var)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den, self.var)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("zero denominator")
        return RatFunc(self.den, self.num, self.var)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num**e, self.den**e, self.var)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.var == other.var and self.num == other.num and self.den == other.den
        if _is_rational(other):
            return self.den.degree == 0 and self.num == Poly([_frac(other)])
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.num.coeff(0))
        return hash((self.var, self.num, self.den))

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        return self.num.coeff(0)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        return self.num(x) / d

    def subs(self, inner: RatFunc) -> RatFunc:
        """Substitute the variable by another rational function."""
        return self.num.compose(inner) / self.den.compose(inner)

    def sqrt(self) -> RatFunc | None:
        n, d = self.num.sqrt(), self.den.sqrt()
        if n is None or d is None:
            return None
        return RatFunc(n, d, self.var)

    def numerator_poly(self) -> Poly:
        return self.num

    def __str__(self):
        n = self.num.to_str(self.var)
        if self.den.degree == 0:
            return n
        return f"({n})/({self.den.to_str(self.var)})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# multi-quadratic radical field


def _mul_basis(a: int, b: int) -> tuple[int, int]:
    g = math.gcd(a, b)
    return g, (a // g) * (b // g)


class RadicalScalar:
    """Element of ``Q(sqrt(d1), ..., sqrt(dj))`` with square-free positive ``d``.

    Stored as ``{s: q}`` meaning ``sum q * sqrt(s)`` over square-free ``s``;
    ``s == 1`` is the rational part.  Square roots of distinct square-free
    integers are linearly independent, so the map is canonical and equality
    is coefficient equality.
    """

    __slots__ = ("_c",)

    def __init__(self, coords: dict | None = None):
        c = {}
        for s, q in (coords or {}).items():
            q = _frac(q)
            if q != 0:
                c[s] = q
        self._c = c

    @classmethod
    def sqrt_int(cls, n: int) -> RadicalScalar:
        if n < 0:
            raise ValueError("negative radicand")
        if n == 0:
            return cls()
        k, s = squarefree_split(n)
        return cls({s: k})

    @classmethod
    def of(cls, q) -> RadicalScalar:
        return cls({1: _frac(q)})

    @property
    def coords(self) -> dict[int, Fraction]:
        return dict(self._c)

    @property
    def tower(self) -> tuple[int, ...]:
        primes = set()
        for s in self._c:
            primes.update(_primes_of(s))
        return tuple(sorted(primes))

    def is_rational(self) -> bool:
        return all(s == 1 for s in self._c)

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("irrational radical scalar")
        return self._c.get(1, Fraction(0))

    def _lift(self, other):
        if isinstance(other, RadicalScalar):
            return other
        if _is_rational(other):
            return RadicalScalar.of(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for s, q in o._c.items():
            c[s] = c.get(s, 0) + q
        return RadicalScalar(c)

    __radd__ = __add__

    def __neg__(self):
        return RadicalScalar({s: -q for s, q in self._c.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        c: dict[int, Fraction] = {}
        for s1, q1 in self._c.items():
            for s2, q2 in o._c.items():
                g, s = _mul_basis(s1, s2)
                c[s] = c.get(s, 0) + g * q1 * q2
        return RadicalScalar(c)

    __rmul__ = __mul__

    def _split(self, p: int) -> tuple[RadicalScalar, RadicalScalar]:
        u, v = {}, {}
        for s, q in self._c.items():
            if s % p == 0:
                v[s // p] = q
            else:
                u[s] = q
        return RadicalScalar(u), RadicalScalar(v)

    def inverse(self) -> RadicalScalar:
        if not self._c:
            raise ZeroDivisionError("zero denominator")
        if self.is_rational():
            return RadicalScalar.of(1 / self.rational())
        p = self.tower[-1]
        u, v = self._split(p)
        sp = RadicalScalar({p: 1})
        norm = u * u - v * v * p
        return (u - v * sp) * norm.inverse()

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = RadicalScalar.of(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational())
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def interval(self, bits: int) -> Interval:
        acc = Interval.point(0)
        for s, q in self._c.items():
            acc = acc + Interval.point(q) * Interval.sqrt_int(s, bits)
        return acc

    def sign_exact(self) -> int:
        """Norm-form recursion on the largest prime of the tower."""
        if self.is_rational():
            q = self.rational()
            return (q > 0) - (q < 0)
        p = self.tower[-1]
        u, v = self._split(p)
        su, sv = u.sign_exact(), v.sign_exact()
        if su == 0 or su == sv:
            return sv if su == 0 else su
        if sv == 0:
            return su
        return su * (u * u - v * v * p).sign_exact()

    def __lt__(self, other):
        return sign_of(self - other) < 0

    def __le__(self, other):
        return sign_of(self - other) <= 0

    def __gt__(self, other):
        return sign_of(self - other) > 0

    def __ge__(self, other):
        return sign_of(self - other) >= 0

    def __float__(self):
        return float(sum(float(q) * math.sqrt(s) for s, q in self._c.items()))

    def __str__(self):
        return fmt(self)

    __repr__ = __str__


def _mq_sqrt(x: RadicalScalar) -> RadicalScalar | None:
    """Non-negative square root inside some multi-quadratic field, or None."""
    if not x._c:
        return RadicalScalar()
    if x.is_rational():
        q = x.rational()
        if q < 0:
            return None
        k, s = squarefree_split(q.numerator * q.denominator)
        return RadicalScalar({s: Fraction(k, q.denominator)})
    p = x.tower[-1]
    u, v = x._split(p)
    sn = _mq_sqrt(u * u - v * v * p)
    if sn is None:
        return None
    sp = RadicalScalar({p: 1})
    for cand in ((u + sn) / 2, (u - sn) / 2):
        al = _mq_sqrt(cand)
        if al is None or not al:
            continue
        y = al + (v / (al * 2)) * sp
        if y * y == x:
            return y if sign_of(y) > 0 else -y
    return None


# ---------------------------------------------------------------------------
# quadratic extension over an arbitrary exact field


_BASE_TYPES = (int, Fraction, RadicalScalar, RatFunc)


class QuadExt:
    """``a + b*sqrt(D)`` with ``a, b, D`` in a base field and ``D`` a non-square.

    Elements with different radicands combine when ``D1*D2`` is a square in the
    base, which rewrites ``sqrt(D2)`` as ``r/D1 * sqrt(D1)``.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b, D):
        self.a, self.b, self.D = a, b, D

    def _lift(self, other):
        if isinstance(other, QuadExt):
            if other.D == self.D or other.b == 0:
                return QuadExt(other.a, other.b, self.D) if other.b == 0 else other
            r = _base_sqrt(self.D * other.D)
            if r is None:
                raise ValueError("incompatible nested radicals")
            return QuadExt(other.a, other.b * r / self.D, self.D)
        if isinstance(other, _BASE_TYPES):
            return QuadExt(other, Fraction(0), self.D)
        return NotImplemented

    def _pair(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented, NotImplemented
        if self.b == 0 and isinstance(other, QuadExt) and other.b != 0:
            return QuadExt(self.a, self.b, other.D), other
        return self, o

    def __add__(self, other):
        s, o = self._pair(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(s.a + o.a, s.b + o.b, s.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.D)

    def __sub__(self, other):
        s, o = self._pair(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(s.a - o.a, s.b - o.b, s.D)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        s, o = self._pair(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(s.a * o.a + s.b * o.b * s.D, s.a * o.b + s.b * o.a, s.D)

    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a - self.b * self.b * self.D

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.D)

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero denominator")
        ninv = 1 / n
        return QuadExt(self.a * ninv, -self.b * ninv, self.D)

    def __truediv__(self, other):
        s, o = self._pair(other)
        if o is NotImplemented:
            return NotImplemented
        return s * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = QuadExt(Fraction(1), Fraction(0), self.D)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        try:
            s, o = self._pair(other)
        except ValueError:
            return False
        if o is NotImplemented:
            return NotImplemented
        return s.a == o.a and s.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def interval(self, bits: int) -> Interval:
        return (
            _interval_of(self.a, bits)
            + _interval_of(self.b, bits) * _interval_of(self.D, bits).sqrt(bits)
        )

    def sign_exact(self) -> int:
        sa, sb = sign_of(self.a), sign_of(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb if sa == 0 else sa
        return sa * sign_of(self.norm())

    def sqrt(self) -> QuadExt | None:
        """Square root ``alpha + beta*sqrt(D)`` inside this extension, or None."""
        if self.b == 0:
            r = _base_sqrt(self.a)
            if r is not None:
                return QuadExt(r, Fraction(0), self.D)
            r = _base_sqrt(self.a / self.D)
            if r is not None:
                return QuadExt(Fraction(0), r, self.D)
            return None
        sn = _base_sqrt(self.norm())
        if sn is None:
            return None
        for cand in ((self.a + sn) / 2, (self.a - sn) / 2):
            al = _base_sqrt(cand)
            if al is None or al == 0:
                continue
            y = QuadExt(al, self.b / (al * 2), self.D)
            if y * y == self:
                return y
        return None

    def __lt__(self, other):
        return sign_of(self - other) < 0

    def __gt__(self, other):
        return sign_of(self - other) > 0

    def __le__(self, other):
        return sign_of(self - other) <= 0

    def __ge__(self, other):
        return sign_of(self - other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.D))

    def __str__(self):
        return fmt(self)

    __repr__ = __str__


def _base_sqrt(x):
    """Square root within the field generated by ``x``'s own radicals, or None."""
    if _is_rational(x):
        if x < 0:
            return None
        r = _mq_sqrt(RadicalScalar.of(x))
        return r.rational() if r.is_rational() else r
    if isinstance(x, RadicalScalar):
        return _mq_sqrt(x)
    if isinstance(x, RatFunc):
        return x.sqrt()
    if isinstance(x, QuadExt):
        return x.sqrt()
    return None


# ---------------------------------------------------------------------------
# intervals


def _dyadic_floor(q: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(q * (1 << bits)), 1 << bits)


def _dyadic_ceil(q: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(q * (1 << bits)), 1 << bits)


class Interval:
    """Closed interval with rational (dyadic after rounding) endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo, hi = _frac(lo), _frac(hi)
        if lo > hi:
            raise ValueError("empty interval")
        self.lo, self.hi = lo, hi

    @classmethod
    def point(cls, q) -> Interval:
        return cls(q, q)

    @classmethod
    def sqrt_int(cls, s: int, bits: int) -> Interval:
        r = math.isqrt(s << (2 * bits))
        lo = Fraction(r, 1 << bits)
        hi = lo if r * r == (s << (2 * bits)) else Fraction(r + 1, 1 << bits)
        return cls(lo, hi)

    def __add__(self, o: Interval):
        return Interval(self.lo + o.lo, self.hi + o.hi)

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, o: Interval):
        return self + (-o)

    def __mul__(self, o: Interval):
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    def __truediv__(self, o: Interval):
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def sqrt(self, bits: int) -> Interval:
        if self.hi < 0:
            raise ValueError("square root of a negative interval")
        lo = max(self.lo, Fraction(0))
        a = math.isqrt(math.floor(lo * (1 << (2 * bits))))
        b = math.isqrt(math.ceil(self.hi * (1 << (2 * bits))))
        return Interval(Fraction(a, 1 << bits), Fraction(b + 1, 1 << bits))

    def rounded(self, bits: int) -> Interval:
        return Interval(_dyadic_floor(self.lo, bits), _dyadic_ceil(self.hi, bits))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def sign(self) -> int | None:
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def __contains__(self, q) -> bool:
        return self.lo <= q <= self.hi

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def _interval_of(x, bits: int) -> Interval:
    if _is_rational(x):
        return Interval.point(x)
    if isinstance(x, (RadicalScalar, QuadExt)):
        return x.interval(bits).rounded(bits + 8)
    raise TypeError(f"no real value for {type(x).__name__}")


# ---------------------------------------------------------------------------
# generic helpers


Scalar = Union[Fraction, RadicalScalar, QuadExt, RatFunc]


def normalize(s):
    """Canonical representative, collapsing trivial extensions to rationals."""
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, RadicalScalar):
        return s.rational() if s.is_rational() else s
    if isinstance(s, QuadExt):
        if s.b == 0:
            return normalize(s.a)
        return QuadExt(normalize(s.a), normalize(s.b), normalize(s.D))
    return s


def sign_of(s) -> int:
    """Exact sign of a real scalar: -1, 0 or +1."""
    if _is_rational(s):
        return (s > 0) - (s < 0)
    if isinstance(s, RatFunc):
        if s.is_constant():
            return sign_of(s.constant())
        raise TypeError("sign of a non-constant rational function")
    if isinstance(s, (RadicalScalar, QuadExt)):
        if s == 0:
            return 0
        bits = 64
        while bits <= 4096:
            sg = s.interval(bits).sign()
            if sg is not None:
                return sg
            bits *= 2
        return s.sign_exact()
    raise TypeError(f"cannot take sign of {type(s).__name__}")


def sqrt_exact(x):
    """Exact square root in the smallest available tower.

    Rationals give rationals or multi-quadratic scalars; a multi-quadratic
    non-square gives a nested :class:`QuadExt`; a non-square rational function
    gives a symbolic :class:`QuadExt`.
    """
    if _is_rational(x):
        if x < 0:
            raise ValueError("negative radicand")
        r = _mq_sqrt(RadicalScalar.of(x))
        return r.rational() if r.is_rational() else r
    if isinstance(x, RadicalScalar):
        if x.is_rational():
            return sqrt_exact(x.rational())
        r = _mq_sqrt(x)
        if r is not None:
            return r
        if sign_of(x) < 0:
            raise ValueError("negative radicand")
        return QuadExt(Fraction(0), Fraction(1), x)
    if isinstance(x, RatFunc):
        r = x.sqrt()
        if r is not None:
            return r
        return QuadExt(Fraction(0), Fraction(1), x)
    if isinstance(x, QuadExt):
        if x.b == 0 and not isinstance(x.a, RatFunc):
            try:
                base = sqrt_exact(x.a)
            except ValueError:
                base = None
            if base is not None and not isinstance(base, QuadExt):
                return base
        r = x.sqrt()
        if r is not None:
            return r
        if isinstance(x.D, RatFunc):
            return QuadExt(Fraction(0), Fraction(1), x)
        raise ValueError("radical nesting deeper than two levels")
    raise TypeError(f"cannot take square root of {type(x).__name__}")


def to_float(x) -> float:
    return float(x)


def to_decimal(x, digits: int = 15) -> str:
    """Decimal string with ``digits`` significant digits."""
    if isinstance(x, RatFunc):
        raise TypeError("symbolic value has no decimal expansion")
    iv = Interval.point(x) if _is_rational(x) else x.interval(4 * digits + 64)
    m = iv.mid
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(m.numerator) / Decimal(m.denominator)
    if _is_rational(x):
        # exact rationals drop trailing zeros; irrationals keep all digits
        d = d.normalize() if d != 0 else Decimal(0)
    return format(d, "f") if abs(d) >= Decimal("1e-6") or d == 0 else str(d)


def fmt(x) -> str:
    """Exact, re-parseable string for a scalar."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, RadicalScalar):
        if not x._c:
            return "0"
        terms = []
        for s in sorted(x._c):
            terms.append((x._c[s], "" if s == 1 else f"sqrt({s})"))
        return _join_terms(terms)
    if isinstance(x, QuadExt):
        if x.b == 0:
            return fmt(x.a)
        rad = f"sqrt({fmt(x.D)})"
        terms = []
        if x.a != 0:
            terms.append((x.a, ""))
        terms.append((x.b, rad))
        return _join_terms(terms)
    if isinstance(x, RatFunc):
        return str(x)
    raise TypeError(f"cannot format {type(x).__name__}")


# ---------------------------------------------------------------------------
# real roots of rational polynomials


def _sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            break
        chain.append(r)
    return chain


def _sign_changes(chain: Sequence[Poly], x: Fraction) -> int:
    signs = [s for s in ((q(x) > 0) - (q(x) < 0) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _cauchy_bound(p: Poly) -> Fraction:
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def _isolate_squarefree(p: Poly, lo: Fraction, hi: Fraction) -> list[Interval]:
    """Isolating intervals for the roots of square-free ``p`` in the open ``(lo, hi)``."""
    chain = _sturm_chain(p)
    out: list[Interval] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        # Sturm counts roots in (a, b]; the open interval excludes b
        n = _sign_changes(chain, a) - _sign_changes(chain, b) - (1 if p(b) == 0 else 0)
        if n == 0:
            continue
        # an isolating interval must not end on a root, or refinement loses the sign
        if n == 1 and p(a) != 0 and p(b) != 0:
            out.append(Interval(a, b))
            continue
        m = (a + b) / 2
        if p(m) == 0:
            out.append(Interval.point(m))
        stack.append((a, m))
        stack.append((m, b))
    return sorted(out, key=lambda iv: iv.lo)


def refine_root(p: Poly, iv: Interval, width: Fraction) -> Interval:
    """Bisect an isolating interval of a square-free factor down to ``width``."""
    a, b = iv.lo, iv.hi
    if a == b:
        return iv
    sa = (p(a) > 0) - (p(a) < 0)
    while b - a > width:
        m = (a + b) / 2
        v = p(m)
        if v == 0:
            return Interval.point(m)
        sm = (v > 0) - (v < 0)
        if sa and sm == sa:
            a = m
        else:
            b = m
    return Interval(a, b)


def isolate_real_roots(
    p: Poly, lo: Fraction | None = None, hi: Fraction | None = None
) -> list[tuple[Interval, int]]:
    """Disjoint isolating intervals with multiplicities for real roots in ``(lo, hi)``.

    ``None`` endpoints mean unbounded.  Multiplicities come from the square-free
    decomposition; each interval contains exactly one root of its factor.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    if lo is not None and hi is not None and lo >= hi:
        return []
    found: list[tuple[Interval, int, Poly]] = []
    for f, mult in square_free_decomposition(p):
        bound = _cauchy_bound(f)
        a = -bound if lo is None else max(_frac(lo), -bound - 1)
        b = bound if hi is None else min(_frac(hi), bound + 1)
        if a >= b:
            continue
        for iv in _isolate_squarefree(f, a, b):
            if lo is not None and iv.lo == iv.hi == lo:
                continue
            found.append((iv, mult, f))
    # separate intervals coming from different factors
    changed = True
    while changed:
        changed = False
        found.sort(key=lambda t: t[0].lo)
        for i in range(len(found) - 1):
            (i1, m1, f1), (i2, m2, f2) = found[i], found[i + 1]
            if i2.lo <= i1.hi:
                found[i] = (refine_root(f1, i1, i1.width / 4 or Fraction(0)), m1, f1)
                found[i + 1] = (refine_root(f2, i2, i2.width / 4 or Fraction(0)), m2, f2)
                changed = True
    return [(iv, m) for iv, m, _ in found]


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots (without multiplicity) of a rational polynomial."""
    if p.degree < 1:
        return []
    out = []
    for f, _ in square_free_decomposition(p):
        prim = f.content_primitive()
        den_bound = abs(int(prim.lc))
        zero_const = prim.coeff(0) == 0
        if zero_const:
            out.append(Fraction(0))
        for iv in _isolate_squarefree(f, -_cauchy_bound(f), _cauchy_bound(f)):
            if iv.lo == iv.hi:
                if iv.lo != 0:
                    out.append(iv.lo)
                continue
            iv = refine_root(f, iv, Fraction(1, 4 * den_bound * den_bound))
            if iv.lo == iv.hi:
                if iv.lo not in out:
                    out.append(iv.lo)
                continue
            cand = iv.mid.limit_denominator(den_bound)
            if cand in iv and f(cand) == 0 and cand not in out:
                out.append(cand)
    return sorted(set(out))


def _all_rational(cs) -> bool:
    return all(_is_rational(normalize(c)) for c in cs)


def poly_roots(p: Poly, hints: Iterable = ()) -> tuple[list[tuple[object, int]], Poly]:
    """Exact roots with multiplicity, plus the unresolved cofactor.

    Candidate roots in ``hints`` are divided out first (each one is kept only
    if the remainder vanishes exactly).  Then rational roots of rational
    polynomials, any quadratic via the quadratic formula, and a zero root over
    any field.  Whatever is left is returned as the cofactor.
    """
    roots: list[tuple[object, int]] = []
    if p.degree < 1:
        return roots, p
    p = p.monic()
    for h in hints:
        h = normalize(h)
        if any(h == r for r, _ in roots):
            continue
        mult = 0
        lin = Poly([-h, 1])
        while p.degree >= 1:
            q, rem = divmod(p, lin)
            if not rem.is_zero():
                break
            p = q
            mult += 1
        if mult:
            roots.append((h, mult))
    if p.degree < 1:
        return roots, p
    if _all_rational(p.coeffs):
        p = Poly(normalize(c) for c in p.coeffs)
        for r in rational_roots(p):
            mult = 0
            lin = Poly([-r, 1])
            while p.degree >= 1:
                q, rem = divmod(p, lin)
                if not rem.is_zero():
                    break
                p = q
                mult += 1
            roots.append((r, mult))
    else:
        mult = 0
        while p.degree >= 1 and p.coeff(0) == 0:
            p = Poly(p.coeffs[1:])
            mult += 1
        if mult:
            roots.append((Fraction(0), mult))
    if p.degree == 1:
        roots.append((normalize(-p.coeff(0)), 1))
        p = Poly([1])
    elif p.degree == 2:
        b, c = p.coeff(1), p.coeff(0)
        disc = b * b - 4 * c
        if disc == 0:
            roots.append((normalize(-b / 2), 2))
        else:
            sd = sqrt_exact(normalize(disc))
            roots.append((normalize((-b + sd) / 2), 1))
            roots.append((normalize((-b - sd) / 2), 1))
        p = Poly([1])
    return roots, p


# ---------------------------------------------------------------------------
# parsing


def parse_scalar(text: str):
    """Parse ``"a/b"``, ``"sqrt(2)+sqrt(3)"``, ``"sqrt(sqrt(6)+sqrt(7))"`` etc.

    Floats are rejected: every parameter must be exact.
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ValueError(f"only integer literals are allowed in {text!r}")
            return Fraction(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if b == 0:
                    raise ValueError("zero denominator")
                return a / b
            if isinstance(node.op, ast.Pow):
                if not _is_rational(b) or Fraction(b).denominator != 1:
                    raise ValueError("exponents must be integers")
                return a ** int(b)
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id == "sqrt"
            and len(node.args) == 1
        ):
            return sqrt_exact(normalize(ev(node.args[0])))
        raise ValueError(f"unsupported syntax in {text!r}")

    return normalize(ev(tree))

"""Catalog of Hopf hypersurfaces with constant principal curvatures.

Radii never appear as angles.  The A-family is parametrized by
``t = cot_c(r)^2`` (``t = tanh(r)^2`` for the tube about the complex hyperbolic
hyperplane), the B/C/D/E families by ``kappa^2`` where ``kappa`` is the
principal curvature of the structure vector.

Symbolic specs use a :class:`RatFunc` variable: ``mu`` (so ``t = mu^2``) for the
A-family and ``kappa`` for B/C/D/E.  Odd powers of both occur in the spectra,
so the square roots are the natural variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact_scalar import (
    RatFunc,
    fmt,
    normalize,
    sign_of,
    sqrt_exact,
)
from .projector_embedding import SpaceForm

FAMILIES = ("A0", "A1", "A1tube", "A2", "B", "C", "D", "E")
CLASS_A = ("A0", "A1", "A1tube", "A2")

DISPLAY = {
    ("A1", 1): "A1",
    ("A1", -1): "A1'",
    ("A1tube", -1): "A1''",
}


class DomainError(ValueError):
    """Parameter or dimension outside the family's legal range."""


@dataclass(frozen=True)
class PrincipalBlock:
    value: object
    multiplicity: int
    j_action: object = "invariant"  # "invariant" or index of the J-partner block
    label: str = ""

    @property
    def invariant(self) -> bool:
        return self.j_action == "invariant"


@dataclass
class PrincipalSpectrum:
    kappa: object
    blocks: list[PrincipalBlock]
    c: int
    m: int
    flags: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return 2 * self.m - 1

    def values(self) -> list:
        return [b.value for b in self.blocks]


@dataclass(frozen=True)
class ModelSpec:
    family: str
    sf: SpaceForm
    param: object = None  # t for the A-family, kappa^2 for B/C/D/E
    k: Optional[int] = None
    symbolic: bool = False

    @property
    def c(self) -> int:
        return self.sf.c

    @property
    def m(self) -> int:
        return self.sf.m

    @property
    def n(self) -> int:
        return self.sf.n

    @property
    def l(self) -> Optional[int]:
        return None if self.k is None else self.m - 1 - self.k

    @property
    def display(self) -> str:
        return DISPLAY.get((self.family, self.c), self.family)


def symbol(spec: ModelSpec) -> RatFunc:
    name = "mu" if spec.family in CLASS_A else "kappa"
    return RatFunc.variable(name)


# ---------------------------------------------------------------------------
# constraints


def family_constraints(spec: ModelSpec) -> dict:
    """Validity report: legal range, dimension constraints and coincidence flags."""
    fam, c, m = spec.family, spec.c, spec.m
    rep = {"family": fam, "space": spec.sf.name, "m": m, "valid": True, "reason": "", "flags": []}

    def bad(reason):
        rep["valid"] = False
        rep["reason"] = reason
        return rep

    if fam not in FAMILIES:
        return bad(f"unknown family {fam}")
    ranges = {
        ("A0", -1): "no parameter",
        ("A1", 1): "t = cot^2 r in (0, oo)",
        ("A1", -1): "t = coth^2 r in (1, oo)",
        ("A1tube", -1): "t = tanh^2 r in (0, 1)",
        ("A2", 1): "t = cot^2 r in (0, oo)",
        ("A2", -1): "t = coth^2 r in (1, oo)",
        ("B", 1): "kappa^2 in (0, oo)",
        ("B", -1): "kappa = 2 tanh 2r, kappa^2 in (0, 4)",
        ("C", 1): "kappa^2 in (0, oo)",
        ("D", 1): "kappa^2 in (0, oo)",
        ("E", 1): "kappa^2 in (0, oo)",
    }
    if (fam, c) not in ranges:
        return bad(f"family {fam} does not occur in the {'projective' if c == 1 else 'hyperbolic'} space")
    rep["range"] = ranges[(fam, c)]
    if fam == "A2":
        if spec.k is None or not 1 <= spec.k <= m - 2:
            if spec.k == 0 or spec.k == m - 1:
                rep["flags"].append("degenerates to A1")
            return bad("A2 needs 1 <= k <= m-2")
    if fam == "C" and (m % 2 == 0 or m < 5):
        return bad("C needs m = 2k+1 >= 5")
    if fam == "D" and m != 9:
        return bad("D needs m = 9")
    if fam == "E" and m != 15:
        return bad("E needs m = 15")
    if spec.symbolic or fam == "A0":
        return rep
    x = spec.param
    if x is None:
        return bad("missing parameter")
    if isinstance(x, RatFunc):
        return bad("symbolic value passed without the symbolic flag")
    if fam in CLASS_A:
        lo, hi = {
            ("A1", 1): (0, None),
            ("A1", -1): (1, None),
            ("A1tube", -1): (0, 1),
            ("A2", 1): (0, None),
            ("A2", -1): (1, None),
        }[(fam, c)]
    else:
        lo, hi = (0, 4) if c == -1 else (0, None)
    if sign_of(x - lo) <= 0 or (hi is not None and sign_of(x - hi) >= 0):
        return bad(f"parameter {fmt(x)} outside {rep['range']}")
    if fam == "B" and c == -1 and normalize(x) == 3:
        rep["flags"].append("mu = kappa = sqrt(3): V_mu2 taken inside D only")
    return rep


def _check(spec: ModelSpec) -> None:
    rep = family_constraints(spec)
    if not rep["valid"]:
        raise DomainError(rep["reason"])


# ---------------------------------------------------------------------------
# spectra


def mu_star(mu, kappa, c: int):
    """Hopf partner ``(kappa*mu + 2c)/(2mu - kappa)``."""
    den = 2 * mu - kappa
    if den == 0:
        raise ValueError("μ* undefined")
    return (kappa * mu + 2 * c) / den


def root_param(spec: ModelSpec):
    """``mu = sqrt(t)`` for the A-family, ``kappa = sqrt(kappa^2)`` otherwise."""
    if spec.symbolic:
        return symbol(spec)
    if spec.family == "A0":
        return Fraction(1)
    return sqrt_exact(normalize(spec.param))


def spectrum(spec: ModelSpec) -> PrincipalSpectrum:
    """Exact principal curvatures with multiplicities and J-action."""
    _check(spec)
    fam, c, m = spec.family, spec.c, spec.m
    x = root_param(spec)
    if fam == "A0":
        return PrincipalSpectrum(Fraction(2), [PrincipalBlock(Fraction(1), 2 * m - 2, label="nu")], c, m)
    if fam in ("A1", "A1tube"):
        mu = x
        kappa = mu - c / mu
        label = "nu" if fam == "A1tube" else "mu"
        return PrincipalSpectrum(kappa, [PrincipalBlock(mu, 2 * (m - 1), label=label)], c, m)
    if fam == "A2":
        mu1 = x
        mu3 = -c / mu1
        k, l = spec.k, spec.l
        return PrincipalSpectrum(
            mu1 - c / mu1,
            [PrincipalBlock(mu1, 2 * l, label="mu1"), PrincipalBlock(mu3, 2 * k, label="mu3")],
            c,
            m,
        )
    kappa = x
    kappa2 = kappa * kappa
    rad = sqrt_exact(4 + c * kappa2)
    mu2 = (-2 * c + rad) / kappa
    mu4 = (-2 * c - rad) / kappa
    flags = []
    if fam == "B":
        blocks = [
            PrincipalBlock(mu2, m - 1, 1, "mu2"),
            PrincipalBlock(mu4, m - 1, 0, "mu4"),
        ]
        if c == -1 and not spec.symbolic and mu2 == kappa:
            flags.append("mu2 = kappa")
        return PrincipalSpectrum(kappa, blocks, c, m, flags)
    # C, D, E live in the projective space, where sqrt(kappa^2 + 4) is shared
    mu1 = (kappa + rad) / 2
    mu3 = (kappa - rad) / 2
    mults = {"C": (m - 3, 2, m - 3, 2), "D": (4, 4, 4, 4), "E": (8, 6, 8, 6)}[fam]
    blocks = [
        PrincipalBlock(mu1, mults[0], "invariant", "mu1"),
        PrincipalBlock(mu2, mults[1], 3, "mu2"),
        PrincipalBlock(mu3, mults[2], "invariant", "mu3"),
        PrincipalBlock(mu4, mults[3], 1, "mu4"),
    ]
    return PrincipalSpectrum(kappa, blocks, c, m)


def power_traces(sp: PrincipalSpectrum, k: int):
    """``f_k = tr A^k = kappa^k + sum mult * value^k``."""
    acc = sp.kappa**k
    for b in sp.blocks:
        acc = acc + b.multiplicity * b.value**k
    return normalize(acc)


def param_conversions(spec: ModelSpec) -> dict:
    """``r1^2 = t/(t+c)``, ``r2^2 = 1/(t+c)``, ``kappa``, ``t`` for the A-family.

    For the tube about the complex hyperbolic hyperplane the product picture
    uses ``t' = 1/t = coth^2 r`` with the factors of dimensions ``(n, 1)``.
    """
    if spec.family not in CLASS_A or spec.family == "A0":
        raise ValueError("parameter conversions need an A1/A2 model")
    c = spec.c
    if spec.symbolic:
        t = symbol(spec) ** 2
    else:
        t = normalize(spec.param)
    tb = 1 / t if spec.family == "A1tube" else t
    if tb + c == 0:
        raise ValueError("t + c = 0")
    sp = spectrum(spec)
    return {"t": t, "t_block": tb, "r1_sq": tb / (tb + c), "r2_sq": 1 / (tb + c), "kappa": sp.kappa}


def spectrum_strings(spec: ModelSpec) -> dict:
    sp = spectrum(spec)
    return {
        "kappa": fmt(sp.kappa),
        "blocks": [
            {
                "label": b.label,
                "value": fmt(b.value),
                "multiplicity": b.multiplicity,
                "j_action": "invariant" if b.invariant else f"swapped with {sp.blocks[b.j_action].label}",
            }
            for b in sp.blocks
        ],
    }


def catalog(sf: SpaceForm) -> list[dict]:
    """Families present in the space form at dimension ``m`` with symbolic spectra."""
    m, c = sf.m, sf.c
    rows = []
    fams = ["A1", "A2", "B", "C", "D", "E"] if c == 1 else ["A0", "A1", "A1tube", "A2", "B"]
    for fam in fams:
        ks = [None]
        if fam == "A2":
            ks = list(range(1, m - 1))
        for k in ks:
            spec = ModelSpec(fam, sf, k=k, symbolic=fam != "A0")
            rep = family_constraints(spec)
            if not rep["valid"]:
                continue
            row = {
                "family": spec.display,
                "space": sf.name,
                "m": m,
                "constraints": rep["range"],
                "spectrum": spectrum_strings(spec),
            }
            if k is not None:
                row["k"] = k
            if rep["flags"]:
                row["flags"] = rep["flags"]
            rows.append(row)
    return rows

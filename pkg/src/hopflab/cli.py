"""Command-line front end: catalog, classify, verify, report.

Exit codes: 0 ok, 1 verification failure, 2 usage, 3 parameter out of range,
4 engines disagree.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import block_laplace as bl
from .classifier import (
    BANNER,
    VerificationMismatch,
    b_three_type,
    cde_exclude,
    b_cubic_coefficients,
    theorem_report,
)
from .delta_module import (
    center_of_mass_A1,
    chen_type_evidence,
    inner_product_identities,
    verify_closed_iterates,
)
from .exact_scalar import RatFunc, fmt, normalize, parse_scalar, to_decimal
from .model_catalog import DomainError, ModelSpec, catalog, family_constraints, spectrum_strings
from .projector_embedding import (
    SpaceForm,
    embed_point,
    hyperquadric_residual,
    projector_defects,
    sample_exact_point,
    sample_float_point,
)
from .tangent_algebra import model, nabla_A_norm_sq, simons_norm_nablaA, trace_identities

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_MISMATCH = 0, 1, 2, 3, 4
FLOAT_TOL = 1e-12

FAMILY_ALIASES = {"A1'": "A1", "A1''": "A1tube"}


class UsageError(ValueError):
    pass


def threads() -> int:
    try:
        return max(1, int(os.environ.get("HOPFLAB_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn: Callable, items: list) -> list:
    """Map preserving input order; the pool size is capped by ``HOPFLAB_THREADS``."""
    n = threads()
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def space_form(space: str, m: int) -> SpaceForm:
    if space not in ("cp", "ch"):
        raise UsageError("space must be cp or ch")
    try:
        return SpaceForm(1 if space == "cp" else -1, m)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc


def exact_param(text: Optional[str]):
    if text is None:
        return None
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# classify


def classify(space: str, m: int, family: str, t: Optional[str] = None, kappa2: Optional[str] = None,
             kappa: Optional[str] = None, k: Optional[int] = None, symbolic: bool = False) -> dict:
    sf = space_form(space, m)
    fam = FAMILY_ALIASES.get(family, family)
    if fam not in ("A0", "A1", "A1tube", "A2", "B", "C", "D", "E"):
        raise UsageError(f"unknown family {family}")
    if fam in ("A1", "A1tube", "A2"):
        param = exact_param(t)
    elif fam in ("B", "C", "D", "E"):
        param = exact_param(kappa2)
        if kappa is not None:
            if param is not None:
                raise UsageError("give --kappa or --kappa2, not both")
            param = normalize(exact_param(kappa) ** 2)
    else:
        param = None
    spec = ModelSpec(fam, sf, param, k=k, symbolic=symbolic)
    rep = family_constraints(spec)
    if not rep["valid"]:
        raise DomainError(rep["reason"])
    if not symbolic and param is None and fam != "A0":
        raise UsageError("missing parameter")
    out = {"schema_version": SCHEMA_VERSION, "spectrum": spectrum_strings(spec)}
    if fam == "A0":
        r = chen_type_evidence(spec)
        out.update(r.to_json())
        out["engines"] = ["delta_module"]
        out["anchor"] = "horosphere"
    elif fam in ("A1", "A1tube"):
        r = chen_type_evidence(spec)
        out.update(r.to_json())
        out["engines"] = ["delta_module"]
        if not symbolic:
            x = bl.cross_check_frame_vs_block(spec)
            if not x["agree"]:
                raise VerificationMismatch(f"engines disagree: {x}")
            out["engines"].append("block_laplace")
        out["anchor"] = "sphere-family"
    elif fam == "A2":
        if symbolic:
            raise UsageError("A2 classification needs a concrete t")
        r = bl.a2_type_analysis(k, m - 1 - k, sf.c, param)
        out.update({
            "family": "A2", "space": sf.name, "m": m, "k": k, "param": fmt(param),
            "type": r.verdict, "null_type": r.null_type,
            "eigenvalues": [_eig(x) for x in r.distinct],
            "mass_symmetric": r.mass_symmetric,
            "checks": {name: bool(v) for name, v in r.checks.items()},
            "engines": ["block_laplace"], "anchor": "A2",
        })
    elif fam == "B":
        e = b_three_type(sf, None if symbolic else param)
        out.update(e.to_json())
    else:
        w = cde_exclude(fam, m)
        out.update({
            "family": fam, "space": sf.name, "m": m, "param": None if param is None else fmt(param),
            "type": "not 2-type", "witness": w["witness"], "f": w["f"],
            "engines": ["tangent_algebra"], "anchor": "C/D/E exclusion",
        })
    return out


def _eig(x) -> dict:
    try:
        dec = to_decimal(x, 15)
    except (TypeError, ValueError):
        dec = None
    return {"exact": fmt(x), "decimal": dec}


# ---------------------------------------------------------------------------
# verification suites


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    residual: str = ""

    def line(self) -> str:
        tail = f": {self.residual}" if not self.ok and self.residual else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.suite} {self.name}{tail}"


def suite_embedding(samples: int = 100, seed: int = 0, ms=range(2, 6)) -> list[Check]:
    out = []
    for c in (1, -1):
        for m in ms:
            sf = SpaceForm(c, m)
            rng = random.Random(f"{seed}:{c}:{m}")
            nrng = np.random.default_rng([seed, c + 1, m])
            bad = ""
            for _ in range(samples):
                P = embed_point(sample_exact_point(sf, rng), sf)
                diff, tr = projector_defects(P, sf)
                hq = hyperquadric_residual(P, sf)
                if any(x != 0 for row in diff for x in row) or tr != 0 or hq != 0:
                    bad = f"P^2-P, trP-1, quadric = {diff}, {tr}, {hq}"
                    break
                Pf = embed_point(sample_float_point(sf, nrng), sf)
                d1, d2 = projector_defects(Pf, sf)
                d3 = abs(hyperquadric_residual(Pf, sf))
                if max(d1, d2, d3) >= FLOAT_TOL:
                    bad = f"float defects {d1:.3e}, {d2:.3e}, {d3:.3e}"
                    break
            out.append(Check("embedding", f"{sf.name} m={m}", not bad, bad))
    return out


def suite_iterates(family: Optional[str] = None, ms=range(2, 7)) -> list[Check]:
    fams = [family] if family else ["A1", "A1tube", "B"]
    out = []
    for fam in fams:
        for c in (1, -1):
            for m in ms:
                spec = ModelSpec(fam, SpaceForm(c, m), symbolic=True)
                if not family_constraints(spec)["valid"]:
                    continue
                rep = verify_closed_iterates(spec)
                bad = next(
                    (f"s={s} {lab}: {fmt(r)}" for s, res in rep["residuals"].items() for lab, r in res.items() if r != 0),
                    "",
                )
                out.append(Check("iterates", f"{spec.display} {spec.sf.name} m={m}", rep["ok"], bad))
    return out


def suite_block(max_kl: int = 3, smax: int = 3) -> list[Check]:
    jobs = [(k, s - k, c) for s in range(1, max_kl + 1) for k in range(s + 1) for c in (1, -1)]

    def run(job):
        k, l, c = job
        rep = bl.verify_block_formulas(k, l, c, smax=smax)
        bad = "" if rep["ok"] else f"first failure {rep['failures'][0]}"
        return Check("block", f"k={k} l={l} c={c}", rep["ok"], bad)

    return ordered_map(run, jobs)


def suite_type_equations(max_kl: int = 3, ms=range(2, 7)) -> list[Check]:
    out = []
    for s in range(1, max_kl + 1):
        for k in range(s + 1):
            for c in (1, -1):
                tm = bl.TubeModel(k, s - k, c, bl.t_symbol())
                res = bl.cubic_residual_rep(tm)
                bad = next((fmt(x) for x in res if x != 0), "")
                out.append(Check("type-equations", f"block cubic k={k} l={s - k} c={c}", not bad, bad))
    kappa = RatFunc.variable("kappa")
    for c in (1, -1):
        for m in ms:
            sf = SpaceForm(c, m)
            spec = ModelSpec("B", sf, symbolic=True)
            r = chen_type_evidence(spec, cubic=b_cubic_coefficients(m, c, kappa * kappa))
            ok = r.checks.get("cubic residual", False)
            out.append(Check("type-equations", f"class-B cubic {sf.name} m={m}", ok, "" if ok else "nonzero"))
            for fam in ("A1", "A1tube"):
                aspec = ModelSpec(fam, sf, symbolic=True)
                if not family_constraints(aspec)["valid"]:
                    continue
                com = center_of_mass_A1(aspec)
                ok = com["quadratic identity"] and com["Lw=0"]
                out.append(Check("type-equations", f"{aspec.display} quadratic {sf.name} m={m}", ok,
                                 "" if ok else str(com)))
    return out


def suite_traces(ms=range(2, 5)) -> list[Check]:
    out = []
    for c in (1, -1):
        for m in ms:
            sf = SpaceForm(c, m)
            specs = [ModelSpec(f, sf, symbolic=True) for f in ("A1", "A1tube", "B")]
            specs += [ModelSpec("A0", sf)]
            specs += [ModelSpec("A2", sf, k=k, symbolic=True) for k in range(1, m - 1)]
            for spec in specs:
                if not family_constraints(spec)["valid"]:
                    continue
                label = f"{spec.display} {sf.name} m={m}" + (f" k={spec.k}" if spec.k else "")
                tm = model(spec)
                for name, (got, want) in trace_identities(tm).items():
                    ok = normalize(got - want) == 0
                    out.append(Check("traces", f"{name} {label}", ok, "" if ok else f"{fmt(got)} != {fmt(want)}"))
                if spec.family in ("A0", "A1", "A1tube", "B"):
                    ids = inner_product_identities(spec)
                    ok = all(v["ok"] for v in ids.values())
                    out.append(Check("traces", f"<Delta^s x, x> {label}", ok, "" if ok else str(ids)))
                if spec.family in ("A0", "A1", "A1tube", "A2"):
                    simons = simons_norm_nablaA(spec)
                    brute = nabla_A_norm_sq(tm)
                    ok = normalize(simons - brute) == 0 and normalize(simons - 2 * (sf.n - 1)) == 0
                    out.append(Check("traces", f"||nabla A||^2 {label}", ok,
                                     "" if ok else f"{fmt(simons)} vs {fmt(brute)}"))
    return out


SUITES = ("embedding", "iterates", "block", "type-equations", "traces")


def run_suites(suite: str, samples: int = 100, seed: int = 0, max_kl: int = 3,
               family: Optional[str] = None) -> list[Check]:
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name == "embedding":
            out += suite_embedding(samples, seed)
        elif name == "iterates":
            out += suite_iterates(family)
        elif name == "block":
            out += suite_block(max_kl)
        elif name == "type-equations":
            out += suite_type_equations(max_kl)
        elif name == "traces":
            out += suite_traces()
        else:
            raise UsageError(f"unknown suite {name}")
    return out


# ---------------------------------------------------------------------------
# report rendering


def report_rows(rep: dict) -> list[dict]:
    rows = []
    for item in rep["items"]:
        for e in item["entries"]:
            rows.append({
                "item": item["item"],
                "family": e["family"],
                "k": e.get("k", ""),
                "param": e["param"] if e["param"] is not None else "",
                "radius": e["radius"],
                "type": e["type"],
                "eigenvalues": "; ".join(x["exact"] for x in e["eigenvalues"]),
                "mass_symmetric": e["mass_symmetric"],
                "anchor": e["anchor"],
                "engines": "+".join(e["engines"]),
                "note": e.get("note", ""),
            })
    return rows


def render_report(rep: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps({"schema_version": SCHEMA_VERSION, **rep}, indent=2, ensure_ascii=False) + "\n"
    rows = report_rows(rep)
    cols = ["item", "family", "k", "param", "radius", "type", "eigenvalues", "mass_symmetric", "anchor",
            "engines", "note"]
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = [f"# Theorem {rep['theorem']}, m = {rep['m']} ({BANNER})", ""]
    for item in rep["items"]:
        lines += [f"## {item['item']}", ""]
        sub = [r for r in rows if r["item"] == item["item"]]
        if not sub:
            lines += ["(none)", ""]
            continue
        hdr = cols[1:]
        lines.append("| " + " | ".join(hdr) + " |")
        lines.append("|" + "---|" * len(hdr))
        for r in sub:
            lines.append("| " + " | ".join(str(r[c]).replace("|", "\\|") for c in hdr) + " |")
        lines.append("")
    if rep["excluded"]:
        lines += ["## excluded", ""]
        for x in rep["excluded"]:
            lines.append("- " + ", ".join(f"{k}: {v}" for k, v in x.items()))
        lines.append("")
    return "\n".join(lines)


def render_catalog(rows: list[dict], fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps({"schema_version": SCHEMA_VERSION, "rows": rows}, indent=2, ensure_ascii=False) + "\n"
    flat = []
    for r in rows:
        blocks = "; ".join(f"{b['label']}={b['value']} (x{b['multiplicity']}, {b['j_action']})"
                           for b in r["spectrum"]["blocks"])
        flat.append({"family": r["family"], "k": r.get("k", ""), "constraints": r["constraints"],
                     "kappa": r["spectrum"]["kappa"], "blocks": blocks})
    cols = ["family", "k", "constraints", "kappa", "blocks"]
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
        return buf.getvalue()
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    lines += ["| " + " | ".join(str(r[c]) for c in cols) + " |" for r in flat]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopflab", description="Finite-type checks for Hopf hypersurfaces.")
    ap.add_argument("--out", help="write output to FILE instead of stdout")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="families, constraints and symbolic spectra")
    p.add_argument("--space", choices=("cp", "ch"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv", "md"), default="json")

    p = sub.add_parser("classify", help="type, eigenvalues and mass symmetry of one model")
    p.add_argument("--space", choices=("cp", "ch"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--t", help="cot^2 r (coth^2 r, tanh^2 r) as an exact string")
    p.add_argument("--kappa2", help="kappa^2 as an exact string")
    p.add_argument("--kappa", help="kappa as an exact string")
    p.add_argument("--k", type=int)
    p.add_argument("--symbolic", action="store_true")

    p = sub.add_parser("verify", help="identity suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-kl", type=int, default=3)
    p.add_argument("--family", choices=("A1", "A1tube", "B"))
    p.add_argument("--symbolic", action="store_true", help="accepted for clarity; iterates are always symbolic")

    p = sub.add_parser("report", help="classification statements as tables")
    p.add_argument("--theorem", required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--format", choices=("json", "csv", "md"), default="md")
    return ap


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "catalog":
            text = render_catalog(catalog(space_form(args.space, args.m)), args.format)
            code = EXIT_OK
        elif args.command == "classify":
            res = classify(args.space, args.m, args.family, args.t, args.kappa2, args.kappa, args.k, args.symbolic)
            text = json.dumps(res, indent=2, ensure_ascii=False) + "\n"
            code = EXIT_OK
        elif args.command == "verify":
            checks = run_suites(args.suite, args.samples, args.seed, args.max_kl, args.family)
            failed = [c for c in checks if not c.ok]
            shown = checks if args.verbose else failed
            lines = [c.line() for c in shown]
            lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
            text = "\n".join(lines) + "\n"
            code = EXIT_FAIL if failed else EXIT_OK
        else:
            theorem = args.theorem.upper().removeprefix("T").removesuffix("-NOTE")
            rep = theorem_report(theorem, args.m)
            text = render_report(rep, args.format)
            code = EXIT_OK
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except VerificationMismatch as exc:
        print(f"verification mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())

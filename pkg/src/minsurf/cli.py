"""Command-line entry point: ``minsurf <subcommand> ...``.

Exit codes: 0 pass, 1 analysis or verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import os
import sys
from fractions import Fraction

from . import SCHEMA_VERSION, __version__
from . import catalog as cat
from .algebra import INF, Ex, divisor_of_form, divisor_of_function
from .algebra.codec import SchemaError, encode_point, encode_scalar
from .algebra.sphere import fmt_point
from .tolerances import DEFAULT, Tolerances

log = logging.getLogger("minsurf")


class UsageError(Exception):
    pass


class AnalysisFailure(Exception):
    pass


# -- JSON ---------------------------------------------------------------------------

def jsonable(x):
    """Deterministic conversion of report objects to JSON values."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if x is INF:
        return "inf"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (Ex, complex)):
        return encode_scalar(x)
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if dataclasses.is_dataclass(x):
        return jsonable(dataclasses.asdict(x))
    if hasattr(x, "tolist"):
        return jsonable(x.tolist())
    return str(x)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


# -- inputs -------------------------------------------------------------------------

def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: malformed JSON ({e})") from e


def load_source(src: str, params=None, seed=None):
    """A data file, or a catalog entry name. Returns (data, entry or None)."""
    from .weierstrass import data_from_json
    if os.path.exists(src):
        return data_from_json(_load_json(src)), None
    p = cat.parse_params(params)
    if src == "fujimoto" and seed is not None:
        p.setdefault("seed", seed)
    try:
        entry = cat.get(src, **p)
    except cat.UnknownEntry as e:
        raise UsageError(f"{src!r} is neither a file nor a catalog entry") from e
    except cat.InvalidParameters as e:
        raise UsageError(str(e)) from e
    if entry.data is None:
        raise UsageError(f"catalog entry {src!r} is {', '.join(entry.flags)}; nothing to analyze")
    return entry.data, entry


def _apply_mode(d, mode, warnings):
    from .weierstrass import to_float
    if mode == "float":
        return to_float(d)
    if not d.exact:
        warnings.append("coefficients are not exact; falling back to float mode")
    return d


# -- reports ------------------------------------------------------------------------

def divisor_table(d):
    """Zeros and poles of g, h dz and g h dz (R^3) or their R^4 analogues."""
    from .weierstrass import WData3, WData4
    rows = []
    if isinstance(d, WData3):
        if d.g.is_constant():
            return []
        rows = [("g", divisor_of_function(d.g)), ("hdz", divisor_of_form(d.h_form)),
                ("ghdz", divisor_of_form(d.h_form * d.g))]
    elif isinstance(d, WData4):
        rows = [(n, divisor_of_function(g)) for n, g in (("g1", d.g1), ("g2", d.g2)) if not g.is_constant()]
        rows.append(("hdz", divisor_of_form(d.h_form)))
    return rows


def analyze(d, tol: Tolerances, warnings):
    from .gauss import profile
    from .periods import classify, period_condition
    from .surface import total_curvature
    from .theorems import verify
    from .weierstrass import UnsupportedGenus, data_to_json, end_orders, regularity_check
    rep = {"input": data_to_json(d), "warnings": warnings}
    reg = regularity_check(d, tol)
    rep["regularity"] = reg
    ok = reg.ok
    if not reg.ok:
        warnings.append("regularity condition fails: " + ", ".join(fmt_point(e.point) for e in reg.violations()))
    try:
        d.domain.require_genus0()
    except UnsupportedGenus as e:
        warnings.append(str(e))
        return rep, False
    rep["ends"] = end_orders(d, tol)
    rep["periods"] = period_condition(d, tol)
    cls = classify(d, tol)
    rep["classification"] = cls
    if d.kind == "rn":
        rep["theorems"] = _rn_report(d, tol, warnings)
        ok = ok and rep["theorems"]["pass"]
        return rep, ok
    if d.is_flat():
        warnings.append("flat: constant Gauss map")
        return rep, ok
    rep["divisors"] = [{"name": n, "divisor": dv} for n, dv in divisor_table(d)]
    rep["profiles"] = profile(d, tol)
    th = verify(d, tol)
    warnings.extend(w for w in th.warnings if w not in warnings)
    rep["theorems"] = th
    ok = ok and th.passed
    try:
        q = total_curvature(d, tol)
        key = "total_curvature" if cls.tag == "algebraic" else "gauss_map_area"
        rep[key] = q
        if key == "gauss_map_area":
            warnings.append("periods fail or surface incomplete: total curvature over the universal cover is infinite;"
                            " reporting the Gauss-map area of the basic domain")
    except Exception as e:  # quadrature failure is reported, not fatal
        warnings.append(f"total curvature quadrature failed: {e}")
    return rep, ok


def _rn_report(d, tol, warnings, hyperplanes=None):
    from .curves import curve_from_forms, plucker_report, span_dimension, verify_rn
    out = {}
    f = curve_from_forms(d.phis)
    out["span"] = span_dimension(f)
    out["plucker"] = plucker_report(f, 0, tol) if f.exact else None
    passed = out["plucker"] is None or out["plucker"].plucker_lhs() == out["plucker"].plucker_rhs()
    if hyperplanes is not None:
        r = verify_rn(d, hyperplanes, tol)
        warnings.extend(r.warnings)
        out["rn"] = r
        passed = passed and r.passed
    out["pass"] = passed
    return out


def _md_value(v):
    v = jsonable(v)
    return json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else str(v)


def to_markdown(title, rep) -> str:
    lines = [f"# {title}", ""]
    for key in sorted(rep):
        val = rep[key]
        lines.append(f"## {key}")
        lines.append("")
        if key == "divisors":
            pts = []
            for row in val:
                for p in row["divisor"].points():
                    if not any(p is q or (p is not INF and q is not INF and p == q) for q in pts):
                        pts.append(p)
            lines.append("| z | " + " | ".join(fmt_point(p) for p in pts) + " |")
            lines.append("|---|" + "---|" * len(pts))
            for row in val:
                dv = row["divisor"]
                cells = []
                for p in pts:
                    m = dv.mult(p)
                    cells.append("" if m == 0 else (f"0^{m}" if m > 0 else f"inf^{-m}"))
                lines.append(f"| {row['name']} | " + " | ".join(cells) + " |")
        elif hasattr(val, "checks"):
            lines.append("| check | statement | lhs | rhs | form | pass | equality |")
            lines.append("|---|---|---|---|---|---|---|")
            for c in val.checks:
                lines.append(f"| {c.theorem} | {c.statement} | {_md_value(c.lhs)} | {_md_value(c.rhs)} | "
                             f"{c.form} | {c.passed if c.applicable else 'n/a'} | {c.equality} |")
        elif isinstance(val, list) and key == "warnings":
            lines += [f"- {w}" for w in val] or ["(none)"]
        else:
            lines.append("```json")
            lines.append(dumps(val).rstrip())
            lines.append("```")
        lines.append("")
    return "\n".join(lines) + "\n"


def emit(args, title, rep, out=None):
    out = out or sys.stdout
    if args.report == "md":
        out.write(to_markdown(title, rep))
    else:
        out.write(dumps(rep))


# -- subcommands ----------------------------------------------------------------------

def cmd_analyze(args, tol):
    warnings = []
    d, entry = load_source(args.source, args.param, args.seed)
    d = _apply_mode(d, args.mode, warnings)
    rep, ok = analyze(d, tol, warnings)
    if entry is not None:
        rep["catalog"] = {"name": entry.name, "params": entry.params, "expected": entry.expected,
                          "provenance": entry.provenance, "flags": list(entry.flags)}
    emit(args, f"analysis of {args.source}", rep)
    return 0 if ok else 1


def cmd_verify(args, tol):
    from .theorems import verify
    warnings = []
    d, entry = load_source(args.source, args.param, args.seed)
    d = _apply_mode(d, args.mode, warnings)
    if d.kind == "rn":
        H = None
        if args.hyperplanes:
            from .curves import arrangement_from_json
            H = arrangement_from_json(_load_json(args.hyperplanes))
        elif entry is not None and "construction" in entry.extra:
            H = entry.extra["construction"].hyperplanes
        out = _rn_report(d, tol, warnings, H)
        rep = {"theorems": out, "warnings": warnings}
        emit(args, f"verification of {args.source}", rep)
        return 0 if out["pass"] else 1
    th = verify(d, tol)
    rep = {"theorems": th, "warnings": warnings + th.warnings}
    emit(args, f"verification of {args.source}", rep)
    return 0 if th.passed else 1


def cmd_mesh(args, tol):
    from .surface import GridSpec, export_mesh, immerse
    warnings = []
    d, _ = load_source(args.source, args.param, args.seed)
    d = _apply_mode(d, args.mode, warnings)
    try:
        spec = GridSpec.parse(args.grid, exclusion=args.exclusion, slit=not args.no_slit)
    except ValueError as e:
        raise UsageError(f"bad --grid {args.grid!r}; expected RxT such as 32x32") from e
    z0 = complex(args.z0.replace("i", "j")) if args.z0 else None
    m = immerse(d, z0, spec, tol)
    fmt = args.format or os.path.splitext(args.out)[1].lstrip(".").lower() or "obj"
    with open(args.out, "wb") as fh:
        fh.write(export_mesh(m, fmt))
    if m.dim > 3 or args.sidecar:
        with open(os.path.splitext(args.out)[0] + ".json", "wb") as fh:
            fh.write(export_mesh(m, "json"))
    rep = {"vertices": len(m.vertices), "faces": len(m.faces), "out": args.out, "format": fmt,
           "slits": [[encode_point(complex(p)), encode_scalar(complex(u))] for p, u in m.slits],
           "K_max": float(m.K.max()) if len(m.K) else None, "warnings": warnings}
    emit(args, "mesh", rep)
    return 0


def cmd_curve(args, tol):
    from .curves import ProjectiveCurve, plucker_report, span_dimension
    f = ProjectiveCurve.from_json(_load_json(args.curve))
    r = span_dimension(f)
    rep = {"n": f.n, "deg": f.deg, "span": r}
    if r < 1:
        rep["warnings"] = ["constant curve"]
        emit(args, "curve", rep)
        return 1
    pr = plucker_report(f, args.genus, tol)
    rep["plucker"] = pr
    emit(args, "Plucker audit", rep)
    return 0 if pr.plucker_lhs() == pr.plucker_rhs() and pr.routes_agree else 1


def cmd_hyperplanes(args, tol):
    from .curves import (ProjectiveCurve, arrangement_from_json, general_position, hyperplane_ramification,
                         smt3_check)
    from .weierstrass import PuncturedSphere
    H = arrangement_from_json(_load_json(args.arrangement))
    n = args.n if args.n is not None else len(H[0]) - 1
    if any(len(h) != n + 1 for h in H):
        raise SchemaError(f"every hyperplane needs {n + 1} coefficients for P^{n}")
    gp = general_position(H, n)
    rep = {"q": len(H), "n": n, "general_position": gp}
    ok = gp
    if args.curve:
        from .algebra.codec import decode_point
        f = ProjectiveCurve.from_json(_load_json(args.curve))
        E = [decode_point(p) for p in (json.loads(args.exceptional) if args.exceptional else [])]
        dom = PuncturedSphere(tuple(E))
        rep["ramification"] = [hyperplane_ramification(f, h, dom, tol) for h in H]
        if gp:
            s = smt3_check(f, H, E, 0, tol)
            rep["smt"] = s
            ok = s.passed
    emit(args, "hyperplane arrangement", rep)
    return 0 if ok else 1


def cmd_unicity(args, tol):
    from .theorems import unicity_r3, unicity_r4
    warnings = []
    A, ea = load_source(args.a, args.param, args.seed)
    if args.b:
        B, _ = load_source(args.b, args.param, args.seed)
    elif ea is not None and ea.partner is not None:
        B = ea.partner
    else:
        raise UsageError("unicity needs two data sets (or a catalog pair)")
    A, B = _apply_mode(A, args.mode, warnings), _apply_mode(B, args.mode, warnings)
    if A.kind != B.kind:
        raise UsageError("both data sets must live in the same ambient space")
    if A.domain.punctures != B.domain.punctures:
        from .algebra import same_point
        pa, pb = A.domain.punctures, B.domain.punctures
        if len(pa) != len(pb) or not all(any(same_point(p, q) for q in pb) for p in pa):
            raise UsageError("both data sets must share the basic domain")
    if A.kind == "r3":
        rep = unicity_r3(A.g, B.g, A.domain, tol)
    elif A.kind == "r4":
        rep = unicity_r4(A, B, tol)
    else:
        raise UsageError("unicity is defined for R^3 and R^4 data")
    emit(args, "unicity", {"unicity": rep, "warnings": warnings + rep.warnings})
    return 0 if rep.passed else 1


def cmd_catalog(args, tol):
    from .weierstrass import data_to_json
    if args.action == "list":
        for e in cat.list_entries():
            sys.stdout.write(e.summary() + "\n")
        return 0
    if not args.name:
        raise UsageError("catalog show needs an entry name")
    try:
        p = cat.parse_params(args.param)
        if args.name == "fujimoto" and args.seed is not None:
            p.setdefault("seed", args.seed)
        e = cat.get(args.name, **p)
    except (cat.UnknownEntry, cat.InvalidParameters) as ex:
        raise UsageError(str(ex.args[0] if ex.args else ex)) from ex
    rep = {"name": e.name, "params": e.params, "expected": e.expected, "provenance": e.provenance,
           "flags": list(e.flags), "mode": e.mode,
           "data": data_to_json(e.data) if e.data is not None else None}
    if e.partner is not None:
        rep["partner"] = data_to_json(e.partner)
    if args.emit:
        if e.data is None:
            raise UsageError(f"{e.name} has no Weierstrass data to emit")
        with open(args.emit, "w") as fh:
            fh.write(dumps(data_to_json(e.data)))
    emit(args, f"catalog entry {e.name}", rep)
    return 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["exact", "float"], default="exact")
    common.add_argument("--tol", action="append", default=[], metavar="K=V",
                        help="tolerance override, e.g. --tol per=1e-10 (repeatable)")
    common.add_argument("--report", choices=["json", "md"], default="json")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled parameters")
    common.add_argument("--param", action="append", default=[], metavar="K=V",
                        help="catalog parameter, e.g. --param k=4 --param a=1,2,3")

    p = argparse.ArgumentParser(prog="minsurf", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"minsurf {__version__} (schema {SCHEMA_VERSION})")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full analysis report")
    a.add_argument("source", help="data JSON file or catalog entry name")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="theorem suite only")
    v.add_argument("source")
    v.add_argument("--hyperplanes", help="arrangement JSON for R^n data")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("mesh", parents=[common], help="integrate and export a mesh")
    m.add_argument("source")
    m.add_argument("--grid", default="32x32", help="rings x spokes, e.g. 32x32")
    m.add_argument("--out", required=True)
    m.add_argument("--format", choices=["obj", "ply"], default=None)
    m.add_argument("--z0", default=None, help="base point, e.g. 1 or 0.5+0.5i")
    m.add_argument("--exclusion", type=float, default=1e-2)
    m.add_argument("--no-slit", action="store_true", help="fail instead of slitting when periods fail")
    m.add_argument("--sidecar", action="store_true", help="also write the JSON sidecar")
    m.set_defaults(func=cmd_mesh)

    c = sub.add_parser("curve", parents=[common], help="projective curve tools")
    c.add_argument("action", choices=["plucker"])
    c.add_argument("curve", help="curve JSON {\"components\": [...]}")
    c.add_argument("--genus", type=int, default=0)
    c.set_defaults(func=cmd_curve)

    h = sub.add_parser("hyperplanes", parents=[common], help="hyperplane arrangement tools")
    h.add_argument("action", choices=["check"])
    h.add_argument("arrangement", help="arrangement JSON {\"hyperplanes\": [[...], ...]}")
    h.add_argument("--n", type=int, default=None, help="ambient projective dimension")
    h.add_argument("--curve", default=None, help="curve JSON for ramification and SMT checks")
    h.add_argument("--exceptional", default=None, help="JSON list of exceptional points E")
    h.set_defaults(func=cmd_hyperplanes)

    u = sub.add_parser("unicity", parents=[common], help="shared-value count of two Gauss maps")
    u.add_argument("a")
    u.add_argument("b", nargs="?")
    u.set_defaults(func=cmd_unicity)

    k = sub.add_parser("catalog", parents=[common], help="built-in examples")
    k.add_argument("action", choices=["list", "show"])
    k.add_argument("name", nargs="?")
    k.add_argument("--emit", default=None, help="write the entry's data JSON here")
    k.set_defaults(func=cmd_catalog)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        tol = Tolerances.parse(args.tol, DEFAULT)
    except (KeyError, ValueError) as e:
        sys.stderr.write(f"error: bad --tol: {e}\n")
        return 2
    try:
        return args.func(args, tol)
    except (SchemaError, UsageError, FileNotFoundError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (ValueError, ArithmeticError, RuntimeError) as e:
        sys.stdout.write(dumps({"error": {"type": type(e).__name__, "message": str(e)}}))
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

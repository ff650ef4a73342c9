"""Command-line front end.

Exit codes: 0 = all checks passed; 1 = a mathematical check failed (the
report says which identity and witness); 2 = usage or input error.  Reports
are deterministic given (config, seed): no timestamps, sorted keys.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import frobenius as fr
from . import localmod as lm
from .classify import classify
from .cocycles import EpsilonSystem, TwoCocycle
from .errors import NotSemisimpleField, ZLocalError
from .fields import CyclotomicField, PrimeField, field_from_json, field_to_json
from .groups import build_group

VERSION = "0.1.0"


def _parse_field(args, spec=None):
    if args.field is not None:
        return PrimeField(args.field)
    if args.cyclotomic is not None:
        return CyclotomicField(args.cyclotomic)
    if spec and "field" in spec:
        return field_from_json(spec["field"])
    raise ValueError("no field given: use --field P or --cyclotomic M")


def _load_json_arg(value):
    if os.path.exists(value):
        with open(value) as fh:
            return json.load(fh)
    return json.loads(value)


def _parse_group(value):
    if isinstance(value, str) and not os.path.exists(value) and not value.startswith("{"):
        return build_group(value)
    return build_group(_load_json_arg(value))


def parse_algebra_spec(spec, field):
    """{"group": ..., "H": [...], "N": [...], "order": d,
        "gamma_exp": [[...]], "epsilon_exp": [[...]]}"""
    G = build_group(spec["group"])
    H = G.full_subgroup() if spec.get("H") in (None, "full") else G.subgroup(spec["H"])
    if spec.get("N") in (None, "trivial"):
        N = G.trivial_subgroup()
    else:
        N = G.subgroup(spec["N"])
    order = int(spec.get("order", 1))
    if spec.get("gamma_exp") in (None, "trivial"):
        gamma = TwoCocycle.trivial(N, field)
    else:
        gamma = TwoCocycle.from_exponents(N, field, order, spec["gamma_exp"])
    if spec.get("epsilon_exp") in (None, "trivial"):
        eps = EpsilonSystem.trivial(H, N, field)
    else:
        eps = EpsilonSystem.from_exponents(H, N, field, order, spec["epsilon_exp"])
    return G, H, N, gamma, eps


def _emit(args, report_obj, human_lines):
    for line in human_lines:
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report_obj, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _meta(args, command):
    return {
        "tool": "zlocal",
        "version": VERSION,
        "command": command,
        "seed": args.seed,
    }


def cmd_verify(args):
    spec = _load_json_arg(args.algebra)
    field = _parse_field(args, spec)
    G, H, N, gamma, eps = parse_algebra_spec(spec, field)
    A, Fd = fr.build_A(G, H, N, gamma, eps, field)
    cert = fr.check_rigid_frobenius(A, Fd)
    ra = fr.characterization_a(A, Fd=Fd)
    rb = fr.characterization_b(A)
    audit = fr.well_definedness_audit(G, H, N, gamma, eps, field, seed=args.seed)
    ok = cert.passed and ra.ok and rb.ok and audit.ok
    report = {
        "meta": _meta(args, "verify"),
        "field": field_to_json(field),
        "dim": A.dim,
        "cert": cert.to_json(),
        "characterization_a": ra.to_json(),
        "characterization_b": rb.to_json(),
        "audit": audit.to_json(),
        "ok": ok,
    }
    lines = [
        f"algebra {A.name} over {field!r}: dim {A.dim}",
        f"  rigid Frobenius suite: {'pass' if cert.passed else 'FAIL'}",
        f"  characterization (a):  {'pass' if ra.ok else 'FAIL'}",
        f"  characterization (b):  {'pass' if rb.ok else 'FAIL'}",
        f"  transversal audit:     {'pass' if audit.ok else 'FAIL'}",
    ]
    if not ok:
        for rep in (cert.report, ra, rb, audit):
            for c in rep.failures():
                lines.append(f"  failed: {c.name} [{c.label}] witnesses={c.witnesses[:3]}")
    _emit(args, report, lines)
    return 0 if ok else 1


def cmd_classify(args):
    field = _parse_field(args)
    G = _parse_group(args.group)
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    entries, notes = classify(
        G,
        field,
        seed=args.seed,
        value_order=args.value_order,
        group_bound=args.max_group_order,
        cocycle_bound=args.cocycle_bound,
        jobs=jobs,
    )
    report = {
        "meta": _meta(args, "classify"),
        "group": {"name": G.name, "order": G.order},
        "field": field_to_json(field),
        "entries": [e.to_json() for e in entries],
        "skipped": notes.skipped,
        "count": len(entries),
        "count_label": "classes (bounded coboundary reduction, conjugacy heuristic)",
    }
    lines = [f"classify {G.name} over {field!r}: {len(entries)} entries"]
    lines.append(f"{'H':>4} {'N':>4} {'dim A':>6} {'FP(Rep)':>9} {'FP(loc)':>9} merged")
    for e in entries:
        lines.append(
            f"{e.H.order:>4} {e.N.order:>4} {str(e.dims['dim_A']):>6}"
            f" {str(e.dims['fp_rep']):>9} {str(e.dims['fp_loc']):>9}"
            f" {e.merged_count + e.conjugacy_merged}"
        )
    for s in notes.skipped:
        lines.append(f"  skipped: {s['kind']} (H order {s['H']}, N order {s['N']}): {s['detail']}")
    _emit(args, report, lines)
    return 0


def cmd_local_modules(args):
    spec = _load_json_arg(args.algebra)
    field = _parse_field(args, spec)
    G, H, N, gamma, eps = parse_algebra_spec(spec, field)
    A, Fd = fr.build_A(G, H, N, gamma, eps, field)
    cat = lm.RepCategory(A, Fd)
    if not cat.cert.passed:
        report = {
            "meta": _meta(args, "local-modules"),
            "cert": cat.cert.to_json(),
            "ok": False,
        }
        _emit(args, report, ["algebra fails the rigid Frobenius suite"])
        return 1
    fp = lm.fpdim_checks(cat, seed=args.seed)
    report = {
        "meta": _meta(args, "local-modules"),
        "field": field_to_json(field),
        "dim": A.dim,
        "fpdim": fp.to_json(),
        "ok": fp.ok,
    }
    lines = [f"local modules over {A.name}, field {field!r}"]
    census_available = True
    try:
        data = cat.simple_modules_census(seed=args.seed)
    except NotSemisimpleField as exc:
        census_available = False
        report["census"] = {"refused": str(exc)}
        lines.append(f"  census refused (NotSemisimpleField): {exc}")
    if census_available:
        simples = [
            {"name": S.name, "dim": d, "local": loc} for S, d, loc in data["simples"]
        ]
        muger = lm.muger_center_local(cat, seed=args.seed)
        twists = [
            lm.twist_local(cat, M).ok for M, _d in cat.simple_local_modules(args.seed)
        ]
        report["census"] = {
            "simples": simples,
            "complete": data["complete"],
            "muger": muger.to_json(),
            "twists_ok": all(twists),
        }
        locs = cat.simple_local_modules(args.seed)
        lines.append(f"  simple modules: {len(simples)}; local: {len(locs)}")
        for S, d, loc in data["simples"]:
            lines.append(f"    {S.name:<28} dim {d:>3} local={loc}")
        lines.append(f"  Muger center trivial: {muger.ok}")
        report["ok"] = report["ok"] and muger.ok and all(twists)
        if G.order <= args.modular_bound:
            S, T = lm.modular_data(cat, seed=args.seed)
            import zlocal.linalg as la

            detS = la.det(field, S)
            report["modular_data"] = {
                "S": [[field.scalar_to_json(x) for x in row] for row in S.tolist()]
                if field.kind == "prime"
                else [[field.scalar_to_json(x) for x in row] for row in S],
                "T": [t.to_json() for t in T],
                "det_S_nonzero": not field.is_zero(detS),
            }
            lines.append(f"  det S nonzero: {not field.is_zero(detS)}")
            report["ok"] = report["ok"] and not field.is_zero(detS)
    _emit(args, report, lines)
    return 0 if report["ok"] else 1


def cmd_fpdim(args):
    spec = _load_json_arg(args.algebra)
    field = _parse_field(args, spec)
    G, H, N, gamma, eps = parse_algebra_spec(spec, field)
    A, Fd = fr.build_A(G, H, N, gamma, eps, field)
    cat = lm.RepCategory(A, Fd)
    rep = lm.fpdim_checks(cat, seed=args.seed)
    report = {
        "meta": _meta(args, "fpdim"),
        "field": field_to_json(field),
        "fpdim": rep.to_json(),
        "ok": rep.ok,
    }
    lines = [f"FP-dimension report for {A.name}:"]
    for c in rep.checks:
        lines.append(f"  {c.name} [{c.label}]: {'pass' if c.ok else 'FAIL'} {c.witnesses[:4]}")
    _emit(args, report, lines)
    return 0 if rep.ok else 1


def cmd_selftest(args):
    """A small built-in battery over F_3 and F_13."""
    from .cocycles import klein_sign_cocycle
    from .groups import named_group, perm_index

    failures = []
    lines = []

    def check(name, ok):
        lines.append(f"  {'pass' if ok else 'FAIL'}  {name}")
        if not ok:
            failures.append(name)

    F3, F13 = PrimeField(3), PrimeField(13)
    S4 = named_group("S4")
    N = S4.generated_subgroup([perm_index(S4, (1, 0, 3, 2)), perm_index(S4, (2, 3, 0, 1))])
    A4 = [s for s in S4.subgroups() if s.order == 12][0]
    for (u, v) in [(1, 1), (-1, -1)]:
        gam = klein_sign_cocycle(N, F3, u, v)
        eps = EpsilonSystem.trivial(A4, N, F3)
        A, Fd = fr.build_A(S4, A4, N, gam, eps, F3)
        cert = fr.check_rigid_frobenius(A, Fd)
        check(f"S4/A4/V4 char-3 sign ({u},{v}) suite", cert.passed and A.dim == 8)
    C2 = named_group("C2")
    U, UFd = fr.build_A(
        C2, C2.full_subgroup(), C2.trivial_subgroup(),
        TwoCocycle.trivial(C2.trivial_subgroup(), F13),
        EpsilonSystem.trivial(C2.full_subgroup(), C2.trivial_subgroup(), F13), F13,
    )
    cat = lm.RepCategory(U, UFd)
    check("toric code: 4 simple local modules", len(cat.simple_local_modules()) == 4)
    S, T = lm.modular_data(cat)
    import zlocal.linalg as la

    check("toric code: det S nonzero", not F13.is_zero(la.det(F13, S)))
    print("selftest:")
    for line in lines:
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"meta": _meta(args, "selftest"), "failures": failures},
                      fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if not failures else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="zlocal",
        description="Exact verification and classification of rigid Frobenius "
        "algebras in Drinfeld centers of finite group algebras, and their "
        "categories of local modules.",
    )
    p.add_argument("--field", type=int, help="prime p for F_p coefficients")
    p.add_argument("--cyclotomic", type=int, help="m for Q(zeta_m) coefficients")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", help="write the JSON report to this path")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify one algebra spec")
    v.add_argument("--algebra", required=True, help="algebra spec JSON (file or literal)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="classify all rigid Frobenius algebras")
    c.add_argument("--group", required=True, help="named group, JSON spec, or file")
    c.add_argument("--max-group-order", type=int, default=48)
    c.add_argument("--value-order", type=int, default=None,
                   help="root-of-unity bound for cocycle values (default |N|)")
    c.add_argument("--cocycle-bound", type=int, default=8,
                   help="largest |N| for cocycle enumeration")
    c.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: available cores)")
    c.set_defaults(func=cmd_classify)

    l = sub.add_parser("local-modules", help="census and modularity signals")
    l.add_argument("--algebra", required=True)
    l.add_argument("--modular-bound", type=int, default=8,
                   help="compute S/T matrices when |G| <= bound")
    l.set_defaults(func=cmd_local_modules)

    f = sub.add_parser("fpdim", help="FP-dimension formulas and census")
    f.add_argument("--algebra", required=True)
    f.set_defaults(func=cmd_fpdim)

    s = sub.add_parser("selftest", help="run a small built-in battery")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ZLocalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    main()

"""Batch audit front door: JSON/CSV reports on stdout, exit code = overall pass."""

from __future__ import annotations

import argparse
import concurrent.futures as cf
import io
import json
import os
import sys
import time

from . import catalog, classify, foliation, specfun, symmetry
from .params import ConstraintError, ConvergenceError, DomainError
from .residual import BlowupOdeSpec, GridSpec, ode_residual_blowup, verify_grid

SCHEMA = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _envelope(command: str, config: dict, results, passed: bool, t0: float) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "config": config,
        "results": results,
        "timing_ms": round(1000.0 * (time.monotonic() - t0), 3),
        "pass": bool(passed),
    }


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=2, allow_nan=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _emit_csv(rows: list[dict], args) -> None:
    import csv as _csv

    buf = io.StringIO()
    if rows:
        writer = _csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _pool_map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with cf.ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _cmd_catalog_list(args) -> int:
    t0 = time.monotonic()
    rows = catalog.list_solutions()
    for row, eid in zip(rows, catalog.catalog_ids()):
        row["domain"] = catalog.default_instance(eid).domain().to_dict()
    _emit(_envelope("catalog list", {"seed": args.seed}, rows, True, t0), args)
    return EXIT_OK


def _cmd_verify(args) -> int:
    t0 = time.monotonic()
    ids = catalog.catalog_ids() if args.id == "all" else [args.id]
    grid = GridSpec(points=args.points, seed=args.seed, tol=args.tol)

    def one(eid: str) -> dict:
        inst = catalog.default_instance(eid)
        steps = None
        if args.h is not None:
            steps = [args.h, args.h / 2, args.h / 4]
        return verify_grid(inst, grid, steps=steps).to_dict()

    results = _pool_map(one, ids, args.jobs)
    passed = all(r["pass"] for r in results)
    config = {
        "ids": ids,
        "points": grid.points,
        "seed": grid.seed,
        "tol": grid.tol,
        "h": args.h,
        "jobs": args.jobs,
    }
    _emit(_envelope("verify", config, results, passed, t0), args)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _cmd_grs(args) -> int:
    t0 = time.monotonic()
    kinds = ("trans", "scal", "inver") if args.kind == "all" else (args.kind,)
    profiles = [p for kind in kinds for p in foliation.profile_catalog(kind)]

    def one(prof) -> dict:
        worst = 0.0
        theta_var = 0.0
        for (x, A, th) in prof.sample(args.points, seed=args.seed):
            e1, e2 = foliation.grs_residual(prof.kind, prof, prof.params, x, A, th)
            e1b, e2b = foliation.grs_residual(prof.kind, prof, prof.params, x, A, th + 1.1)
            worst = max(worst, abs(e1) / A, abs(e2) / A)
            for a, b in ((e1, e1b), (e2, e2b)):
                if abs(a) > 1e-13 * A:
                    theta_var = max(theta_var, abs(abs(a) - abs(b)) / abs(a))
        cond = max(
            abs(foliation.invariance_condition_residual(prof.kind, prof, prof.params, x, A))
            for (x, A, _) in prof.sample(args.points, seed=args.seed)
        )
        satisfies = bool(cond < 1e-10)
        return {
            "kind": prof.kind,
            "id": prof.pid,
            "constraints": prof.constraint_text,
            "residual_max_rel": float(worst),
            "theta_independence": float(theta_var),
            "invariance_condition": float(cond),
            "satisfies_condition": satisfies,
            "satisfies_condition_expected": bool(prof.satisfies_condition),
            "printed_condition": bool(prof.printed_condition),
            "pass": bool(worst < 1e-7 and satisfies == prof.satisfies_condition),
        }

    results = _pool_map(one, profiles, args.jobs)
    passed = all(r["pass"] for r in results)
    config = {"kinds": list(kinds), "points": args.points, "seed": args.seed, "jobs": args.jobs}
    _emit(_envelope("grs verify", config, results, passed, t0), args)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _cmd_invariance(args) -> int:
    t0 = time.monotonic()
    rows = [r.to_dict() for r in symmetry.verify_invariance_table(points=args.points, seed=args.seed)]
    maps = [m.to_dict() for m in symmetry.verify_inversion_mappings()]
    passed = all(r["pass"] for r in rows if r["kind"] != "printed" or not r["note"]) and all(
        m["pass"] for m in maps
    )
    results = {"table": rows, "mappings": maps}
    if args.format == "csv":
        _emit_csv(rows, args)
        return EXIT_OK if passed else EXIT_CHECK_FAILED
    _emit(_envelope("invariance table3", {"points": args.points, "seed": args.seed}, results, passed, t0), args)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _cmd_classify(args) -> int:
    t0 = time.monotonic()
    pairs = classify.behavior_rows() if args.id == "all" else [
        (args.id, cond) for (eid, cond) in classify.behavior_rows() if eid == args.id
    ]
    if not pairs:
        raise ConstraintError(f"no behavior rows for {args.id!r}")

    def one(pair) -> dict:
        eid, cond = pair
        exp = classify.expected_behavior(eid, cond)
        inst = classify.condition_instance(eid, cond)
        try:
            label = classify.classify(inst)
            measured = label.to_dict()
            ok = label.dynamics == exp.dynamics and label.regularity == exp.regularity
        except classify.InconclusiveError as exc:
            measured = {"inconclusive": str(exc)}
            ok = False
        return {
            "entry_id": eid,
            "condition": cond,
            "expected": {"dynamics": exp.dynamics, "regularity": exp.regularity},
            "measured": measured,
            "pass": ok,
        }

    results = _pool_map(one, pairs, args.jobs)
    passed = all(r["pass"] for r in results)
    if args.format == "csv":
        flat = [
            {
                "entry_id": r["entry_id"],
                "condition": r["condition"],
                "expected_dynamics": r["expected"]["dynamics"],
                "expected_regularity": r["expected"]["regularity"],
                "measured": json.dumps(r["measured"]),
                "pass": r["pass"],
            }
            for r in results
        ]
        _emit_csv(flat, args)
        return EXIT_OK if passed else EXIT_CHECK_FAILED
    _emit(_envelope("classify", {"ids": args.id, "jobs": args.jobs}, results, passed, t0), args)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _cmd_reconstruct(args) -> int:
    t0 = time.monotonic()
    prof = foliation.make_profile(args.profile)
    targets = [(args.t0 + 0.05 * i, args.r0 + 0.07 * i) for i in range(args.targets)]
    rec = foliation.reconstruct_solution(prof, c1=args.c1, c2=args.c2, targets=targets)
    _emit(
        _envelope(
            "reconstruct",
            {"profile": args.profile, "c1": args.c1, "c2": args.c2, "targets": args.targets},
            rec.to_dict(),
            True,
            t0,
        ),
        args,
    )
    return EXIT_OK


def _cmd_specfun(args) -> int:
    t0 = time.monotonic()
    sv = specfun.evaluate(args.fn, *[float(a) for a in args.args])
    results = {"fn": args.fn, "args": [float(a) for a in args.args], "value": sv.value,
               "condition_estimate": sv.condition_estimate}
    _emit(_envelope("specfun eval", {"fn": args.fn}, results, True, t0), args)
    return EXIT_OK


def _cmd_ode(args) -> int:
    t0 = time.monotonic()
    spec = BlowupOdeSpec(omega=args.omega, n=args.n, p=(args.p if args.p is not None else 4.0 / args.n),
                         k=args.k, kind=args.kind)
    amp = (-spec.omega / spec.k) ** (spec.n / 4.0) if spec.omega / spec.k < 0 else 1.0
    U = lambda xi: amp + 0.0j
    xs = [0.5 + 0.35 * i for i in range(args.points)]
    # coarse stencil: finer steps only amplify rounding on a constant profile
    res = [abs(ode_residual_blowup(spec, U, x, 0.05)) for x in xs]
    results = {
        "kind": spec.kind,
        "omega": spec.omega,
        "n": spec.n,
        "p": spec.p,
        "k": spec.k,
        "constant_profile": amp,
        "residual_max": max(res),
    }
    passed = (max(res) < 1e-10) if spec.kind == "critical" and spec.omega / spec.k < 0 else True
    _emit(_envelope("ode blowup", {"kind": spec.kind}, results, passed, t0), args)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    # flags may appear before or after the subcommand; flags win over the
    # GNLS_* environment, which wins over built-in defaults
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="write the report to a file instead of stdout")
    ap = argparse.ArgumentParser(prog="gnls", description=__doc__, parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    p_cat = sub.add_parser("catalog", help="catalog metadata")
    cat_sub = p_cat.add_subparsers(dest="subcommand", required=True)
    p_list = cat_sub.add_parser("list", parents=[common], help="list the solution entries as JSON")
    p_list.set_defaults(func=_cmd_catalog_list)

    p_ver = sub.add_parser("verify", parents=[common], help="PDE residual verification of catalog entries")
    p_ver.add_argument("id", help="catalog id or 'all'")
    p_ver.add_argument("--h", type=float, default=None, help="base step (then h, h/2, h/4)")
    p_ver.add_argument("--points", type=int, default=50)
    p_ver.set_defaults(func=_cmd_verify)

    p_grs = sub.add_parser("grs", help="group-resolving system audits")
    grs_sub = p_grs.add_subparsers(dest="subcommand", required=True)
    p_grsv = grs_sub.add_parser("verify", parents=[common])
    p_grsv.add_argument("kind", choices=("trans", "scal", "inver", "all"))
    p_grsv.add_argument("--points", type=int, default=20)
    p_grsv.set_defaults(func=_cmd_grs)

    p_inv = sub.add_parser("invariance", help="symmetry invariance audits")
    inv_sub = p_inv.add_subparsers(dest="subcommand", required=True)
    p_t3 = inv_sub.add_parser("table3", parents=[common])
    p_t3.add_argument("--points", type=int, default=20)
    p_t3.set_defaults(func=_cmd_invariance)

    p_cls = sub.add_parser("classify", parents=[common], help="behavior classification audit")
    p_cls.add_argument("id", help="catalog id or 'all'")
    p_cls.set_defaults(func=_cmd_classify)

    p_rec = sub.add_parser("reconstruct", parents=[common], help="quadrature reconstruction from a profile")
    p_rec.add_argument("profile")
    p_rec.add_argument("--c1", type=float, default=1.0)
    p_rec.add_argument("--c2", type=float, default=0.0)
    p_rec.add_argument("--t0", type=float, default=0.3)
    p_rec.add_argument("--r0", type=float, default=0.9)
    p_rec.add_argument("--targets", type=int, default=10)
    p_rec.set_defaults(func=_cmd_reconstruct)

    p_sf = sub.add_parser("specfun", help="special function evaluation")
    sf_sub = p_sf.add_subparsers(dest="subcommand", required=True)
    p_sfe = sf_sub.add_parser("eval", parents=[common])
    p_sfe.add_argument("fn")
    p_sfe.add_argument("args", nargs="+")
    p_sfe.set_defaults(func=_cmd_specfun)

    p_ode = sub.add_parser("ode", help="blow-up profile equations")
    ode_sub = p_ode.add_subparsers(dest="subcommand", required=True)
    p_ob = ode_sub.add_parser("blowup", parents=[common])
    p_ob.add_argument("kind", choices=("critical", "supercritical"))
    p_ob.add_argument("--omega", type=float, default=-1.0)
    p_ob.add_argument("--n", type=float, default=2.0)
    p_ob.add_argument("--p", type=float, default=None)
    p_ob.add_argument("--k", type=float, default=1.0)
    p_ob.add_argument("--points", type=int, default=10)
    p_ob.set_defaults(func=_cmd_ode)
    return ap


def _fill_shared_defaults(args: argparse.Namespace) -> None:
    # SUPPRESS defaults leave unprovided flags absent (they may be given
    # before or after the subcommand); resolve env fallbacks here
    fallbacks = {
        "seed": int(os.environ.get("GNLS_SEED", "0")),
        "jobs": int(os.environ.get("GNLS_JOBS", "1")),
        "tol": float(os.environ.get("GNLS_TOL", "1e-6")),
        "format": "json",
        "out": None,
    }
    for name, value in fallbacks.items():
        if not hasattr(args, name):
            setattr(args, name, value)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    _fill_shared_defaults(args)
    try:
        return args.func(args)
    except (ConstraintError, DomainError, ConvergenceError) as exc:
        err = {"schema": SCHEMA, "error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stdout.write(json.dumps(err, indent=2) + "\n")
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover
        err = {"schema": SCHEMA, "error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stdout.write(json.dumps(err, indent=2) + "\n")
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front end: build codes, enumerate, verify closed forms, report."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from puncodes import boolfunc, codegen
from puncodes.analysis import moments
from puncodes.analysis.predict import DESCRIPTIONS, THEOREM_IDS, HypothesisError
from puncodes.analysis.verify import verify
from puncodes.gf2m import FieldError, FieldFactory

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

# errors that mean "the request itself is wrong" rather than "the numbers disagree"
USAGE_ERRORS = (FieldError, boolfunc.FunctionError, codegen.CodeError, HypothesisError,
                boolfunc.ResourceGuard, ValueError, OSError)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def _parse_params(items: list[str] | None) -> dict:
    out: dict = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            out[key.strip()] = int(value, 0)
        except ValueError:
            out[key.strip()] = value.strip()
    return out


def _function(args) -> boolfunc.FunctionSpec:
    if args.family is None:
        raise UsageError("--family is required")
    params = _parse_params(args.param)
    c = int(params.pop("c", 0))
    return boolfunc.FunctionSpec.make(args.family, args.m, c=c, **params)


def _recipe(args) -> codegen.Recipe:
    if args.recipe == "trace-of-f":
        return codegen.TraceOfF(args.lam, args.nu)
    if args.recipe == "trace-support":
        return codegen.TraceSupport()
    if args.recipe == "cyclotomic":
        if args.t is None:
            raise UsageError("--recipe cyclotomic needs --t")
        return codegen.Cyclotomic(args.t)
    raise UsageError(f"unknown recipe {args.recipe!r}")


def _fmt(args) -> str:
    if args.format:
        return args.format
    return "table" if args.out is None and sys.stdout.isatty() else "json"


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _table(header: list[str], rows: list[list]) -> str:
    cells = [[str(h) for h in header]] + [["" if v is None else str(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def cmd_list_functions(args, factory) -> int:
    data = {"families": {name: {"parameters": list(keys), "description": desc}
                         for name, (keys, desc) in boolfunc.FAMILIES.items()},
            "cases": {tid: DESCRIPTIONS[tid] for tid in THEOREM_IDS}}
    if args.m is not None:
        if args.m % 2:
            data["ab_monomial_exponents"] = boolfunc.ab_monomial_exponents(args.m)
        if args.m % 3 == 0:
            data["pairsum_exponents"] = list(boolfunc.pairsum_exponents(args.m))
    fmt = _fmt(args)
    if fmt == "json":
        _emit(args, codegen.dumps(data))
    else:
        rows = [["family", name, f"{', '.join(fam['parameters']) or '-'}: {fam['description']}"]
                for name, fam in data["families"].items()]
        rows += [["case", tid, desc] for tid, desc in data["cases"].items()]
        for key in ("ab_monomial_exponents", "pairsum_exponents"):
            if key in data:
                rows.append([key, f"m={args.m}", " ".join(map(str, data[key]))])
        hdr = ["kind", "name", "parameters / description"]
        _emit(args, _csv(hdr, rows) if fmt == "csv" else _table(hdr, rows))
    return EXIT_OK


def cmd_spectrum(args, factory) -> int:
    ctx = factory(args.m)
    f = _function(args)
    spec = boolfunc.walsh_spectrum(ctx, f)
    if args.m % 2 == 0:
        ab = {"verdict": None, "refused": "almost bent functions exist only for odd m"}
    else:
        ab = {"verdict": boolfunc.is_ab(ctx, f, spec)}
    du = boolfunc.differential_uniformity(ctx, f)
    data = {
        "function": str(f),
        "field": {"m": ctx.m, "modulus": ctx.modulus, "gamma": ctx.gamma},
        "walsh_values": {str(v): c for v, c in spec.items()},
        "ab": ab,
        "apn": du == 2,
        "differential_uniformity": du,
    }
    fmt = _fmt(args)
    if fmt == "json":
        _emit(args, codegen.dumps(data))
    else:
        rows = [[v, c] for v, c in spec.items()]
        if fmt == "csv":
            _emit(args, _csv(["walsh_value", "count"], rows))
        else:
            ab_txt = "refused (m even)" if ab["verdict"] is None else str(ab["verdict"]).lower()
            _emit(args, f"{f} on GF(2^{ctx.m}), modulus {ctx.modulus:#x}\n"
                        f"AB: {ab_txt}\nAPN: {str(data['apn']).lower()} (differential uniformity {du})\n\n"
                  + _table(["W(a,b)", "count"], rows))
    return EXIT_OK


def cmd_build(args, factory) -> int:
    ctx = factory(args.m)
    f = _function(args)
    D = codegen.build_position_set(ctx, _recipe(args), f)
    code = codegen.build_code(ctx, f, D)
    wd = codegen.enumerate_weights(code, guard_k=args.guard_k, jobs=args.jobs)
    summary = codegen.code_summary(code, wd)
    n, k, d, dd = code.n, code.k, summary["d"], summary["dual"]["d"]
    bounds = {}
    if d is not None:
        bounds["griesmer_ok"] = moments.griesmer_ok(n, k, d)
        bounds["griesmer_optimal"] = moments.griesmer_optimal(n, k, d)
    if dd is not None:
        bounds["dual_sphere_packing_optimal"] = moments.sphere_packing_distance_optimal(n, n - k, dd, False)
        bounds["dual_sphere_packing_optimal_even_step"] = moments.sphere_packing_distance_optimal(
            n, n - k, dd, True)
    data = {"function": str(f), "recipe": str(D.recipe),
            "field": {"m": ctx.m, "modulus": ctx.modulus, "gamma": ctx.gamma}, **summary, "bounds": bounds}
    fmt = _fmt(args)
    if fmt == "json":
        _emit(args, codegen.dumps(data))
    elif fmt == "csv":
        _emit(args, wd.to_csv())
    else:
        head = (f"{f}, {D.recipe}, GF(2^{ctx.m}) modulus {ctx.modulus:#x}\n"
                f"code [{n}, {k}, {d}]  dual [{n}, {n - k}, {dd}]  "
                f"self-complementary: {str(code.all_one).lower()}\n"
                + "".join(f"{key}: {str(v).lower()}\n" for key, v in bounds.items()))
        _emit(args, head + "\n" + _table(["weight", "count"], [[w, c] for w, c in wd.as_dict().items()]))
    return EXIT_OK


def _report_rows(report: dict) -> list[list]:
    return [[r["weight"], r["label"], r["predicted"], r["enumerated"], "ok" if r["match"] else "MISMATCH"]
            for r in report["rows"]]


def _render_report(report: dict) -> str:
    e, p = report["enumerated"], report["predicted"]
    lines = [
        f"{report['theorem_id']} {json.dumps(report['params'])}: {report['verdict'].upper()}",
        f"  function {report['function']}, {report['recipe']}, modulus {report['field']['modulus']:#x}",
        f"  predicted  [{p['n']}, {p['k']}, {p['d']}]  dual [{p['dual']['n']}, {p['dual']['k']}, {p['dual']['d']}]",
        f"  enumerated [{e['n']}, {e['k']}, {e['d']}]  dual [{e['dual']['n']}, {e['dual']['k']}, {e['dual']['d']}]",
        "  checks: " + ", ".join(f"{k}={'skip' if v is None else str(v).lower()}"
                                 for k, v in report["checks"].items()),
    ]
    for c in report["claims"]:
        lines.append(f"  claim {c['kind']} ({c['code']}): {c.get('holds')}")
    table = _table(["weight", "row", "predicted", "enumerated", ""], _report_rows(report))
    lines += ["    " + line for line in table.splitlines()]
    lines += [f"  note: {n}" for n in report["notes"]]
    return "\n".join(lines)


SUMMARY_HEADER = ["theorem_id", "params", "n", "k", "d", "dual_d", "verdict"]


def _summary_row(report: dict) -> list:
    if "error" in report:
        return [report["theorem_id"], json.dumps(report["params"], sort_keys=True), "", "", "", "", "refused"]
    e = report["enumerated"]
    return [report["theorem_id"], json.dumps(report["params"], sort_keys=True), e["n"], e["k"], e["d"],
            e["dual"]["d"], report["verdict"]]


def _render_reports(args, reports: list[dict], envelope: dict | None = None) -> None:
    fmt = _fmt(args)
    if fmt == "json":
        obj = reports[0] if envelope is None else {**envelope, "cases": reports}
        _emit(args, codegen.dumps(obj))
    elif fmt == "csv":
        _emit(args, _csv(SUMMARY_HEADER, [_summary_row(r) for r in reports]))
    else:
        parts = []
        for r in reports:
            if "error" in r:
                parts.append(f"{r['theorem_id']} {json.dumps(r['params'])}: REFUSED ({r['error']['message']})")
            else:
                parts.append(_render_report(r))
        if envelope is not None:
            s = envelope["summary"]
            parts.append(f"{s['passed']}/{s['total']} passed, {s['failed']} failed, {s['refused']} refused")
        _emit(args, "\n\n".join(parts))


def _run_case(moduli: dict, tid: str, params: dict, strict: bool, guard_k: int, timestamp: bool) -> dict:
    try:
        ctx = FieldFactory(moduli)(int(params["m"]))
        return verify(ctx, tid, params, strict=strict, guard_k=guard_k).to_json(timestamp)
    except USAGE_ERRORS as exc:
        return {"theorem_id": tid, "params": params, "verdict": "refused",
                "error": {"type": type(exc).__name__, "message": str(exc)}}


def cmd_verify(args, factory) -> int:
    params = _parse_params(args.param)
    if args.m is not None:
        params["m"] = args.m
    if "m" not in params:
        raise UsageError("verify needs --m (or --param m=..)")
    for key, value in (("lambda", args.lam if args.lam_given else None), ("t", args.t)):
        if value is not None:
            params[key] = value
    ctx = factory(int(params["m"]))
    report = verify(ctx, args.theorem_id, params, strict=not args.no_strict,
                    guard_k=args.guard_k).to_json(not args.no_timestamp)
    _render_reports(args, [report])
    return EXIT_OK if report["verdict"] == "pass" else EXIT_MISMATCH


def load_manifest(path: str | None) -> dict:
    try:
        if path:
            text = Path(path).read_text(encoding="utf-8")
        else:
            text = resources.files("puncodes").joinpath("data/manifest.json").read_text(encoding="utf-8")
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read manifest: {exc}") from exc
    if not isinstance(data, dict) or "version" not in data or not isinstance(data.get("cases"), list):
        raise UsageError("manifest must be an object with 'version' and a 'cases' list")
    return data


def cmd_verify_all(args, factory) -> int:
    manifest = load_manifest(args.manifest)
    cases = [c for c in manifest["cases"] if args.m_max is None or int(c["params"]["m"]) <= args.m_max]
    # touch every needed field once so a bad field config fails before any work
    for m in sorted({int(c["params"]["m"]) for c in cases}):
        factory(m)
    job_args = [(factory.moduli, c["theorem_id"], c["params"], not args.no_strict, args.guard_k,
                 not args.no_timestamp) for c in cases]
    if args.jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_case, *zip(*job_args)))
    else:
        reports = [_run_case(*a) for a in job_args]
    summary = {
        "total": len(reports),
        "passed": sum(r["verdict"] == "pass" for r in reports),
        "failed": sum(r["verdict"] == "fail" for r in reports),
        "refused": sum(r["verdict"] == "refused" for r in reports),
    }
    _render_reports(args, reports, {"manifest_version": manifest["version"], "summary": summary})
    return EXIT_OK if summary["passed"] == summary["total"] else EXIT_MISMATCH


def cmd_report(args, factory) -> int:
    try:
        data = json.loads(Path(args.report).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read report: {exc}") from exc
    if "cases" in data:
        reports, envelope = data["cases"], {k: v for k, v in data.items() if k != "cases"}
    else:
        reports, envelope = [data], None
    _render_reports(args, reports, envelope)
    return EXIT_OK if all(r.get("verdict") == "pass" for r in reports) else EXIT_MISMATCH


COMMANDS = {
    "list-functions": cmd_list_functions,
    "spectrum": cmd_spectrum,
    "build": cmd_build,
    "verify": cmd_verify,
    "verify-all": cmd_verify_all,
    "report": cmd_report,
}


class _LambdaAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.lam_given = True


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"),
                        help="output format (default: table on a terminal, json otherwise)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--field-config", help="INI file with a [moduli] section overriding defining polynomials")
    common.add_argument("--jobs", type=int, default=1, help="worker count")
    common.add_argument("--guard-k", type=int, default=codegen.GUARD_K, help="largest dimension to enumerate")
    common.add_argument("--no-timestamp", action="store_true", help="omit runtimes for byte-stable output")

    func = argparse.ArgumentParser(add_help=False)
    func.add_argument("--m", type=int, help="extension degree of GF(2^m)")
    func.add_argument("--family", help="function family (see list-functions)")
    func.add_argument("--param", action="append", metavar="KEY=VALUE",
                      help="family or case parameter; repeatable (c=.. adds a linear term c*x)")

    parser = argparse.ArgumentParser(prog="puncodes", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("list-functions", parents=[common, func], help="list families and case identifiers")
    p = sub.add_parser("spectrum", parents=[common, func], help="Walsh spectrum and AB/APN verdicts")
    p = sub.add_parser("build", parents=[common, func], help="construct one punctured code and enumerate it")
    p.add_argument("--recipe", choices=("trace-of-f", "trace-support", "cyclotomic"), default="trace-of-f")
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.add_argument("--nu", type=int, choices=(0, 1), default=0)
    p.add_argument("--t", type=int)
    p = sub.add_parser("verify", parents=[common, func], help="compare one case with enumeration")
    p.add_argument("theorem_id", help="case identifier (see list-functions)")
    p.add_argument("--lambda", dest="lam", type=int, default=1, action=_LambdaAction)
    p.add_argument("--t", type=int)
    p.add_argument("--no-strict", action="store_true", help="report hypothesis violations instead of refusing")
    p = sub.add_parser("verify-all", parents=[common], help="run every case in the manifest")
    p.add_argument("--manifest", help="manifest file (default: the bundled one)")
    p.add_argument("--m-max", type=int, help="only run cases with m <= M_MAX")
    p.add_argument("--no-strict", action="store_true")
    p = sub.add_parser("report", parents=[common], help="re-render a saved JSON report")
    p.add_argument("report", help="JSON file written by verify or verify-all")
    parser.set_defaults(lam_given=False)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        if args.command in ("spectrum", "build") and args.m is None:
            raise UsageError(f"{args.command} needs --m")
        factory = FieldFactory.from_config(args.field_config)
        return COMMANDS[args.command](args, factory)
    except (UsageError, *USAGE_ERRORS) as exc:
        if _fmt(args) == "json":
            err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
            sys.stderr.write(json.dumps(err) + "\n")
        else:
            sys.stderr.write(f"puncodes: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

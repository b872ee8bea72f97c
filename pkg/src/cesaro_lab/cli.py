"""Batch front end: parse JSON inputs, dispatch, emit reports.

Every run writes one machine-readable report (JSON by default, CSV on
request) that echoes its inputs, carries all outputs with error bounds
and pass/fail flags, and a versioned schema id.  Numeric output uses 17
significant digits, so doubles round-trip losslessly and identical
(config, seed) pairs produce byte-identical reports.

Exit codes: 2 on a schema violation, 1 when the ``suite`` command sees
any failed criterion, 0 otherwise.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import __version__
from .embeddings import verify_isometry
from .harness import check_cor32, check_prop21, check_sharpness_footnote, check_thm31, verify_thm33, verify_thm34
from .model import CesaroLabError, NormResult, SchemaError
from .opial import SCHUR, ModulusQuery, estimate_eta_empirical, eta_closed_form, r_closed_form
from .scalar import QuadratureConfig, ces_fun_integrand_samples, ces_fun_norm, ces_seq_norm
from .schemas import (
    family_from_json,
    load_json,
    render_csv,
    render_json,
    slot_family_from_json,
    space_from_json,
    step_from_json,
    sum_from_json,
    tagged_from_json,
)
from .suite import REPORT_SCHEMA, run_suite
from .vector import ces_vfun_norm, cesaro_sum_norm

THREADS_ENV = "CESARO_LAB_THREADS"


def _thread_cap() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _norm_payload(result: NormResult) -> dict:
    return {
        "value": result.value,
        "error_bound": result.error_bound,
        "exact": result.exact,
        "warning": result.warning,
    }


def _read_input(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read input file {path!r}: {exc}") from exc
    return load_json(text)


def _write_report(report: dict, out: str | None, fmt: str) -> None:
    if fmt == "json":
        text = render_json(report) + "\n"
    else:
        rows = [("key", "value")]
        _flatten(report, "", rows)
        text = render_csv(rows)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flatten(obj, prefix: str, rows: list) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(v, f"{prefix}{k}.", rows)
        return
    if isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(v, f"{prefix}{i}.", rows)
        return
    rows.append((prefix.rstrip("."), obj if obj is not None else ""))


def _report(command: str, inputs: dict, outputs: dict, passed: bool | None, seed: int | None) -> dict:
    report = {
        "schema": REPORT_SCHEMA,
        "command": command,
        "version": __version__,
        "thread_cap": _thread_cap(),
        "inputs": inputs,
        "outputs": outputs,
    }
    if seed is not None:
        report["seed"] = seed
    if passed is not None:
        report["passed"] = passed
    return report


def _quadrature(args) -> QuadratureConfig:
    return QuadratureConfig(rel_tol=args.tol if args.tol else 1e-10)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cesaro-lab",
        description="norms, embeddings, Opial moduli and inequality checks "
                    "for Cesaro sequence/function spaces",
    )
    parser.add_argument("--version", action="version", version=f"cesaro-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="path to the JSON input")
        p.add_argument("--p", type=float, default=2.0, help="exponent p (default 2)")
        p.add_argument("--tol", type=float, default=None, help="tolerance override")
        p.add_argument("--tau", type=float, default=None)
        p.add_argument("--M", type=float, default=1.0)
        p.add_argument("--R", type=float, default=1.0)
        p.add_argument("--K", type=float, default=1.0)
        p.add_argument("--r", type=str, default="4", help="integrability exponent (number or 'inf')")
        p.add_argument("--eps", type=float, default=1.0)
        p.add_argument("--out", default=None, help="report path (stdout when omitted)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=42)
        return p

    common(sub.add_parser("norm-seq", help="Cesaro sequence norm of a tagged vector"))
    common(sub.add_parser("norm-fun", help="Cesaro function norm of a scalar step function"))
    common(sub.add_parser("norm-vfun", help="norm of a vector-valued step function"))
    common(sub.add_parser("sum-norm", help="norm of a Cesaro-sum element"))
    common(sub.add_parser("embed-check", help="isometry check of the averaging embedding"))
    common(sub.add_parser("modulus", help="Opial modulus of a space"))
    common(sub.add_parser("thm31", help="averaged inequality pair on a shift family"))
    common(sub.add_parser("cor32", help="strict form for nonzero f"))
    common(sub.add_parser("thm33", help="level-set recipe and conclusion"))
    common(sub.add_parser("thm34", help="integrability recipe and conclusion"))
    common(sub.add_parser("prop21", help="windowed Opial check in a Cesaro sum"))
    common(sub.add_parser("sharpness", help="sup-norm sharpness of the constant 2"), with_input=False)
    common(sub.add_parser("suite", help="run the full acceptance battery"), with_input=False)
    plot = common(sub.add_parser("plot-data", help="CSV samples (t, inner average, integrand) from a report"))
    plot.set_defaults(format="csv")
    return parser


def _parse_r(raw: str) -> float:
    if raw.strip().lower() in ("inf", "infinity"):
        return math.inf
    return float(raw)


def _dispatch(args) -> tuple[dict, bool | None]:
    cmd = args.command
    cfg = _quadrature(args)
    seq_tol = args.tol if args.tol else 1e-10

    if cmd == "norm-seq":
        payload = _read_input(args.input)
        vec = tagged_from_json(payload)
        res = ces_seq_norm(vec, args.p, seq_tol)
        return _report(cmd, {"vector": payload, "p": args.p, "tol": seq_tol},
                       {"norm": _norm_payload(res)}, None, None), None

    if cmd == "norm-fun":
        payload = _read_input(args.input)
        h = step_from_json(payload)
        res = ces_fun_norm(h, args.p, cfg)
        return _report(cmd, {"function": payload, "p": args.p, "rel_tol": cfg.rel_tol},
                       {"norm": _norm_payload(res)}, None, None), None

    if cmd == "norm-vfun":
        payload = _read_input(args.input)
        if not (isinstance(payload, dict) and "function" in payload and "space" in payload):
            raise SchemaError("norm-vfun expects {'function': ..., 'space': ...}")
        space = space_from_json(payload["space"])
        f = step_from_json(payload["function"], space)
        res = ces_vfun_norm(f, args.p, cfg)
        return _report(cmd, {"function": payload["function"], "space": payload["space"], "p": args.p},
                       {"norm": _norm_payload(res)}, None, None), None

    if cmd == "sum-norm":
        payload = _read_input(args.input)
        x = sum_from_json(payload)
        res = cesaro_sum_norm(x, seq_tol)
        return _report(cmd, {"element": payload, "tol": seq_tol},
                       {"norm": _norm_payload(res)}, None, None), None

    if cmd == "embed-check":
        payload = _read_input(args.input)
        if isinstance(payload, dict) and "components" in payload:
            report = verify_isometry(sum_from_json(payload), tol=seq_tol)
        else:
            report = verify_isometry(tagged_from_json(payload), args.p, tol=seq_tol)
        return _report(cmd, {"input": payload, "p": args.p, "tol": seq_tol},
                       report.as_dict(), report.holds, None), None

    if cmd == "modulus":
        payload = _read_input(args.input)
        space = space_from_json(payload)
        query = ModulusQuery(space, eps=args.eps, R=args.R)
        eta = eta_closed_form(query)
        outputs: dict = {"eta": "schur" if eta is SCHUR else eta}
        if eta is not SCHUR:
            est = estimate_eta_empirical(query, 5)
            outputs["empirical_estimate"] = est.estimate
            outputs["gap"] = est.closed_form_gap
            outputs["estimate_is_upper_bound"] = est.upper_bound
        if args.tau is not None:  # reuse --tau as the r-modulus argument c
            outputs["r_modulus"] = r_closed_form(space, args.tau)
        return _report(cmd, {"space": payload, "eps": args.eps, "R": args.R},
                       outputs, None, None), None

    if cmd in ("thm31", "cor32", "thm33", "thm34"):
        payload = _read_input(args.input)
        if not (isinstance(payload, dict) and "family" in payload):
            raise SchemaError(f"{cmd} expects {{'family': ..., 'f': ...}}")
        fam = family_from_json(payload["family"])
        f_obj = payload.get("f")
        if f_obj is None:
            raise SchemaError(f"{cmd} needs the perturbation 'f'")
        f = step_from_json(f_obj, fam.space)
        if cmd == "thm31":
            rpt = check_thm31(fam, f, args.p, cfg)
            return _report(cmd, {"family": payload["family"], "f": f_obj, "p": args.p},
                           rpt.quantities() | {"holds1": rpt.holds1, "holds2": rpt.holds2},
                           rpt.holds1 and rpt.holds2, None), None
        if cmd == "cor32":
            rpt = check_cor32(fam, f, args.p, cfg)
        elif cmd == "thm33":
            rpt = verify_thm33(fam, f, args.p, M=args.M, R=args.R, tau=args.tau, cfg=cfg)
        else:
            rpt = verify_thm34(fam, f, args.p, r=_parse_r(args.r), eps=args.eps,
                               M=args.M, K=args.K, R=args.R, tau=args.tau, cfg=cfg)
        return _report(cmd, {"family": payload["family"], "f": f_obj, "p": args.p},
                       rpt.as_dict(), rpt.holds, None), None

    if cmd == "prop21":
        payload = _read_input(args.input)
        if not (isinstance(payload, dict) and "family" in payload and "x" in payload):
            raise SchemaError("prop21 expects {'family': ..., 'x': ...}")
        fam = slot_family_from_json(payload["family"])
        x = sum_from_json(payload["x"])
        rpt = check_prop21(fam, x)
        return _report(cmd, {"family": payload["family"], "x": payload["x"]},
                       rpt.as_dict(), rpt.holds, None), None

    if cmd == "sharpness":
        rpt = check_sharpness_footnote()
        return _report(cmd, {}, rpt.as_dict(), rpt.holds, None), None

    if cmd == "suite":
        report = run_suite(args.seed)
        report["thread_cap"] = _thread_cap()
        return report, report["passed"]

    if cmd == "plot-data":
        return _plot_data(args, cfg), None

    raise SchemaError(f"unknown command {cmd!r}")


def _plot_data(args, cfg: QuadratureConfig) -> dict:
    """Emit (t, inner_average, integrand) samples for a norm-fun/thm31
    report; the echoed inputs carry the function to resample."""
    payload = _read_input(args.input)
    if not isinstance(payload, dict):
        raise SchemaError("plot-data expects a report object")
    rows = [("t", "inner_average", "integrand")]
    inputs = payload.get("inputs", {})
    p = inputs.get("p", args.p)
    h = None
    if "function" in inputs and inputs.get("space") is None:
        h = step_from_json(inputs["function"])
    elif "function" in inputs:
        h = step_from_json(inputs["function"])  # scalar profile reports
    elif "family" in inputs:
        fam = family_from_json(inputs["family"])
        h = fam.profile
    if h is not None:
        rows.extend(ces_fun_integrand_samples(h, p, cfg))
    text = render_csv(rows)
    out = args.out
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return {"schema": REPORT_SCHEMA, "command": "plot-data", "rows": len(rows) - 1}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "plot-data":
            _dispatch(args)
            return 0
        report, suite_passed = _dispatch(args)
        _write_report(report, args.out, args.format)
        if args.command == "suite" and not suite_passed:
            return 1
        return 0
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except CesaroLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

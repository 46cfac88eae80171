"""Command-line front end.

Every subcommand produces one record per evaluation point::

    {"command": ..., "inputs": {...}, "outputs": {...}, "warnings": [...]}

``inputs`` echoes every effective parameter, defaults included, so
``compute(record["command"], record["inputs"])`` reproduces ``outputs``.
Counts are exact decimal strings; probabilities come with a ``*_log10``
companion. Exit status: 0 success, 1 usage error, 2 domain or regime
rejection.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import analytic, counting, design, fitting, rates
from .lattice import min_errors

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2
MIXTURE_TOL = 1e-9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _log10(x: float) -> float:
    return math.log10(x) if x > 0 else -math.inf


def _prob(out: dict, key: str, value: float) -> None:
    out[key] = value
    out[f"{key}_log10"] = _log10(value)


def _measurement_count(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--M must be an odd integer >= 3 or 'auto', got {text!r}") from None


def parse_components(text: str) -> rates.NoiseSpec:
    comps = []
    for chunk in text.split(","):
        try:
            w, r = chunk.split(":")
            comps.append((float(w), float(r)))
        except ValueError:
            raise ValueError(f"mixture components must look like 'rho:p,rho:p', got {chunk!r}") from None
    return rates.NoiseSpec.mixture(comps, tol=MIXTURE_TOL)


# -- subcommand bodies: params dict in, outputs dict out ----------------------


def _cmd_count(a: dict) -> dict:
    d = a["d"]
    n = a["errors"] if a["errors"] is not None else min_errors(d)
    c = counting.count_error_patterns(d, n, method=a["method"])
    if a["both_axes"]:
        c *= 2
    return {"count": str(c), "errors": n, "d_e": min_errors(d)}


def _cmd_paths(a: dict) -> dict:
    d = a["d"]
    paths = counting.count_paths(d)
    bound = d * 2 ** (d - 1)
    return {"paths": str(paths), "path_bound": str(bound), "ratio": counting.path_ratio(d)}


def _cmd_rate(a: dict) -> dict:
    d, p = a["d"], a["p"]
    res = rates.logical_rate(d, p, a["model"], a["both_axes"], strict=a["strict"])
    out = {"count": str(rates.configuration_count(d, a["model"], a["both_axes"])), "d_e": min_errors(d)}
    _prob(out, "rate", res.value)
    out["rate_log10"] = res.log10_value
    out["p_d2"] = p * d * d
    out["correction_low"], out["correction_high"] = res.truncation_interval
    return out


def _cmd_bounds(a: dict) -> dict:
    d, c = a["d"], a["edge_constant"]
    exact = counting.leading_count(d)
    upper = analytic.rotated_upper_bound(d)
    lower = analytic.rotated_lower_bound_exact(d, c)
    return {
        "exact": str(exact),
        "upper": str(upper),
        "lower": float(lower),
        "lower_holds": bool(lower <= exact),
        "upper_holds": bool(exact <= upper),
        "unrotated": str(analytic.unrotated_count(d)),
    }


def _cmd_fit(a: dict) -> dict:
    if a["bound"] == "none":
        f = fitting.fit_model(a["model"], a["p"], a["d_min"], a["d_max"], a["both_axes"])
    else:
        if a["model"] != "rotated":
            raise ValueError("--bound applies to the rotated model only")
        f = fitting.fit_bound(a["bound"], a["p"], a["d_min"], a["d_max"], a["edge_constant"])
    return {"A": f.A, "p_th": f.p_th, "r_squared": f.r_squared, "one_minus_r_squared": 1.0 - f.r_squared}


def _largest_odd(limit_fn, Q: int) -> int | None:
    d = None
    k = 3
    while limit_fn(k) <= Q:
        d = k
        k += 2
    return d


def _cmd_compare(a: dict) -> dict:
    p = a["p"]
    if (a["d_e"] is None) == (a["qubits"] is None):
        raise ValueError("compare needs exactly one of --d-e or --qubits")
    out = {}
    if a["qubits"] is not None:
        Q = a["qubits"]
        d_r = _largest_odd(lambda d: 2 * d * d - 1, Q)
        d_u = _largest_odd(lambda d: (2 * d - 1) ** 2, Q)
        if d_r is None or d_u is None:
            raise ValueError(f"budget --qubits {Q} is too small for a distance-3 unrotated code (needs 25)")
        L_r = rates.logical_rate(d_r, p, "rotated")
        L_u = rates.logical_rate(d_u, p, "unrotated")
        out.update(d_rotated=d_r, d_unrotated=d_u)
        out["rate_rotated"], out["rate_rotated_log10"] = L_r.value, L_r.log10_value
        out["rate_unrotated"], out["rate_unrotated_log10"] = L_u.value, L_u.log10_value
        out["lower_rate_variant"] = "rotated" if L_r.log_value <= L_u.log_value else "unrotated"
        d_e = min_errors(d_r)
    else:
        d_e = a["d_e"]
    rec = design.recommend_variant(p, d_e, a["p_tr"], a["p_tur"])
    out.update(
        d_e_used=d_e,
        recommended=rec.variant,
        lhs_log10=rec.log10_lhs,
        rhs_log10=rec.log10_rhs,
    )
    return out


def _cmd_measure(a: dict) -> dict:
    p, pm, d, model = a["p"], a["pm"], a["d"], a["model"]
    n_a = rates.ancilla_count(model, d)
    if a["M"] == "auto":
        cmp_ = rates.required_measurements(p, pm, d, model, cap=a["cap"])
        out = {"N_a": n_a, "M": cmp_.M if cmp_.M is not None else "none", "cap": cmp_.cap}
        _prob(out, "data_rate", cmp_.data_rate)
        if cmp_.measurement_rate is not None:
            _prob(out, "measurement_rate", cmp_.measurement_rate)
        return out
    spec = rates.MeasurementSpec(pm, a["M"], n_a)
    data = rates.logical_rate(d, p, model)
    out = {"N_a": n_a, "M": spec.M, "M_e": spec.M_e}
    _prob(out, "p_M", rates.measurement_failure_prob(spec))
    for mode in rates.MEASUREMENT_MODES:
        _prob(out, f"measurement_rate_{mode}", rates.measurement_logical_rate(spec, mode))
    _prob(out, "data_rate", data.value)
    out["measurement_below_data"] = bool(out["measurement_rate_exact"] < data.value)
    return out


def _cmd_mixture(a: dict) -> dict:
    noise = parse_components(a["components"])
    res = rates.mixture_rate(a["d"], noise, a["model"], a["both_axes"])
    out = {}
    _prob(out, "rate", res.rate.value)
    out["rate_log10"] = res.rate.log10_value
    out.update(
        dominant_index=res.dominant_index,
        dominant_rate=noise.components[res.dominant_index - 1][1],
        dominant_share=res.dominant_share,
        components=";".join(f"{w!r}:{r!r}" for w, r in noise.components),
        shares=";".join(repr(s) for s in res.shares),
    )
    return out


def _cmd_design(a: dict) -> dict:
    params = analytic.ScalingParams(a["A"], a["pth"])
    res = design.optimize_rectangular(a["qubits"], a["px"], a["pz"], params)
    sq = design.square_layout(a["qubits"])
    out = {
        "h": res.layout.h,
        "w": res.layout.w,
        "total_qubits": res.layout.total_qubits,
        "square_h": sq.h,
        "square_w": sq.w,
        "steps": len(res.visited),
        "visited": ";".join(f"{e.layout.h}x{e.layout.w}" for e in res.visited),
    }
    _prob(out, "L_x", res.L_x)
    _prob(out, "L_z", res.L_z)
    _prob(out, "L_total", res.L_total)
    return out


COMMANDS = {
    "count": _cmd_count,
    "paths": _cmd_paths,
    "rate": _cmd_rate,
    "bounds": _cmd_bounds,
    "fit": _cmd_fit,
    "compare": _cmd_compare,
    "measure": _cmd_measure,
    "mixture": _cmd_mixture,
    "design": _cmd_design,
}


def compute(command: str, inputs: dict) -> dict:
    """Run one subcommand on an inputs map and return the full record."""
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        outputs = COMMANDS[command](dict(inputs))
    msgs = [str(w.message) for w in caught if issubclass(w.category, analytic.RegimeWarning)]
    return {"command": command, "inputs": dict(inputs), "outputs": outputs, "warnings": msgs}


# -- argument grammar ---------------------------------------------------------


def _add_format(p):
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qec-pathcount", description="Exact MLLP counts and logical error-rate models.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("count", help="configurations of n errors on minimum-length logical paths")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--errors", type=int, default=None, help="default: d_e = (d+1)/2")
    p.add_argument("--method", choices=counting.METHODS, default="dp")
    p.add_argument("--both-axes", action="store_true")

    p = sub.add_parser("paths", help="number of minimum-length logical paths")
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("rate", help="leading-order logical error rate")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--model", choices=rates.VARIANTS, default="rotated")
    p.add_argument("--both-axes", action="store_true")
    p.add_argument("--strict", action="store_true", help="reject p*d^2 > 1")

    p = sub.add_parser("bounds", help="upper/lower bounds on the rotated count")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--edge-constant", type=float, default=analytic.DEFAULT_EDGE_CONSTANT)

    p = sub.add_parser("fit", help="fit A and p_th of the scaling law")
    p.add_argument("--p", type=float, default=fitting.DEFAULT_P)
    p.add_argument("--d-min", type=int, default=fitting.DEFAULT_D_MIN)
    p.add_argument("--d-max", type=int, default=fitting.DEFAULT_D_MAX)
    p.add_argument("--model", choices=rates.VARIANTS, default="rotated")
    p.add_argument("--bound", choices=("none", "upper", "lower"), default="none")
    p.add_argument("--both-axes", action="store_true")
    p.add_argument("--edge-constant", type=float, default=analytic.DEFAULT_EDGE_CONSTANT)

    p = sub.add_parser("compare", help="rotated vs unrotated recommendation")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--d-e", type=int, default=None)
    p.add_argument("--qubits", type=int, default=None)
    p.add_argument("--p-tr", type=float, default=analytic.ROTATED_PARAMS.p_th)
    p.add_argument("--p-tur", type=float, default=analytic.UNROTATED_PARAMS.p_th)

    p = sub.add_parser("measure", help="measurement-error budget")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--pm", type=float, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--M", type=_measurement_count, default="auto")
    p.add_argument("--model", choices=rates.VARIANTS, default="rotated")
    p.add_argument("--cap", type=int, default=99)

    p = sub.add_parser("mixture", help="global-mixture correlated noise")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--components", required=True, help="'rho:p,rho:p,...'; weights sum to 1")
    p.add_argument("--model", choices=rates.VARIANTS, default="rotated")
    p.add_argument("--both-axes", action="store_true")

    p = sub.add_parser("design", help="rectangular layout for asymmetric X/Z rates")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--px", type=float, required=True)
    p.add_argument("--pz", type=float, required=True)
    p.add_argument("--A", type=float, default=analytic.ROTATED_PARAMS.A)
    p.add_argument("--pth", type=float, default=analytic.ROTATED_PARAMS.p_th)

    for name, sp in sub.choices.items():
        _add_format(sp)

    p = sub.add_parser("sweep", help="run a subcommand over a range of one parameter")
    p.add_argument("--vary", required=True, metavar="NAME=VALUES",
                   help="values as 'a,b,c', integer range 'start:stop:step' (inclusive), "
                        "or 'log:start:stop:num'")
    p.add_argument("--jobs", type=int, default=1)
    _add_format(p)
    p.add_argument("target", choices=sorted(COMMANDS))
    p.add_argument("args", nargs=argparse.REMAINDER)
    return parser


def _params(ns: argparse.Namespace) -> dict:
    return {k: v for k, v in vars(ns).items() if k not in ("command", "format")}


def _sweep_values(spec: str) -> list[str]:
    if spec.startswith("log:"):
        parts = spec.split(":")[1:]
        if len(parts) != 3:
            raise UsageError(f"log sweep must be 'log:start:stop:num', got {spec!r}")
        lo, hi, num = float(parts[0]), float(parts[1]), int(parts[2])
        return [repr(float(v)) for v in np.geomspace(lo, hi, num)]
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"range must be 'start:stop[:step]', got {spec!r}")
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise UsageError(f"integer range expected, got {spec!r}") from None
        step = nums[2] if len(nums) == 3 else 1
        if step <= 0:
            raise UsageError(f"range step must be positive, got {step}")
        return [str(v) for v in range(nums[0], nums[1] + 1, step)]
    return [v for v in spec.split(",") if v]


def _sweep_points(parser, ns) -> tuple[str, list[dict]]:
    sub = parser._subparsers._group_actions[0].choices[ns.target]
    base_args = list(ns.args)
    if "=" not in ns.vary:
        raise UsageError(f"--vary must be NAME=VALUES, got {ns.vary!r}")
    name, spec = ns.vary.split("=", 1)
    flag = "--" + name.lstrip("-").replace("_", "-")
    known = {opt for a in sub._actions for opt in a.option_strings}
    if flag not in known:
        raise UsageError(f"{ns.target} has no parameter {flag}")
    points = []
    fmt = ns.format
    for value in _sweep_values(spec):
        point_ns = sub.parse_args(base_args + [flag, value])
        if "--format" in base_args:
            fmt = point_ns.format
        points.append(_params(point_ns))
    return ns.target, points, fmt


def _run_point(args) -> dict:
    command, inputs = args
    return compute(command, inputs)


def _flatten(rec: dict) -> dict:
    row = {"command": rec["command"]}
    row.update({f"in.{k}": v for k, v in rec["inputs"].items()})
    row.update({f"out.{k}": v for k, v in rec["outputs"].items()})
    row["warnings"] = " | ".join(rec["warnings"])
    return row


def format_records(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in records)
    if fmt == "csv":
        rows = [_flatten(r) for r in records]
        fields: list[str] = []
        for r in rows:
            fields.extend(k for k in r if k not in fields)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
        return buf.getvalue()
    lines = []
    for rec in records:
        lines.append(f"[{rec['command']}] " + " ".join(f"{k}={v}" for k, v in rec["inputs"].items()))
        width = max((len(k) for k in rec["outputs"]), default=0)
        for k, v in rec["outputs"].items():
            shown = f"{v:.6g}" if isinstance(v, float) else v
            lines.append(f"  {k:<{width}}  {shown}")
        for w in rec["warnings"]:
            lines.append(f"  warning: {w}")
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command == "sweep":
            command, points, fmt = _sweep_points(parser, ns)
            jobs = [(command, pt) for pt in points]
            if ns.jobs > 1 and len(jobs) > 1:
                with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
                    records = list(pool.map(_run_point, jobs))
            else:
                records = [_run_point(j) for j in jobs]
        else:
            records = [compute(ns.command, _params(ns))]
            fmt = ns.format
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return EXIT_USAGE
    except (ValueError, TypeError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_DOMAIN
    stdout.write(format_records(records, fmt))
    return EXIT_OK


def main() -> None:
    sys.exit(run())

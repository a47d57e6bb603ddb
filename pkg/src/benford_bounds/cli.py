"""Command line front end.

Subcommands ``table1``, ``gauss``, ``digits`` and ``verify`` print a report as
CSV (default) or JSON.  Floats are written in 6-significant-digit scientific
notation and JSON keys are sorted, so identical invocations produce
byte-identical output.

Exit codes: 0 success, 1 a measured value exceeded its certified bound,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import DOMINANCE_SLACK, best_bounds, gaussian_bounds
from .densities import DensityModel
from .digits import certified_mrae, digit_report, parse_prefix
from .total_variation import tv_gumbel_deriv
from .wrapping import DEFAULT_GRID, measure_discrepancies, wrap

FORMAT_VERSION = "1"
EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE = 0, 1, 2


@dataclass
class ReportEnvelope:
    command: str
    params: dict
    rows: list[dict] = field(default_factory=list)
    format_version: str = FORMAT_VERSION


def _fmt(x) -> str:
    return format(x, ".5e")


def _json_value(v) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        return _fmt(v) if math.isfinite(v) else json.dumps(str(v))
    if isinstance(v, dict):
        items = sorted(v.items())
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in items) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    return json.dumps(v)


def to_json(env: ReportEnvelope) -> str:
    return _json_value({"command": env.command, "params": env.params,
                        "rows": env.rows, "format_version": env.format_version}) + "\n"


def to_csv(env: ReportEnvelope) -> str:
    buf = io.StringIO()
    if not env.rows:
        return ""
    header = list(env.rows[0])
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in env.rows:
        writer.writerow([_fmt(v) if isinstance(v, float) else
                         str(v).lower() if isinstance(v, bool) else v
                         for v in (row.get(h, "") for h in header)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# model specs
# ---------------------------------------------------------------------------


def _number(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except ZeroDivisionError:
        raise ValueError(f"division by zero in {text!r}") from None


def parse_model(spec: str, base: int = 10) -> DensityModel:
    """Build a model from ``family:key=value,...``.

    ``gauss``, ``uniform`` and ``pwl`` describe ``Y = log_b X`` directly;
    ``weibull`` describes ``X`` and needs the base.
    """
    family, _, rest = spec.partition(":")
    kv = {}
    for part in filter(None, rest.split(",")):
        key, eq, val = part.partition("=")
        if not eq:
            raise ValueError(f"malformed model parameter {part!r}")
        kv[key.strip()] = val.strip()

    def take(name, default=None):
        if name in kv:
            v = kv.pop(name)
            return v if name == "file" else _number(v)
        if default is None:
            raise ValueError(f"model {family!r} needs {name}=...")
        return default

    family = family.strip().lower()
    if family in ("gauss", "gaussian", "normal"):
        model = DensityModel.gaussian(take("mu", 0.0), take("sigma"))
    elif family == "weibull":
        model = DensityModel.weibull(take("tau"), take("gamma", 1.0), base)
    elif family == "uniform":
        model = DensityModel.uniform(take("width"), take("mu", 0.0), take("sigma", 1.0))
    elif family == "pwl":
        model = DensityModel.from_csv(take("file"))
    else:
        raise ValueError(f"unknown model family {family!r}")
    if kv:
        raise ValueError(f"unknown parameters for {family}: {', '.join(sorted(kv))}")
    return model


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_table1(k_max: int = 14, taus=(1.0, 0.5, 0.3), base: int = 10) -> ReportEnvelope:
    """Total variation of ``f_o^(k)`` and the Weibull digit bounds per ``tau``."""
    if not 0 <= k_max <= 20:
        raise ValueError("table1 supports 0 <= kmax <= 20")
    lb = math.log(base)
    rows = []
    for k in range(k_max + 1):
        tv = tv_gumbel_deriv(k).value
        row = {"k": k, "tv": tv}
        for tau in taus:
            row[f"B_{float(tau)}"] = 3.0 * tv * (tau * lb / 6.0) ** (k + 1)
        rows.append(row)
    for row in rows:
        row["minimum_for"] = ""
    for tau in taus:
        col = f"B_{float(tau)}"
        best = min(rows, key=lambda r: (r[col], r["k"]))
        best["minimum_for"] = ";".join(filter(None, [best["minimum_for"], str(float(tau))]))
    params = {"kmax": k_max, "taus": [float(t) for t in taus], "base": base}
    return ReportEnvelope("table1", params, rows)


def cmd_gauss(sigmas, verify: bool = False, k_max: int | None = None,
              tol: float = DOMINANCE_SLACK, grid_n: int = DEFAULT_GRID) -> ReportEnvelope:
    """Closed-form Gaussian bounds per ``sigma`` and the exact-TV scan."""
    rows = []
    for sigma in sigmas:
        gb = gaussian_bounds(sigma)
        model = DensityModel.gaussian(0.0, sigma)
        rep = best_bounds(model, k_max)
        row = {"sigma": float(sigma), "m": gb.m, "range_bound": gb.range,
               "kuiper_bound": gb.kuiper, "mrae_bound": gb.mrae, "best_k": rep.best_k,
               "scan_range_bound": rep.best.range_bound,
               "scan_kuiper_bound": rep.best.kuiper_bound,
               "scan_mrae_bound": rep.best.mrae_bound}
        if verify:
            d = measure_discrepancies(wrap(model), grid_n)
            row.update(measured_range=d.range_g, measured_kuiper=d.kuiper,
                       measured_mrae=d.mrae,
                       ok=(d.range_g <= min(gb.range, rep.best.range_bound) + tol
                           and d.kuiper <= min(gb.kuiper, rep.best.kuiper_bound) + tol
                           and d.mrae <= min(gb.mrae, rep.best.mrae_bound) + tol))
        rows.append(row)
    params = {"sigmas": [float(s) for s in sigmas], "verify": verify,
              "kmax": k_max, "tol": tol}
    return ReportEnvelope("gauss", params, rows)


def cmd_digits(model_spec: str, prefixes, verify: bool = False, k_max: int | None = None,
               base: int = 10, tol: float = DOMINANCE_SLACK) -> ReportEnvelope:
    """One row per prefix: Benford and exact probability, relative error and
    its certified bound."""
    parsed = [parse_prefix(p, base) for p in prefixes]
    cache = {}
    rows = []
    for p in parsed:
        if p.base not in cache:
            model = parse_model(model_spec, p.base)
            cache[p.base] = (model, wrap(model), certified_mrae(model, k_max))
        model, w, cert = cache[p.base]
        r = digit_report(model, p, w=w, bound=cert)
        row = {"prefix": str(p), "base": p.base, "benford_p": r.benford_p,
               "exact_p": r.exact_p, "rel_err": r.rel_err,
               "certified_bound": r.certified_bound}
        if verify:
            row["ok"] = abs(r.rel_err) <= r.certified_bound + tol
        row["note"] = r.note
        rows.append(row)
    params = {"model": model_spec, "prefixes": [str(p) for p in parsed],
              "verify": verify, "kmax": k_max}
    return ReportEnvelope("digits", params, rows)


def cmd_verify(model_spec: str, k_max: int | None = None, base: int = 10,
               tol: float = DOMINANCE_SLACK, grid_n: int = DEFAULT_GRID) -> ReportEnvelope:
    """Per-k bounds next to the measured discrepancies of the wrapped law."""
    model = parse_model(model_spec, base)
    rep = best_bounds(model, k_max)
    d = measure_discrepancies(wrap(model), grid_n)
    rows = []
    for r in rep.per_k:
        rows.append({"k": r.k, "tv_k": r.tv_k, "range_bound": r.range_bound,
                     "kuiper_bound": r.kuiper_bound, "mrae_bound": r.mrae_bound,
                     "measured_range": d.range_g, "measured_kuiper": d.kuiper,
                     "measured_mrae": d.mrae, "best": r.k == rep.best_k,
                     "ok": (d.range_g <= r.range_bound + tol
                            and d.kuiper <= r.kuiper_bound + tol
                            and d.mrae <= r.mrae_bound + tol)})
    params = {"model": model_spec, "kmax": k_max, "base": base, "tol": tol,
              "grid": grid_n, "measured_ks": d.ks}
    return ReportEnvelope("verify", params, rows)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _positive(text):
    v = _number(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--kmax", type=int, default=None,
                        help="largest derivative order to scan")
    common.add_argument("--tol", type=float, default=DOMINANCE_SLACK,
                        help="slack allowed when comparing measured values to bounds")
    common.add_argument("--verify", action="store_true",
                        help="measure the wrapped distribution and check the bounds")
    common.add_argument("--base", type=int, default=10)

    parser = argparse.ArgumentParser(
        prog="benford-bounds",
        description="Certified bounds on the uniformity of log_b(X) mod 1 "
                    "and on Benford digit probabilities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", parents=[common],
                       help="Weibull total variation and digit-bound table")
    p.add_argument("--taus", default="1.0,0.5,0.3",
                   help="comma separated Weibull shape parameters")

    p = sub.add_parser("gauss", parents=[common], help="bounds for normal Y = log_b X")
    p.add_argument("sigmas", nargs="+", type=_positive)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)

    p = sub.add_parser("digits", parents=[common], help="digit-prefix probabilities")
    p.add_argument("--model", required=True,
                   help="gauss:sigma=S[,mu=M] | weibull:tau=T[,gamma=G] | "
                        "uniform:width=W | pwl:file=PATH")
    p.add_argument("prefixes", nargs="+", help="prefixes such as 1@10, 23@10, 1a@16")

    p = sub.add_parser("verify", parents=[common],
                       help="per-k bounds against measured discrepancies")
    p.add_argument("--model", required=True)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.base < 2:
        parser.error("--base must be >= 2")
    try:
        if args.command == "table1":
            taus = [_positive(t) for t in args.taus.split(",") if t.strip()]
            env = cmd_table1(14 if args.kmax is None else args.kmax, taus, args.base)
        elif args.command == "gauss":
            env = cmd_gauss(args.sigmas, args.verify, args.kmax, args.tol, args.grid)
        elif args.command == "digits":
            env = cmd_digits(args.model, args.prefixes, args.verify, args.kmax,
                             args.base, args.tol)
        else:
            env = cmd_verify(args.model, args.kmax, args.base, args.tol, args.grid)
    except (ValueError, OSError, argparse.ArgumentTypeError) as exc:
        parser.error(str(exc))

    sys.stdout.write(to_json(env) if args.format == "json" else to_csv(env))
    failed = any(row.get("ok") is False for row in env.rows)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every command writes a table (CSV or JSON) whose rows repeat the full set of
channel and timing inputs. Settings come from built-in defaults, then an
optional flat ``key = value`` config file, then command-line flags.

Exit codes: 0 on success, 1 on a domain error during computation, 2 on a
usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import asdict
from typing import Any, Callable

from . import __version__
from .bounds import BARRETT_KOK, DLCZ_LIKE, WEAK_EXCITATION, heralded_entanglement_time, memory_bounds, two_qm_bound
from .channel import ChannelParams, Scenario
from .enumeration import MAX_PHOTONS, exact_tree_probabilities
from .errors import logical_errors
from .montecarlo import McConfig, mc_run
from .optimizer import (
    Baseline,
    CrossoverParameter,
    Objective,
    OptimizationResult,
    SearchSpace,
    default_workers,
    find_crossover,
    fixed_shape_sweep,
    optimize,
    sweep_distance,
)
from .rate import RgsShape, evaluate_scenario
from .tree import TreeVector, analyze_tree

log = logging.getLogger("rgsrepeater")

COMMANDS = ("eval", "optimize", "sweep", "crossover", "bounds", "mc-check")

# key -> (default, kind); lengths are km, times seconds
SETTINGS: dict[str, tuple[Any, str]] = {
    "L_att_km": (20.0, "float"),
    "c_km_per_s": (2.0e5, "float"),
    "eta_c": (1.0, "float"),
    "eta_d": (1.0, "float"),
    "epsilon": (0.0, "float"),
    "T_CZ_s": (1.0e-8, "float"),
    "T_Eph_s": (0.0, "float"),
    "T_M_s": (0.0, "float"),
    "T_H_s": (0.0, "float"),
    "L_km": (None, "length"),
    "L0_km": (None, "length"),
    "L_list_km": (None, "lengths"),
    "fit_range_km": (None, "length_range"),
    "m": (None, "int"),
    "b": (None, "tree"),
    "fractional_links": (False, "bool"),
    "m_range": ((1, 30), "int_range"),
    "b0_range": ((1, 20), "int_range"),
    "b1_range": ((1, 20), "int_range"),
    "b2_range": ((1, 10), "int_range"),
    "tree_depth": (2, "int"),
    "n_links_range": (None, "int_range"),
    "L0_range_att": ((0.05, 1.0), "float_range"),
    "objective": ("secret_key_per_matter", "str"),
    "parameter": ("eta_prod", "str"),
    "baseline": ("memory_and_direct", "str"),
    "bracket": (None, "float_range"),
    "direct_rep_exponent": (6, "int"),
    "P_ent": (1.0, "float"),
    "p_ph": (None, "float"),
    "samples": (1_000_000, "int"),
    "seed": (20210101, "int"),
    "workers": (None, "int"),
    "format": ("csv", "str"),
}

ECHO_KEYS = ("L_att_km", "c_km_per_s", "eta_c", "eta_d", "epsilon", "T_CZ_s", "T_Eph_s", "T_M_s", "T_H_s")


class ConfigError(ValueError):
    pass


def parse_length(text: str, L_att: float) -> float:
    """``"1000km"``, ``"50Latt"`` or a bare number of km."""
    t = str(text).strip()
    low = t.lower()
    try:
        if low.endswith("latt"):
            return float(t[:-4]) * L_att
        if low.endswith("km"):
            return float(t[:-2])
        return float(t)
    except ValueError:
        raise ConfigError(f"cannot parse length {text!r}") from None


def _parse_range(text, conv):
    if isinstance(text, (tuple, list)):
        lo, hi = text
    else:
        parts = str(text).replace(",", ":").split(":")
        if len(parts) != 2:
            raise ConfigError(f"expected a range like 'low:high', got {text!r}")
        lo, hi = parts
    return conv(lo), conv(hi)


def _convert(key: str, raw: Any, L_att: float) -> Any:
    default, kind = SETTINGS[key]
    if raw is None or raw == "":
        return None
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            return int(raw)
        if kind == "str":
            return str(raw)
        if kind == "bool":
            if isinstance(raw, bool):
                return raw
            return str(raw).strip().lower() in ("1", "true", "yes", "on")
        if kind == "length":
            return parse_length(raw, L_att)
        if kind == "lengths":
            if isinstance(raw, (list, tuple)):
                return [float(v) for v in raw]
            return [parse_length(p, L_att) for p in str(raw).split(",") if p.strip()]
        if kind == "length_range":
            return _parse_range(raw, lambda v: parse_length(v, L_att))
        if kind == "int_range":
            return _parse_range(raw, int)
        if kind == "float_range":
            return _parse_range(raw, float)
        if kind == "tree":
            return TreeVector.parse(str(raw)) if not isinstance(raw, TreeVector) else raw
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid value for {key}: {raw!r} ({exc})") from None
    raise AssertionError(kind)


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key != "command" and key not in SETTINGS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _format_value(kind: str, value: Any) -> str:
    if value is None:
        return ""
    if kind in ("int_range", "float_range", "length_range"):
        return f"{value[0]!r}:{value[1]!r}"
    if kind == "lengths":
        return ",".join(repr(v) for v in value)
    if kind == "tree":
        return str(value)
    if kind == "bool":
        return "true" if value else "false"
    return repr(value) if isinstance(value, float) else str(value)


def dump_config(command: str, settings: dict[str, Any]) -> str:
    out = [f"# rgsrepeater {__version__} configuration", f"command = {command}"]
    for key, (_, kind) in SETTINGS.items():
        value = settings.get(key)
        if value is None:
            continue
        out.append(f"{key} = {_format_value(kind, value)}")
    return "\n".join(out) + "\n"


def resolve(command: str, file_values: dict[str, str], flag_values: dict[str, Any]) -> dict[str, Any]:
    merged: dict[str, Any] = {k: d for k, (d, _) in SETTINGS.items()}
    merged.update({k: v for k, v in file_values.items() if k != "command"})
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    L_att = float(merged["L_att_km"])
    settings = {}
    for key in SETTINGS:
        settings[key] = _convert(key, merged[key], L_att)
    return settings


# ---------------------------------------------------------------- builders

def _channel(s) -> ChannelParams:
    return ChannelParams(L_att=s["L_att_km"], c=s["c_km_per_s"], eta_c=s["eta_c"], eta_d=s["eta_d"], epsilon=s["epsilon"])


def _scenario(s, L: float, L0: float) -> Scenario:
    return Scenario(L=L, L0=L0, T_CZ=s["T_CZ_s"], T_Eph=s["T_Eph_s"], T_M=s["T_M_s"], T_H=s["T_H_s"])


def _space(s) -> SearchSpace:
    return SearchSpace(
        m_range=s["m_range"],
        b0_range=s["b0_range"],
        b1_range=s["b1_range"],
        b2_range=s["b2_range"],
        tree_depth=s["tree_depth"],
        n_links_range=s["n_links_range"],
        L0_range_att=s["L0_range_att"],
    )


def _require(s, *keys):
    missing = [k for k in keys if s.get(k) is None]
    if missing:
        raise ConfigError("missing required setting(s): " + ", ".join(missing))


def validate(command: str, s: dict[str, Any]) -> None:
    """Check every setting the command uses before any computation."""
    try:
        _channel(s)
        Objective(s["objective"])
        if s["format"] not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if command in ("optimize", "sweep", "crossover"):
            _space(s)
        if command == "eval":
            _require(s, "L_km", "L0_km", "m", "b")
            _scenario(s, s["L_km"], s["L0_km"])
            RgsShape(s["m"], s["b"])
        elif command == "optimize":
            _require(s, "L_km")
            _scenario(s, s["L_km"], s["L_km"])
        elif command == "sweep":
            _require(s, "L_list_km")
            for L in s["L_list_km"]:
                _scenario(s, L, min(L, s["L0_km"] or L))
            if (s["m"] is None) != (s["b"] is None) or (s["m"] is not None and s["L0_km"] is None):
                raise ConfigError("a fixed-shape sweep needs m, b and L0_km together")
        elif command == "crossover":
            _require(s, "L_km")
            CrossoverParameter(s["parameter"])
            Baseline(s["baseline"])
            _scenario(s, s["L_km"], s["L_km"])
        elif command == "bounds":
            _require(s, "L_km")
            L0 = s["L0_km"] if s["L0_km"] is not None else s["L_att_km"]
            if not 0 < L0 <= s["L_km"]:
                raise ConfigError("bounds needs 0 < L0_km <= L_km")
            if not 0 < s["P_ent"] <= 1:
                raise ConfigError("P_ent must lie in (0, 1]")
        elif command == "mc-check":
            _require(s, "b", "p_ph")
            if not 0 <= s["p_ph"] <= 1:
                raise ConfigError("p_ph must lie in [0, 1]")
            McConfig(n_samples=s["samples"], seed=s["seed"])
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


# ---------------------------------------------------------------- commands

def _echo(command: str, s) -> dict[str, Any]:
    row: dict[str, Any] = {"command": command}
    row.update({k: s[k] for k in ECHO_KEYS})
    return row


def _space_echo(s) -> dict[str, Any]:
    return {
        "objective_kind": s["objective"],
        "m_range": _format_value("int_range", s["m_range"]),
        "b0_range": _format_value("int_range", s["b0_range"]),
        "b1_range": _format_value("int_range", s["b1_range"]),
        "tree_depth": s["tree_depth"],
        "L0_range_att": _format_value("float_range", s["L0_range_att"]),
        "n_links_range": _format_value("int_range", s["n_links_range"]),
    }


REPORT_KEYS = (
    "p_ph", "p_bell", "p_link", "t_rgs", "n_links", "L0", "n_matter", "n_photons", "R",
    "R_per_matter", "ebar_x", "ebar_z", "F_AB", "R_skr", "R_skr_per_matter",
)


def _report_cols(report) -> dict[str, Any]:
    if report is None:
        return {("L0_effective_km" if k == "L0" else k): "" for k in REPORT_KEYS}
    d = asdict(report)
    return {("L0_effective_km" if k == "L0" else k): d[k] for k in REPORT_KEYS}


def _optimum_row(command, s, res: OptimizationResult) -> dict[str, Any]:
    row = _echo(command, s)
    row["L_km"] = res.L
    row["L_over_Latt"] = res.L / s["L_att_km"]
    row.update(_space_echo(s))
    row["feasible"] = res.feasible
    best = res.best if res.feasible else None
    row["m"] = best.m if best else ""
    row["b"] = ",".join(map(str, best.b)) if best else ""
    row["L0_over_Latt"] = best.L0 / s["L_att_km"] if best else ""
    row["objective"] = res.objective
    row["objective_times_T_CZ"] = res.objective * s["T_CZ_s"]
    row.update(_report_cols(res.report if best else None))
    return row


def cmd_eval(s) -> list[dict]:
    shape = RgsShape(s["m"], s["b"])
    report = evaluate_scenario(shape, _channel(s), _scenario(s, s["L_km"], s["L0_km"]), s["fractional_links"])
    row = _echo("eval", s)
    row.update({"L_km": s["L_km"], "L0_input_km": s["L0_km"], "m": shape.m, "b": str(shape.tree),
                "fractional_links": s["fractional_links"]})
    row.update(_report_cols(report))
    return [row]


def cmd_optimize(s) -> list[dict]:
    res = optimize(s["L_km"], _channel(s), _scenario(s, s["L_km"], s["L_km"]), _space(s), s["objective"], s["workers"])
    return [_optimum_row("optimize", s, res)]


def cmd_sweep(s) -> list[dict]:
    ch = _channel(s)
    Ls = s["L_list_km"]
    if s["m"] is not None:
        shape = RgsShape(s["m"], s["b"])
        rows = []
        for L, rep in zip(Ls, fixed_shape_sweep(shape, s["L0_km"], Ls, ch, _scenario(s, Ls[0], min(Ls[0], s["L0_km"])))):
            row = _echo("sweep", s)
            row.update({"L_km": L, "L_over_Latt": L / s["L_att_km"], "fixed_shape": True, "m": shape.m,
                        "b": str(shape.tree), "L0_input_km": s["L0_km"]})
            row.update(_report_cols(rep))
            rows.append(row)
        return rows
    sweep = sweep_distance(Ls, ch, _scenario(s, Ls[0], Ls[0]), _space(s), s["fit_range_km"], s["objective"], s["workers"])
    rows = []
    for res in sweep.results:
        row = _optimum_row("sweep", s, res)
        row["fit_range_km"] = _format_value("length_range", s["fit_range_km"])
        row["power_law_exponent"] = "" if math.isnan(sweep.exponent) else sweep.exponent
        rows.append(row)
    return rows


def cmd_crossover(s) -> list[dict]:
    L = s["L_km"]
    res = find_crossover(
        s["parameter"], L, _channel(s), _scenario(s, L, L), _space(s), s["baseline"],
        bracket=s["bracket"], direct_rep_exponent=s["direct_rep_exponent"], workers=s["workers"],
    )
    row = _echo("crossover", s)
    row.update({"L_km": L, "L_over_Latt": L / s["L_att_km"], "parameter": res.parameter.value,
                "baseline": res.baseline.value, "direct_rep_exponent": s["direct_rep_exponent"]})
    row.update(_space_echo(s))
    row["found"] = res.found
    row["threshold"] = res.threshold if res.found else ""
    row["threshold_unit"] = "t_att" if res.parameter is CrossoverParameter.T_CZ else "1"
    row["threshold_seconds"] = res.threshold * s["L_att_km"] / s["c_km_per_s"] if (
        res.found and res.parameter is CrossoverParameter.T_CZ) else ""
    row["rgs_objective"] = res.rgs_objective if res.found else ""
    row["baseline_value"] = res.baseline_value if res.found else ""
    row["evaluations"] = res.evaluations
    return [row]


def cmd_bounds(s) -> list[dict]:
    ch = _channel(s)
    L = s["L_km"]
    L0 = s["L0_km"] if s["L0_km"] is not None else s["L_att_km"]
    report = memory_bounds(L, L0, s["P_ent"], ch)
    quantities = [
        ("memory_generic_c_over_4L", report.r_max_generic, "Hz"),
        ("memory_2qm_c_over_7L", two_qm_bound(1.0, L, ch), "Hz"),
        ("memory_2qm_at_P_ent", report.r_max_2qm, "Hz"),
        ("t_ent_avg", report.t_ent_avg, "s"),
        ("t_store_avg", report.t_store_avg, "s"),
    ]
    for proto in (BARRETT_KOK, DLCZ_LIKE, WEAK_EXCITATION):
        quantities.append((f"heralded_time_{proto.name.value}", heralded_entanglement_time(proto, L0, ch), "s"))
    rows = []
    for name, value, unit in quantities:
        row = _echo("bounds", s)
        row.update({"L_km": L, "L0_km": L0, "P_ent": s["P_ent"], "quantity": name, "value": value, "unit": unit})
        rows.append(row)
    return rows


def cmd_mc_check(s) -> list[dict]:
    tree, p, eps = s["b"], s["p_ph"], s["epsilon"]
    analysis = analyze_tree(tree, p)
    ex, ez = logical_errors(tree, analysis, eps)
    analytic = {"logical_X_prob": analysis.pr_mx_logical, "logical_Z_prob": analysis.pr_mz_logical,
                "ebar_x": ex, "ebar_z": ez}
    exact = exact_tree_probabilities(tree, p, eps) if tree.photon_count <= 16 else None
    cfg = McConfig(n_samples=s["samples"], seed=s["seed"], workers=s["workers"] or default_workers())
    mc = mc_run(tree, p, eps, cfg)
    estimates = {"logical_X_prob": mc.logical_x, "logical_Z_prob": mc.logical_z, "ebar_x": mc.ebar_x, "ebar_z": mc.ebar_z}
    exact_vals = {} if exact is None else {"logical_X_prob": exact.pr_mx_logical, "logical_Z_prob": exact.pr_mz_logical,
                                           "ebar_x": exact.ebar_x, "ebar_z": exact.ebar_z}
    rows = []
    for name in ("logical_X_prob", "logical_Z_prob", "ebar_x", "ebar_z"):
        est = estimates[name]
        row = _echo("mc-check", s)
        row.update({"b": str(tree), "p_ph": p, "samples": s["samples"], "seed": s["seed"], "quantity": name,
                    "analytic": analytic[name], "exact_enumeration": exact_vals.get(name, ""),
                    "mc_mean": est.mean, "mc_std_err": est.std_err, "mc_conditioned_samples": est.n_samples})
        row["passed"] = bool(est.n_samples == 0 or est.agrees_with(analytic[name]))
        rows.append(row)
    return rows


RUNNERS: dict[str, Callable] = {
    "eval": cmd_eval,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "crossover": cmd_crossover,
    "bounds": cmd_bounds,
    "mc-check": cmd_mc_check,
}


# ---------------------------------------------------------------- output

def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return v


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
    return buf.getvalue()


# ---------------------------------------------------------------- argparse

FLAG_MAP = {
    # flag dest -> settings key
    "L_att": "L_att_km", "c": "c_km_per_s", "eta_c": "eta_c", "eta_d": "eta_d", "epsilon": "epsilon",
    "T_CZ": "T_CZ_s", "T_Eph": "T_Eph_s", "T_M": "T_M_s", "T_H": "T_H_s",
    "L": "L_km", "L0": "L0_km", "L_list": "L_list_km", "fit_range": "fit_range_km",
    "m": "m", "b": "b", "fractional_links": "fractional_links",
    "m_range": "m_range", "b0_range": "b0_range", "b1_range": "b1_range", "b2_range": "b2_range",
    "tree_depth": "tree_depth", "n_links_range": "n_links_range", "L0_range_att": "L0_range_att",
    "objective": "objective", "parameter": "parameter", "baseline": "baseline", "bracket": "bracket",
    "direct_rep_exponent": "direct_rep_exponent", "P_ent": "P_ent", "p_ph": "p_ph",
    "samples": "samples", "seed": "seed", "workers": "workers", "format": "format",
}


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("run control")
    g.add_argument("--config", help="flat key = value settings file")
    g.add_argument("--dump-config", metavar="PATH", help="write the resolved settings to PATH")
    g.add_argument("--format", choices=("csv", "json"))
    g.add_argument("--output", "-o", help="output file (default: stdout)")
    g.add_argument("--workers", type=int, help="worker processes (default: $RGSREPEATER_WORKERS or 1)")
    g.add_argument("-v", "--verbose", action="store_true")
    ch = p.add_argument_group("channel and timing")
    ch.add_argument("--L-att", dest="L_att", help="fiber attenuation length in km")
    ch.add_argument("--c", help="speed of light in fiber, km/s")
    ch.add_argument("--eta-c", dest="eta_c")
    ch.add_argument("--eta-d", dest="eta_d")
    ch.add_argument("--epsilon", "--eps", dest="epsilon")
    ch.add_argument("--T-CZ", dest="T_CZ", help="CZ gate time in seconds")
    ch.add_argument("--T-Eph", dest="T_Eph")
    ch.add_argument("--T-M", dest="T_M")
    ch.add_argument("--T-H", dest="T_H")


def _search(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("search space")
    g.add_argument("--m-range", dest="m_range", help="low:high")
    g.add_argument("--b0-range", dest="b0_range")
    g.add_argument("--b1-range", dest="b1_range")
    g.add_argument("--b2-range", dest="b2_range")
    g.add_argument("--tree-depth", dest="tree_depth", help="2 by default; 1 and 3 are unvalidated")
    g.add_argument("--n-links-range", dest="n_links_range")
    g.add_argument("--L0-range-att", dest="L0_range_att", help="node spacing range in units of L_att")
    g.add_argument("--objective", choices=[o.value for o in Objective])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rgsrepeater", description="Rates of repeater-graph-state chains and memory-repeater bounds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one RGS chain")
    _common(p)
    p.add_argument("--L", help="total distance (km, or e.g. 50Latt)")
    p.add_argument("--L0", help="node spacing (km or Latt)")
    p.add_argument("--m")
    p.add_argument("--b", "--tree", dest="b", help="branching vector, e.g. 10,5")
    p.add_argument("--fractional-links", dest="fractional_links", action="store_const", const=True)

    p = sub.add_parser("optimize", help="optimise shape and node spacing at one distance")
    _common(p)
    _search(p)
    p.add_argument("--L")

    p = sub.add_parser("sweep", help="optimise over a list of distances, or sweep a fixed shape")
    _common(p)
    _search(p)
    p.add_argument("--L-list", dest="L_list", help="comma-separated distances")
    p.add_argument("--fit-range", dest="fit_range", help="low:high distances for the power-law fit")
    p.add_argument("--m")
    p.add_argument("--b", "--tree", dest="b")
    p.add_argument("--L0")

    p = sub.add_parser("crossover", help="threshold where the RGS rate meets a baseline")
    _common(p)
    _search(p)
    p.add_argument("--L")
    p.add_argument("--parameter", choices=[c.value for c in CrossoverParameter])
    p.add_argument("--baseline", choices=[b.value for b in Baseline])
    p.add_argument("--bracket", help="low:high scan range (T_CZ in units of t_att)")
    p.add_argument("--direct-rep-exponent", dest="direct_rep_exponent")

    p = sub.add_parser("bounds", help="memory-based repeater bounds")
    _common(p)
    p.add_argument("--L")
    p.add_argument("--L0")
    p.add_argument("--P-ent", dest="P_ent")

    p = sub.add_parser("mc-check", help="compare analytic tree values with sampling")
    _common(p)
    p.add_argument("--b", "--tree", dest="b")
    p.add_argument("--p-ph", "--pph", dest="p_ph")
    p.add_argument("--samples")
    p.add_argument("--seed")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    flags = {FLAG_MAP[k]: v for k, v in vars(args).items() if k in FLAG_MAP}
    try:
        file_values = read_config(args.config) if args.config else {}
        if file_values.get("command", args.command) != args.command:
            raise ConfigError(f"config is for command {file_values['command']!r}, not {args.command!r}")
        settings = resolve(args.command, file_values, flags)
        validate(args.command, settings)
    except ConfigError as exc:
        parser.exit(2, f"rgsrepeater: error: {exc}\n")

    if args.dump_config:
        with open(args.dump_config, "w", encoding="utf-8") as fh:
            fh.write(dump_config(args.command, settings))
    try:
        rows = RUNNERS[args.command](settings)
    except ValueError as exc:
        print(f"rgsrepeater: {exc}", file=sys.stderr)
        return 1
    text = render(rows, settings["format"])
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

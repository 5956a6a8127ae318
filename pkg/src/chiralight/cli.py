"""Command-line interface.

Subcommands
-----------
spectrum     chiral response components and group index on a detuning grid
delay        group index / group velocity / delay rows per scenario
crossover    control strength where cold and hot group indices cross
pulse        Gaussian probe pulse through the dispersive cell
calibrate    solve the density coupling kappa_e for a target group index
preset-dump  fully resolved parameters of the built-in presets (JSON)

All numeric output is printed with 12 significant digits so repeated
runs are byte-identical.  Exit codes: 0 success, 2 configuration
error (every violation is listed), 3 numerical failure (named).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

import numpy as np
from scipy.optimize import brentq

from . import optics, presets
from . import pulse as pulse_mod
from .errors import ConfigurationError, NoRootInBracket, NumericalError
from .params import (C_LIGHT, MediumParams, SystemParams, load_config,
                     to_dict, validate, with_overrides)

_MODES = ("cold", "hot", "both")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.12g" % float(value)


def _jsonable(value):
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def parse_grid(text: str) -> np.ndarray:
    """Parse 'lo:hi:count' into a uniform detuning grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigurationError(
            f"bad --grid {text!r}: expected lo:hi:count")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise ConfigurationError(
            f"bad --grid {text!r}: lo, hi must be numbers and count an "
            "integer") from None
    if count < 1:
        raise ConfigurationError(f"bad --grid {text!r}: empty grid (count < 1)")
    if count == 1:
        return np.array([lo])
    return np.linspace(lo, hi, count)


def parse_pair(text: str, flag: str):
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigurationError(f"bad {flag} {text!r}: expected lo:hi")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise ConfigurationError(
            f"bad {flag} {text!r}: endpoints must be numbers") from None
    if not hi > lo:
        raise ConfigurationError(f"bad {flag} {text!r}: need hi > lo")
    return lo, hi


def parse_float_list(text: str, flag: str) -> list:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ConfigurationError(
            f"bad {flag} {text!r}: expected comma-separated numbers") from None


def _resolve(args):
    """Build the working config from --preset and/or --config."""
    scenario = presets.get(args.preset) if args.preset else None
    if args.config:
        if scenario is not None:
            base = to_dict(scenario.config())
            with open(args.config, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            unknown = sorted(set(doc) - {"system", "medium"})
            if unknown:
                raise ConfigurationError(
                    f"unknown top-level config keys {unknown} "
                    "(expected only 'system' and 'medium')")
            cfg = with_overrides(
                validate(SystemParams(**base["system"]),
                         MediumParams(**base["medium"])),
                system=doc.get("system"), medium=doc.get("medium"))
        else:
            cfg = load_config(args.config)
    elif scenario is not None:
        cfg = scenario.config()
    else:
        cfg = validate(SystemParams(), MediumParams())
    return cfg, scenario


def _modes(args, scenario) -> list:
    mode = args.mode
    if mode is None:
        mode = scenario.mode if scenario is not None else "cold"
    if mode not in _MODES:
        raise ConfigurationError(
            f"bad --mode {mode!r}: expected one of {', '.join(_MODES)}")
    return ["cold", "hot"] if mode == "both" else [mode]


@contextlib.contextmanager
def _out_stream(args):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def _emit(args, columns, rows):
    """Write rows (list of dicts) as CSV or JSON with %.12g formatting."""
    with _out_stream(args) as fh:
        if getattr(args, "format", "csv") == "json":
            doc = [{k: _jsonable(r.get(k)) for k in columns} for r in rows]
            fh.write(json.dumps(doc, indent=2))
            fh.write("\n")
        else:
            fh.write(",".join(columns) + "\n")
            for r in rows:
                fh.write(",".join(_fmt(r.get(k)) for k in columns) + "\n")
    return 0


# ----------------------------------------------------------------- spectrum

def cmd_spectrum(args) -> int:
    cfg, scenario = _resolve(args)
    grid = parse_grid(args.grid)
    modes = _modes(args, scenario)

    if args.vd is not None:
        vd_list = parse_float_list(args.vd, "--vd")
    elif scenario is not None and scenario.vd_list:
        vd_list = list(scenario.vd_list)
    else:
        vd_list = [cfg.medium.v_doppler]

    columns = ["delta_p", "mode", "v_doppler",
               "re_chi_e", "im_chi_e", "re_chi_m", "im_chi_m",
               "re_xi_eh", "im_xi_eh", "re_xi_he", "im_xi_he",
               "n_r", "n_g"]
    rows = []
    for mode in modes:
        # a thermal-width sweep only distinguishes hot curves; the cold
        # response is independent of v_doppler, so emit it once
        sweep = vd_list if mode == "hot" else vd_list[:1]
        for vd in sweep:
            c = with_overrides(cfg, medium={"v_doppler": float(vd)})
            curve, resp = optics.group_index_curve(
                c, grid, mode=mode, return_response=True)
            for i, d in enumerate(np.atleast_1d(grid)):
                rows.append({
                    "delta_p": float(d), "mode": mode, "v_doppler": float(vd),
                    "re_chi_e": resp.chi_e[i].real, "im_chi_e": resp.chi_e[i].imag,
                    "re_chi_m": resp.chi_m[i].real, "im_chi_m": resp.chi_m[i].imag,
                    "re_xi_eh": resp.xi_eh[i].real, "im_xi_eh": resp.xi_eh[i].imag,
                    "re_xi_he": resp.xi_he[i].real, "im_xi_he": resp.xi_he[i].imag,
                    "n_r": curve.n_r[i], "n_g": curve.N_g[i],
                })
    return _emit(args, columns, rows)


# -------------------------------------------------------------------- delay

def cmd_delay(args) -> int:
    cfg, scenario = _resolve(args)
    modes = _modes(args, scenario)

    if args.omega3 is not None:
        omega3s = parse_float_list(args.omega3, "--omega3")
    elif scenario is not None and scenario.omega3_list:
        omega3s = list(scenario.omega3_list)
    else:
        omega3s = [cfg.system.omega_3]

    base = scenario.name if scenario is not None else "config"
    scenarios, meta = [], []
    for o3 in omega3s:
        c = with_overrides(cfg, system={"omega_3": float(o3)})
        for mode in modes:
            scenarios.append((f"{base}:omega3={o3:g}", c, mode))
            meta.append(float(o3))
    rows = optics.delay_table(scenarios)
    for row, o3 in zip(rows, meta):
        row["omega_3"] = o3
    columns = ["scenario", "omega_3", "mode", "n_g", "v_g", "tau_ns", "error"]
    return _emit(args, columns, rows)


# ---------------------------------------------------------------- crossover

def cmd_crossover(args) -> int:
    cfg, scenario = _resolve(args)
    if args.omega3_range is not None:
        lo, hi = parse_pair(args.omega3_range, "--omega3-range")
    elif scenario is not None and scenario.omega3_list:
        lo, hi = scenario.omega3_list[0], scenario.omega3_list[-1]
    else:
        lo, hi = 1.5, 5.0
    star = optics.superluminal_crossover(cfg, lo, hi, xtol=args.tol)
    columns = ["omega3_lo", "omega3_hi", "xtol", "omega3_star"]
    rows = [{"omega3_lo": lo, "omega3_hi": hi, "xtol": args.tol,
             "omega3_star": star}]
    return _emit(args, columns, rows)


# -------------------------------------------------------------------- pulse

def _pulse_series(args, cfg, scenario, modes):
    """Resolve (label, n_0, g_vd[SI]) for every requested series."""
    if args.vacuum:
        return [("vacuum", 1.0, 0.0)]
    series = []
    for mode in modes:
        if scenario is not None and scenario.pulse_constants:
            coeff = presets.pulse_dispersion_si(scenario, mode)
        else:
            coeff = pulse_mod.dispersion_coefficients(cfg, mode=mode)
        series.append((mode, coeff["n_0"], coeff["g_vd"]))
    return series


def cmd_pulse(args) -> int:
    cfg, scenario = _resolve(args)
    modes = _modes(args, scenario)
    ps = pulse_mod.PulseSpec(tau_0=args.tau0 * 1e-9, delta=args.delta)
    L = cfg.medium.length_L
    series = _pulse_series(args, cfg, scenario, modes)

    peaks = [0.0]
    for _, n_0, g_vd in series:
        peaks.append(L * n_0 / C_LIGHT + g_vd * L * ps.delta)
    t = pulse_mod.time_grid(ps, expected_peaks=peaks)
    trace_in = pulse_mod.input_envelope(ps, t)

    outputs = [(label,
                pulse_mod.propagate_analytic(ps, n_0, g_vd, L, t=t))
               for label, n_0, g_vd in series]

    nu = np.sort(pulse_mod.frequency_grid(ps, t))
    spec_in = pulse_mod.input_spectrum(ps, nu)
    spec_out = [(label, pulse_mod.output_spectrum(ps, n_0, g_vd, L, nu=nu))
                for label, n_0, g_vd in series]

    labels = [label for label, _, _ in series]
    columns = ["section", "x", "input"] + labels
    step = 1 if args.full else max(1, ps.n_samples // 2048)

    def intensity(trace):
        return np.abs(pulse_mod.normalized(trace.samples)) ** 2

    rows = []
    in_t = intensity(trace_in)
    out_t = {label: intensity(tr) for label, tr in outputs}
    for i in range(0, t.size, step):
        row = {"section": "time", "x": t[i] / ps.tau_0, "input": in_t[i]}
        for label in labels:
            row[label] = out_t[label][i]
        rows.append(row)
    in_f = intensity(spec_in)
    out_f = {label: intensity(tr) for label, tr in spec_out}
    for i in range(0, nu.size, step):
        row = {"section": "frequency", "x": nu[i] / ps.delta_w,
               "input": in_f[i]}
        for label in labels:
            row[label] = out_f[label][i]
        rows.append(row)

    metric_rows = {name: {"section": "metric", "x": name, "input": None}
                   for name in ("peak_shift_ns", "width_ratio", "distortion",
                                "n_0", "g_vd_si")}
    for (label, trace), (_, n_0, g_vd) in zip(outputs, series):
        m = pulse_mod.pulse_metrics(trace_in, trace)
        metric_rows["peak_shift_ns"][label] = m["peak_shift"] * 1e9
        metric_rows["width_ratio"][label] = m["width_ratio"]
        metric_rows["distortion"][label] = m["distortion"]
        metric_rows["n_0"][label] = n_0
        metric_rows["g_vd_si"][label] = g_vd
    rows.extend(metric_rows.values())
    return _emit(args, columns, rows)


# ---------------------------------------------------------------- calibrate

def cmd_calibrate(args) -> int:
    cfg, scenario = _resolve(args)
    mode = args.mode or "cold"
    if mode not in ("cold", "hot"):
        raise ConfigurationError(
            f"bad --mode {mode!r}: calibrate needs 'cold' or 'hot'")
    if args.delta_p is not None:
        delta_p = args.delta_p
    elif args.quantity == "n_0":
        # the quoted n_0 constants are the group index at band center
        delta_p = 0.0
    else:
        delta_p = cfg.system.delta_p
    lo, hi = parse_pair(args.bracket, "--bracket")

    def gap(kappa):
        c = with_overrides(cfg, medium={"density_coupling": float(kappa)})
        return optics.group_index_at(c, delta_p, mode=mode).N_g - args.target

    g_lo, g_hi = gap(lo), gap(hi)
    if np.sign(g_lo) == np.sign(g_hi):
        raise NoRootInBracket(
            f"N_g({lo:g}) - target = {g_lo:.6g} and N_g({hi:g}) - target = "
            f"{g_hi:.6g} have the same sign; the target group index "
            f"{args.target:g} is not reachable in this bracket")
    kappa = float(brentq(gap, lo, hi, xtol=1e-30,
                         rtol=4 * np.finfo(float).eps))
    achieved = gap(kappa) + args.target
    calibrated = with_overrides(cfg, medium={"density_coupling": kappa})
    doc = {
        "calibration": {
            "kappa_e": _jsonable(kappa),
            "quantity": args.quantity,
            "target_n_g": args.target,
            "achieved_n_g": _jsonable(achieved),
            "relative_error": _jsonable(
                abs(achieved - args.target) / max(abs(args.target), 1e-300)),
            "mode": mode,
            "delta_p": _jsonable(delta_p),
            "preset": scenario.name if scenario is not None else None,
        },
        "config": to_dict(calibrated),
    }
    with _out_stream(args) as fh:
        fh.write(json.dumps(doc, indent=2))
        fh.write("\n")
    return 0


# -------------------------------------------------------------- preset-dump

def cmd_preset_dump(args) -> int:
    wanted = []
    for name in (args.names or sorted(presets.CATALOG)):
        if name in presets.FIGURE_GROUPS and name not in presets.CATALOG:
            wanted.extend(presets.FIGURE_GROUPS[name])
        else:
            wanted.append(name)
    records = {}
    for name in wanted:
        rec = presets.dump(name)
        records[rec["name"]] = rec
    payload = records[next(iter(records))] if len(records) == 1 else records
    with _out_stream(args) as fh:
        fh.write(json.dumps(payload, indent=2))
        fh.write("\n")
    return 0


# ------------------------------------------------------------------ parser

def _add_common(sub, grid=False, mode=True, fmt=True):
    sub.add_argument("--preset", help="built-in scenario name (see preset-dump)")
    sub.add_argument("--config", help="JSON file with 'system'/'medium' "
                     "sections; overrides the preset field-by-field")
    if grid:
        sub.add_argument("--grid", default="-10:10:401",
                         help="probe detuning grid lo:hi:count "
                         "(default %(default)s)")
    if mode:
        sub.add_argument("--mode", choices=_MODES, default=None,
                         help="cold (stationary), hot (thermal average) or "
                         "both; default: the preset's mode, else cold")
    if fmt:
        sub.add_argument("--format", choices=("csv", "json"), default="csv",
                         help="output format (default %(default)s)")
    sub.add_argument("--out", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chiralight",
        description="Chiral EIT response, group delay and pulse propagation "
        "in a four-level double-lambda medium.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("spectrum", help="response components vs detuning")
    _add_common(p, grid=True)
    p.add_argument("--vd", help="comma-separated thermal widths; each value "
                   "becomes one labeled hot series")
    p.set_defaults(func=cmd_spectrum)

    p = subs.add_parser("delay", help="group index / velocity / delay rows")
    _add_common(p)
    p.add_argument("--omega3", help="comma-separated control strengths; "
                   "one row per value and mode")
    p.set_defaults(func=cmd_delay)

    p = subs.add_parser("crossover",
                        help="control strength where hot and cold group "
                        "indices cross")
    _add_common(p, mode=False)
    p.add_argument("--omega3-range", default=None,
                   help="search bracket lo:hi (default: the preset's "
                   "omega_3 list span, else 1.5:5)")
    p.add_argument("--tol", type=float, default=1.0e-3,
                   help="absolute tolerance on omega_3 (default %(default)s)")
    p.set_defaults(func=cmd_crossover)

    p = subs.add_parser("pulse", help="Gaussian pulse through the cell")
    _add_common(p)
    p.add_argument("--vacuum", action="store_true",
                   help="propagate through vacuum of the same length "
                   "(n_0 = 1, no dispersion)")
    p.add_argument("--tau0", type=float, default=5.5,
                   help="input 1/e half-width in ns (default %(default)s)")
    p.add_argument("--delta", type=float, default=2.0e9,
                   help="carrier offset from band center in rad/s "
                   "(default %(default)s)")
    p.add_argument("--full", action="store_true",
                   help="emit every sample instead of decimating to "
                   "~2048 rows per section")
    p.set_defaults(func=cmd_pulse)

    p = subs.add_parser("calibrate",
                        help="solve the density coupling for a target "
                        "group index (JSON output)")
    p.add_argument("--preset", help="built-in scenario name")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--target", type=float, required=True,
                   help="group-index value to reproduce")
    p.add_argument("--quantity", choices=("N_g", "n_0"), default="N_g",
                   help="N_g at the config's delta_p, or n_0 = N_g at "
                   "band center (default %(default)s)")
    p.add_argument("--mode", choices=("cold", "hot"), default="cold")
    p.add_argument("--delta-p", type=float, default=None,
                   help="probe detuning (default: the config's delta_p)")
    p.add_argument("--bracket", default="1e-8:1e4",
                   help="kappa_e search bracket lo:hi (default %(default)s)")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_calibrate)

    p = subs.add_parser("preset-dump",
                        help="resolved parameters of built-in presets")
    p.add_argument("names", nargs="*",
                   help="preset names, aliases or figure groups "
                   "(default: all)")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_preset_dump)
    return parser


_VALUE_FLAGS = {"--grid", "--vd", "--omega3", "--omega3-range", "--bracket",
                "--target", "--delta-p", "--delta", "--tau0", "--tol"}


def _join_negative_values(argv):
    """Let flags accept leading-minus values (`--grid -10:10:2001`)."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1][:1] == "-":
            out.append(a + "=" + argv[i + 1])
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        for v in getattr(exc, "violations", None) or []:
            print(f"  - {v}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

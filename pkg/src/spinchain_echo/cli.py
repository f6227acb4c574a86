"""``spinchain-echo`` command line: series, figure data, oracle and scaling checks, state measures."""
from __future__ import annotations

import argparse
import datetime as _dt
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .coherence import (
    ScalingMode,
    ScalingRule,
    apply_scaling,
    coherence_curve,
    coherence_series,
    scaling_residual,
    size_scan,
    sweep,
    time_grid,
)
from .export import atomic_write, complex_matrix, gnuplot_curves, gnuplot_heatmap, write_csv, write_json, write_manifest
from .oracle import oracle_curve
from .qstate import (
    central_state,
    coherence_matrix,
    evolve_reduced,
    fidelity_with_pure,
    npt_negativity,
    preset_state,
    von_neumann_entropy,
)
from .spectrum import ChainParams

ORACLE_MAX_N = 201
ORACLE_TOL = 1e-9

# default parameter sets per figure id; every entry can be overridden by flags
FIGURES = {
    "3.1": dict(n=101, gamma=1.0, lam=1.0, g=0.1, lambda_range="0:4:0.02", t="0:30:0.025"),
    "3.2": dict(n=101, gamma=1.0, lam=1.0, g=0.05, sizes="5,11,21,41,101", t="0:100:0.05"),
    "3.3": dict(n=101, gamma=1.0, lam=1.0, g=0.05, gamma_range="0:1:0.01", t="0:30:0.05"),
    "3.4-3.5": dict(n=101, gamma=1.0, lam=0.95, g=0.02, m=4.0, mode="scale-N", t="0:25:0.05"),
}

COMMAND_DEFAULTS = {
    "coherence": dict(n=101, gamma=1.0, lam=1.0, g=0.1, t="0:30:0.1"),
    "oracle-check": dict(n=5, gamma=1.0, lam=1.0, g=0.05, t="0:100:0.5", reference="ground"),
    "scaling-check": dict(n=101, gamma=1.0, lam=0.95, g=0.02, m=4.0, t="0:25:0.05"),
    "state": dict(n=101, gamma=1.0, lam=1.0, g=0.05, time=0.0, preset="ghz"),
}

# config-file keys -> argparse destinations
_CONFIG_KEYS = {
    "n": "n", "gamma": "gamma", "lambda": "lam", "g": "g", "pair": "pair", "out": "out",
    "format": "format", "t": "t", "lambda-range": "lambda_range", "gamma-range": "gamma_range",
    "sizes": "sizes", "m": "m", "mode": "mode", "preset": "preset", "amplitudes": "amplitudes",
    "time": "time", "reference": "reference", "workers": "workers",
}


def parse_range(text: str) -> np.ndarray:
    """``start:stop:step`` with the end point included."""
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise ValueError(f"range must look like start:stop:step, got {text!r}") from None
    return time_grid(stop, step, start)


def parse_int_list(text: str) -> list[int]:
    return [int(x) for x in str(text).split(",") if x.strip()]


def parse_pair(text) -> tuple[int, int]:
    values = parse_int_list(text)
    if len(values) != 2:
        raise ValueError(f"pair must be 'j,j_prime', got {text!r}")
    return values[0], values[1]


def parse_amplitudes(text: str) -> np.ndarray:
    """Eight ``re,im`` pairs separated by ``;``."""
    pairs = [p for p in text.split(";") if p.strip()]
    values = []
    for p in pairs:
        re_, im_ = (float(x) for x in p.split(","))
        values.append(complex(re_, im_))
    return central_state(values)


def read_config(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("_", "-")
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        out[_CONFIG_KEYS[key]] = value
    return out


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, help="chain length N (odd)")
    p.add_argument("--gamma", type=float, help="anisotropy")
    p.add_argument("--lambda", dest="lam", type=float, help="transverse field")
    p.add_argument("--g", type=float, help="qubit-chain coupling")
    p.add_argument("--pair", help="basis pair j,j' (default 1,2)")
    p.add_argument("--out", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), help="csv (default) or json")
    p.add_argument("--config", help="flat key=value config file; flags override it")
    p.add_argument("--t", help="time range start:stop:step")
    p.add_argument("--workers", type=int, help="threads for grid sweeps")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="spinchain-echo", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("coherence", parents=[common], help="|F(t)| series for one pair")

    fig = sub.add_parser("figure", parents=[common], help="data + gnuplot script for a figure")
    fig.add_argument("figure_id", choices=sorted(FIGURES))
    fig.add_argument("--lambda-range")
    fig.add_argument("--gamma-range")
    fig.add_argument("--sizes")
    fig.add_argument("--m", type=float)
    fig.add_argument("--mode", choices=[m.value for m in ScalingMode])

    oc = sub.add_parser("oracle-check", parents=[common], help="closed form vs mode-pair oracle")
    oc.add_argument("--reference", choices=("ground", "polarized"),
                    help="initial chain state used by the oracle")

    sc = sub.add_parser("scaling-check", parents=[common], help="residual of the scaling rule")
    sc.add_argument("--m", type=float)

    st = sub.add_parser("state", parents=[common], help="reduced density matrix and measures")
    st.add_argument("--preset", choices=("ghz", "w"))
    st.add_argument("--amplitudes", help="8 pairs 're,im' separated by ';'")
    st.add_argument("--time", type=float)
    return parser


def _resolve(args, defaults: dict) -> dict:
    """Layer: built-in defaults < config file < explicit flags."""
    cfg = {"pair": "1,2", "out": "out", "format": "csv", **defaults}
    if args.config:
        cfg.update(read_config(args.config))
    for key, value in vars(args).items():
        if key not in ("command", "config", "figure_id") and value is not None:
            cfg[key] = value
    if cfg.get("workers") is not None:
        cfg["workers"] = int(cfg["workers"])
    return cfg


def _params(cfg) -> ChainParams:
    return ChainParams(int(cfg["n"]), float(cfg["gamma"]), float(cfg["lam"]), float(cfg["g"]))


def _resolved_for_manifest(cfg) -> dict:
    return {k: (v if isinstance(v, (int, float, str)) else str(v)) for k, v in sorted(cfg.items())}


def cmd_coherence(cfg) -> list[Path]:
    out = Path(cfg["out"])
    series = coherence_series(_params(cfg), parse_pair(cfg["pair"]), parse_range(cfg["t"]))
    if cfg["format"] == "json":
        payload = {"t": series.times.tolist(), "F": series.values.tolist()}
        return [write_json(out / "coherence.json", payload)]
    return [write_csv(out / "coherence.csv", ["t", "F"], [series.times, series.values])]


def _grid_csv(path, grid):
    rows = np.repeat(grid.axis1, grid.times.size)
    cols = np.tile(grid.times, grid.axis1.size)
    return write_csv(path, [grid.axis1_name, "t", "F"], [rows, cols, grid.values.ravel()])


def cmd_figure(cfg, figure_id: str) -> list[Path]:
    out = Path(cfg["out"])
    params = _params(cfg)
    pair = parse_pair(cfg["pair"])
    times = parse_range(cfg["t"])
    workers = cfg.get("workers")
    tag = figure_id.replace(".", "_")
    written = []
    if figure_id in ("3.1", "3.3"):
        axis = "lambda" if figure_id == "3.1" else "gamma"
        samples = parse_range(cfg[f"{axis}_range"])
        grid = sweep(params, pair, axis, samples, times, workers=workers)
        data = _grid_csv(out / f"fig{tag}_grid.csv", grid)
        script = gnuplot_heatmap(data.name, axis, f"fig{tag}.png", f"|F(t)| vs {axis} and t")
        written += [data]
    elif figure_id == "3.2":
        curves = []
        for series in size_scan(params, pair, parse_int_list(cfg["sizes"]), times):
            n = series.params.n_sites
            path = write_csv(out / f"fig{tag}_N{n}.csv", ["t", "F"], [series.times, series.values])
            written.append(path)
            curves.append((path.name, "1:2", f"N={n}"))
        script = gnuplot_curves(curves, f"fig{tag}.png", "|F(t)| at the critical field")
    else:
        rule = ScalingRule(float(cfg["m"]), cfg.get("mode", "scale-N"))
        scaled, _ = apply_scaling(params, 0.0, rule)
        base = write_csv(out / "fig3_4_base.csv", ["t", "F"], [times, coherence_curve(params, pair, times)])
        st = rule.m * times
        other = write_csv(out / "fig3_5_scaled.csv", ["t", "F"], [st, coherence_curve(scaled, pair, st)])
        written += [base, other]
        script = gnuplot_curves(
            [(base.name, "1:2", "base"), (other.name, "($1/%g):2" % rule.m, f"scaled, t/{rule.m:g}")],
            f"fig{tag}.png", f"scaling rule, m = {rule.m:g}",
        )
    written.append(atomic_write(out / f"fig{tag}.gp", script))
    return written


def oracle_report(params, pair, times, reference="ground", factor_hook=None) -> dict:
    """Compare the closed form with the oracle. ``factor_hook`` corrupts the closed form (tests only)."""
    if params.n_sites > ORACLE_MAX_N:
        raise ValueError(f"oracle limited to N <= {ORACLE_MAX_N}, got {params.n_sites}")
    times = np.asarray(times, dtype=float)
    analytic = coherence_curve(params, pair, times)
    if factor_hook is not None:
        analytic = factor_hook(analytic, times)
    brute = oracle_curve(params, pair, times, reference)
    diff = np.abs(analytic - brute)
    i = int(np.argmax(diff))
    return {
        "max_abs_diff": float(diff[i]),
        "argmax": {"t": float(times[i]), "analytic": float(analytic[i]), "oracle": float(brute[i])},
        "tolerance": ORACLE_TOL,
        "reference": reference,
        "pass": bool(diff[i] < ORACLE_TOL),
    }


def cmd_oracle_check(cfg, factor_hook=None) -> list[Path]:
    report = oracle_report(
        _params(cfg), parse_pair(cfg["pair"]), parse_range(cfg["t"]), cfg["reference"], factor_hook
    )
    return [write_json(Path(cfg["out"]) / "oracle_report.json", report)]


def scaling_report(params, pair, m, times) -> tuple[dict, dict]:
    report, curves = {"m": m, "t_max": float(times[-1]) if times.size else 0.0}, {"t": times}
    curves["F_base"] = coherence_curve(params, pair, times)
    for mode in ScalingMode:
        rule = ScalingRule(m, mode)
        scaled, _ = apply_scaling(params, 0.0, rule)
        report[mode.value] = {
            "residual": scaling_residual(params, pair, rule, times),
            "scaled_params": {"n": scaled.n_sites, "gamma": scaled.gamma, "lambda": scaled.lam, "g": scaled.g},
        }
        curves[f"F_{mode.value}"] = coherence_curve(scaled, pair, m * times)
    return report, curves


def cmd_scaling_check(cfg) -> list[Path]:
    out = Path(cfg["out"])
    report, curves = scaling_report(_params(cfg), parse_pair(cfg["pair"]), float(cfg["m"]), parse_range(cfg["t"]))
    return [
        write_json(out / "scaling_report.json", report),
        write_csv(out / "scaling_curves.csv", list(curves), list(curves.values())),
    ]


def state_report(params, amplitudes, t) -> dict:
    f = coherence_matrix(params, t)
    rho = evolve_reduced(amplitudes, f)
    return {
        "t": t,
        "rho": complex_matrix(rho),
        "negativity": {q: npt_negativity(rho, q) for q in ("A", "B", "C")},
        "fidelity": fidelity_with_pure(rho, amplitudes),
        "entropy": von_neumann_entropy(rho),
    }


def cmd_state(cfg) -> list[Path]:
    if cfg.get("amplitudes"):
        amplitudes = parse_amplitudes(cfg["amplitudes"])
    else:
        amplitudes = preset_state(cfg["preset"])
    report = state_report(_params(cfg), amplitudes, float(cfg["time"]))
    return [write_json(Path(cfg["out"]) / "state.json", report)]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    try:
        if args.command == "figure":
            defaults = dict(FIGURES[args.figure_id])
            cfg = _resolve(args, defaults)
            outputs = cmd_figure(cfg, args.figure_id)
            command = f"figure {args.figure_id}"
        else:
            cfg = _resolve(args, COMMAND_DEFAULTS[args.command])
            handler = {
                "coherence": cmd_coherence,
                "oracle-check": cmd_oracle_check,
                "scaling-check": cmd_scaling_check,
                "state": cmd_state,
            }[args.command]
            outputs = handler(cfg)
            command = args.command
    except (ValueError, OSError) as exc:
        print(f"spinchain-echo: error: {exc}", file=sys.stderr)
        return 2
    write_manifest(
        cfg["out"], command, _resolved_for_manifest(cfg), __version__,
        time.perf_counter() - started, outputs, stamp,
    )
    for path in outputs:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: evolve, survival, fit, moments, sweep-alpha, validate. Every
command is deterministic: the same configuration produces byte-identical
CSV. Angle flags accept decimals or exact pi fractions (`pi/2`, `3*pi/4`).
Flags override an optional `key = value` config file. Exit codes: 0 on
success, 1 on usage or configuration errors, 2 when `validate` finds a
numerical failure.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from . import plotting
from .lattice import DEFAULT_BUFFER, PhasedLine, window_for
from .observables import (
    SurvivalSeries,
    TwoPointState,
    distribution_of,
    fit_decay,
    mean_position,
    second_moment,
    std_deviation,
    survival_series,
)
from .phase_control import interference_factor
from .propagate import InitialState, evolve_analytic, evolve_spectral
from .validation import run_validation

__all__ = ["main", "entry", "parse_angle", "render_csv"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1 instead of argparse's 2
        raise UsageError(message)


_PI_PATTERN = re.compile(r"^(?P<sign>[+-])?(?:(?P<num>\d+)\*)?pi(?:/(?P<den>\d+))?$")


def parse_angle(text) -> float:
    """Angle from a decimal or an exact pi fraction like `pi/2` or `3*pi/4`."""
    if isinstance(text, (int, float)):
        value = float(text)
    else:
        s = str(text).strip().lower().replace(" ", "")
        m = _PI_PATTERN.match(s)
        if m:
            denominator = int(m.group("den") or 1)
            if denominator == 0:
                raise UsageError(f"zero denominator in angle {text!r}")
            value = math.pi * int(m.group("num") or 1) / denominator
            if m.group("sign") == "-":
                value = -value
        else:
            try:
                value = float(s)
            except ValueError:
                raise UsageError(
                    f"cannot parse angle {text!r}; use a decimal or p*pi/q") from None
    if not math.isfinite(value):
        raise UsageError(f"angle must be finite, got {text!r}")
    return value


def format_float(value) -> str:
    # 17 significant digits round-trip exactly through float()
    return format(float(value), ".17g")


def render_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else format_float(cell)
                              for cell in row))
    return "\n".join(lines) + "\n"


# field name -> (kind, default); kinds: angle, float, int, str, bool
_STATE_FIELDS = [
    ("alpha", "angle", 0.0),
    ("k", "int", None),
    ("theta", "angle", math.pi / 4),
    ("gamma", "angle", 0.0),
    ("x0", "int", 0),
    ("buffer", "int", DEFAULT_BUFFER),
]
_OUTPUT_FIELDS = [("out", "str", None), ("svg", "bool", False)]

_COMMAND_FIELDS = {
    "evolve": _STATE_FIELDS + [("t", "float", None), ("engine", "str", "analytic")]
    + _OUTPUT_FIELDS,
    "survival": _STATE_FIELDS + [
        ("t_min", "float", 0.5),
        ("t_max", "float", 200.0),
        ("samples", "int", 64),
        ("k0", "int", None),
        ("k1", "int", None),
    ] + _OUTPUT_FIELDS,
    "fit": [
        ("input", "str", None),
        ("t_min", "float", 10.0),
        ("t_max", "float", 100.0),
        ("out", "str", None),
    ],
    "moments": _STATE_FIELDS + [
        ("t_min", "float", 0.0),
        ("t_max", "float", 50.0),
        ("samples", "int", 51),
    ] + _OUTPUT_FIELDS,
    "sweep-alpha": _STATE_FIELDS + [
        ("alpha_count", "int", 16),
        ("t_min", "float", 10.0),
        ("t_max", "float", 100.0),
        ("samples", "int", 1024),
    ] + _OUTPUT_FIELDS,
    "validate": [("buffer", "int", DEFAULT_BUFFER), ("out", "str", None)],
}


def build_parser() -> _Parser:
    parser = _Parser(prog="dirwalk",
                     description="Quantum walk on a phase-directed line: "
                                 "propagation, survival decay, moments.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    for command, fields in _COMMAND_FIELDS.items():
        p = sub.add_parser(command)
        p.add_argument("--config", default=None, metavar="PATH",
                       help="key = value file; command-line flags override it")
        for name, kind, _ in fields:
            flag = "--in" if name == "input" else "--" + name.replace("_", "-")
            if kind == "bool":
                p.add_argument(flag, dest=name, action="store_true", default=None)
            else:
                p.add_argument(flag, dest=name, default=None, metavar=name.upper())
    return parser


def _load_config(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    values: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        values[key.strip().lower().replace("-", "_")] = value.strip()
    return values


def _convert(name: str, kind: str, raw):
    try:
        if kind == "angle":
            return parse_angle(raw)
        if kind == "float":
            value = float(raw)
            if not math.isfinite(value):
                raise ValueError
            return value
        if kind == "int":
            return int(raw) if not isinstance(raw, str) else int(raw, 10)
        if kind == "bool":
            return raw is True or str(raw).strip().lower() in {"1", "true", "yes", "on"}
        return str(raw)
    except (TypeError, ValueError):
        flag = "--in" if name == "input" else "--" + name.replace("_", "-")
        raise UsageError(f"invalid value for {flag}: {raw!r}") from None


def _resolve(args) -> SimpleNamespace:
    fields = _COMMAND_FIELDS[args.command]
    config = _load_config(args.config) if args.config else {}
    known = {name for name, _, _ in fields}
    for key in config:
        if key not in known and not (key == "in" and "input" in known):
            raise UsageError(f"unknown config key {key!r}")
    if "in" in config:
        config.setdefault("input", config["in"])
    resolved = {}
    for name, kind, default in fields:
        raw = getattr(args, name)
        if raw is None and name in config:
            raw = config[name]
        resolved[name] = default if raw is None else _convert(name, kind, raw)
    return SimpleNamespace(**resolved)


def _initial_condition(cfg) -> InitialState:
    if cfg.k is not None:
        return TwoPointState(cfg.k, cfg.theta, cfg.gamma).initial_state()
    return InitialState.point(cfg.x0)


def _build_evolve(cfg):
    if cfg.t is None:
        raise UsageError("evolve needs --t")
    init = _initial_condition(cfg)
    if cfg.engine == "analytic":
        sv = evolve_analytic(cfg.alpha, init, cfg.t, cfg.buffer)
    elif cfg.engine == "spectral":
        line = PhasedLine(cfg.alpha, *window_for(cfg.t, init.positions, cfg.buffer))
        sv = evolve_spectral(line, init, cfg.t)
    else:
        raise UsageError("--engine must be analytic or spectral")
    xs = sv.positions()
    probs = sv.probabilities()
    rows = [(str(int(x)), amp.real, amp.imag, p)
            for x, amp, p in zip(xs, sv.amplitudes, probs)]
    fig = lambda: plotting.distribution_figure(xs, probs, title=f"t = {cfg.t:g}")
    return ("x", "re_psi", "im_psi", "prob"), rows, fig


def _build_survival(cfg):
    k = cfg.k if cfg.k is not None else 1
    state = TwoPointState(k, cfg.theta, cfg.gamma)
    k0 = cfg.k0 if cfg.k0 is not None else -k
    k1 = cfg.k1 if cfg.k1 is not None else k
    if not 0.0 < cfg.t_min < cfg.t_max:
        raise UsageError("survival needs 0 < --t-min < --t-max")
    if cfg.samples < 2:
        raise UsageError("--samples must be at least 2")
    times = np.geomspace(cfg.t_min, cfg.t_max, cfg.samples)
    series = survival_series(state, cfg.alpha, (k0, k1), times)
    rows = list(zip(series.times.tolist(), series.values.tolist()))
    fig = lambda: plotting.survival_figure(series.times, series.values)
    return ("t", "P"), rows, fig


def _read_survival_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or [c.strip() for c in lines[0].split(",")[:2]] != ["t", "P"]:
        raise UsageError(f"{path} is not a survival CSV (expected header t,P)")
    times, values = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        try:
            times.append(float(parts[0]))
            values.append(float(parts[1]))
        except (IndexError, ValueError):
            raise UsageError(f"{path}:{lineno}: malformed row {line!r}") from None
    return np.asarray(times), np.asarray(values)


def _build_fit(cfg):
    if not cfg.input:
        raise UsageError("fit needs --in SURVIVAL_CSV")
    times, values = _read_survival_csv(cfg.input)
    series = SurvivalSeries(position_range=(0, 0), times=times, values=values)
    fit = fit_decay(series, cfg.t_min, cfg.t_max)
    rows = [(fit.exponent, fit.r_squared, fit.fit_window[0], fit.fit_window[1])]
    return ("exponent", "r_squared", "t_min", "t_max"), rows, None


def _build_moments(cfg):
    init = _initial_condition(cfg)
    if not 0.0 <= cfg.t_min < cfg.t_max:
        raise UsageError("moments needs 0 <= --t-min < --t-max")
    if cfg.samples < 2:
        raise UsageError("--samples must be at least 2")
    times = np.linspace(cfg.t_min, cfg.t_max, cfg.samples)
    rows = []
    sigmas = []
    for t in times:
        dist = distribution_of(evolve_analytic(cfg.alpha, init, float(t), cfg.buffer))
        sigma = std_deviation(dist)
        rows.append((float(t), mean_position(dist), second_moment(dist), sigma))
        sigmas.append(sigma)
    fig = lambda: plotting.moments_figure(times, np.asarray(sigmas))
    return ("t", "mean", "second_moment", "sigma"), rows, fig


def _build_sweep_alpha(cfg):
    k = cfg.k if cfg.k is not None else 1
    state = TwoPointState(k, cfg.theta, cfg.gamma)
    if cfg.alpha_count < 1:
        raise UsageError("--alpha-count must be positive")
    if not 0.0 < cfg.t_min < cfg.t_max:
        raise UsageError("sweep-alpha needs 0 < --t-min < --t-max")
    # sample densely past both fit edges so the smoothing windows stay full
    times = np.geomspace(0.8 * cfg.t_min, 1.1 * cfg.t_max, cfg.samples)
    rows = []
    for j in range(cfg.alpha_count):
        alpha = j * math.pi / cfg.alpha_count
        series = survival_series(state, alpha, (-k, k), times)
        fit = fit_decay(series, cfg.t_min, cfg.t_max)
        rows.append((alpha, interference_factor(alpha, k, cfg.gamma), fit.exponent))
    fig = lambda: plotting.sweep_figure([r[0] for r in rows], [r[2] for r in rows])
    return ("alpha", "interference", "fitted_exponent"), rows, fig


_TABLE_BUILDERS = {
    "evolve": _build_evolve,
    "survival": _build_survival,
    "fit": _build_fit,
    "moments": _build_moments,
    "sweep-alpha": _build_sweep_alpha,
}


def _write_text(text: str, out: str | None) -> None:
    if out:
        try:
            with open(out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.write(text)


def _dispatch(args) -> int:
    cfg = _resolve(args)
    if args.command == "validate":
        report = run_validation(buffer=cfg.buffer)
        _write_text("\n".join(report.lines()) + "\n", cfg.out)
        return 0 if report.passed else 2
    header, rows, figure = _TABLE_BUILDERS[args.command](cfg)
    _write_text(render_csv(header, rows), cfg.out)
    if getattr(cfg, "svg", False):
        if not cfg.out:
            raise UsageError("--svg needs --out to derive the figure path")
        plotting.save_svg(figure(), str(Path(cfg.out).with_suffix(".svg")))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required "
                             "(evolve, survival, fit, moments, sweep-alpha, validate)")
        return _dispatch(args)
    except UsageError as exc:
        print(f"dirwalk: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # domain errors raised by the library are configuration mistakes here
        print(f"dirwalk: error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())

"""Command-line driver.

Exit status: 0 on success, 2 for an invalid configuration, 3 for a numerical
failure, 1 for I/O errors.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from typing import Any, Sequence

from . import __version__
from ._accel import BACKEND
from .config import load_config
from .errors import BoundScrambleError, EmptySweepError, NotHermitianError, NumericalError
from .measures import measure
from .scrambler import Placement, ScrambleConfig, UpdateMode, otoc
from .states import DEFAULT_SPECS, JURKOWSKI_PRESETS, Family, StateSpec, build_state
from .sweep import (
    TimeGrid,
    atomic_write_text,
    csv_text,
    fmt_number,
    param_grid,
    read_csv,
    run_param_sweep,
    run_time_sweep,
)
from .svg import PlotOptions, render_svg, svg_text

log = logging.getLogger("boundscramble")

EXIT_OK, EXIT_IO, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

DEFAULT_PARAM_GRIDS = {
    Family.JURKOWSKI: (0.1, 5.0, 0.1),
    Family.HORODECKI1: (0.0, 1.0, 0.02),
    Family.HORODECKI2: (2.0, 5.0, 0.1),
}

DEFAULTS: dict[str, Any] = {
    "family": "bennett",
    "params": None,
    "preset": "b",
    "d": 0.6,
    "placement": "a",
    "mode": "conj",
    "hermitize_raw": True,
    "tmax": 10.0,
    "samples": 512,
    "t": 1.0,
    "at_t": 0.0,
    "workers": 1,
    "diagnostics": False,
}


class ConfigError(BoundScrambleError, ValueError):
    pass


def parse_params(text: str) -> dict[str, float]:
    """``"eps1=1,eps2=4"`` -> ``{"eps1": 1.0, "eps2": 4.0}``."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--params entry {item!r} is not key=value")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"--params value for {key.strip()!r} is not a number: {value!r}") from None
    return out


def _add_common(p: argparse.ArgumentParser, *, state=True, scramble=True) -> None:
    p.add_argument("--config", metavar="PATH", help="TOML config file; flags override it")
    if state:
        p.add_argument("--family", choices=[f.value for f in Family])
        p.add_argument("--params", metavar="k=v,...", help="state parameters, e.g. eps1=1,eps2=4,eps3=4 or alpha=3.7")
        p.add_argument("--preset", choices=sorted(JURKOWSKI_PRESETS), help="Jurkowski slice used with eps=<value>")
    if scramble:
        p.add_argument("--d", type=float, help="DM interaction strength in [0, 1]")
        p.add_argument("--placement", choices=[p_.value for p_ in Placement])
        p.add_argument("--mode", choices=[m.value for m in UpdateMode])
        p.add_argument("--hermitize", dest="hermitize_raw", action=argparse.BooleanOptionalAction, default=None,
                       help="raw mode: use the unit-trace Hermitian part of V rho")
    p.add_argument("--out", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boundscramble", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND})")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="print a state's density matrix as CSV (re, im per entry)")
    _add_common(p, scramble=False)

    p = sub.add_parser("measure", help="negativity, CCNR and class of a state")
    _add_common(p, scramble=False)

    p = sub.add_parser("otoc", help="one OTOC evaluation S(t)")
    _add_common(p)
    p.add_argument("--t", type=float, help="time (hbar = 1)")

    for name, helptext in (("sweep-time", "negativity/CCNR/OTOC over a time grid"),
                           ("sweep-param", "negativity/CCNR over a state parameter")):
        p = sub.add_parser(name, help=helptext)
        _add_common(p)
        p.add_argument("--svg", metavar="PATH")
        p.add_argument("--title")
        p.add_argument("--workers", type=int)
        p.add_argument("--diagnostics", action="store_true", default=None,
                       help="append ccnr_clipped and realignment columns")
        if name == "sweep-time":
            p.add_argument("--tmax", type=float)
            p.add_argument("--samples", type=int)
        else:
            p.add_argument("--start", type=float)
            p.add_argument("--stop", type=float)
            p.add_argument("--step", type=float)
            p.add_argument("--values", help="explicit comma-separated parameter values")
            p.add_argument("--at-t", dest="at_t", type=float, help="evolution time before measuring")

    p = sub.add_parser("render", help="plot a sweep CSV as SVG")
    p.add_argument("csv", metavar="CSV")
    p.add_argument("--svg", metavar="PATH", required=True)
    p.add_argument("--title", default="Negativity and CCNR")
    p.add_argument("--x-label", default="t/T")
    return parser


def resolve(args: argparse.Namespace) -> dict[str, Any]:
    settings = dict(DEFAULTS)
    if getattr(args, "config", None):
        settings.update(load_config(args.config, args.command))
    for key, value in vars(args).items():
        if key in ("config", "command", "verbose") or value is None:
            continue
        settings[key] = parse_params(value) if key == "params" else value
    return settings


def state_spec(s: dict[str, Any]) -> StateSpec:
    try:
        family = Family(s["family"])
    except ValueError:
        raise ConfigError(f"unknown family {s['family']!r}") from None
    params = s.get("params")
    if params is None:
        return DEFAULT_SPECS[family]
    params = {k: float(v) for k, v in params.items()}
    if family is Family.JURKOWSKI and "eps" in params:
        eps = params.pop("eps")
        if params:
            raise ConfigError("use either eps (with a preset) or eps1/eps2/eps3, not both")
        e1, e2, e3 = JURKOWSKI_PRESETS[s.get("preset") or "b"](eps)
        params = {"eps1": e1, "eps2": e2, "eps3": e3}
    return StateSpec.of(family, **params)


def scramble_config(s: dict[str, Any]) -> ScrambleConfig:
    try:
        return ScrambleConfig(
            D=float(s["d"]),
            placement=Placement(s["placement"]),
            update_mode=UpdateMode(s["mode"]),
            hermitize_raw=bool(s["hermitize_raw"]),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, BoundScrambleError):
            raise
        raise ConfigError(str(exc)) from exc


def _write_or_print(text: str, out) -> None:
    if out:
        atomic_write_text(out, text)
    else:
        sys.stdout.write(text)


def _cmd_state(s):
    rho = build_state(state_spec(s)).rho
    lines = []
    for row in rho:
        cells = []
        for z in row:
            cells += [fmt_number(z.real), fmt_number(z.imag)]
        lines.append(",".join(cells))
    _write_or_print("\n".join(lines) + "\n", s.get("out"))


def _cmd_measure(s):
    rec = measure(build_state(state_spec(s)), with_realignment=True)
    text = "negativity,ccnr,realignment,class\n"
    text += f"{fmt_number(rec.negativity)},{fmt_number(rec.ccnr)},{fmt_number(rec.realignment)},{rec.classification.value}\n"
    _write_or_print(text, s.get("out"))


def _cmd_otoc(s):
    spec = state_spec(s)
    cfg = scramble_config(s)
    t = float(s["t"])
    if not math.isfinite(t):
        raise ConfigError("--t must be finite")
    sample = otoc(build_state(spec), cfg, t)
    text = "t,s_otoc,m_re,m_im\n"
    text += f"{fmt_number(sample.t)},{fmt_number(sample.S)},{fmt_number(sample.M.real)},{fmt_number(sample.M.imag)}\n"
    _write_or_print(text, s.get("out"))


def _emit(records, s, default_title: str, x_label: str) -> None:
    if not records:
        raise EmptySweepError("sweep produced no records")
    table = csv_text(records, bool(s.get("diagnostics")))
    # render everything before touching the filesystem
    plot = svg_text(records, PlotOptions(title=s.get("title") or default_title, x_label=x_label)) if s.get("svg") else None
    _write_or_print(table, s.get("out"))
    if plot is not None:
        atomic_write_text(s["svg"], plot)


def _cmd_sweep_time(s):
    spec = state_spec(s)
    cfg = scramble_config(s)
    grid = TimeGrid(float(s["tmax"]), s["samples"])
    log.info("time sweep %s D=%g placement=%s on %d points", spec.label(), cfg.D, cfg.placement.value, grid.samples)
    records = run_time_sweep(spec, cfg, grid, workers=int(s["workers"]), diagnostics=bool(s.get("diagnostics")))
    _emit(records, s, f"{spec.label()}, D={cfg.D:g}", "t/T")


def _cmd_sweep_param(s):
    family = Family(s["family"])
    if family is Family.BENNETT:
        raise ConfigError("sweep-param needs a parameterised family (jurkowski, horodecki1, horodecki2)")
    cfg = scramble_config(s)
    if s.get("values"):
        vals = s["values"]
        if isinstance(vals, str):
            try:
                vals = [float(v) for v in vals.split(",") if v.strip()]
            except ValueError:
                raise ConfigError(f"--values must be numbers: {s['values']!r}") from None
        values = [float(v) for v in vals]
    else:
        start, stop, step = DEFAULT_PARAM_GRIDS[family]
        values = param_grid(float(s.get("start", start)), float(s.get("stop", stop)), float(s.get("step", step)))
    preset = s.get("preset") or "b"
    records = run_param_sweep(family, preset, values, float(s["at_t"]), cfg,
                              workers=int(s["workers"]), diagnostics=bool(s.get("diagnostics")))
    x_label = "alpha" if family is not Family.JURKOWSKI else "eps"
    _emit(records, s, f"{family.value} parameter sweep, t={float(s['at_t']):g}", x_label)


def _cmd_render(args):
    records = read_csv(args.csv)
    render_svg(records, args.svg, PlotOptions(title=args.title, x_label=args.x_label))


COMMANDS = {
    "state": _cmd_state,
    "measure": _cmd_measure,
    "otoc": _cmd_otoc,
    "sweep-time": _cmd_sweep_time,
    "sweep-param": _cmd_sweep_param,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    try:
        if args.command == "render":
            _cmd_render(args)
        else:
            COMMANDS[args.command](resolve(args))
    except (NumericalError, NotHermitianError) as exc:
        print(f"boundscramble: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (BoundScrambleError, ValueError, KeyError, TypeError) as exc:
        print(f"boundscramble: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"boundscramble: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line front end.

Exit status: 0 all checks passed, 1 a verification failed, 2 invalid input.
Settings resolve as command-line flag > config file > built-in default.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np
import yaml

from . import fields, lagrangian, quantization, relativity, verify
from .report import FORMATS, render

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2

GLOBAL_DEFAULTS = {"format": "table", "out": None, "hbar": 1.0, "c": 1.0, "dim": 20, "tol": None}
COMMAND_DEFAULTS = {
    "verify": {"grid": 8, "omega": 1.0, "seed": verify.VerifyConfig.seed},
    "compare": {"n": [1.0, 1.5, 2.0], "omega": 1.0, "volume": 1.0},
    "boost": {"n": 1.5, "v": 0.4, "t": 1.0, "x": 0.0, "y": 0.0, "z": 0.0},
    "interface": {"n1": 1.0, "n2": 4.0, "amplitude": 1.0, "omega": 1.0},
    "lagrangian": {"mass": 2.0, "n": 1.5, "xdot": 0.3},
}
KNOWN_KEYS = set(GLOBAL_DEFAULTS) | {k for d in COMMAND_DEFAULTS.values() for k in d} | {"config"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _global_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--format", choices=FORMATS, help="output format (default: table)")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--config", metavar="PATH", help="flat YAML file of option values")
    p.add_argument("--hbar", type=float, help="action scale (default 1)")
    p.add_argument("--c", type=float, help="vacuum light speed (default 1)")
    p.add_argument("--dim", type=int, help="Fock-space truncation (default 20)")
    p.add_argument("--tol", type=float, help="override every verification tolerance")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = _Parser(prog="dielquant", parents=[common], argument_default=argparse.SUPPRESS,
                     description="Checks for macroscopic field quantization in linear dielectrics.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("verify", parents=[common], argument_default=argparse.SUPPRESS,
                       help="run every invariant check")
    p.add_argument("--grid", type=int, help="quadrature points per box axis (default 8)")
    p.add_argument("--omega", type=float)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("compare", parents=[common], argument_default=argparse.SUPPRESS,
                       help="tabulate both schemes over refractive indices")
    p.add_argument("--n", type=float, nargs="+", help="indices; the first is the reference medium")
    p.add_argument("--omega", type=float)
    p.add_argument("--volume", type=float)

    p = sub.add_parser("boost", parents=[common], argument_default=argparse.SUPPRESS,
                       help="apply a material Lorentz boost to an event")
    for name in ("n", "v", "t", "x", "y", "z"):
        p.add_argument(f"--{name}", type=float)

    p = sub.add_parser("interface", parents=[common], argument_default=argparse.SUPPRESS,
                       help="refracted amplitude and flux balance at an interface")
    for name in ("n1", "n2", "amplitude", "omega"):
        p.add_argument(f"--{name}", type=float)

    p = sub.add_parser("lagrangian", parents=[common], argument_default=argparse.SUPPRESS,
                       help="canonical momentum of a free particle in a medium")
    for name in ("mass", "n", "xdot"):
        p.add_argument(f"--{name}", type=float)
    return parser


def _load_config(path) -> dict:
    try:
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must be a flat key: value mapping")
    data = {str(k).replace("-", "_"): v for k, v in data.items()}
    unknown = sorted(set(data) - KNOWN_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    return data


def _coerce(key, value, default):
    if value is None:
        return None
    try:
        if isinstance(default, list):
            items = value.split(",") if isinstance(value, str) else value
            return [float(v) for v in np.atleast_1d(items)]
        if isinstance(default, bool):
            return bool(value)
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float) or key == "tol":
            return float(value)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad value for {key}: {value!r}") from exc
    return value


def resolve_settings(args: argparse.Namespace) -> dict:
    command = args.command
    defaults = {**GLOBAL_DEFAULTS, **COMMAND_DEFAULTS[command]}
    given = vars(args)
    settings = dict(defaults)
    if given.get("config"):
        for key, value in _load_config(given["config"]).items():
            if key in defaults:
                settings[key] = value
    for key, value in given.items():
        if key in defaults:
            settings[key] = value
    settings = {k: _coerce(k, v, defaults[k]) for k, v in settings.items()}
    if settings["format"] not in FORMATS:
        raise UsageError(f"format must be one of {', '.join(FORMATS)}")
    if settings["tol"] is not None and not settings["tol"] > 0:
        raise UsageError("tolerance override must be positive")
    return settings


def cmd_verify(s):
    cfg = verify.VerifyConfig(dim=s["dim"], grid=s["grid"], hbar=s["hbar"], c=s["c"], omega=s["omega"], seed=s["seed"])
    checks = verify.run_checks(cfg, tolerance=s["tol"])
    rows = [[("module", ch.module), ("check", ch.name), ("residual", float(ch.residual)),
             ("tolerance", float(ch.tolerance)), ("status", ch.passed)] for ch in checks]
    return rows, all(ch.passed for ch in checks)


def cmd_compare(s):
    if not s["n"]:
        raise UsageError("compare needs at least one refractive index")
    reports = quantization.compare_schemes(s["n"], omega=s["omega"], V=s["volume"], hbar=s["hbar"], c=s["c"], dim=s["dim"])
    rows = [[("scheme", r.scheme), ("n", r.n), ("momentum_coeff", r.momentum_coeff), ("prefactor", r.prefactor),
             ("commutator_scale", r.commutator_scale), ("energy_ratio", r.energy_ratio),
             ("correspondence_residual", r.correspondence_residual)] for r in reports]
    return rows, True


def cmd_boost(s):
    n, c = s["n"], s["c"]
    boost = relativity.MaterialBoost(s["v"], n, c)
    primed = relativity.FourVector.from_time(s["t"], s["x"], s["y"], s["z"], n=n, c=c)
    event = relativity.boost_event(primed, boost)
    rows = [[("n", n), ("v", s["v"]), ("gamma", relativity.gamma(boost)),
             ("t_primed", s["t"]), ("x_primed", s["x"]), ("y_primed", s["y"]), ("z_primed", s["z"]),
             ("t", event.time(n, c)), ("x", event.x), ("y", event.y), ("z", event.z),
             ("interval_primed", relativity.interval_squared(primed)),
             ("interval", relativity.interval_squared(event))]]
    return rows, True


def cmd_interface(s):
    iface = fields.MediumInterface(s["n1"], s["n2"])
    A_t = fields.refracted_amplitude(s["amplitude"], iface)
    incident = fields.time_averaged_flux(fields.PlaneWave(s["amplitude"], s["omega"], n=iface.n1, c=s["c"]))
    transmitted = fields.time_averaged_flux(fields.PlaneWave(A_t, s["omega"], n=iface.n2, c=s["c"]))
    rows = [[("n1", iface.n1), ("n2", iface.n2), ("A_incident", s["amplitude"]), ("A_transmitted", A_t),
             ("flux_incident", incident), ("flux_transmitted", transmitted),
             ("flux_residual", fields.flux_continuity_residual(iface, s["amplitude"], s["omega"], s["c"]))]]
    return rows, True


def cmd_lagrangian(s):
    m, n, xdot = s["mass"], s["n"], s["xdot"]
    if not n >= 1.0:
        raise ValueError(f"refractive index must be >= 1, got {n}")
    L = lambda q, v, tau: 0.5 * m * float(v @ v)
    p = lagrangian.canonical_momentum(L, [0.0], [n * xdot], 0)
    rows = [[("mass", m), ("n", n), ("xdot", xdot), ("dx_dtau", n * xdot), ("p", p),
             ("m_n_xdot", float(relativity.three_momentum_nonrel(m, xdot, n)))]]
    return rows, True


COMMANDS = {"verify": cmd_verify, "compare": cmd_compare, "boost": cmd_boost,
            "interface": cmd_interface, "lagrangian": cmd_lagrangian}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        settings = resolve_settings(args)
        rows, ok = COMMANDS[args.command](settings)
    except (UsageError, ValueError) as exc:
        print(f"dielquant: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    params = {k: v for k, v in settings.items() if k not in ("out", "format")}
    text = render(rows, settings["format"], command=args.command, parameters=params)
    if settings["out"]:
        try:
            Path(settings["out"]).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"dielquant: error: cannot write {settings['out']}: {exc}", file=sys.stderr)
            return EXIT_INVALID
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    raise SystemExit(main())

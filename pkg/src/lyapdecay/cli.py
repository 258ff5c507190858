"""Command-line front end.

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure,
4 soundness violation.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import experiments as ex
from .errors import LyapDecayError, SoundnessViolation
from .io import MatrixFormatError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_SOUNDNESS = 0, 2, 3, 4

COMMANDS = {
    "solve": "custom",
    "nrange": "custom",
    "psa": "custom",
    "bounds": "custom",
    "fig1": "fig1",
    "fig2": "fig2",
    "sweep2x2": "two-by-two-sweep",
    "strip": "strip",
    "compare": "bounds-compare",
}

LIST_KEYS = {"n": int, "alpha": float, "eps": float, "shifts": complex, "strip": float, "format": str}
SCALAR_KEYS = {
    "strategy": str,
    "m": int,
    "grid": int,
    "out": str,
    "seed": int,
    "model": str,
    "A": str,
    "B": str,
    "t": float,
    "r": int,
    "cap_override": bool,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _split(text):
    return [s for s in text.replace(",", " ").split() if s]


def _convert(key, value):
    if key in LIST_KEYS:
        items = _split(value) if isinstance(value, str) else value
        return [LIST_KEYS[key](v.replace(" ", "") if isinstance(v, str) else v) for v in items]
    if key == "cap_override":
        if isinstance(value, bool):
            return value
        if value.strip().lower() in ("1", "true", "yes", "on"):
            return True
        if value.strip().lower() in ("0", "false", "no", "off"):
            return False
        raise ex.ConfigError(f"cap_override expects a boolean, got {value!r}")
    return SCALAR_KEYS[key](value)


def read_config(path):
    """``key = value`` lines; ``#`` starts a comment. Dashes in keys become underscores."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ex.ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in LIST_KEYS and key not in SCALAR_KEYS:
            raise ex.ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _convert(key, value)
        except ValueError as exc:
            raise ex.ConfigError(f"{path}:{lineno}: {exc}") from exc
    return out


def build_parser():
    p = _Parser(prog="lyapdecay", description="Lyapunov solution decay and bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", type=Path)
        s.add_argument("--n", nargs="+", type=int)
        s.add_argument("--alpha", nargs="+", type=float)
        s.add_argument("--eps", nargs="+", type=float)
        s.add_argument("--shifts", nargs="+", type=complex)
        s.add_argument("--strategy", choices=ex.STRATEGIES)
        s.add_argument("--m", type=int)
        s.add_argument("--grid", type=int)
        s.add_argument("--out")
        s.add_argument("--format", nargs="+", choices=ex.FORMATS)
        s.add_argument("--seed", type=int)
        s.add_argument("--cap-override", dest="cap_override", action="store_true", default=None)
        s.add_argument("--model", choices=ex.MODELS)
        s.add_argument("--A", dest="A")
        s.add_argument("--B", dest="B")
        s.add_argument("--t", type=float)
        s.add_argument("--r", type=int)
        s.add_argument("--strip", nargs=4, type=float, metavar=("NORM_A", "NORM_B", "S1", "SN"))
    return p


def make_config(args):
    settings = read_config(args.config) if args.config else {}
    for key in list(LIST_KEYS) + list(SCALAR_KEYS):
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    kw = {"experiment": COMMANDS[args.command]}
    rename = {"format": "formats", "A": "a_path", "B": "b_path"}
    for key, value in settings.items():
        if key in ("strip",):
            value = tuple(value)
        if key in ("A", "B"):
            value = Path(value)
        kw[rename.get(key, key)] = value
    if kw.get("a_path") is not None and "model" not in settings:
        kw["model"] = "file"
    return ex.ExperimentConfig(**kw)


def dispatch(command, config):
    if command == "fig1":
        return ex.run_fig1(config)
    if command == "fig2":
        return ex.run_fig2(config)
    if command == "sweep2x2":
        return ex.run_two_by_two_sweep(config)
    if command == "strip":
        return ex.run_strip(config)
    mp = ex.build_problem(config)
    if command == "compare":
        return ex.run_bounds_compare(mp, config)
    return {"solve": ex.run_solve, "nrange": ex.run_nrange, "psa": ex.run_psa, "bounds": ex.run_bounds}[
        command
    ](mp, config)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = make_config(args)
    except (ex.ConfigError, ValueError, OSError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        result = dispatch(args.command, config)
    except SoundnessViolation as exc:
        print(f"SOUNDNESS VIOLATION: {exc}", file=sys.stderr)
        return EXIT_SOUNDNESS
    except (MatrixFormatError, FileNotFoundError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except LyapDecayError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    for f in result.files:
        print(f)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

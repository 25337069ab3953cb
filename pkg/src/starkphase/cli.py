"""Command-line front end.

All inputs are dimensionless products with the pulse width T as the time
unit: ``--omega0`` is omega0*T, ``--delta`` is Delta*T, ``--gamma`` Gamma*T.

Exit codes: 0 success, 2 invalid input, 3 numerical failure of the oracle.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .approx import Method
from .dynamics import SystemSpec, Variant, propagate, transient_peak_excitation
from .errors import InvalidSpecError, NumericalError, StarkPhaseError, UnattainableError
from .pulse import PulseShape
from .sweep import FIGURES, Axis, SweepSpec, design_command, figure_preset, run_sweep

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3


def _parse_phase(text: str) -> float:
    # accepts plain numbers and expressions such as "pi/2" or "2*pi/3"
    try:
        return float(text)
    except ValueError:
        pass
    allowed = set("0123456789.+-*/() episqrt")
    if not set(text) <= allowed:
        raise argparse.ArgumentTypeError(f"cannot parse phase {text!r}")
    try:
        return float(eval(text, {"__builtins__": {}}, {"pi": math.pi, "sqrt": math.sqrt}))
    except Exception:
        raise argparse.ArgumentTypeError(f"cannot parse phase {text!r}") from None


def make_pulse(shape: str, omega0: float) -> PulseShape:
    if shape == "gaussian":
        return PulseShape.gaussian(omega0)
    if shape == "sech":
        return PulseShape.sech(omega0)
    if shape.startswith("file:"):
        p = PulseShape.from_csv(shape[5:])
        return p if omega0 is None else p.scaled(omega0)
    raise InvalidSpecError(f"unknown shape {shape!r}")


def make_system(args) -> SystemSpec:
    omega0 = args.omega0
    if omega0 is None and not args.shape.startswith("file:"):
        raise InvalidSpecError("--omega0 is required")
    pulse = make_pulse(args.shape, omega0)
    variant = Variant(args.system)
    if variant is Variant.TWO_STATE:
        delta = args.delta if args.delta is not None else args.delta2
        if delta is None:
            raise InvalidSpecError("--delta is required")
        return SystemSpec.two_state(pulse, delta, args.gamma)
    if args.delta2 is None or args.delta3 is None:
        raise InvalidSpecError("--delta2 and --delta3 are required for three-state systems")
    if args.gamma:
        raise InvalidSpecError("--gamma applies to two-state systems only")
    ctor = SystemSpec.ladder if variant is Variant.LADDER else SystemSpec.v
    return ctor(pulse, pulse, args.delta2, args.delta3)


def _add_system_flags(p):
    p.add_argument("--system", choices=[v.value for v in Variant], default="two_state")
    p.add_argument("--shape", default="gaussian", help="gaussian | sech | file:PATH")
    p.add_argument("--omega0", type=float, help="peak Rabi frequency times T")
    p.add_argument("--delta", type=float, help="detuning times T (two-state)")
    p.add_argument("--delta2", type=float)
    p.add_argument("--delta3", type=float)
    p.add_argument("--gamma", type=float, default=0.0, help="loss rate times T")


def _add_tol_flags(p):
    p.add_argument("--rel-tol", type=float, default=1e-10)
    p.add_argument("--abs-tol", type=float, default=1e-12)


def _add_out_flags(p):
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="starkphase", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase", help="all applicable phases at one parameter point")
    _add_system_flags(p)
    _add_tol_flags(p)
    p.add_argument("--method", action="append", default=None,
                   choices=[m.value for m in Method if m is not Method.NUMERIC])
    p.add_argument("--oracle", action="store_true", help="also propagate numerically")
    _add_out_flags(p)

    p = sub.add_parser("sweep", help="sweep one parameter")
    p.add_argument("--spec", help="JSON sweep description")
    _add_system_flags(p)
    _add_tol_flags(p)
    p.add_argument("--axis", choices=[a.value for a in Axis], default="detuning")
    p.add_argument("--grid", nargs=3, metavar=("START", "STOP", "NUM"))
    p.add_argument("--log", action="store_true", help="log-spaced grid")
    p.add_argument("--method", action="append", default=None,
                   choices=[m.value for m in Method if m is not Method.NUMERIC])
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    _add_out_flags(p)

    p = sub.add_parser("figure", help="run a figure preset")
    p.add_argument("name", choices=FIGURES + tuple(f.lower() for f in FIGURES))
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--no-oracle", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    _add_tol_flags(p)
    _add_out_flags(p)

    p = sub.add_parser("design", help="sech-pulse parameters for a target phase")
    p.add_argument("--target", type=_parse_phase, required=True, help="e.g. 1.5708 or pi/2")
    p.add_argument("--n", type=int, default=1, help="pulse area 2*n*pi (ladder: times sqrt 2)")
    p.add_argument("--system", choices=["two_state", "ladder"], default="two_state")
    p.add_argument("--no-verify", action="store_true")
    _add_tol_flags(p)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("simulate", help="dump the propagated time series")
    _add_system_flags(p)
    _add_tol_flags(p)
    p.add_argument("--out", help="CSV output (default: stdout)")
    return ap


def _default_methods(variant):
    if variant is Variant.TWO_STATE:
        return [Method.AE, Method.AE2, Method.ADIABATIC, Method.SUPERADIABATIC]
    return [Method.AE3_LADDER if variant is Variant.LADDER else Method.AE3_V,
            Method.ADIABATIC, Method.ADIABATIC3]


def _emit(result, args):
    if args.format == "json":
        text = json.dumps(result.to_json(), indent=2, sort_keys=True) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        result.write_csv(args.out or sys.stdout)


def _sweep_from_json(path, args) -> SweepSpec:
    with open(path) as fh:
        d = json.load(fh)
    sysd = d.get("system", {})
    ns = argparse.Namespace(
        system=sysd.get("variant", "two_state"), shape=sysd.get("shape", "gaussian"),
        omega0=sysd.get("omega0"), delta=sysd.get("delta"), delta2=sysd.get("delta2"),
        delta3=sysd.get("delta3"), gamma=sysd.get("gamma", 0.0))
    grid = d["grid"]
    if isinstance(grid, dict):
        space = np.geomspace if grid.get("spacing") == "log" else np.linspace
        grid = space(grid["start"], grid["stop"], int(grid["num"]))
    system = make_system(ns)
    methods = d.get("methods") or [m.value for m in _default_methods(system.variant)]
    return SweepSpec(system, d.get("axis", "detuning"), grid, methods,
                     oracle=bool(d.get("oracle", True)), output_path=d.get("output"),
                     rel_tol=d.get("rel_tol", args.rel_tol), abs_tol=d.get("abs_tol", args.abs_tol),
                     notes=d.get("notes", ""))


def cmd_phase(args):
    system = make_system(args)
    x = system.detuning2
    methods = args.method or [m.value for m in _default_methods(system.variant)]
    if system.variant is Variant.TWO_STATE and system.loss_rate > 0 and "lossy" not in methods:
        methods = list(methods) + ["lossy"]
    spec = SweepSpec(system, Axis.DETUNING, [x], methods, oracle=args.oracle,
                     rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    result = run_sweep(spec)
    _emit(result, args)
    return EXIT_NUMERIC if result.oracle_failed else EXIT_OK


def cmd_sweep(args):
    if args.spec:
        spec = _sweep_from_json(args.spec, args)
    else:
        if not args.grid:
            raise InvalidSpecError("--grid START STOP NUM (or --spec FILE) is required")
        start, stop, num = float(args.grid[0]), float(args.grid[1]), int(args.grid[2])
        grid = (np.geomspace if args.log else np.linspace)(start, stop, num)
        system = make_system(args)
        methods = args.method or [m.value for m in _default_methods(system.variant)]
        spec = SweepSpec(system, args.axis, grid, methods, oracle=args.oracle,
                         output_path=args.out, rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    if spec.output_path and not args.out:
        args.out = spec.output_path
    result = run_sweep(spec, workers=args.workers)
    _emit(result, args)
    return EXIT_NUMERIC if result.oracle_failed else EXIT_OK


def cmd_figure(args):
    spec = figure_preset(args.name, points=args.points)
    if args.no_oracle or args.rel_tol != 1e-10 or args.abs_tol != 1e-12:
        spec = SweepSpec(spec.system, spec.axis, spec.grid, spec.methods,
                         oracle=not args.no_oracle, rel_tol=args.rel_tol, abs_tol=args.abs_tol,
                         notes=spec.notes)
    result = run_sweep(spec, workers=args.workers)
    _emit(result, args)
    return EXIT_NUMERIC if result.oracle_failed else EXIT_OK


def cmd_design(args):
    rep = design_command(args.target, args.n, args.system, verify=not args.no_verify,
                         rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    if args.format == "json":
        d = {k: (v.value if isinstance(v, Variant) else v) for k, v in vars(rep).items()}
        print(json.dumps(d, indent=2, sort_keys=True))
    else:
        print("\n".join(rep.lines()))
    return EXIT_OK


def cmd_simulate(args):
    res = propagate(make_system(args), rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    res.to_csv(args.out or sys.stdout)
    print(f"# phase1={res.phase1:.17g} norm_defect={res.norm_defect:.3g} "
          f"peak_excitation={transient_peak_excitation(res):.6g}", file=sys.stderr)
    return EXIT_OK


COMMANDS = {"phase": cmd_phase, "sweep": cmd_sweep, "figure": cmd_figure,
            "design": cmd_design, "simulate": cmd_simulate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InvalidSpecError, UnattainableError, StarkPhaseError, ValueError, OSError,
            KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

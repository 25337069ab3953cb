"""Parameter sweeps, figure presets and the pulse-design report.

A sweep evaluates a set of phase methods on a one-dimensional grid of
detuning, peak Rabi frequency or loss rate, optionally alongside the
numerical propagator.  Failures of a single method at a single grid point
are recorded as flagged cells; the sweep itself carries on.
"""
from __future__ import annotations

import csv
import enum
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .approx import (Method, phase_adiabatic, phase_adiabatic3, phase_ae, phase_ae2,
                     phase_ae3_ladder, phase_ae3_v, phase_and_population_lossy,
                     phase_superadiabatic)
from .dynamics import SystemSpec, Variant, propagate
from .errors import InvalidSpecError, NumericalError, StarkPhaseError
from .exact import (RZParameters, design_detuning, ladder_exact_phase, rz_phase,
                    v_exact_phase)
from .pulse import PulseKind, PulseShape

DEFAULT_POINTS = 200
TWO_PI = 2 * math.pi


class Axis(str, enum.Enum):
    DETUNING = "detuning"
    RABI = "rabi"
    LOSS = "loss"


_VALID = {
    Variant.TWO_STATE: {Method.AE, Method.AE2, Method.ADIABATIC, Method.SUPERADIABATIC,
                        Method.LOSSY, Method.EXACT_RZ},
    Variant.LADDER: {Method.AE3_LADDER, Method.ADIABATIC, Method.ADIABATIC3,
                     Method.EXACT_LADDER},
    Variant.V: {Method.AE3_V, Method.ADIABATIC, Method.ADIABATIC3, Method.EXACT_V},
}


@dataclass(frozen=True)
class SweepSpec:
    system: SystemSpec
    axis: Axis
    grid: tuple
    methods: tuple = ()
    oracle: bool = True
    output_path: str | None = None
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    notes: str = ""

    def __post_init__(self):
        object.__setattr__(self, "axis", Axis(self.axis))
        object.__setattr__(self, "grid", tuple(float(x) for x in self.grid))
        object.__setattr__(self, "methods", tuple(Method(m) for m in self.methods))
        g = np.asarray(self.grid)
        if g.size == 0:
            raise InvalidSpecError("sweep grid is empty")
        d = np.diff(g)
        if g.size > 1 and not (np.all(d > 0) or np.all(d < 0)):
            raise InvalidSpecError("sweep grid must be strictly monotone")
        if Method.NUMERIC in self.methods:
            raise InvalidSpecError("request the numerical reference with oracle=True")
        bad = set(self.methods) - _VALID[self.system.variant]
        if bad:
            names = ", ".join(sorted(m.value for m in bad))
            raise InvalidSpecError(f"methods not available for {self.system.variant.value}: {names}")
        if self.axis is Axis.LOSS and self.system.variant is not Variant.TWO_STATE:
            raise InvalidSpecError("the loss axis applies to two-state systems only")
        if self.axis is Axis.LOSS and np.any(g < 0):
            raise InvalidSpecError("loss rates must be >= 0")

    def system_at(self, x: float) -> SystemSpec:
        """The template system with the swept parameter set to ``x``."""
        s = self.system
        if self.axis is Axis.DETUNING:
            if s.variant is Variant.TWO_STATE:
                return s.with_(detuning2=x)
            ratio = s.detuning3 / s.detuning2 if s.detuning2 else 1.0
            return s.with_(detuning2=x, detuning3=ratio * x)
        if self.axis is Axis.LOSS:
            return s.with_(loss_rate=x)
        if s.pulse_b is None:
            return s.with_(pulse_a=s.pulse_a.scaled(x))
        ratio = s.pulse_b.omega0 / s.pulse_a.omega0 if s.pulse_a.omega0 > 0 else 1.0
        return s.with_(pulse_a=s.pulse_a.scaled(x), pulse_b=s.pulse_b.scaled(ratio * x))


@dataclass
class SweepRow:
    axis: float
    phases: dict
    errors: dict
    populations: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list
    metadata: dict

    @property
    def oracle_failed(self) -> bool:
        return any(Method.NUMERIC.value in r.flags for r in self.rows)

    def column(self, method, kind="phase") -> np.ndarray:
        m = Method(method)
        src = {"phase": "phases", "error": "errors", "population": "populations"}[kind]
        return np.array([getattr(r, src).get(m, np.nan) for r in self.rows])

    def header(self) -> list:
        cols = ["axis"]
        if self.spec.oracle:
            cols.append("numeric_phase")
        for m in self.spec.methods:
            cols += [f"{m.value}_phase", f"{m.value}_abs_error"]
        if Method.LOSSY in self.spec.methods:
            cols += ["lossy_population1"] + (["numeric_population1"] if self.spec.oracle else [])
        return cols + ["flags"]

    def records(self) -> list:
        out = []
        for r in self.rows:
            rec = [r.axis]
            if self.spec.oracle:
                rec.append(r.phases.get(Method.NUMERIC, math.nan))
            for m in self.spec.methods:
                rec += [r.phases.get(m, math.nan), r.errors.get(m, math.nan)]
            if Method.LOSSY in self.spec.methods:
                rec.append(r.populations.get(Method.LOSSY, math.nan))
                if self.spec.oracle:
                    rec.append(r.populations.get(Method.NUMERIC, math.nan))
            rec.append(";".join(f"{k.value}:{v}" for k, v in sorted(r.flags.items())))
            out.append(rec)
        return out

    def write_csv(self, dest):
        """CSV with 17 significant digits; ``dest`` is a path or text stream."""
        if not hasattr(dest, "write"):
            with open(Path(dest), "w", newline="") as fh:
                return self.write_csv(fh)
        w = csv.writer(dest, lineterminator="\n")
        w.writerow(self.header())
        for rec in self.records():
            w.writerow([f"{x:.17g}" if isinstance(x, float) else x for x in rec])

    def to_json(self) -> dict:
        rows = [dict(zip(self.header(), rec)) for rec in self.records()]
        for row in rows:
            for k, v in row.items():
                if isinstance(v, float) and not math.isfinite(v):
                    row[k] = None
        return {"metadata": self.metadata, "rows": rows}

    def write_json(self, path):
        Path(path).write_text(json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n")


def _estimate(method: Method, s: SystemSpec):
    """(phase, population1) of one method for one system."""
    pa, d2 = s.pulse_a, s.detuning2
    if method is Method.AE:
        return phase_ae(pa, d2).phase, None
    if method is Method.AE2:
        return phase_ae2(pa, d2).phase, None
    if method is Method.ADIABATIC:
        return phase_adiabatic(pa, d2).phase, None
    if method is Method.SUPERADIABATIC:
        return phase_superadiabatic(pa, d2).phase, None
    if method is Method.LOSSY:
        est = phase_and_population_lossy(pa, d2, s.loss_rate)
        return est.phase, est.population1
    if method is Method.AE3_LADDER:
        return phase_ae3_ladder(pa, s.pulse_b, d2, s.detuning3).phase, None
    if method is Method.AE3_V:
        return phase_ae3_v(pa, s.pulse_b, d2, s.detuning3).phase, None
    if method is Method.ADIABATIC3:
        return phase_adiabatic3(s).phase, None
    T = pa.width
    if pa.kind is not PulseKind.SECH:
        raise InvalidSpecError("exact phases need sech pulses")
    if method is Method.EXACT_RZ:
        if s.loss_rate:
            raise InvalidSpecError("exact phase is lossless")
        return rz_phase(pa.omega0 * T, d2 * T), None
    if s.pulse_b.kind is not PulseKind.SECH:
        raise InvalidSpecError("exact phases need sech pulses")
    if method is Method.EXACT_LADDER:
        if not (math.isclose(s.pulse_b.omega0, pa.omega0) and math.isclose(s.detuning3, 2 * d2)):
            raise InvalidSpecError("exact ladder needs equal couplings and Delta3 = 2 Delta2")
        return ladder_exact_phase(pa.omega0 * T, d2 * T), None
    if method is Method.EXACT_V:
        if not math.isclose(s.detuning3, d2):
            raise InvalidSpecError("exact V needs Delta2 = Delta3")
        if pa.omega0 > 0:
            p = RZParameters(pa.omega0 * T, d2 * T, 1.0, s.pulse_b.omega0 / pa.omega0)
        else:
            p = RZParameters(s.pulse_b.omega0 * T, d2 * T, 0.0, 1.0)
        return v_exact_phase(p), None
    raise InvalidSpecError(f"unsupported method {method}")


def _evaluate_point(spec: SweepSpec, x: float) -> SweepRow:
    s = spec.system_at(x)
    row = SweepRow(x, {}, {})
    if spec.oracle:
        try:
            res = propagate(s, rel_tol=spec.rel_tol, abs_tol=spec.abs_tol)
            row.phases[Method.NUMERIC] = res.phase1
            row.populations[Method.NUMERIC] = float(res.populations[0])
        except (NumericalError, StarkPhaseError) as exc:
            row.flags[Method.NUMERIC] = type(exc).__name__
    for m in spec.methods:
        try:
            ph, pop = _estimate(m, s)
            row.phases[m] = float(ph)
            if pop is not None:
                row.populations[m] = float(pop)
        except (StarkPhaseError, ValueError, ArithmeticError) as exc:
            row.flags[m] = type(exc).__name__
    return row


def _evaluate_chunk(args):
    spec, xs = args
    return [_evaluate_point(spec, x) for x in xs]


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Evaluate every requested method at every grid point.

    The numerical phases are unwrapped along the grid; each approximate
    phase is moved to the 2*pi branch nearest the numerical value (or
    unwrapped along the grid when no oracle runs).
    """
    if workers > 1 and len(spec.grid) > 1:
        chunks = np.array_split(np.asarray(spec.grid), workers)
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_evaluate_chunk, [(spec, c.tolist()) for c in chunks if c.size])
        rows = [r for part in parts for r in part]
    else:
        rows = [_evaluate_point(spec, x) for x in spec.grid]

    if spec.oracle:
        _unwrap_rows(rows, Method.NUMERIC)
    for m in spec.methods:
        if spec.oracle:
            for r in rows:
                ref = r.phases.get(Method.NUMERIC)
                if m in r.phases and ref is not None:
                    r.phases[m] += TWO_PI * round((ref - r.phases[m]) / TWO_PI)
                    r.errors[m] = abs(r.phases[m] - ref)
        else:
            _unwrap_rows(rows, m)
    return SweepResult(spec, rows, _metadata(spec))


def _unwrap_rows(rows, method):
    idx = [i for i, r in enumerate(rows) if method in r.phases]
    if not idx:
        return
    vals = np.unwrap([rows[i].phases[method] for i in idx])
    # keep the first value on the branch it was computed on
    vals += rows[idx[0]].phases[method] - vals[0]
    for i, v in zip(idx, vals):
        rows[i].phases[method] = float(v)


def _pulse_dict(p: PulseShape | None):
    if p is None:
        return None
    d = {"kind": p.kind.value, "omega0": p.omega0, "width": p.width}
    if p.kind is PulseKind.TABULATED:
        d["samples"] = [list(s) for s in p.samples]
    return d


def _metadata(spec: SweepSpec) -> dict:
    s = spec.system
    return {
        "tool": "starkphase",
        "version": __version__,
        "system": {
            "variant": s.variant.value,
            "pulse_a": _pulse_dict(s.pulse_a),
            "pulse_b": _pulse_dict(s.pulse_b),
            "detuning2": s.detuning2,
            "detuning3": s.detuning3,
            "loss_rate": s.loss_rate,
        },
        "axis": spec.axis.value,
        "grid": list(spec.grid),
        "methods": [m.value for m in spec.methods],
        "oracle": spec.oracle,
        "rel_tol": spec.rel_tol,
        "abs_tol": spec.abs_tol,
        "notes": spec.notes,
    }


# -- presets ----------------------------------------------------------------

FIGURES = ("FIG2", "FIG3", "FIG4", "FIG5", "FIG6", "FIG7")
_TWO_STATE_METHODS = (Method.AE, Method.AE2, Method.ADIABATIC, Method.SUPERADIABATIC)


def figure_preset(name: str, points: int = DEFAULT_POINTS) -> SweepSpec:
    """Named standard sweep (``FIG2`` ... ``FIG7``).

    The grid range of each preset is recorded in the sweep notes.
    """
    name = name.upper()
    if name == "FIG2":
        return SweepSpec(SystemSpec.two_state(PulseShape.gaussian(8.0), 1.0), Axis.DETUNING,
                         np.linspace(1.0, 30.0, points), _TWO_STATE_METHODS,
                         notes="Gaussian, omega0*T = 8; detuning*T in [1, 30] (chosen range)")
    if name == "FIG3":
        return SweepSpec(SystemSpec.two_state(PulseShape.gaussian(1.0), 10.0), Axis.RABI,
                         np.linspace(0.0, 20.0, points), _TWO_STATE_METHODS,
                         notes="Gaussian, detuning*T = 10; omega0*T in [0, 20] (chosen range)")
    if name == "FIG4":
        return SweepSpec(SystemSpec.two_state(PulseShape.sech(8.0), 1.0), Axis.DETUNING,
                         np.linspace(1.0, 30.0, points), _TWO_STATE_METHODS + (Method.EXACT_RZ,),
                         notes="sech, omega0*T = 8; detuning*T in [1, 30] (chosen range)")
    if name == "FIG5":
        grid = np.concatenate([[0.0], np.geomspace(1e-3, 10.0, points - 1)])
        return SweepSpec(SystemSpec.two_state(PulseShape.gaussian(8.0), 20.0), Axis.LOSS,
                         grid, (Method.LOSSY,),
                         notes="Gaussian, omega0*T = 8, detuning*T = 20; "
                               "loss*T = 0 then log-spaced in [1e-3, 10]")
    if name in ("FIG6", "FIG7"):
        g = PulseShape.gaussian(1.0)
        if name == "FIG6":
            system, methods = SystemSpec.ladder(g, g, 10.0, 20.0), Method.AE3_LADDER
        else:
            system, methods = SystemSpec.v(g, g, 10.0, 20.0), Method.AE3_V
        return SweepSpec(system, Axis.RABI, np.linspace(0.0, 20.0, points),
                         (methods, Method.ADIABATIC, Method.ADIABATIC3),
                         notes="equal Gaussian pulses, Delta3 = 2 Delta2 = 20/T; "
                               "omega0*T in [0, 20] (chosen range)")
    raise InvalidSpecError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")


# -- design -----------------------------------------------------------------

@dataclass
class DesignReport:
    system: Variant
    target_phase: float
    n: int
    alpha: float
    delta: float
    area: float
    exact_phase: float
    numeric_phase: float | None = None
    phase_residual: float | None = None
    transition_probability: float | None = None

    def lines(self) -> list:
        out = [
            f"system            {self.system.value}",
            f"target phase      {self.target_phase:.12g} rad",
            f"pulse area        {self.area:.12g}  (omega0*T = {self.alpha:.12g})",
            f"detuning*T        {self.delta:.12g}",
            f"exact phase       {self.exact_phase:.12g}",
        ]
        if self.numeric_phase is not None:
            out += [
                f"numeric phase     {self.numeric_phase:.12g}",
                f"phase residual    {self.phase_residual:.3e}",
                f"excitation left   {self.transition_probability:.3e}",
            ]
        return out


def design_command(target_phase: float, n: int = 1, system="two_state", verify: bool = True,
                   rel_tol: float = 1e-10, abs_tol: float = 1e-12) -> DesignReport:
    """Find sech-pulse parameters producing ``target_phase`` with no excitation left.

    Two states: pulse area ``2*n*pi`` and the detuning from
    :func:`design_detuning`.  Ladder (equal couplings, Delta3 = 2 Delta2):
    area ``2*n*pi*sqrt(2)``; the ladder phase is twice the two-state one,
    so ``target_phase`` may range over (0, 2*n*pi].
    """
    variant = Variant(system)
    if variant is Variant.TWO_STATE:
        alpha = 2.0 * n
        delta = design_detuning(target_phase, n)
        exact = rz_phase(alpha, delta)
    elif variant is Variant.LADDER:
        alpha = 2.0 * n * math.sqrt(2.0)
        delta = design_detuning(0.5 * target_phase, n)
        exact = ladder_exact_phase(alpha, delta)
    else:
        raise InvalidSpecError("design is available for two_state and ladder systems")
    report = DesignReport(variant, target_phase, n, alpha, delta, math.pi * alpha, exact)
    if verify:
        p = PulseShape.sech(alpha)
        s = (SystemSpec.two_state(p, delta) if variant is Variant.TWO_STATE
             else SystemSpec.ladder(p, p, delta, 2 * delta))
        res = propagate(s, rel_tol=rel_tol, abs_tol=abs_tol)
        report.numeric_phase = res.phase1
        report.phase_residual = abs(math.remainder(res.phase1 - target_phase, 2 * math.pi))
        report.transition_probability = float(res.populations[1:].sum())
    return report


"""Time-dependent Hamiltonians and the numerical Schroedinger propagator.

Everything is written in the energy picture (hbar = 1): the detunings sit
on the diagonal and the couplings are real, so the amplitude of state 1 is
the same as in the interaction picture.  The propagator is the numerical
reference every approximate phase is checked against.
"""
from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from scipy.integrate import solve_ivp

from .errors import InvalidSpecError, StiffnessError, ToleranceError
from .pulse import DEFAULT_WINDOW_TOL, PulseShape

SAMPLES_PER_WIDTH = 200


class Variant(str, enum.Enum):
    TWO_STATE = "two_state"
    LADDER = "ladder"
    V = "v"


@dataclass(frozen=True)
class SystemSpec:
    """A driven two- or three-state system.

    ``pulse_a`` is Omega (two-state) or Omega12; ``pulse_b`` is Omega23 for
    the ladder and Omega13 for the V system.  ``detuning2`` is Delta or
    Delta2, ``detuning3`` is Delta3.  ``loss_rate`` (Gamma) empties state 2
    of a two-state system irreversibly.
    """

    variant: Variant
    pulse_a: PulseShape
    detuning2: float
    detuning3: float | None = None
    pulse_b: PulseShape | None = None
    loss_rate: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not self.loss_rate >= 0:
            raise InvalidSpecError(f"loss rate must be >= 0, got {self.loss_rate}")
        if self.variant is Variant.TWO_STATE:
            if self.pulse_b is not None or self.detuning3 is not None:
                raise InvalidSpecError("a two-state system takes one pulse and one detuning")
        else:
            if self.pulse_b is None or self.detuning3 is None:
                raise InvalidSpecError("three-state systems need pulse_b and detuning3")
            if self.loss_rate != 0:
                raise InvalidSpecError("loss is only modelled for the two-state system")
            if self.pulse_a.width != self.pulse_b.width:
                raise InvalidSpecError("both pulses must share the same width")

    @classmethod
    def two_state(cls, pulse, delta, gamma=0.0):
        return cls(Variant.TWO_STATE, pulse, float(delta), loss_rate=float(gamma))

    @classmethod
    def ladder(cls, pulse12, pulse23, delta2, delta3):
        return cls(Variant.LADDER, pulse12, float(delta2), float(delta3), pulse23)

    @classmethod
    def v(cls, pulse12, pulse13, delta2, delta3):
        return cls(Variant.V, pulse12, float(delta2), float(delta3), pulse13)

    @property
    def n_states(self) -> int:
        return 2 if self.variant is Variant.TWO_STATE else 3

    @property
    def width(self) -> float:
        return self.pulse_a.width

    def window(self, tol: float = DEFAULT_WINDOW_TOL) -> tuple[float, float]:
        """Integration interval; the union of the pulse windows."""
        ti, tf = self.pulse_a.support_window(tol)
        if self.pulse_b is not None:
            bi, bf = self.pulse_b.support_window(tol)
            ti, tf = min(ti, bi), max(tf, bf)
        return ti, tf

    def with_(self, **changes) -> "SystemSpec":
        return replace(self, **changes)


def hamiltonian(spec: SystemSpec, t: float) -> np.ndarray:
    """Energy-picture Hamiltonian matrix at time ``t`` (hbar = 1)."""
    oa = float(spec.pulse_a.value(t))
    if spec.variant is Variant.TWO_STATE:
        return np.array([[0.0, 0.5 * oa],
                         [0.5 * oa, spec.detuning2 - 0.5j * spec.loss_rate]], dtype=complex)
    ob = float(spec.pulse_b.value(t))
    h = np.zeros((3, 3), dtype=complex)
    h[1, 1] = spec.detuning2
    h[2, 2] = spec.detuning3
    h[0, 1] = h[1, 0] = 0.5 * oa
    if spec.variant is Variant.LADDER:
        h[1, 2] = h[2, 1] = 0.5 * ob
    else:
        h[0, 2] = h[2, 0] = 0.5 * ob
    return h


def _rhs(spec: SystemSpec):
    # -i H c without building the matrix on every call
    pa, pb = spec.pulse_a, spec.pulse_b
    d2 = spec.detuning2 - 0.5j * spec.loss_rate
    if spec.variant is Variant.TWO_STATE:
        def f(t, c):
            h = 0.5 * float(pa.value(t))
            return np.array([-1j * h * c[1], -1j * (h * c[0] + d2 * c[1])])
    elif spec.variant is Variant.LADDER:
        d3 = spec.detuning3

        def f(t, c):
            ha, hb = 0.5 * float(pa.value(t)), 0.5 * float(pb.value(t))
            return np.array([-1j * ha * c[1],
                             -1j * (ha * c[0] + d2 * c[1] + hb * c[2]),
                             -1j * (hb * c[1] + d3 * c[2])])
    else:
        d3 = spec.detuning3

        def f(t, c):
            ha, hb = 0.5 * float(pa.value(t)), 0.5 * float(pb.value(t))
            return np.array([-1j * (ha * c[1] + hb * c[2]),
                             -1j * (ha * c[0] + d2 * c[1]),
                             -1j * (hb * c[0] + d3 * c[2])])
    return f


@dataclass(frozen=True, eq=False)
class PropagationResult:
    """Outcome of :func:`propagate`.

    ``times``/``amplitudes`` hold the dense-output samples (rows are time
    points), ``phase_series`` the running time-unwrapped arg c1(t), and
    ``phase1`` its final value, so that ``c1(tf) = |c1| exp(i phase1)``.
    """

    spec: SystemSpec
    final_amplitudes: np.ndarray
    populations: np.ndarray
    phase1: float
    times: np.ndarray
    amplitudes: np.ndarray
    phase_series: np.ndarray
    norm_defect: float
    n_steps: int

    @property
    def time_series(self):
        return list(zip(self.times, self.amplitudes))

    def to_csv(self, dest):
        """Write t, Re/Im of each amplitude, populations and running phase.

        ``dest`` is a path or an open text stream.
        """
        n = self.amplitudes.shape[1]
        header = ["t"]
        for k in range(1, n + 1):
            header += [f"re_c{k}", f"im_c{k}"]
        header += [f"pop{k}" for k in range(1, n + 1)] + ["phase1"]
        pops = np.abs(self.amplitudes) ** 2
        if not hasattr(dest, "write"):
            with open(Path(dest), "w", newline="") as fh:
                return self.to_csv(fh)
        w = csv.writer(dest, lineterminator="\n")
        w.writerow(header)
        for t, c, p, ph in zip(self.times, self.amplitudes, pops, self.phase_series):
            row = [t]
            for ck in c:
                row += [ck.real, ck.imag]
            row += list(p) + [ph]
            w.writerow([f"{x:.17g}" for x in row])


def propagate(spec: SystemSpec, initial=None, rel_tol: float = 1e-10, abs_tol: float = 1e-12,
              window_tol: float = DEFAULT_WINDOW_TOL, sample_step: float | None = None
              ) -> PropagationResult:
    """Integrate ``i dc/dt = H(t) c`` across the pulse window.

    Uses the Dormand-Prince 5(4) pair with dense output.  The phase of
    state 1 is unwrapped on a dense grid of step ``sample_step``
    (default ``T/200``).
    """
    n = spec.n_states
    if initial is None:
        initial = np.eye(n, dtype=complex)[0]
    c0 = np.asarray(initial, dtype=complex)
    if c0.shape != (n,):
        raise InvalidSpecError(f"initial state must have length {n}")
    if abs(np.linalg.norm(c0) - 1.0) > 1e-12:
        raise InvalidSpecError("initial state must be normalised")
    if not (0 < rel_tol <= 1e-3 and 0 < abs_tol <= 1e-3):
        raise InvalidSpecError("tolerances must lie in (0, 1e-3]")

    ti, tf = spec.window(window_tol)
    sol = solve_ivp(_rhs(spec), (ti, tf), c0, method="RK45", rtol=rel_tol, atol=abs_tol,
                    dense_output=True)
    if sol.status != 0:
        raise StiffnessError(f"propagation failed at t={sol.t[-1]:.6g}: {sol.message}")
    steps = np.diff(sol.t)
    if steps.size > 1 and steps[:-1].min() < 1e-12 * spec.width:
        raise StiffnessError("step size collapsed below 1e-12 T")

    step = sample_step or spec.width / SAMPLES_PER_WIDTH
    m = max(2, int(math.ceil((tf - ti) / step)) + 1)
    times = np.linspace(ti, tf, m)
    amps = sol.sol(times).T
    amps[0], amps[-1] = c0, sol.y[:, -1]
    phase = np.unwrap(np.angle(amps[:, 0]))
    final = sol.y[:, -1].copy()
    pops = np.abs(final) ** 2
    defect = abs(1.0 - pops.sum())
    if spec.loss_rate == 0 and defect > 100 * rel_tol:
        raise ToleranceError(f"norm defect {defect:.3g} exceeds 100 x rel_tol")
    return PropagationResult(spec, final, pops, float(phase[-1]), times, amps, phase,
                             float(defect), int(sol.t.size - 1))


def propagator(spec: SystemSpec, **kwargs) -> np.ndarray:
    """Full propagator matrix U(tf, ti); column k evolves basis state k."""
    n = spec.n_states
    cols = [propagate(spec, np.eye(n, dtype=complex)[k], **kwargs).final_amplitudes
            for k in range(n)]
    return np.column_stack(cols)


def transient_peak_excitation(result: PropagationResult) -> float:
    """Largest population found outside state 1 during the pulse."""
    pops = np.abs(result.amplitudes) ** 2
    if result.spec.loss_rate == 0:
        return float(np.max(1.0 - pops[:, 0]))
    return float(np.max(pops[:, 1:].sum(axis=1)))

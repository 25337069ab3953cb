"""Approximate gate phases: adiabatic elimination, adiabatic, superadiabatic.

All single-field formulas are written for ``delta > 0`` and continued to
``delta < 0`` by odd symmetry (for negative detuning state 1 follows the
upper dressed state, which flips the sign of every phase).  At
``delta == 0`` the adiabatic-type phases take their ``delta -> 0+`` limit.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .dynamics import SystemSpec, Variant
from .errors import (BranchCrossError, DegenerateError, InvalidSpecError, ThresholdUndefined,
                     TwoPhotonPoleError, ZeroDetuningError)
from .pulse import DEFAULT_WINDOW_TOL, PulseKind, PulseShape
from .quadrature import integrate

QUAD_TOL = 1e-12
SQRT2 = math.sqrt(2.0)
SQRT_PI = math.sqrt(math.pi)


class Method(str, enum.Enum):
    AE = "ae"
    AE2 = "ae2"
    ADIABATIC = "adiabatic"
    SUPERADIABATIC = "superadiabatic"
    LOSSY = "lossy"
    AE3_LADDER = "ae3_ladder"
    AE3_V = "ae3_v"
    ADIABATIC3 = "adiabatic3"
    NUMERIC = "numeric"
    EXACT_RZ = "exact_rz"
    EXACT_LADDER = "exact_ladder"
    EXACT_V = "exact_v"


@dataclass(frozen=True)
class PhaseEstimate:
    method: Method
    phase: float
    population1: float = 1.0

    def __float__(self):
        return self.phase


@dataclass(frozen=True)
class AdiabaticDiagnostics:
    mixing_angle_peak: float
    nonadiabatic_ratio_peak: float
    peak_time: float
    threshold_detuning: float | None


def _window(*pulses, tol=DEFAULT_WINDOW_TOL):
    ws = [p.support_window(tol) for p in pulses]
    return min(w[0] for w in ws), max(w[1] for w in ws)


def _need_detuning(delta):
    if delta == 0:
        raise ZeroDetuningError("this formula diverges at zero detuning")


# -- two-state, adiabatic elimination -------------------------------------

def phase_ae(pulse: PulseShape, delta: float) -> PhaseEstimate:
    """Leading adiabatic-elimination phase, integral of Omega^2 / (4 delta)."""
    _need_detuning(delta)
    val = integrate(lambda t: pulse.value(t) ** 2, *_window(pulse), abs_tol=QUAD_TOL * abs(delta))
    return PhaseEstimate(Method.AE, val / (4.0 * delta))


def ae2_closed_form(pulse: PulseShape, delta: float) -> float | None:
    """Two-term elimination phase in closed form (Gaussian and sech only)."""
    o2, T = pulse.omega0 ** 2, pulse.width
    if pulse.kind is PulseKind.GAUSSIAN:
        return (o2 * T * SQRT_PI / (4 * SQRT2 * delta)
                - o2 * SQRT_PI * (o2 * T * T - 4 * SQRT2) / (32 * delta ** 3 * T))
    if pulse.kind is PulseKind.SECH:
        return o2 * T / (2 * delta) - o2 * (o2 * T * T - 2) / (12 * delta ** 3 * T)
    return None


def phase_ae2(pulse: PulseShape, delta: float, closed_form: bool = True) -> PhaseEstimate:
    """Elimination phase including the Omega^4 and Omega*Omega'' term."""
    _need_detuning(delta)
    val = ae2_closed_form(pulse, delta) if closed_form else None
    if val is None:
        def f(t):
            om = pulse.value(t)
            return (om * om / (4 * delta)
                    - (om ** 4 + 4 * om * pulse.second_deriv(t)) / (16 * delta ** 3))
        val = integrate(f, *_window(pulse), abs_tol=QUAD_TOL)
    return PhaseEstimate(Method.AE2, val)


# -- two-state, adiabatic basis -------------------------------------------

def _odd(delta, fn):
    sign = -1.0 if delta < 0 else 1.0
    return sign * fn(abs(delta))


def phase_adiabatic(pulse: PulseShape, delta: float) -> PhaseEstimate:
    """Phase from the lower dressed energy, (1/2) int [sqrt(Omega^2 + D^2) - D]."""
    def calc(d):
        def f(t):
            om = pulse.value(t)
            # sqrt(om^2 + d^2) - d without cancellation
            return 0.5 * om * om / (np.sqrt(om * om + d * d) + d)
        return integrate(f, *_window(pulse), abs_tol=QUAD_TOL)
    return PhaseEstimate(Method.ADIABATIC, _odd(delta, calc))


def phase_superadiabatic(pulse: PulseShape, delta: float) -> PhaseEstimate:
    """Adiabatic phase with the first superadiabatic (Omega') correction."""
    def calc(d):
        def f(t):
            om, dom = pulse.value(t), pulse.deriv(t)
            lam2 = om * om + d * d
            extra = om * om + dom * dom * d * d / (lam2 * lam2)
            return 0.5 * extra / (np.sqrt(d * d + extra) + d)
        return integrate(f, *_window(pulse), abs_tol=QUAD_TOL)
    return PhaseEstimate(Method.SUPERADIABATIC, _odd(delta, calc))


def phase_and_population_lossy(pulse: PulseShape, delta: float, gamma: float) -> PhaseEstimate:
    """Phase and final population of state 1 when state 2 decays at rate ``gamma``.

    The loss adds ``-int gamma^2 sin^2(2 theta) / (16 lambda)`` to the
    adiabatic phase and damps state 1 by ``exp(-int gamma sin^2 theta)``.
    """
    if gamma < 0:
        raise InvalidSpecError("loss rate must be >= 0")
    if gamma == 0:
        return PhaseEstimate(Method.LOSSY, phase_adiabatic(pulse, delta).phase, 1.0)
    _need_detuning(delta)
    d = abs(delta)
    lo, hi = _window(pulse)

    def dressed(t):
        om = pulse.value(t)
        lam = np.sqrt(om * om + d * d)
        return om, lam

    def f_phase(t):
        om, lam = dressed(t)
        sin2th2 = (om / lam) ** 2  # sin^2(2 theta), tan(2 theta) = om / d
        return 0.5 * om * om / (lam + d) - gamma ** 2 * sin2th2 / (16 * lam)

    def f_loss(t):
        om, lam = dressed(t)
        return gamma * 0.5 * (1.0 - d / lam)  # gamma sin^2 theta

    phase = integrate(f_phase, lo, hi, abs_tol=QUAD_TOL)
    pop = math.exp(-integrate(f_loss, lo, hi, abs_tol=QUAD_TOL))
    return PhaseEstimate(Method.LOSSY, math.copysign(phase, delta), pop)


def nonadiabatic_ratio(pulse: PulseShape, delta: float, t):
    """|d theta/dt| / lambda, the local adiabaticity measure."""
    om, dom = pulse.value(t), pulse.deriv(t)
    lam2 = om * om + delta * delta
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.abs(dom * delta) / (2.0 * lam2 ** 1.5)
    return np.where(lam2 > 0, r, 0.0)


def adiabatic_threshold(pulse: PulseShape) -> float | None:
    """Detuning scale above which evolution is adiabatic (None if tabulated)."""
    T = pulse.width
    if pulse.kind is PulseKind.SECH:
        return 1.0 / (3.0 * math.sqrt(6.0) * T)
    if pulse.kind is PulseKind.GAUSSIAN:
        a = pulse.omega0 * T
        if a <= 1.0:
            raise ThresholdUndefined(f"Gaussian threshold needs omega0*T > 1, got {a:g}")
        return 2.0 / (3.0 * math.sqrt(3.0) * T) * math.sqrt(math.log(a))
    return None


def adiabatic_diagnostics(pulse: PulseShape, delta: float, n_scan: int = 2001
                          ) -> AdiabaticDiagnostics:
    """Peak mixing angle, peak nonadiabatic ratio and the threshold detuning."""
    lo, hi = _window(pulse)
    ts = np.linspace(lo, hi, n_scan)
    r = nonadiabatic_ratio(pulse, delta, ts)
    i = int(np.argmax(r))
    t_pk, r_pk = float(ts[i]), float(r[i])
    if r_pk > 0:
        a, b = ts[max(i - 1, 0)], ts[min(i + 1, n_scan - 1)]
        res = minimize_scalar(lambda t: -float(nonadiabatic_ratio(pulse, delta, t)),
                              bounds=(a, b), method="bounded", options={"xatol": 1e-10})
        if -res.fun > r_pk:
            t_pk, r_pk = float(res.x), float(-res.fun)
    om_max = float(np.max(pulse.value(ts)))
    theta = math.pi / 4 if delta == 0 else 0.5 * math.atan(om_max / abs(delta))
    return AdiabaticDiagnostics(theta, r_pk, t_pk, adiabatic_threshold(pulse))


# -- three-state systems --------------------------------------------------

def _ladder_denominator(pulse23, delta2, delta3, t):
    return 4.0 * delta2 * delta3 - pulse23.value(t) ** 2


def _check_two_photon(pulse12, pulse23, delta2, delta3, n_scan=512):
    lo, hi = _window(pulse12, pulse23)
    ts = np.linspace(lo, hi, n_scan)
    den = _ladder_denominator(pulse23, delta2, delta3, ts)
    scale = 4.0 * abs(delta2 * delta3) + pulse23.omega0 ** 2
    sign_change = np.nonzero(np.sign(den[:-1]) != np.sign(den[1:]))[0]
    if sign_change.size or np.min(np.abs(den)) <= 1e-12 * scale:
        if sign_change.size:
            a, b = ts[sign_change[0]], ts[sign_change[0] + 1]
            for _ in range(60):
                m = 0.5 * (a + b)
                if np.sign(_ladder_denominator(pulse23, delta2, delta3, m)) == np.sign(
                        _ladder_denominator(pulse23, delta2, delta3, a)):
                    a = m
                else:
                    b = m
            where = f" at t = {0.5 * (a + b):.6g}"
        else:
            where = ""
        raise TwoPhotonPoleError("4*delta2*delta3 - Omega23^2 vanishes" + where)


def phase_ae3_ladder(pulse12: PulseShape, pulse23: PulseShape, delta2: float, delta3: float
                     ) -> PhaseEstimate:
    """Elimination phase of state 1 in a ladder 1-2-3."""
    _check_two_photon(pulse12, pulse23, delta2, delta3)

    def f(t):
        return delta3 * pulse12.value(t) ** 2 / _ladder_denominator(pulse23, delta2, delta3, t)
    return PhaseEstimate(Method.AE3_LADDER,
                         integrate(f, *_window(pulse12, pulse23), abs_tol=QUAD_TOL))


def ae3_ladder_expansion(pulse12, pulse23, delta2, delta3) -> tuple[float, float]:
    """The two leading terms of the ladder elimination phase for large 4*d2*d3."""
    _need_detuning(delta2)
    _need_detuning(delta3)
    lo, hi = _window(pulse12, pulse23)
    first = integrate(lambda t: pulse12.value(t) ** 2, lo, hi, abs_tol=QUAD_TOL) / (4 * delta2)
    second = integrate(lambda t: (pulse12.value(t) * pulse23.value(t)) ** 2, lo, hi,
                       abs_tol=QUAD_TOL) / (16 * delta2 ** 2 * delta3)
    return first, second


def phase_ae3_v(pulse12: PulseShape, pulse13: PulseShape, delta2: float, delta3: float
                ) -> PhaseEstimate:
    """Elimination phase of state 1 in a V system: the two arms add."""
    _need_detuning(delta2)
    _need_detuning(delta3)
    return PhaseEstimate(Method.AE3_V, phase_ae(pulse12, delta2).phase
                         + phase_ae(pulse13, delta3).phase)


def cubic_roots(a, b, c, check=True):
    """Real roots of eps^3 + a eps^2 + b eps + c (three real roots assumed).

    Trigonometric form; works elementwise on arrays and returns the roots
    sorted ascending along the last axis.
    """
    a, b, c = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (a, b, c)))
    p = np.sqrt(np.maximum(a * a - 3.0 * b, 0.0))
    scale = np.maximum(np.abs(a), np.sqrt(np.abs(b)))
    if check and np.any(p <= 1e-12 * scale):
        raise DegenerateError("quasienergies are triply degenerate")
    with np.errstate(divide="ignore", invalid="ignore"):
        cos_beta = (9 * a * b - 2 * a ** 3 - 27 * c) / (2 * p ** 3)
    beta = np.arccos(np.clip(cos_beta, -1.0, 1.0))
    roots = np.stack([
        -a / 3 - 2 * p / 3 * np.cos((beta - np.pi) / 3),
        -a / 3 - 2 * p / 3 * np.cos((beta + np.pi) / 3),
        -a / 3 + 2 * p / 3 * np.cos(beta / 3),
    ], axis=-1)
    return np.sort(roots, axis=-1)


def quasienergies_ladder(omega12, omega23, delta2, delta3):
    """Instantaneous eigenvalues of the ladder Hamiltonian, ascending."""
    o12, o23 = np.asarray(omega12, float), np.asarray(omega23, float)
    a = -(delta2 + delta3) + 0 * o12
    b = delta2 * delta3 - (o12 ** 2 + o23 ** 2) / 4
    c = delta3 * o12 ** 2 / 4
    return cubic_roots(a, b, c)


def quasienergies_v(omega12, omega13, delta2, delta3):
    """Instantaneous eigenvalues of the V Hamiltonian, ascending."""
    o12, o13 = np.asarray(omega12, float), np.asarray(omega13, float)
    a = -(delta2 + delta3) + 0 * o12
    b = delta2 * delta3 - (o12 ** 2 + o13 ** 2) / 4
    c = (delta3 * o12 ** 2 + delta2 * o13 ** 2) / 4
    return cubic_roots(a, b, c)


def _quasienergies(spec: SystemSpec, t):
    fn = quasienergies_ladder if spec.variant is Variant.LADDER else quasienergies_v
    return fn(spec.pulse_a.value(t), spec.pulse_b.value(t), spec.detuning2, spec.detuning3)


def tracked_branch(spec: SystemSpec, n_scan: int = 4001) -> int:
    """Index (in ascending order) of the quasienergy that starts at zero.

    Raises :class:`BranchCrossError` if that level comes within 1e-10 of a
    neighbour anywhere in the window.
    """
    if spec.variant is Variant.TWO_STATE:
        raise InvalidSpecError("three-state system required")
    lo, hi = spec.window()
    ts = np.linspace(lo, hi, n_scan)
    eps = _quasienergies(spec, ts)
    k = int(np.argmin(np.abs(eps[0])))
    scale = max(abs(spec.detuning2), abs(spec.detuning3),
                spec.pulse_a.omega0, spec.pulse_b.omega0)
    gaps = np.abs(np.delete(eps, k, axis=1) - eps[:, [k]])
    if np.min(gaps) < 1e-10 * scale:
        raise BranchCrossError("tracked quasienergy meets another level")
    return k


def phase_adiabatic3(spec: SystemSpec) -> PhaseEstimate:
    """Adiabatic phase of state 1 in a ladder or V system, -int eps(t) dt."""
    k = tracked_branch(spec)
    val = integrate(lambda t: -_quasienergies(spec, t)[:, k], *spec.window(), abs_tol=QUAD_TOL)
    return PhaseEstimate(Method.ADIABATIC3, val)


def phase_adiabatic3_asymptotic(spec: SystemSpec) -> float:
    """Large-Delta3 form of the ladder adiabatic phase (two terms)."""
    if spec.variant is not Variant.LADDER:
        raise InvalidSpecError("asymptotic form is derived for the ladder")
    d2, d3 = spec.detuning2, spec.detuning3
    _need_detuning(d3)

    def f(t):
        o12, o23 = spec.pulse_a.value(t), spec.pulse_b.value(t)
        root = np.sqrt(d2 * d2 + o12 * o12)
        eps_minus = (d2 - root) / 2
        return -eps_minus - eps_minus * o23 ** 2 / (4 * d3 * root)
    return integrate(f, *spec.window(), abs_tol=QUAD_TOL)

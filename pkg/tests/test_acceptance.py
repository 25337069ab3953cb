"""Acceptance gate: one pass/fail line per criterion.

Each check returns ``(ok, detail)`` and is timed against its runtime
budget.  Run ``python3 tests/test_acceptance.py`` for the bare report, or
``pytest tests/test_acceptance.py`` (the report is printed in the terminal
summary).
"""
import math
import time

import numpy as np
import pytest

from starkphase import (PulseShape, SystemSpec, ladder_exact_phase,
                        log_gamma, phase_adiabatic, phase_ae, phase_ae2, phase_ae3_ladder,
                        phase_and_population_lossy, phase_superadiabatic, propagate, propagator,
                        rz_asymptotic_phase, rz_phase)
from starkphase.approx import ae2_closed_form

REPORT = []


def wrapped(a, b):
    return abs(math.remainder(a - b, 2 * math.pi))


def criterion_1():
    table = [(1.0, math.pi / 2), (math.sqrt(3), math.pi / 3), (1 + math.sqrt(2), math.pi / 4),
             (2 + math.sqrt(3), math.pi / 6)]
    e_exact = e_num = p_max = 0.0
    for d, target in table:
        e_exact = max(e_exact, abs(rz_phase(2.0, d) - target))
        res = propagate(SystemSpec.two_state(PulseShape.sech(2.0), d))
        e_num = max(e_num, wrapped(res.phase1, target))
        p_max = max(p_max, float(res.populations[1]))
    ok = e_exact < 1e-10 and e_num < 1e-6 and p_max < 1e-8
    return ok, f"exact err {e_exact:.1e}, numeric err {e_num:.1e}, P2 {p_max:.1e}"


def criterion_2():
    alpha, delta = 2 * math.sqrt(2), 1.0
    exact = ladder_exact_phase(alpha, delta)
    p = PulseShape.sech(alpha)
    num = propagate(SystemSpec.ladder(p, p, delta, 2 * delta)).phase1
    e_target = abs(exact - math.pi / 2)
    e_oracle = wrapped(num, math.pi / 2)
    ok = e_target < 1e-10 and e_oracle < 1e-6
    return ok, (f"ladder_exact_phase(2*sqrt2, 1) = {exact:.12f} (target pi/2, err {e_target:.2e});"
                f" oracle {num:.12f}")


def criterion_3():
    diffs, errs = [], []
    for alpha in (0.5, 1.0, 2.0, 4.0):
        for delta in (3.0, 20.0, 100.0, -7.0):
            diffs.append(abs(phase_ae2(PulseShape.sech(alpha), delta).phase
                             - rz_asymptotic_phase(alpha, delta)))
    e = abs(phase_ae2(PulseShape.sech(2.0), 100.0).phase - rz_phase(2.0, 100.0))
    e2 = abs(rz_asymptotic_phase(2.0, 100.0) - rz_phase(2.0, 100.0))
    ok = max(diffs) < 1e-14 and e < 1e-4 and e2 < 1e-4
    return ok, f"AE2 vs series {max(diffs):.1e}; vs exact {e:.1e}"


def criterion_4(lo=13.0, hi=30.0, n=50):
    g = PulseShape.gaussian(8.0)
    worst = 0.0
    for d in np.linspace(lo, hi, n):
        ref = propagate(SystemSpec.two_state(g, d)).phase1
        worst = max(worst, abs(phase_superadiabatic(g, d).phase - ref))
    return worst < 1e-4, f"max SA error {worst:.2e} on {n} points, Delta*T in [{lo:g}, {hi:g}]"


def criterion_5():
    bad = []
    for name, pulse in (("gaussian", PulseShape.gaussian(8.0)), ("sech", PulseShape.sech(8.0))):
        for d in (40.0, 60.0, 80.0):
            ref = propagate(SystemSpec.two_state(pulse, d)).phase1
            e = [abs(f(pulse, d).phase - ref) for f in
                 (phase_superadiabatic, phase_adiabatic, phase_ae2, phase_ae)]
            if not (e[0] <= e[1] <= e[2] <= e[3]):
                bad.append(f"{name} {d:g}: SA {e[0]:.1e} AA {e[1]:.1e} AE2 {e[2]:.1e} "
                           f"AE {e[3]:.1e}")
    return not bad, "; ".join(bad) if bad else "SA <= AA <= AE2 <= AE everywhere"


def criterion_6():
    worst = 0.0
    for delta in (1.0, 2.0):
        p = PulseShape.sech(2.0)
        lad = propagate(SystemSpec.ladder(p, p, delta, 2 * delta))
        two = propagate(SystemSpec.two_state(PulseShape.sech(2.0 / math.sqrt(2)), delta))
        assert np.array_equal(lad.times, two.times)
        worst = max(worst, np.max(np.abs(lad.amplitudes[:, 0] - two.amplitudes[:, 0] ** 2)))
    return worst < 1e-7, f"max |c1_ladder - c1_2state^2| = {worst:.1e}"


def criterion_7():
    p = PulseShape.sech(2.0)
    s = SystemSpec.v(p, p, 1.5, 1.5)
    dark = np.array([0.0, 1.0, -1.0]) / math.sqrt(2)
    c0 = np.array([1.0, 0.5, -0.3], dtype=complex)
    c0 /= np.linalg.norm(c0)
    res = propagate(s, c0)
    pop = np.abs(res.amplitudes @ dark) ** 2
    drift = float(np.max(np.abs(pop - pop[0])))
    return drift < 1e-8, f"dark population {pop[0]:.4f}, drift {drift:.1e}"


def criterion_8():
    g = PulseShape.gaussian(8.0)
    ep = eph = 0.0
    for gamma in np.concatenate([[0.0], np.geomspace(1e-3, 10.0, 25)]):
        est = phase_and_population_lossy(g, 20.0, gamma)
        res = propagate(SystemSpec.two_state(g, 20.0, gamma))
        ep = max(ep, abs(est.population1 - res.populations[0]))
        eph = max(eph, abs(est.phase - res.phase1))
    base = phase_adiabatic(g, 20.0).phase
    gammas = np.geomspace(1e-3, 1e-2, 6)
    shift = [abs(phase_and_population_lossy(g, 20.0, x).phase - base) for x in gammas]
    slope = float(np.polyfit(np.log(gammas), np.log(shift), 1)[0])
    ok = ep < 2e-2 and eph < 5e-3 and abs(slope - 2.0) <= 0.1
    return ok, f"population err {ep:.1e}, phase err {eph:.1e}, small-loss exponent {slope:.3f}"


def criterion_9():
    msgs = []
    # unitarity
    g = PulseShape.gaussian(4.0)
    u_err = 0.0
    for sys_ in (SystemSpec.two_state(PulseShape.gaussian(6.0), 2.0),
                 SystemSpec.ladder(PulseShape.gaussian(5.0), PulseShape.gaussian(3.0), 2.0, 5.0),
                 SystemSpec.v(PulseShape.sech(5.0), PulseShape.sech(3.0), 2.0, -1.0)):
        u = propagator(sys_)
        u_err = max(u_err, np.max(np.abs(u.conj().T @ u - np.eye(sys_.n_states))))
    msgs.append(u_err < 1e-8)
    # gamma identities: recurrence and reflection
    rng = np.random.default_rng(1)
    zs = rng.uniform(-6, 6, 50) + 1j * rng.uniform(-6, 6, 50)
    rec = max(abs(np.exp(log_gamma(z + 1) - log_gamma(z) - np.log(z)) - 1) for z in zs)
    refl = max(abs(np.exp(log_gamma(z) + log_gamma(1 - z)) * np.sin(np.pi * z) / np.pi - 1)
               for z in zs)
    msgs.append(max(rec, refl) < 1e-10)
    # quadrature against closed forms
    q = 0.0
    for make in (PulseShape.gaussian, PulseShape.sech):
        for om, d in ((8.0, 20.0), (2.0, -3.0)):
            p = make(om)
            q = max(q, abs(ae2_closed_form(p, d) - phase_ae2(p, d, closed_form=False).phase))
    msgs.append(q < 1e-10)
    # odd symmetry in the detuning
    odd = 0.0
    for f in (phase_ae, phase_ae2, phase_adiabatic, phase_superadiabatic):
        for d in (0.5, 7.0):
            odd = max(odd, abs(f(g, d).phase + f(g, -d).phase))
    odd_num = abs(propagate(SystemSpec.two_state(g, 7.0)).phase1
                  + propagate(SystemSpec.two_state(g, -7.0)).phase1)
    msgs.append(odd < 1e-13 and odd_num < 1e-8)
    # AE3 ladder limits
    lim1 = abs(phase_ae3_ladder(g, PulseShape.gaussian(0.0), 4.0, 9.0).phase
               - phase_ae(g, 4.0).phase)
    lim2 = abs(phase_ae3_ladder(g, g, 4.0, 1e6).phase - phase_ae(g, 4.0).phase)
    msgs.append(lim1 < 1e-12 and lim2 < 1e-5)
    names = ["unitarity", "gamma", "quadrature", "odd", "ae3-limits"]
    detail = ", ".join(f"{n} {'ok' if m else 'FAIL'}" for n, m in zip(names, msgs))
    return all(msgs), (f"{detail} (unitarity {u_err:.0e}, gamma {max(rec, refl):.0e}, "
                       f"quad {q:.0e}, AE3 limits {lim1:.0e}/{lim2:.0e})")


CRITERIA = [
    (1, "exact design table", criterion_1, 5.0),
    (2, "ladder design pi/2", criterion_2, 5.0),
    (3, "AE2 equals Stirling series", criterion_3, 1.0),
    (4, "superadiabatic below 1e-4", criterion_4, 60.0),
    (5, "approximation ordering", criterion_5, 30.0),
    (6, "ladder factorization", criterion_6, 10.0),
    (7, "dark-state conservation", criterion_7, 10.0),
    (8, "loss model", criterion_8, 60.0),
    (9, "property suites", criterion_9, 60.0),
]


def run(number, fn, budget):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    ok_time = dt < budget
    passed = ok and ok_time
    line = (f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}  "
            f"[{dt:.2f} s / {budget:g} s]")
    REPORT.append(line)
    return passed, line


@pytest.mark.parametrize("number, name, fn, budget", CRITERIA,
                         ids=[f"c{c[0]}_{c[1].replace(' ', '_')}" for c in CRITERIA])
def test_criterion(number, name, fn, budget):
    passed, line = run(number, fn, budget)
    print(line)
    assert passed, line


if __name__ == "__main__":
    results = [run(n, fn, b) for n, _, fn, b in CRITERIA]
    for _, line in results:
        print(line)
    print(f"{sum(p for p, _ in results)}/{len(results)} criteria pass")

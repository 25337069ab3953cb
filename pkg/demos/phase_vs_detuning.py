"""How good are the approximate phases?

A Gaussian pulse of area ~ 8*sqrt(pi) is applied off resonance.  For a
range of detunings we compare the phase acquired by state 1 according to

* adiabatic elimination (first and second order in 1/Delta),
* the adiabatic (dressed-state) phase,
* the superadiabatic phase, which adds the first nonadiabatic correction,

against direct numerical integration of the Schroedinger equation.
"""
import numpy as np

from starkphase import Axis, Method, PulseShape, SweepSpec, SystemSpec, run_sweep

METHODS = [Method.AE, Method.AE2, Method.ADIABATIC, Method.SUPERADIABATIC]

system = SystemSpec.two_state(PulseShape.gaussian(8.0), 1.0)
spec = SweepSpec(system, Axis.DETUNING, np.linspace(2.0, 40.0, 20), METHODS)
result = run_sweep(spec)

print(f"{'Delta*T':>8} {'numeric':>10}" + "".join(f"{m.value:>16}" for m in METHODS))
for row in result.rows:
    errs = "".join(f"{row.errors.get(m, np.nan):16.2e}" for m in METHODS)
    print(f"{row.axis:8.2f} {row.phases[Method.NUMERIC]:10.5f}{errs}")

# Adiabatic elimination breaks down at small detuning, where the excited
# state is transiently populated.  The superadiabatic phase stays accurate
# down to Delta*T ~ 13 (error < 1e-4) and is the best estimate everywhere.
# At large detuning the second-order elimination overtakes the plain
# adiabatic phase: the latter misses a term of order Omega'^2 / Delta^3.

"""Phase gates with a leaky excited state, and with a third level.

Part 1: the excited state decays at rate Gamma.  The dressed-state picture
gives both the surviving population of state 1 and a loss-induced phase
shift, which grows as Gamma^2 for weak loss.

Part 2: a second field couples state 2 to a third level (ladder) or
state 1 to a third level (V).  The three-state adiabatic phase follows the
quasienergy branch that connects to state 1.
"""
import numpy as np

from starkphase import (PulseShape, SystemSpec, phase_adiabatic, phase_adiabatic3,
                        phase_ae3_ladder, phase_and_population_lossy, propagate)

g = PulseShape.gaussian(8.0)
print("loss:  Gamma*T   P1 (model, numeric)      phase (model, numeric)")
for gamma in (0.0, 0.1, 1.0, 3.0, 10.0):
    est = phase_and_population_lossy(g, 20.0, gamma)
    res = propagate(SystemSpec.two_state(g, 20.0, gamma))
    print(f"      {gamma:6.2f}   {est.population1:.5f} {res.populations[0]:.5f}"
          f"     {est.phase:.5f} {res.phase1:.5f}")

print("\nladder, Delta2*T = 10, Delta3*T = 20, equal Gaussian couplings")
print("  omega0*T   numeric   adiabatic3   AE3      two-state adiabatic")
for om in (2.0, 5.0, 10.0, 20.0):
    p = PulseShape.gaussian(om)
    s = SystemSpec.ladder(p, p, 10.0, 20.0)
    print(f"  {om:8.1f} {propagate(s).phase1:9.5f} {phase_adiabatic3(s).phase:11.5f}"
          f" {phase_ae3_ladder(p, p, 10.0, 20.0).phase:8.5f}"
          f" {phase_adiabatic(p, 10.0).phase:10.5f}")
# The upper level pushes state 2 down and enlarges the Stark shift of
# state 1; ignoring it (last column) underestimates the phase.

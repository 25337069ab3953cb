"""Designing exact phase gates with sech pulses.

For a sech pulse of area 2*n*pi the excitation returns exactly to zero at
every detuning, and the phase follows in closed form.  Choosing the
detuning therefore sets the gate phase without any leftover population.
"""
import math

from starkphase import PulseShape, SystemSpec, design_detuning, propagate, rz_phase

print("two states, pulse area 2*pi")
for label, target in [("pi/2", math.pi / 2), ("pi/3", math.pi / 3),
                      ("pi/4", math.pi / 4), ("pi/6", math.pi / 6)]:
    delta = design_detuning(target)
    res = propagate(SystemSpec.two_state(PulseShape.sech(2.0), delta))
    print(f"  target {label:5s}  Delta*T = {delta:.10f}  exact {rz_phase(2.0, delta):.10f}"
          f"  numeric {res.phase1:.10f}  left in state 2: {res.populations[1]:.1e}")

# Larger areas give more room: with area 4*pi the phase ranges over (0, 2*pi].
delta = design_detuning(3.0, n=2)
print(f"\narea 4*pi, target 3 rad -> Delta*T = {delta:.6f}, phase {rz_phase(4.0, delta):.10f}")

# A ladder with equal couplings and Delta3 = 2*Delta2 doubles the phase of a
# two-state system driven at 1/sqrt(2) of the coupling.  The area 2*pi*sqrt(2)
# keeps the excitation at zero; the detuning then follows from half the target.
alpha = 2 * math.sqrt(2)
for delta in (1.0, 1 + math.sqrt(2)):
    p = PulseShape.sech(alpha)
    res = propagate(SystemSpec.ladder(p, p, delta, 2 * delta))
    print(f"ladder, Delta2*T = {delta:.6f}: phase {res.phase1:.10f} "
          f"(= pi * {res.phase1 / math.pi:.6f})")

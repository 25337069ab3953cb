"""Phase shifts of off-resonant pulsed excitation in two- and three-state systems.

Numerical propagation (:mod:`.dynamics`), approximate phase formulas
(:mod:`.approx`), exact sech-pulse results (:mod:`.exact`) and batch sweeps
(:mod:`.sweep`).
"""
__version__ = "0.1.0"

from .approx import (AdiabaticDiagnostics, Method, PhaseEstimate, adiabatic_diagnostics,
                     ae3_ladder_expansion, phase_adiabatic, phase_adiabatic3,
                     phase_adiabatic3_asymptotic, phase_ae, phase_ae2, phase_ae3_ladder,
                     phase_ae3_v, phase_and_population_lossy, phase_superadiabatic,
                     quasienergies_ladder, quasienergies_v)
from .dynamics import (PropagationResult, SystemSpec, Variant, hamiltonian, propagate,
                       propagator, transient_peak_excitation)
from .errors import *  # noqa: F401,F403
from .exact import (RZParameters, design_detuning, ladder_asymptotic_phase, ladder_exact_phase,
                    rz_asymptotic_phase, rz_phase, rz_phase_zero_transition, v_asymptotic_phase,
                    v_exact_phase)
from .pulse import PulseKind, PulseShape
from .specfn import arg_gamma_ratio, log_gamma
from .sweep import Axis, SweepSpec, design_command, figure_preset, run_sweep

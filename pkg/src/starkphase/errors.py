"""Exception types raised by the phase calculators."""


class StarkPhaseError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpecError(StarkPhaseError, ValueError):
    """A system or sweep description violates its invariants."""


class PoleError(StarkPhaseError, ValueError):
    """A gamma-function argument sits on a pole (nonpositive integer)."""


class ZeroDetuningError(StarkPhaseError, ValueError):
    """The formula divides by the detuning and the detuning is zero."""


class ThresholdUndefined(StarkPhaseError, ValueError):
    """No closed-form adiabatic threshold exists for these parameters."""


class TwoPhotonPoleError(StarkPhaseError, ValueError):
    """The ladder elimination denominator 4*d2*d3 - Omega23**2 crosses zero."""


class DegenerateError(StarkPhaseError, ValueError):
    """Cubic quasienergies are (nearly) triply degenerate."""


class BranchCrossError(StarkPhaseError, RuntimeError):
    """The tracked quasienergy branch meets another one."""


class UnattainableError(StarkPhaseError, ValueError):
    """The requested target phase cannot be produced by the design family."""


class NumericalError(StarkPhaseError, RuntimeError):
    """Base class for failures of the numerical propagator."""


class StiffnessError(NumericalError):
    """The adaptive step size collapsed."""


class ToleranceError(NumericalError):
    """The norm defect of a lossless propagation exceeds its budget."""

"""Closed-form phases of the Rosen-Zener (sech) family and pulse design.

Parameters are dimensionless: ``alpha = omega0*T``, ``delta = Delta*T``.

* two states: the Rosen-Zener amplitude of state 1;
* ladder with equal sech couplings and ``Delta3 = 2*Delta2``: the state-1
  amplitude is the square of a two-state amplitude with coupling
  ``alpha/sqrt(2)``, so its phase doubles;
* V with proportional sech arms and ``Delta2 == Delta3``: the bright state
  forms a two-state Rosen-Zener problem with coupling ``kappa*alpha`` and
  state 1 carries that amplitude directly (no doubling; checked against
  direct propagation).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import UnattainableError, ZeroDetuningError
from .specfn import arg_gamma_ratio, reduce_angle

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class RZParameters:
    alpha: float
    delta: float
    kappa12: float = 1.0
    kappa13: float = 0.0

    def __post_init__(self):
        if not self.alpha >= 0:
            raise ValueError("alpha must be >= 0")

    @property
    def kappa(self) -> float:
        return math.hypot(self.kappa12, self.kappa13)


def rz_phase(alpha: float, delta: float) -> float:
    """Exact Rosen-Zener phase of state 1, reduced to (-pi, pi]."""
    if alpha == 0:
        return 0.0
    z = complex(0.5, 0.5 * delta)
    return arg_gamma_ratio([z, z], [z - 0.5 * alpha, z + 0.5 * alpha])


def rz_phase_zero_transition(n: int, delta: float) -> float:
    """Phase for pulse area 2*n*pi, where excitation vanishes exactly.

    Returned unreduced: ``n*pi - 2*sum_k arctan(delta/(2k-1))`` is
    continuous in ``delta``.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    k = np.arange(1, n + 1)
    return float(n * math.pi - 2.0 * np.sum(np.arctan(delta / (2 * k - 1))))


def design_detuning(target_phase: float, n: int = 1) -> float:
    """Detuning ``delta >= 0`` giving ``target_phase`` at pulse area ``2*n*pi``."""
    if not 0 < target_phase <= n * math.pi:
        raise UnattainableError(
            f"target {target_phase:g} outside (0, {n}*pi] for pulse area {2 * n}*pi")
    if target_phase == n * math.pi:
        return 0.0

    def g(d):
        return rz_phase_zero_transition(n, d) - target_phase
    hi = 1.0
    while g(hi) > 0:
        hi *= 2.0
    d = brentq(g, 0.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    return float(d)


def ladder_exact_phase(alpha: float, delta: float) -> float:
    """Exact ladder phase (equal sech couplings, Delta3 = 2 Delta2), in (-pi, pi]."""
    return reduce_angle(2.0 * rz_phase(alpha / SQRT2, delta))


def v_exact_phase(p: RZParameters) -> float:
    """Exact V-system phase for proportional sech arms and equal detunings."""
    return rz_phase(p.kappa * p.alpha, p.delta)


def rz_asymptotic_phase(alpha: float, delta: float) -> float:
    if delta == 0:
        raise ZeroDetuningError("asymptotic series needs |delta| >> 1")
    a2 = alpha * alpha
    return a2 / (2 * delta) - a2 * (a2 - 2) / (12 * delta ** 3)


def ladder_asymptotic_phase(alpha: float, delta: float) -> float:
    if delta == 0:
        raise ZeroDetuningError("asymptotic series needs |delta| >> 1")
    a2 = alpha * alpha
    return a2 / (2 * delta) - a2 * (a2 - 4) / (24 * delta ** 3)


def v_asymptotic_phase(p: RZParameters) -> float:
    return rz_asymptotic_phase(p.kappa * p.alpha, p.delta)


def unwrap_sweep(phases, anchor: float = 0.0) -> np.ndarray:
    """Make a sequence of phases continuous, starting on the branch nearest ``anchor``.

    For exact formulas swept from small pulse areas the natural anchor is
    0, the no-pulse limit.
    """
    ph = np.unwrap(np.asarray(phases, dtype=float))
    if ph.size:
        ph += 2 * math.pi * round((anchor - ph[0]) / (2 * math.pi))
    return ph

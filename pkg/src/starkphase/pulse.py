"""Pulse envelopes with analytic derivatives.

A pulse is ``Omega(t) = omega0 * f(t / width)``.  Times are in units of the
pulse width ``T`` and Rabi frequencies in units of ``1/T`` unless the caller
chooses otherwise; nothing here assumes ``T = 1``.
"""
from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import InvalidSpecError

DEFAULT_WINDOW_TOL = 1e-12


class PulseKind(str, enum.Enum):
    GAUSSIAN = "gaussian"
    SECH = "sech"
    TABULATED = "tabulated"


@dataclass(frozen=True, eq=False)
class PulseShape:
    """Immutable pulse envelope.

    Use the :meth:`gaussian`, :meth:`sech`, :meth:`tabulated` and
    :meth:`from_csv` constructors rather than calling this directly.

    For TABULATED pulses ``omega0`` is the largest sample and ``width`` only
    sets the time unit; the samples are used as given (absolute times and
    Rabi frequencies).  The natural cubic spline has derivative jumps at the
    sample endpoints, where the pulse is cut to zero.
    """

    kind: PulseKind
    omega0: float
    width: float = 1.0
    samples: tuple[tuple[float, float], ...] | None = None
    _spline: CubicSpline | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        kind = PulseKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if not (self.width > 0 and math.isfinite(self.width)):
            raise InvalidSpecError(f"pulse width must be positive, got {self.width}")
        if kind is PulseKind.TABULATED:
            if not self.samples or len(self.samples) < 2:
                raise InvalidSpecError("tabulated pulse needs at least two samples")
            t, om = np.asarray(self.samples, dtype=float).T
            if np.any(np.diff(t) <= 0):
                raise InvalidSpecError("tabulated sample times must be strictly increasing")
            if np.any(om < 0):
                raise InvalidSpecError("tabulated Rabi frequencies must be nonnegative")
            object.__setattr__(self, "omega0", float(om.max()))
            object.__setattr__(self, "_spline", CubicSpline(t, om, bc_type="natural"))
        elif not (self.omega0 >= 0 and math.isfinite(self.omega0)):
            raise InvalidSpecError(f"omega0 must be nonnegative, got {self.omega0}")

    # -- constructors -----------------------------------------------------
    @classmethod
    def gaussian(cls, omega0: float, width: float = 1.0) -> "PulseShape":
        return cls(PulseKind.GAUSSIAN, float(omega0), float(width))

    @classmethod
    def sech(cls, omega0: float, width: float = 1.0) -> "PulseShape":
        return cls(PulseKind.SECH, float(omega0), float(width))

    @classmethod
    def tabulated(cls, t, omega, width: float = 1.0) -> "PulseShape":
        samples = tuple(zip(map(float, t), map(float, omega)))
        return cls(PulseKind.TABULATED, 0.0, float(width), samples)

    @classmethod
    def from_csv(cls, path, width: float = 1.0) -> "PulseShape":
        """Load a two-column ``t, omega`` CSV file; a header row is optional.

        Columns are read in units of T and 1/T respectively.
        """
        rows = []
        with open(Path(path), newline="") as fh:
            for i, rec in enumerate(csv.reader(fh)):
                if not rec or not "".join(rec).strip():
                    continue
                try:
                    rows.append((float(rec[0]), float(rec[1])))
                except (ValueError, IndexError):
                    if i == 0:
                        continue  # header
                    raise InvalidSpecError(f"{path}: bad row {i + 1}: {rec!r}") from None
        return cls.tabulated(*zip(*rows), width=width) if rows else cls.tabulated([], [])

    def scaled(self, omega0: float) -> "PulseShape":
        """Same shape with a new peak Rabi frequency."""
        if self.kind is PulseKind.TABULATED:
            k = omega0 / self.omega0 if self.omega0 > 0 else 0.0
            t, om = np.asarray(self.samples).T
            return PulseShape.tabulated(t, om * k, self.width)
        return PulseShape(self.kind, float(omega0), self.width)

    # -- evaluation -------------------------------------------------------
    def value(self, t):
        """Rabi frequency Omega(t)."""
        t = np.asarray(t, dtype=float)
        x = t / self.width
        if self.kind is PulseKind.GAUSSIAN:
            out = self.omega0 * np.exp(-x * x)
        elif self.kind is PulseKind.SECH:
            out = self.omega0 / np.cosh(np.clip(x, -700, 700))
        else:
            out = self._tab(t, 0)
            out = np.maximum(out, 0.0)  # spline overshoot between samples
        return out[()] if out.ndim == 0 else out

    def deriv(self, t):
        """dOmega/dt."""
        t = np.asarray(t, dtype=float)
        x = t / self.width
        if self.kind is PulseKind.GAUSSIAN:
            out = -2.0 * x * self.omega0 * np.exp(-x * x) / self.width
        elif self.kind is PulseKind.SECH:
            xc = np.clip(x, -700, 700)
            out = -self.omega0 * np.tanh(xc) / np.cosh(xc) / self.width
        else:
            out = self._tab(t, 1)
        return out[()] if out.ndim == 0 else out

    def second_deriv(self, t):
        """d^2 Omega/dt^2."""
        t = np.asarray(t, dtype=float)
        x = t / self.width
        if self.kind is PulseKind.GAUSSIAN:
            out = self.omega0 * (4.0 * x * x - 2.0) * np.exp(-x * x) / self.width**2
        elif self.kind is PulseKind.SECH:
            xc = np.clip(x, -700, 700)
            s = 1.0 / np.cosh(xc)
            # sech'' = sech (tanh^2 - sech^2)
            out = self.omega0 * s * (np.tanh(xc) ** 2 - s * s) / self.width**2
        else:
            out = self._tab(t, 2)
        return out[()] if out.ndim == 0 else out

    def _tab(self, t, nu):
        t0, t1 = self.samples[0][0], self.samples[-1][0]
        inside = (t >= t0) & (t <= t1)
        return np.where(inside, self._spline(np.clip(t, t0, t1), nu), 0.0)

    def support_window(self, tol: float = DEFAULT_WINDOW_TOL) -> tuple[float, float]:
        """Symmetric interval outside which ``Omega/omega0 <= tol``."""
        if self.kind is PulseKind.TABULATED:
            return self.samples[0][0], self.samples[-1][0]
        if not 0 < tol < 1:
            raise ValueError(f"tol must lie in (0, 1), got {tol}")
        if self.kind is PulseKind.GAUSSIAN:
            half = self.width * math.sqrt(math.log(1.0 / tol))
        else:
            half = self.width * math.acosh(1.0 / tol)
        return -half, half

    def area(self, tol: float = DEFAULT_WINDOW_TOL) -> float:
        """Pulse area, integral of Omega over the support window."""
        from .quadrature import integrate

        return integrate(self.value, *self.support_window(tol))

    def __repr__(self):
        if self.kind is PulseKind.TABULATED:
            return f"PulseShape(TABULATED, {len(self.samples)} samples, omega0={self.omega0:g})"
        return f"PulseShape({self.kind.name}, omega0={self.omega0:g}, width={self.width:g})"

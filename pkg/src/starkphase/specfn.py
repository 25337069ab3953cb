"""Complex log-gamma (Lanczos) and phases of gamma-function ratios."""
from __future__ import annotations

import cmath
import math

from .errors import PoleError

_G = 7.0
_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
POLE_TOL = 1e-14


def _lanczos_log(z: complex) -> complex:
    # valid for Re z >= 1/2; every log below has its argument in the right half plane
    z = z - 1.0
    s = _COEF[0]
    for k, c in enumerate(_COEF[1:], start=1):
        s += c / (z + k)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(s)


def _log_sin_pi(z: complex) -> complex:
    """log sin(pi z) on the branch analytic in the closed upper half plane."""
    # sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}); |e^{2 pi i z}| <= 1 there
    w = cmath.exp(2j * math.pi * z)
    return -1j * math.pi * z + cmath.log(1.0 - w) + complex(-math.log(2.0), 0.5 * math.pi)


def log_gamma(z) -> complex:
    """Principal branch of ln Gamma(z) for complex ``z``.

    Matches the usual convention (continuous off the negative real axis,
    real on the positive real axis).  Raises :class:`PoleError` within
    ``POLE_TOL`` of a nonpositive integer.
    """
    z = complex(z)
    if z.real <= 0.5 and abs(z.imag) < POLE_TOL:
        n = round(z.real)
        if n <= 0 and abs(z.real - n) < POLE_TOL:
            raise PoleError(f"Gamma has a pole at z = {n}")
    if z.real >= 0.5:
        return _lanczos_log(z)
    if z.imag < 0:
        return log_gamma(z.conjugate()).conjugate()
    # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return _LOG_PI - _log_sin_pi(z) - _lanczos_log(1.0 - z)


def reduce_angle(x: float) -> float:
    """Representative of ``x`` modulo 2*pi in (-pi, pi]."""
    r = math.remainder(x, 2.0 * math.pi)
    return math.pi if r == -math.pi else r


def arg_gamma_ratio(numerators, denominators) -> float:
    """arg of prod Gamma(numerators) / prod Gamma(denominators), in (-pi, pi]."""
    s = sum(log_gamma(z).imag for z in numerators)
    s -= sum(log_gamma(z).imag for z in denominators)
    return reduce_angle(s)

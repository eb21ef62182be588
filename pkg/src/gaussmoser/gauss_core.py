# Copyright 2026 gaussmoser contributors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Gaussian tail function, its inverse and the isoperimetric profile.

Conventions: ``gauss_tail(t)`` is the upper tail mass of the standard
normal distribution, so it is decreasing with value 1/2 at 0. Every
function accepts scalars or numpy arrays and returns the same shape.
"""
import logging
import math
import os

import numpy as np
from pydantic import BaseModel, validator
from scipy import special

from gaussmoser.exceptions import DomainError
from gaussmoser.library.quadrature import adaptive, newton_bisect

LOGGER = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
SQRT_HALF_PI = math.sqrt(0.5 * math.pi)
# log(1e-300); below it tail masses are handled by their logarithm only.
LOG_TINY = -690.7755278982137
SWITCH = 8.0


def _wrap(result, scalar):
    return float(result) if scalar else result


def _finite(t, name="t"):
    array = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(array)):
        raise DomainError("%s must be finite, got %r" % (name, t))
    return array, array.ndim == 0


def gauss_density(t):
    """Standard normal density, evaluated through its logarithm."""
    array, scalar = _finite(t)
    return _wrap(np.exp(-0.5 * array * array - LOG_SQRT_2PI), scalar)


def mills_ratio(t):
    """Tail mass over density, Φ(t)/φ(t), for t ≥ 0 without underflow."""
    array, scalar = _finite(t)
    return _wrap(SQRT_HALF_PI * special.erfcx(array / SQRT2), scalar)


def gauss_tail(t):
    """Upper Gaussian tail mass Φ(t).

    Uses the scaled complementary error function for t ≥ 0 so that no
    intermediate quantity underflows before the result itself does
    (around t = 38). Past that, use :func:`log_gauss_tail`.

    :param t: Abscissa.
    :type t: float or :obj:`numpy.ndarray`
    :raises DomainError: For non-finite input.
    :return: Tail mass in (0, 1).
    :rtype: float or :obj:`numpy.ndarray`
    """
    array, scalar = _finite(t)
    positive = np.maximum(array, 0.0)
    upper = 0.5 * special.erfcx(positive / SQRT2) * np.exp(-0.5 * positive * positive)
    lower = special.ndtr(-array)
    return _wrap(np.where(array >= 0.0, upper, lower), scalar)


def tail_correction_series(t, terms=3):
    """Truncated asymptotic correction log(1 - 1/t² + 3/t⁴ - ...).

    :param t: Abscissa, large.
    :type t: float
    :param terms: Number of series terms, at least 1.
    :type terms: int
    :return: Logarithm of the truncated series.
    :rtype: float
    """
    inverse_square = 1.0 / (t * t)
    total = 0.0
    coefficient = 1.0
    for k in range(terms):
        total += coefficient * inverse_square**k
        coefficient *= -(2 * k + 1)
    return math.log(total)


def log_gauss_tail(t):
    """Natural logarithm of Φ(t), valid for arbitrarily large t.

    Below the switch point the logarithm of :func:`gauss_tail` is taken.
    Beyond it the value is assembled as
    -t²/2 - log t - log√(2π) + log(t·Φ(t)/φ(t)), where the last term is the
    full correction series evaluated through the scaled error function.
    Negative t use log1p of the complementary mass.

    :raises DomainError: For non-finite input.
    """
    array, scalar = _finite(t)
    big = np.maximum(array, SWITCH)
    asymptotic = (
        -0.5 * big * big
        - np.log(big)
        - LOG_SQRT_2PI
        + np.log(big * SQRT_HALF_PI * special.erfcx(big / SQRT2))
    )
    middle = np.clip(array, 0.0, SWITCH)
    direct = np.log(gauss_tail(middle))
    negative = np.log1p(-gauss_tail(np.maximum(-array, 0.0)))
    result = np.where(array > SWITCH, asymptotic, np.where(array >= 0.0, direct, negative))
    return _wrap(result, scalar)


def gauss_tail_inv_log(log_s):
    """Inverse of the tail given the logarithm of the mass.

    Masses down to 1e-300 go through :func:`gauss_tail_inv`. Smaller masses
    are solved in log form, -log Φ(t) = L, by a safeguarded Newton iteration
    bracketed between √(2L - 2 log 2L) and √(2L).

    :param log_s: Logarithm of the tail mass, negative.
    :type log_s: float or :obj:`numpy.ndarray`
    :raises DomainError: If log_s is not negative.
    :return: The abscissa t with log Φ(t) = log_s.
    :rtype: float or :obj:`numpy.ndarray`
    """
    array, scalar = _finite(log_s, "log_s")
    if np.any(array >= 0.0):
        raise DomainError("log_s must be negative, got %r" % (log_s,))
    moderate = np.maximum(array, LOG_TINY)
    result = -special.ndtri(np.exp(moderate))
    tiny = array < LOG_TINY
    if np.any(tiny):
        target = -array[tiny] if array.ndim else -array

        def excess(t):
            return -log_gauss_tail(t) - target, 1.0 / mills_ratio(t)

        lo = np.sqrt(2.0 * target - 2.0 * np.log(2.0 * target))
        hi = np.sqrt(2.0 * target)
        seed = np.sqrt(2.0 * target - np.log(2.0 * target) - math.log(2.0 * math.pi))
        roots = newton_bisect(excess, lo, hi, x0=seed)
        if array.ndim:
            result = np.array(result, dtype=float)
            result[tiny] = roots
        else:
            result = roots
    return _wrap(result, scalar)


def gauss_tail_inv(s):
    """Inverse Gaussian tail Φ⁻¹(s).

    :param s: Tail mass in (0, 1).
    :type s: float or :obj:`numpy.ndarray`
    :raises DomainError: If s is outside (0, 1).
    :return: Abscissa with Φ(t) = s.
    :rtype: float or :obj:`numpy.ndarray`
    """
    array, scalar = _finite(s, "s")
    if np.any((array <= 0.0) | (array >= 1.0)):
        raise DomainError("s must lie in (0, 1), got %r" % (s,))
    return _wrap(-special.ndtri(array), scalar)


def isoperimetric(s):
    """Gaussian isoperimetric profile I(s) = φ(Φ⁻¹(s)).

    The profile is symmetric about 1/2, so only min(s, 1 - s) is inverted.
    Deep in the tail it is evaluated as s / (Φ/φ)(t), which keeps the
    square of a large abscissa out of an exponential.

    :param s: Mass in [0, 1].
    :type s: float or :obj:`numpy.ndarray`
    :raises DomainError: If s is outside [0, 1].
    :return: I(s) >= 0, zero at both endpoints.
    :rtype: float or :obj:`numpy.ndarray`
    """
    array, scalar = _finite(s, "s")
    if np.any((array < 0.0) | (array > 1.0)):
        raise DomainError("s must lie in [0, 1], got %r" % (s,))
    mass = np.minimum(array, 1.0 - array)
    interior = mass > 0.0
    safe = np.where(interior, mass, 0.5)
    t = -special.ndtri(safe)
    direct = np.exp(-0.5 * t * t - LOG_SQRT_2PI)
    tail = safe / (SQRT_HALF_PI * special.erfcx(np.maximum(t, 0.0) / SQRT2))
    result = np.where(t > SWITCH, tail, direct)
    return _wrap(np.where(interior, result, 0.0), scalar)


class Quadrature(BaseModel):
    """Tolerances shared by every adaptive integral of a computation."""

    rel_tol: float = float(os.getenv("GAUSSMOSER_REL_TOL", "1e-6"))
    abs_tol: float = 1e-14
    max_depth: int = 200
    truncation: str = "tail-bound"
    order: int = 24

    class Config:  # pylint:disable=too-few-public-methods
        """Quadrature settings are immutable."""

        allow_mutation = False

    @validator("rel_tol", "abs_tol")
    def validate_tolerance(
        cls, value
    ):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Tolerances must be positive.

        :param value: Tolerance to validate.
        :type value: float
        :return: Same as value, if validated.
        :rtype: float
        """
        if not value > 0.0:
            raise ValueError("Tolerance must be positive, got %r" % value)
        return value

    @validator("max_depth", "order")
    def validate_depth(
        cls, value
    ):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Depth and order must be at least 1."""
        if value < 1:
            raise ValueError("Must be at least 1, got %r" % value)
        return value

    @validator("truncation")
    def validate_truncation(
        cls, value
    ):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Truncation is a strategy tag."""
        if value not in ("fixed-T", "tail-bound"):
            raise ValueError(
                "Unknown truncation %r, valid: %r" % (value, ("fixed-T", "tail-bound"))
            )
        return value

    def integrate(self, func, lo, hi, points=(), rel_tol=None):
        """Adaptive integral of a scalar function with these tolerances.

        :return: The integral.
        :rtype: float
        """
        value, error = adaptive(
            func,
            lo,
            hi,
            rel_tol=self.rel_tol if rel_tol is None else rel_tol,
            abs_tol=self.abs_tol,
            limit=self.max_depth,
            points=points,
        )
        LOGGER.debug("Integral over (%r, %r) = %r +- %r", lo, hi, value, error)
        return value


FINE = Quadrature(rel_tol=1e-12, abs_tol=1e-15)

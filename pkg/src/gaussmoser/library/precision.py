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
"""Extended precision path for quantities that cancel in double precision.

Selected with GAUSSMOSER_PRECISION=extended; GAUSSMOSER_DPS sets the number
of decimal digits (at least 30). Every function runs inside
:func:`mpmath.workdps`, so the global mpmath context is left untouched.
"""
import logging
import os

import mpmath

from gaussmoser.exceptions import ConfigurationError

LOGGER = logging.getLogger(__name__)

MIN_DPS = 30


def extended():
    """True when the extended path is selected in the environment."""
    choice = os.getenv("GAUSSMOSER_PRECISION", "double").lower()
    if choice not in ("double", "extended"):
        raise ConfigurationError(
            "GAUSSMOSER_PRECISION is 'double' or 'extended', got %r" % choice
        )
    return choice == "extended"


def digits():
    """Decimal digits of the extended path.

    :raises ConfigurationError: If GAUSSMOSER_DPS is below 30.
    """
    value = int(os.getenv("GAUSSMOSER_DPS", "40"))
    if value < MIN_DPS:
        raise ConfigurationError("GAUSSMOSER_DPS must be at least %d, got %d" % (MIN_DPS, value))
    return value


def log_gauss_tail(t):
    """log Φ(t) as an mpf, for any real t."""
    t = mpmath.mpf(t)
    return mpmath.log(mpmath.erfc(t / mpmath.sqrt(2)) / 2)


def young_inverse_log(function, log_y):
    """B⁻¹(e^{log_y}) as an mpf; the exponential tail is evaluated in full precision."""
    tail = function.tail
    log_y = mpmath.mpf(log_y)
    if log_y < mpmath.log(function.tail_floor):
        return mpmath.mpf(float(function.inverse_log(float(log_y))))
    scaled = log_y - mpmath.log(tail.N)
    if tail.shift:
        scaled += mpmath.log1p(tail.N * mpmath.exp(-log_y))
    return max(scaled, mpmath.mpf(0)) ** (mpmath.mpf(1) / tail.beta)


def _subdivide(lo, hi, breakpoints):
    points = {mpmath.mpf(lo), mpmath.mpf(hi)}
    points.update(mpmath.mpf(b) for b in breakpoints if lo < b < hi)
    edge = 1.0
    while edge < hi:
        if edge > lo:
            points.add(mpmath.mpf(edge))
        edge *= 2.0
    return sorted(points)


def j_remainder(function, t, breakpoints=(), dps=None):
    """∫₀^t (B⁻¹(1/Φ(τ)) - (τ²/2)^{1/β})dτ with mpmath quadrature.

    :param function: Young function B.
    :type function: :obj:`gaussmoser.young.YoungFunction`
    :param t: Upper limit.
    :type t: float
    :param breakpoints: Kinks of τ ↦ B⁻¹(1/Φ(τ)).
    :type breakpoints: iterable
    :return: The remainder, rounded to a float.
    :rtype: float
    """
    with mpmath.workdps(dps or digits()):
        inverse_beta = mpmath.mpf(1) / function.beta

        def integrand(tau):
            level = young_inverse_log(function, -log_gauss_tail(tau))
            return level - (tau * tau / 2) ** inverse_beta

        value = mpmath.quad(integrand, _subdivide(0.0, float(t), breakpoints))
        LOGGER.debug("Extended J remainder at t=%r: %s", t, mpmath.nstr(value, 20))
        return float(value)


def power_remainder(sigma, lower, t, dps=None):
    """∫_lower^t (τ²-1)^σ dτ - t^{2σ+1}/(2σ+1) for σ > -1/2, in extended precision.

    The integrand is τ^{2σ}·expm1(σ·log1p(-1/τ²)), the difference
    (τ²-1)^σ - τ^{2σ} without cancellation.
    """
    with mpmath.workdps(dps or digits()):
        sigma = mpmath.mpf(sigma)
        order = 2 * sigma + 1

        def integrand(tau):
            return tau ** (2 * sigma) * mpmath.expm1(sigma * mpmath.log1p(-1 / (tau * tau)))

        value = mpmath.quad(integrand, _subdivide(lower, t, ()))
        return float(value - mpmath.mpf(lower) ** order / order)

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
"""Registry of the asymptotic expansions behind the reduction functionals.

Grids are geometric. Entries whose convergence is logarithmically slow use
grids reaching t = 1e12 or beyond and evaluate the cancelling part of the
target through a remainder computed without subtraction; with
GAUSSMOSER_PRECISION=extended the remainders come from mpmath instead.
"""
import logging
import math

import numpy as np

from gaussmoser.asympt.harness import AsymptoticExpansion
from gaussmoser.exceptions import ConfigurationError
from gaussmoser.gauss_core import FINE, LOG_SQRT_2PI, SQRT2, log_gauss_tail, mills_ratio
from gaussmoser.library import precision
from gaussmoser.moser.families import flattened_lambda, head_tail_lambda
from gaussmoser.moser.functionals import ReductionFunctional, kappa_beta, leading_term
from gaussmoser.norms import orlicz_norm_inf
from gaussmoser.rearrange import inverse_isoperimetric_tail
from gaussmoser.young import construct_flattened, plain_exp

LOGGER = logging.getLogger(__name__)

GAUSS_GRID = (5.0, 10.0, 20.0, 40.0)
SLOW_GRID = (1e6, 1e8, 1e10, 1e12)
SLOWER_GRID = (1e10, 1e12, 1e14, 1e16)
PARAMETER_GRID = (2.0, 4.0, 8.0, 16.0)
LOG_GRID = (1e2, 1e4, 1e6, 1e8)
PSI_LOWER = 2.0


def _power_integral(sigma, t, logarithmic=False, lower=PSI_LOWER):
    """∫_lower^t (τ²-1)^σ [log(τ²-1)] dτ in the variable v = log τ."""

    def integrand(v):
        log_base = 2.0 * v + math.log1p(-math.exp(-2.0 * v))
        value = math.exp(sigma * log_base + v)
        return value * log_base if logarithmic else value

    return FINE.integrate(integrand, math.log(lower), math.log(t))


def _power_remainder(sigma, t, lower=PSI_LOWER):
    """Ψ_σ(t) - t^{2σ+1}/(2σ+1) for σ > -1/2.

    The difference (τ²-1)^σ - τ^{2σ} = τ^{2σ}·expm1(σ·log1p(-1/τ²)) is
    integrated directly.
    """
    order = 2.0 * sigma + 1.0
    if precision.extended():
        return precision.power_remainder(sigma, lower, t)

    def integrand(v):
        return math.exp(order * v) * math.expm1(sigma * math.log1p(-math.exp(-2.0 * v)))

    return FINE.integrate(integrand, math.log(lower), math.log(t)) - lower**order / order


def power_integral(sigma, t, lower=PSI_LOWER):
    """Ψ_σ(t) = ∫_lower^t (τ²-1)^σ dτ."""
    if sigma > -0.5:
        order = 2.0 * sigma + 1.0
        return t**order / order + _power_remainder(sigma, t, lower)
    return _power_integral(sigma, t, lower=lower)


def log_power_integral(sigma, t, lower=PSI_LOWER):
    """Υ_σ(t) = ∫_lower^t (τ²-1)^σ·log(τ²-1) dτ."""
    return _power_integral(sigma, t, logarithmic=True, lower=lower)


def constant_term(function, start=2.0**20):
    """c(B) = ∫₀^∞ (B⁻¹(1/Φ(τ)) - (τ²/2)^{1/β})dτ for β > 2.

    :raises ConfigurationError: If β <= 2, where the integral diverges.
    """
    if function.beta <= 2.0:
        raise ConfigurationError("c(B) is finite for beta > 2 only, got %r" % function.beta)
    functional = ReductionFunctional("marcinkiewicz-m", function=function)
    head = functional.j_remainder(start)
    tail = FINE.integrate(
        lambda v: float(functional.j_remainder_density(np.asarray(math.exp(v)))) * math.exp(v),
        math.log(start),
        math.inf,
    )
    return head + tail


class _JRemainder:
    """t ↦ J(t) - g(t) from the tabulated or the extended path."""

    def __init__(self, function):
        self.function = function
        self.functional = ReductionFunctional("marcinkiewicz-m", function=function)
        self.cache = {}

    def __call__(self, t):
        if t not in self.cache:
            if precision.extended():
                self.cache[t] = precision.j_remainder(
                    self.function, t, self.functional.j_breakpoints
                )
            else:
                self.cache[t] = self.functional.j_remainder(t)
        return self.cache[t]


def _gauss_entries():
    yield AsymptoticExpansion(
        label="log-Phi",
        target=lambda t: -float(log_gauss_tail(t)),
        terms=(lambda t: 0.5 * t * t, math.log, lambda t: LOG_SQRT_2PI),
        grid=GAUSS_GRID,
    )
    yield AsymptoticExpansion(
        label="Phi-prime",
        target=lambda t: 1.0 / float(mills_ratio(t)),
        terms=(lambda t: t, lambda t: 1.0 / t),
        grid=GAUSS_GRID,
        note="-Phi'(t) = t*Phi(t) + Phi(t)/t + ..., divided by Phi(t)",
    )


def _power_entries():
    yield AsymptoticExpansion(
        label="psi-0",
        target=lambda t: _power_integral(0.0, t),
        terms=(lambda t: t, lambda t: -PSI_LOWER),
        grid=GAUSS_GRID,
    )
    yield AsymptoticExpansion(
        label="psi-1/2",
        target=lambda t: power_integral(0.5, t),
        terms=(lambda t: 0.5 * t * t, lambda t: -0.5 * math.log(t)),
        remainder=lambda t, j: _power_remainder(0.5, t),
        grid=(1e8, 1e12, 1e16, 1e20),
    )
    yield AsymptoticExpansion(
        label="psi-3/2",
        target=lambda t: power_integral(1.5, t),
        terms=(lambda t: t**4 / 4.0, lambda t: -0.75 * t * t),
        remainder=lambda t, j: _power_remainder(1.5, t),
        grid=(10.0, 20.0, 40.0, 80.0),
    )
    yield AsymptoticExpansion(
        label="psi-(-1/2)",
        target=lambda t: power_integral(-0.5, t),
        terms=(math.log,),
        grid=LOG_GRID,
    )
    yield AsymptoticExpansion(
        label="psi-1/4-constant",
        target=lambda t: _power_remainder(0.25, t),
        mode="constant",
        grid=LOG_GRID,
        note="Psi_sigma(t) - t^(2 sigma+1)/(2 sigma+1) tends to -c(sigma, d)",
    )
    for sigma in (-0.5, 0.0, 0.5):
        if sigma == -0.5:
            leading = lambda t: math.log(t) ** 2
        else:
            leading = lambda t, s=sigma: 2.0 / (2.0 * s + 1.0) * t ** (2.0 * s + 1.0) * math.log(t)
        yield AsymptoticExpansion(
            label="upsilon-%s" % {-0.5: "(-1/2)", 0.0: "0", 0.5: "1/2"}[sigma],
            target=lambda t, s=sigma: log_power_integral(s, t),
            terms=(leading,),
            grid=LOG_GRID,
        )


def _second_j_term(beta):
    if beta < 2.0:
        scale = 2.0 ** (-1.0 / beta) * 2.0 / (2.0 - beta)
        return lambda t: scale * t ** (2.0 / beta - 1.0) * math.log(t)
    return lambda t: math.log(t) ** 2 / (2.0 * SQRT2)


def _young_entries(beta, function):
    functional = ReductionFunctional("marcinkiewicz-m", function=function)
    leading = lambda t: leading_term(beta, t)
    yield AsymptoticExpansion(
        label="tail-integral",
        target=functional.first_term,
        terms=(lambda t: 2.0 ** (-1.0 / beta) * t ** (2.0 / beta - 1.0),),
        grid=GAUSS_GRID,
    )
    remainder = _JRemainder(function)
    if beta <= 2.0:
        yield AsymptoticExpansion(
            label="J",
            target=lambda t: leading(t) + remainder(t),
            terms=(leading, _second_j_term(beta)),
            remainder=lambda t, j: remainder(t),
            grid=SLOW_GRID if beta < 2.0 else SLOWER_GRID,
        )
    elif beta >= 3.0:
        yield AsymptoticExpansion(
            label="J-constant",
            target=remainder,
            mode="constant",
            grid=SLOWER_GRID,
            note="J(t) - g(t) tends to c(B)",
        )
    else:
        LOGGER.warning("J constant for 2 < beta=%r < 3 converges too slowly, omitted", beta)
    if beta < 2.0:
        kappa = kappa_beta(beta)
        yield AsymptoticExpansion(
            label="J-power",
            target=lambda t: functional.exponent(t, kappa),
            terms=(lambda t: 2.0 / (2.0 - beta) * math.log(t),),
            grid=SLOW_GRID,
            note="[kappa_beta F_mB]^p - t^2/2",
        )
    else:
        LOGGER.warning("J power form for beta=%r has no ratio entry, omitted", beta)
    yield AsymptoticExpansion(
        label="b-inverse",
        target=lambda L: float(function.derivative_inverse_log(L)),
        terms=(lambda L: L ** (1.0 / beta),),
        grid=(1e2, 1e3, 1e4, 1e5),
        variable="log t",
    )
    bound_terms = [leading]
    if beta < 2.0:
        second = _second_j_term(beta)
        bound_terms.append(lambda t: -second(t))
    elif beta == 2.0:
        bound_terms.append(lambda t: -(2.0**-0.5) * 0.5 * math.log(t) ** 2)
    yield AsymptoticExpansion(
        label="I-norm-bound",
        target=lambda t: orlicz_norm_inf(
            function.conjugate, inverse_isoperimetric_tail(t)
        ).value,
        terms=tuple(bound_terms),
        grid=(10.0, 20.0, 40.0, 80.0),
        mode="inequality",
        tolerance=1e-2,
    )


def _shift_entries(beta):
    scale = SQRT2 * 2.0 / (2.0 + beta)
    yield AsymptoticExpansion(
        label="flattened-lambda",
        target=lambda t0: flattened_lambda(beta, t0),
        terms=(lambda t0: scale * t0 ** (beta / 2.0 + 1.0),),
        grid=PARAMETER_GRID,
        variable="t0",
    )
    yield AsymptoticExpansion(
        label="head-tail-lambda",
        target=lambda t0: head_tail_lambda(1.0, beta, t0),
        terms=(lambda t0: -beta * scale / 2.0 * t0 ** (beta / 2.0 + 1.0),),
        grid=PARAMETER_GRID,
        variable="t0",
    )
    if beta >= 3.0:
        flattened = _JRemainder(construct_flattened(1.0, beta, 2.0))
        yield AsymptoticExpansion(
            label="flattened-J-shift",
            target=flattened,
            mode="constant",
            grid=SLOWER_GRID,
            note="J(t) - g(t) for the flattened B with t0 = 2 tends to a constant",
        )


def builtin_expansions(beta, function=None):
    """The catalog for one tail exponent.

    :param beta: Tail exponent; inf keeps the Gaussian and power-integral entries.
    :type beta: float
    :param function: Young function B with tail exponent β; N·e^{t^β}
        with N = 1 by default.
    :type function: :obj:`gaussmoser.young.YoungFunction`
    :raises ConfigurationError: If B has another tail exponent.
    :return: Expansions by label, in registration order.
    :rtype: dict
    """
    entries = list(_gauss_entries()) + list(_power_entries())
    if math.isinf(beta):
        LOGGER.warning("No Young-function entries for beta=inf")
    else:
        if function is None:
            function = plain_exp(1.0, beta)
        if not math.isclose(function.beta, beta, rel_tol=1e-12):
            raise ConfigurationError(
                "Young function %r has beta=%r, expected %r" % (function, function.beta, beta)
            )
        entries.extend(_young_entries(beta, function))
        if beta > 2.0:
            entries.extend(_shift_entries(beta))
        else:
            LOGGER.warning("Shift entries need beta > 2, omitted for beta=%r", beta)
    LOGGER.info("Catalog for beta=%r with %d entries", beta, len(entries))
    return {entry.label: entry for entry in entries}

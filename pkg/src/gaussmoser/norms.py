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
"""Luxemburg, Orlicz and Marcinkiewicz norms of rearranged functions.

Every norm takes a Young function (a :obj:`gaussmoser.young.YoungFunction`
or its :obj:`gaussmoser.young.ConjugateYoung`) and a
:obj:`gaussmoser.rearrange.RearrangedFunction`. Modulars are integrated in
the log domain so that exponential tails never overflow before the root
finder or minimizer sees them.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from gaussmoser.exceptions import ConfigurationError
from gaussmoser.gauss_core import FINE
from gaussmoser.rearrange import RearrangedFunction, maximal_function
from gaussmoser.young import ConjugateYoung

LOGGER = logging.getLogger(__name__)

# e^{±460} keeps f/λ inside the double range for any reasonable f.
LOG_SCALE_LIMIT = 460.0
GRID_POINTS = 512
GRID_FLOOR = 1e-12
NORM_METHODS = ("root-find", "inf-over-k", "sup-grid", "closed-form")


@dataclass(frozen=True)
class NormResult:
    """A norm value with its diagnostics.

    ``residual`` is modular(value) - 1 for Luxemburg norms and zero
    otherwise. ``method`` is one of NORM_METHODS.

    :raises ConfigurationError: For an unknown method.
    """

    value: float
    residual: float = 0.0
    method: str = "closed-form"

    def __post_init__(self):
        if self.method not in NORM_METHODS:
            raise ConfigurationError(
                "Norm method must be one of %r, got %r" % (NORM_METHODS, self.method)
            )

    def __float__(self):
        """The norm value."""
        return float(self.value)


def _dual(function):
    """The Young function whose conjugate is ``function``."""
    if isinstance(function, ConjugateYoung):
        return function.base
    return function.conjugate


def modular(function, f, lam, quadrature=FINE):
    """∫₀¹ A(f(s)/λ) ds, +inf when the integral diverges.

    :param function: Young function A.
    :param f: Rearranged function.
    :type f: :obj:`gaussmoser.rearrange.RearrangedFunction`
    :param lam: Scale λ > 0.
    :type lam: float
    :return: The modular.
    :rtype: float
    """
    if not lam > 0.0:
        raise ConfigurationError("The modular is taken at λ > 0, got %r" % lam)
    return _log_modular(function, f, math.log(lam), quadrature)


def _log_modular(function, f, log_lam, quadrature):
    levels = [math.log(kink) + log_lam for kink in function.breakpoints() if kink > 0.0]
    return f.integrate_log(
        lambda values: function.log_eval_at_log(values - log_lam),
        quadrature,
        log_levels=levels,
    )


def luxemburg_norm(function, f, quadrature=FINE):
    """inf{λ > 0 : ∫A(f/λ) ≤ 1}.

    The root of the decreasing modular is bracketed by expanding in log λ
    and polished by Brent's method.

    :param function: Young function A.
    :param f: Rearranged function.
    :type f: :obj:`gaussmoser.rearrange.RearrangedFunction`
    :return: Norm, with modular residual.
    :rtype: :obj:`NormResult`
    """
    excess = lambda log_lam: _log_modular(function, f, log_lam, quadrature) - 1.0
    if excess(-LOG_SCALE_LIMIT) == -1.0:
        return NormResult(0.0, 0.0, "root-find")
    hi, step = 0.0, 1.0
    while excess(hi) > 0.0:
        hi += step
        step *= 2.0
        if hi > LOG_SCALE_LIMIT:
            LOGGER.debug("Modular of %s stays above 1 under %r", f.label, function)
            return NormResult(math.inf, math.nan, "root-find")
    lo, step = hi - 1.0, 1.0
    while excess(lo) <= 0.0:
        hi = lo
        lo -= step
        step *= 2.0
        if lo < -LOG_SCALE_LIMIT:
            return NormResult(0.0, 0.0, "root-find")
    value = excess(lo)
    while not math.isfinite(value):
        middle = 0.5 * (lo + hi)
        value = excess(middle)
        if value > 0.0:
            lo = middle
        else:
            hi = middle
            value = math.inf
        if hi - lo < 1e-15:
            break
    root = optimize.brentq(excess, lo, hi, xtol=1e-15, rtol=1e-15)
    norm = math.exp(root)
    return NormResult(norm, excess(root), "root-find")


def _bracket_minimum(func, start, max_steps=200):
    a, b, c = start - 1.0, start, start + 1.0
    fa, fb, fc = func(a), func(b), func(c)
    step = 1.0
    for _ in range(max_steps):
        if fb < fa and fb < fc:
            return (a, b, c), (fa, fb, fc)
        if not math.isfinite(fa) and not math.isfinite(fb) and not math.isfinite(fc):
            break
        step *= 2.0
        if fa <= fc:
            c, fc, b, fb = b, fb, a, fa
            a = b - step
            fa = func(a)
        else:
            a, fa, b, fb = b, fb, c, fc
            c = b + step
            fc = func(c)
    return None, None


def orlicz_norm_inf(function, f, quadrature=FINE):
    """inf_{k>0} (1 + ∫A(k f))/k.

    The objective is minimized in log k: bracket expansion from the scale
    of ‖f‖₁, then Brent's method when the bracket is finite and golden
    section otherwise.

    :param function: Young function A.
    :param f: Rearranged function.
    :type f: :obj:`gaussmoser.rearrange.RearrangedFunction`
    :return: Norm.
    :rtype: :obj:`NormResult`
    """

    def log_objective(log_k):
        integral = _log_modular(function, f, -log_k, quadrature)
        return math.log1p(integral) - log_k if math.isfinite(integral) else math.inf

    if _log_modular(function, f, -LOG_SCALE_LIMIT, quadrature) == 0.0:
        return NormResult(0.0, 0.0, "inf-over-k")
    mass = f.integrate_log(lambda values: values, quadrature)
    start = -math.log(mass) if 0.0 < mass < math.inf else 0.0
    bracket, values = _bracket_minimum(log_objective, start)
    if bracket is None:
        return NormResult(math.inf, 0.0, "inf-over-k")
    minimizer = "brent" if all(math.isfinite(value) for value in values) else "golden"
    result = optimize.minimize_scalar(
        log_objective, bracket=bracket, method=minimizer, tol=1e-10
    )
    best = min(float(result.fun), values[1])
    return NormResult(math.exp(best), 0.0, "inf-over-k")


def char_norm(function, measure):
    """Orlicz norm of the indicator of a set of the given measure: ν·Ã⁻¹(1/ν).

    :raises ConfigurationError: If the measure is outside (0, 1].
    """
    if not 0.0 < measure <= 1.0:
        raise ConfigurationError("Measure must lie in (0, 1], got %r" % measure)
    dual = _dual(function)
    return measure * float(dual.inverse(1.0 / measure))


def _inverse_at(function, s):
    return np.asarray(function.inverse(1.0 / np.asarray(s, dtype=float)), dtype=float)


def _quotient(numerator, denominator):
    """numerator/denominator with 0/0 read as 0."""
    numerator = np.asarray(numerator, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(numerator == 0.0, 0.0, numerator / denominator)


def _grid_supremum(ratio, label):
    grid = np.geomspace(GRID_FLOOR, 1.0, GRID_POINTS)
    values = np.asarray(ratio(grid), dtype=float)
    if np.any(np.isnan(values)):
        raise ConfigurationError("Undefined ratio for %s" % label)
    best = int(np.argmax(values))
    if not math.isfinite(values[best]):
        return NormResult(math.inf, 0.0, "sup-grid")
    lo = math.log(grid[max(best - 1, 0)])
    hi = math.log(grid[min(best + 1, GRID_POINTS - 1)])
    if hi > lo:
        result = optimize.minimize_scalar(
            lambda x: -float(np.asarray(ratio(np.array([math.exp(x)])))[0]),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12},
        )
        return NormResult(max(float(values[best]), -float(result.fun)), 0.0, "sup-grid")
    return NormResult(float(values[best]), 0.0, "sup-grid")


def marcinkiewicz_M_norm(function, f, quadrature=FINE):  # pylint:disable=invalid-name
    """sup_s φ**(s)/A⁻¹(1/s) on a log grid with local refinement."""

    def ratio(s):
        return _quotient(maximal_function(f, s, quadrature), _inverse_at(function, s))

    return _grid_supremum(ratio, f.label)


def marcinkiewicz_m_norm(function, f):
    """sup_s φ*(s)/A⁻¹(1/s) on a log grid with local refinement.

    :raises ConfigurationError: If f is not a decreasing rearrangement.
    """
    if not f.decreasing:
        raise ConfigurationError("%s is not a decreasing rearrangement" % f.label)

    def ratio(s):
        return _quotient(f(s), _inverse_at(function, s))

    return _grid_supremum(ratio, f.label)


def holder_pair(function, f, g, quadrature=FINE):
    """(∫fg, ‖f‖_{L^A} · |||g|||_{L^Ã})."""
    product = RearrangedFunction(
        g=lambda s: f(s) * g(s),
        support_start=max(f.support_start, g.support_start),
        support_end=min(f.support_end, g.support_end),
        breakpoints=tuple(f.breakpoints) + tuple(g.breakpoints),
        decreasing=False,
        label="%s*%s" % (f.label, g.label),
    )
    lhs = product.integrate_log(lambda values: values, quadrature)
    rhs = luxemburg_norm(function, f, quadrature).value * orlicz_norm_inf(
        _dual(function), g, quadrature
    ).value
    return lhs, rhs

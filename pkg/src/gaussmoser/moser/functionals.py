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
"""Reduction functionals F(t) bounding the exponential integral of u by one integral in t.

Three kinds are supported, each paired with the gradient constraint it
serves: the Luxemburg norm of a Young function B, the Marcinkiewicz
quasi-norm of B and the supremum norm (median or mean centering). For the
Orlicz kinds F(t) grows like g(t) = 2^{-1/β}β/(2+β)·t^{2/β+1} and the
integrand exponent [κF]^p - t²/2, p = 2β/(2+β), is assembled from the
remainder F - g so that no cancellation of two numbers of size t² occurs.
"""
import logging
import math
import threading

import numpy as np
from scipy import special

from gaussmoser.exceptions import ConfigurationError, DomainError
from gaussmoser.gauss_core import (
    FINE,
    SQRT2,
    SQRT_HALF_PI,
    gauss_density,
    gauss_tail,
    gauss_tail_inv_log,
    log_gauss_tail,
)
from gaussmoser.library.quadrature import Antiderivative, panel_sum
from gaussmoser.norms import orlicz_norm_inf
from gaussmoser.rearrange import inverse_isoperimetric_tail

LOGGER = logging.getLogger(__name__)

KINDS = (
    "luxemburg",
    "marcinkiewicz-m",
    "marcinkiewicz-M",
    "l-infinity-median",
    "l-infinity-mean",
)
ORLICZ_KINDS = KINDS[:3]
# e^{-745} is the smallest positive double.
LOG_UNDERFLOW = 745.0
# F - g values kept per functional; the cache is cleared when full.
CACHE_SIZE = 4096


def kappa_beta(beta):
    """Sharp constant κ_β = 1/√2 + √2/β; β = inf gives 1/√2.

    :raises DomainError: If β is not positive.
    """
    if not beta > 0.0:
        raise DomainError("beta must be positive, got %r" % beta)
    if math.isinf(beta):
        return 1.0 / SQRT2
    return 1.0 / SQRT2 + SQRT2 / beta


def power(beta):
    """Exponent p = 2β/(2+β) of the Moser integrand; 2 for β = inf."""
    if math.isinf(beta):
        return 2.0
    return 2.0 * beta / (2.0 + beta)


def leading_term(beta, t):
    """g(t) = 2^{-1/β}·β/(2+β)·t^{2/β+1}, the common leading term of F.

    (κ_β·g(t))^p equals t²/2 exactly.
    """
    t = np.asarray(t, dtype=float)
    result = 2.0 ** (-1.0 / beta) * beta / (2.0 + beta) * t ** (2.0 / beta + 1.0)
    return float(result) if result.ndim == 0 else result


def kink_taus(function):
    """τ > 0 with 1/Φ(τ) at a value where B⁻¹ has a kink."""
    levels = [function.tail_floor]
    for segment in function.segments[:-1]:
        levels.append(float(segment.value(np.asarray(float(segment.end)))))
    taus = []
    for level in sorted(set(levels)):
        if level > 2.0:
            taus.append(float(gauss_tail_inv_log(-math.log(level))))
    return taus


class ReductionFunctional:
    """F(t) for one constraint kind, cached by t.

    The cache holds at most CACHE_SIZE values and is guarded by a lock;
    values are computed outside the lock, so concurrent callers may
    compute the same t twice but always read complete entries.

    :param kind: One of KINDS.
    :type kind: str
    :param beta: Tail exponent; ignored for the supremum kinds.
    :type beta: float
    :param function: Young function B, required for the Orlicz kinds.
    :type function: :obj:`gaussmoser.young.YoungFunction`
    :param quadrature: Tolerances of the norm computations.
    :type quadrature: :obj:`gaussmoser.gauss_core.Quadrature`
    """

    def __init__(self, kind, beta=math.inf, function=None, quadrature=FINE):
        """Validate the kind and precompute the constant term."""
        if kind not in KINDS:
            raise ConfigurationError("Unknown kind %r, valid kinds: %r" % (kind, KINDS))
        if kind in ORLICZ_KINDS and function is None:
            raise ConfigurationError("Kind %r needs a Young function" % kind)
        self.kind = kind
        self.function = function if kind in ORLICZ_KINDS else None
        self.beta = float(function.beta if self.function is not None else math.inf)
        if self.function is None and not math.isinf(beta):
            LOGGER.debug("Supremum kind %r ignores beta=%r", kind, beta)
        self.quadrature = quadrature
        self._cache = {}
        self._lock = threading.Lock()
        self._tau_tail = 0.0
        self._j_remainder = None
        if kind == "luxemburg":
            self.constant_term = SQRT_HALF_PI * float(self.function.inverse(1.0))
        elif kind in ORLICZ_KINDS:
            self.constant_term = SQRT_HALF_PI * self._inverse_mass()
            floor = self.function.tail_floor
            if floor > 2.0:
                self._tau_tail = float(gauss_tail_inv_log(-math.log(floor)))
            self._j_remainder = Antiderivative(
                self.j_remainder_density,
                breakpoints=kink_taus(self.function) + [self._tau_tail],
                graded=True,
            )
        else:
            self.constant_term = 0.0
        LOGGER.info("Reduction functional %s with constant term %r", kind, self.constant_term)

    def __repr__(self):
        """Kind and Young function."""
        return "ReductionFunctional(%s, %r)" % (self.kind, self.function)

    @property
    def p(self):  # pylint:disable=invalid-name
        """Exponent of the Moser integrand."""
        return power(self.beta)

    def _inverse_mass(self):
        """∫₀¹ B⁻¹(1/s) ds in the variable v = -log s."""
        points = [math.log(level) for level in self._levels() if level > 1.0]
        return self.quadrature.integrate(
            lambda v: float(self.function.inverse_log(v)) * math.exp(-v),
            0.0,
            math.inf,
            points=points,
        )

    def _levels(self):
        levels = {self.function.tail_floor}
        for segment in self.function.segments[:-1]:
            levels.add(float(segment.value(np.asarray(float(segment.end)))))
        return sorted(level for level in levels if level > 0.0)

    def j_remainder_density(self, tau):
        """B⁻¹(1/Φ(τ)) - (τ²/2)^{1/β}.

        On the tail the difference is (τ²/2)^{1/β}·expm1(log1p(2δ/τ²)/β)
        with δ = -log(Φ(τ)e^{τ²/2}) - log N (+ log1p(NΦ) for a shifted
        tail), which keeps full relative accuracy for large τ.
        """
        tau = np.asarray(tau, dtype=float)
        beta = self.beta
        base = (0.5 * tau * tau) ** (1.0 / beta)
        direct = self.function.inverse_log(-log_gauss_tail(tau)) - base
        tail = self.function.tail
        delta = -np.log(0.5 * special.erfcx(tau / SQRT2)) - math.log(tail.N)
        if tail.shift:
            delta = delta + np.log1p(tail.N * gauss_tail(tau))
        square = np.maximum(tau * tau, 1.0)
        ratio = np.maximum(2.0 * delta / square, -1.0)
        with np.errstate(divide="ignore"):
            stable = base * np.expm1(np.log1p(ratio) / beta)
        use = tau >= max(self._tau_tail, 1.0)
        return np.where(use, stable, direct)

    def first_term(self, t):
        """e^{t²/2}∫_t^∞ B⁻¹(1/Φ(τ))e^{-τ²/2}dτ in the shifted variable τ = t + r."""
        t = float(t)
        step = 1.0 / max(t, 1.0)
        edges = [0.0]
        while t * edges[-1] + 0.5 * edges[-1] ** 2 < LOG_UNDERFLOW:
            edges.append(step * 2.0 ** (len(edges) - 1))
        kinks = [tau - t for tau in kink_taus(self.function) if tau > t]
        edges = np.unique(np.asarray(edges + [k for k in kinks if k < edges[-1]]))

        def integrand(r):
            with np.errstate(over="ignore"):
                level = self.function.inverse_log(-log_gauss_tail(t + r))
            return level * np.exp(-t * r - 0.5 * r * r)

        return panel_sum(integrand, edges)

    def j_integral(self, t):
        """∫₀^t B⁻¹(1/Φ(τ))dτ as g(t) plus the tabulated remainder."""
        return leading_term(self.beta, t) + self.j_remainder(t)

    def j_remainder(self, t):
        """∫₀^t (B⁻¹(1/Φ(τ)) - (τ²/2)^{1/β})dτ."""
        if self._j_remainder is None:
            raise ConfigurationError("Kind %r has no J integral" % self.kind)
        return self._j_remainder(t)

    @property
    def j_breakpoints(self):
        """Kinks of the J remainder density."""
        return kink_taus(self.function) + [self._tau_tail]

    def remainder(self, t):
        """F(t) - g(t), vectorized and cached by t."""
        t = np.asarray(t, dtype=float)
        if np.any(~(t > 0.0)):
            raise DomainError("F is evaluated at t > 0, got %r" % (t,))
        if self.kind not in ORLICZ_KINDS:
            raise ConfigurationError("Kind %r has no leading term" % self.kind)
        flat = t.ravel()
        with self._lock:
            known = {value: self._cache.get(value) for value in np.unique(flat)}
        missing = [value for value, remainder in known.items() if remainder is None]
        if missing:
            computed = self._compute(np.asarray(missing))
            known.update(computed)
            with self._lock:
                if len(self._cache) + len(computed) > CACHE_SIZE:
                    self._cache.clear()
                self._cache.update(computed)
        result = np.asarray([known[value] for value in flat], dtype=float)
        return float(result[0]) if t.ndim == 0 else result.reshape(t.shape)

    def _compute(self, ts):
        """F - g at each t of ts, by t."""
        computed = {}
        if self.kind == "luxemburg":
            leading = leading_term(self.beta, ts)
            for t, lead in zip(ts, leading):
                norm = orlicz_norm_inf(
                    self.function.conjugate, inverse_isoperimetric_tail(t), self.quadrature
                )
                computed[t] = norm.value + self.constant_term - lead
        else:
            remainders = self._j_remainder(ts)
            for t, remainder in zip(ts, remainders):
                computed[t] = self.first_term(t) + remainder + self.constant_term
        LOGGER.debug("%s evaluated at %d new points", self.kind, len(ts))
        return computed

    def value(self, t):
        """F(t).

        :param t: Point or points, t > 0.
        :type t: float or :obj:`numpy.ndarray`
        :raises DomainError: For t <= 0.
        :return: F(t).
        :rtype: float or :obj:`numpy.ndarray`
        """
        t = np.asarray(t, dtype=float)
        if np.any(~(t > 0.0)):
            raise DomainError("F is evaluated at t > 0, got %r" % (t,))
        if self.kind == "l-infinity-median":
            result = t.copy()
        elif self.kind == "l-infinity-mean":
            result = t + 2.0 * gauss_density(t) - 2.0 * t * gauss_tail(t)
        else:
            result = leading_term(self.beta, t) + self.remainder(t)
        return float(result) if np.ndim(result) == 0 else result

    __call__ = value

    def exponent(self, t, kappa):
        """[κF(t)]^p - t²/2.

        For the Orlicz kinds this is
        (t²/2)·expm1(p·(log(κ/κ_β) + log1p((F - g)/g))).
        """
        t = np.asarray(t, dtype=float)
        if not kappa > 0.0:
            raise DomainError("kappa must be positive, got %r" % kappa)
        if self.kind not in ORLICZ_KINDS:
            result = (kappa * self.value(t)) ** 2 - 0.5 * t * t
        else:
            relative = self.remainder(t) / leading_term(self.beta, t)
            scale = math.log(kappa / kappa_beta(self.beta))
            with np.errstate(invalid="ignore"):
                result = 0.5 * t * t * np.expm1(self.p * (scale + np.log1p(relative)))
        return float(result) if np.ndim(result) == 0 else result


def functional_LB(function, t, quadrature=FINE):  # pylint:disable=invalid-name
    """F for the Luxemburg constraint ‖∇u‖_{L^B} ≤ 1."""
    return ReductionFunctional("luxemburg", function=function, quadrature=quadrature).value(t)


def functional_mB(function, t, quadrature=FINE):  # pylint:disable=invalid-name
    """F for the Marcinkiewicz constraint ‖∇u‖_{m^B} ≤ 1."""
    return ReductionFunctional(
        "marcinkiewicz-m", function=function, quadrature=quadrature
    ).value(t)


def functional_Linf(t, centering="median"):  # pylint:disable=invalid-name
    """F for ‖∇u‖_∞ ≤ 1 with med(u) = 0 or mv(u) = 0.

    :raises ConfigurationError: For an unknown centering.
    """
    if centering not in ("median", "mean"):
        raise ConfigurationError("Centering is 'median' or 'mean', got %r" % centering)
    return ReductionFunctional("l-infinity-%s" % centering).value(t)

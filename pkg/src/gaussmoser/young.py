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
"""Young functions with exponential tails.

A :class:`YoungFunction` is a left-continuous piecewise function built from
segments living on half-open intervals (start, end]. The last segment is
always the analytic tail N·(e^{t^β} - shift). Every evaluation routine is
vectorized and has a log-domain twin so that arguments far beyond the
double range (t = e^L with L up to 1e8) can be handled.

Generalized inverses follow two conventions:

* ``inverse(y)`` is sup{t : B(t) <= y}, so plateaus invert to their right
  endpoint.
* ``derivative_inverse(y)`` is inf{t : b(t) >= y} for the left derivative b.
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import optimize

from gaussmoser.exceptions import ConfigurationError, ConstructionError, DomainError
from gaussmoser.library.quadrature import newton_bisect

LOGGER = logging.getLogger(__name__)

FAMILIES = ("plain-exp", "envelope-M", "head-tail", "flattened")


def _array(value):
    array = np.asarray(value, dtype=float)
    return array, array.ndim == 0


def _wrap(result, scalar):
    return float(result) if scalar else result


@dataclass(frozen=True)
class ZeroPlateau:
    """B = 0 on (start, end]."""

    start: float
    end: float

    def value(self, t):
        """Segment value."""
        return np.zeros_like(t)

    def log_value(self, t):
        """Logarithm of the segment value."""
        return np.full_like(t, -np.inf)

    def derivative(self, t):
        """Derivative inside the segment."""
        return np.zeros_like(t)

    def inverse(self, y):
        """Largest t of the segment with value <= y."""
        return np.full_like(y, self.end)

    @property
    def right_slope(self):
        """Largest derivative on the segment."""
        return 0.0


@dataclass(frozen=True)
class Linear:
    """B(t) = slope·t on (start, end]."""

    start: float
    end: float
    slope: float

    def value(self, t):
        """Segment value."""
        return self.slope * t

    def log_value(self, t):
        """Logarithm of the segment value."""
        with np.errstate(divide="ignore"):
            return math.log(self.slope) + np.log(t)

    def derivative(self, t):
        """Derivative inside the segment."""
        return np.full_like(t, self.slope)

    def inverse(self, y):
        """Largest t of the segment with value <= y."""
        return y / self.slope

    @property
    def right_slope(self):
        """Largest derivative on the segment."""
        return self.slope


@dataclass(frozen=True)
class Affine:
    """B(t) = slope·(t - anchor) + offset on (start, end]."""

    start: float
    end: float
    slope: float
    anchor: float
    offset: float

    def value(self, t):
        """Segment value."""
        return self.slope * (t - self.anchor) + self.offset

    def log_value(self, t):
        """Logarithm of the segment value."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.log(np.maximum(self.value(t), 0.0))

    def derivative(self, t):
        """Derivative inside the segment."""
        return np.full_like(t, self.slope)

    def inverse(self, y):
        """Largest t of the segment with value <= y."""
        return self.anchor + (y - self.offset) / self.slope

    @property
    def right_slope(self):
        """Largest derivative on the segment."""
        return self.slope


@dataclass(frozen=True)
class ExpTail:
    """B(t) = N·(e^{t^β} - shift) on (start, ∞), shift in {0, 1}."""

    start: float
    N: float  # pylint:disable=invalid-name
    beta: float
    shift: float = 0.0
    end: float = math.inf

    def value(self, t):
        """Segment value, N·e^{t^β} verbatim when shift is 0."""
        if self.shift:
            return self.N * np.expm1(t**self.beta)
        return self.N * np.exp(t**self.beta)

    def log_value(self, t):
        """Logarithm of the segment value."""
        power = t**self.beta
        with np.errstate(divide="ignore"):
            if self.shift:
                return math.log(self.N) + power + np.log(-np.expm1(-power))
            return math.log(self.N) + power

    def log_value_at_log(self, log_t):
        """log B(e^L) without forming e^L."""
        with np.errstate(over="ignore"):
            power = np.exp(self.beta * log_t)
        with np.errstate(divide="ignore"):
            if self.shift:
                return math.log(self.N) + power + np.log(-np.expm1(-power))
        return math.log(self.N) + power

    def derivative(self, t):
        """b(t) = Nβ t^{β-1} e^{t^β}."""
        with np.errstate(divide="ignore", over="ignore"):
            return self.N * self.beta * t ** (self.beta - 1.0) * np.exp(t**self.beta)

    def log_derivative(self, t):
        """log b(t)."""
        with np.errstate(divide="ignore"):
            return (
                math.log(self.N * self.beta)
                + (self.beta - 1.0) * np.log(t)
                + t**self.beta
            )

    def inverse(self, y):
        """(log(y/N + shift))^{1/β}, clipped at 0."""
        with np.errstate(divide="ignore"):
            return self.inverse_log(np.log(y))

    def inverse_log(self, log_y):
        """Tail inverse for y = e^{log_y}."""
        scaled = log_y - math.log(self.N)
        if self.shift:
            scaled = np.logaddexp(scaled, 0.0)
        return np.maximum(scaled, 0.0) ** (1.0 / self.beta)

    def root_power(self, log_y):
        """Solve b(t) = e^{log_y} on the tail for u = t^β.

        The equation log(Nβ) + ((β-1)/β)·log u + u = log_y is increasing in
        u on the tail; it is solved by a safeguarded Newton iteration seeded
        with the two-term expansion u ≈ K - ((β-1)/β)·log K.

        :param log_y: Logarithm of the slope, above log b(start).
        :type log_y: :obj:`numpy.ndarray`
        :return: u = t^β.
        :rtype: :obj:`numpy.ndarray`
        """
        log_y = np.asarray(log_y, dtype=float)
        ratio = (self.beta - 1.0) / self.beta
        target = log_y - math.log(self.N * self.beta)

        def excess(u):
            with np.errstate(divide="ignore"):
                return u + ratio * np.log(u) - target, 1.0 + ratio / u

        lo = np.full_like(target, max(self.start**self.beta, 1e-300))
        hi = np.maximum(np.maximum(target, 1.0), lo) + 1.0
        for _ in range(200):
            short = excess(hi)[0] < 0.0
            if not np.any(short):
                break
            hi = np.where(short, 2.0 * hi, hi)
        seed = target - ratio * np.log(np.maximum(target, 1.0))
        return newton_bisect(excess, lo, hi, x0=np.clip(seed, lo, hi))

    @property
    def right_slope(self):
        """Largest derivative on the segment."""
        return math.inf


class YoungFunction:
    """Piecewise Young function with an exponential tail.

    :param segments: Ordered segments covering (0, ∞), last one an ExpTail.
    :type segments: list
    :param provenance: One of FAMILIES.
    :type provenance: str
    :param parameters: Construction parameters, used for serialization.
    :type parameters: dict
    """

    def __init__(self, segments, provenance, parameters):
        """Store segments and junction tables."""
        if not segments or not isinstance(segments[-1], ExpTail):
            raise ConstructionError("The last segment must be an exponential tail")
        if provenance not in FAMILIES:
            raise ConfigurationError(
                "Unknown family %r, valid families: %r" % (provenance, FAMILIES)
            )
        self.segments = tuple(segments)
        self.provenance = provenance
        self.parameters = dict(parameters)
        self._ends = np.array([segment.end for segment in self.segments])
        self._starts = np.array([segment.start for segment in self.segments])

    def __repr__(self):
        """Family tag and parameters."""
        return "YoungFunction(%s, %r)" % (self.provenance, self.parameters)

    @property
    def tail(self):
        """The exponential tail segment."""
        return self.segments[-1]

    @property
    def beta(self):
        """Tail exponent."""
        return self.tail.beta

    @property
    def N(self):  # pylint:disable=invalid-name
        """Tail multiplier."""
        return self.tail.N

    @property
    def t0(self):
        """Tail onset."""
        return self.tail.start

    @cached_property
    def tail_floor(self):
        """lim B(t) as t decreases to the tail onset."""
        return float(self.tail.value(np.asarray(self.t0)))

    def breakpoints(self):
        """Junctions between segments."""
        return [float(end) for end in self._ends[:-1]]

    def _locate(self, t):
        index = np.searchsorted(self._ends, t, side="left")
        return np.minimum(index, len(self.segments) - 1)

    def _piecewise(self, t, method):
        index = self._locate(t)
        result = np.zeros_like(t)
        for number, segment in enumerate(self.segments):
            mask = index == number
            if np.any(mask):
                result[mask] = getattr(segment, method)(t[mask])
        return result

    def eval(self, t):
        """B(t) for t >= 0, zero at the origin.

        :raises DomainError: For negative t.
        """
        array, scalar = _array(t)
        if np.any(array < 0.0):
            raise DomainError("Young functions are defined for t >= 0, got %r" % (t,))
        flat = np.atleast_1d(array).astype(float)
        result = self._piecewise(flat, "value")
        result[flat == 0.0] = 0.0
        return _wrap(result.reshape(array.shape), scalar)

    __call__ = eval

    def log_eval(self, t):
        """log B(t), -inf where B vanishes."""
        array, scalar = _array(t)
        if np.any(array < 0.0):
            raise DomainError("Young functions are defined for t >= 0, got %r" % (t,))
        flat = np.atleast_1d(array).astype(float)
        result = self._piecewise(flat, "log_value")
        result[flat == 0.0] = -np.inf
        return _wrap(result.reshape(array.shape), scalar)

    def log_eval_at_log(self, log_t):
        """log B(e^L) for L possibly beyond the double range of e^L."""
        array, scalar = _array(log_t)
        flat = np.atleast_1d(array).astype(float)
        on_tail = flat > (math.log(self.t0) if self.t0 > 0.0 else -np.inf)
        result = np.empty_like(flat)
        result[on_tail] = self.tail.log_value_at_log(flat[on_tail])
        if np.any(~on_tail):
            result[~on_tail] = self.log_eval(np.exp(flat[~on_tail]))
        result[flat == -np.inf] = -np.inf
        return _wrap(result.reshape(array.shape), scalar)

    def derivative(self, t):
        """Left derivative b(t); b(0) = 0."""
        array, scalar = _array(t)
        flat = np.atleast_1d(array).astype(float)
        result = self._piecewise(flat, "derivative")
        result[flat <= 0.0] = 0.0
        return _wrap(result.reshape(array.shape), scalar)

    def inverse(self, y):
        """Generalized inverse sup{t : B(t) <= y}.

        :param y: Level, y >= 0.
        :type y: float or :obj:`numpy.ndarray`
        :return: The inverse, nondecreasing in y.
        :rtype: float or :obj:`numpy.ndarray`
        """
        array, scalar = _array(y)
        with np.errstate(divide="ignore"):
            return _wrap(self.inverse_log(np.log(np.maximum(array, 0.0))), scalar)

    def inverse_log(self, log_y):
        """Generalized inverse of y = e^{log_y}, exact on the tail."""
        array, scalar = _array(log_y)
        flat = np.atleast_1d(array).astype(float)
        level = np.exp(np.minimum(flat, 700.0))
        result = np.zeros_like(flat)
        for segment in self.segments:
            floor = float(segment.value(np.asarray(float(segment.start))))
            with np.errstate(divide="ignore"):
                mask = flat >= (math.log(floor) if floor > 0.0 else -np.inf)
            if not np.any(mask):
                continue
            if isinstance(segment, ExpTail):
                candidate = segment.inverse_log(flat[mask])
            else:
                candidate = segment.inverse(level[mask])
            result[mask] = np.clip(candidate, segment.start, segment.end)
        return _wrap(result.reshape(array.shape), scalar)

    def derivative_inverse(self, y):
        """Generalized inverse inf{t : b(t) >= y} of the left derivative."""
        array, scalar = _array(y)
        with np.errstate(divide="ignore"):
            result = self.derivative_inverse_log(np.log(np.maximum(array, 0.0)))
        return _wrap(result, scalar)

    def derivative_inverse_log(self, log_y):
        """inf{t : b(t) >= e^{log_y}}, solved in log form on the tail."""
        array, scalar = _array(log_y)
        tau, _, _ = self._derivative_inverse_core(np.atleast_1d(array).astype(float))
        return _wrap(tau.reshape(array.shape), scalar)

    def _derivative_inverse_core(self, log_y):
        """Return b⁻¹, the tail power u = t^β and the interior-tail mask."""
        tau = np.zeros_like(log_y)
        power = np.zeros_like(log_y)
        interior = np.zeros(log_y.shape, dtype=bool)
        remaining = np.isfinite(log_y) | (log_y == np.inf)
        remaining &= log_y > -np.inf
        for segment in self.segments:
            if not np.any(remaining):
                break
            with np.errstate(divide="ignore"):
                top = math.log(segment.right_slope) if segment.right_slope > 0 else -np.inf
            hit = remaining & (log_y <= top)
            if not np.any(hit):
                continue
            remaining &= ~hit
            if not isinstance(segment, ExpTail):
                tau[hit] = segment.start
                continue
            slope = float(segment.derivative(np.asarray(float(segment.start))))
            floor = math.log(slope) if slope > 0.0 else -np.inf
            at_start = hit & (log_y <= floor)
            tau[at_start] = segment.start
            power[at_start] = segment.start**segment.beta
            inside = hit & ~at_start
            if np.any(inside):
                root = segment.root_power(log_y[inside])
                power[inside] = root
                tau[inside] = root ** (1.0 / segment.beta)
                interior[inside] = True
        return tau, power, interior

    @cached_property
    def conjugate(self):
        """The Young conjugate, built once."""
        return ConjugateYoung(self)

    def certify_convexity(self, samples=64, slack=1e-12):
        """Check the convexity certificate across junctions and inside segments.

        :return: True if slopes and values are nondecreasing.
        :rtype: bool
        """
        for left, right in zip(self.segments[:-1], self.segments[1:]):
            end = np.asarray(float(left.end))
            if float(left.value(end)) > float(right.value(end)) * (1 + slack) + slack:
                return False
            left_slope = float(left.derivative(end))
            right_slope = float(right.derivative(np.asarray(float(right.start))))
            if left_slope > right_slope * (1 + slack) + slack:
                return False
        grid = np.linspace(self.t0, self.t0 + 4.0, samples)[1:]
        slopes = self.tail.derivative(grid)
        return bool(np.all(np.diff(slopes) >= -slack * np.abs(slopes[1:])))

    def to_spec(self):
        """Family tag and parameters, JSON friendly."""
        return dict(self.parameters, family=self.provenance)

    @classmethod
    def from_spec(cls, spec):
        """Build from a family tag and parameters.

        :param spec: Mapping or pydantic model with 'family' and parameters.
        :type spec: dict or :obj:`pydantic.BaseModel`
        :raises ConfigurationError: For unknown families or missing parameters.
        :return: The Young function.
        :rtype: :obj:`YoungFunction`
        """
        data = spec.dict() if hasattr(spec, "dict") else dict(spec)
        family = data.get("family")
        try:
            if family == "plain-exp":
                return plain_exp(data["N"], data["beta"])
            if family == "envelope-M":
                return construct_envelope_M(data["M"], data["beta"])
            if family == "head-tail":
                if data.get("t0") is None:
                    return construct_head_tail(data["M"], data["beta"])[0]
                return head_tail(data["N"], data["beta"], data["t0"])
            if family == "flattened":
                return construct_flattened(data["N"], data["beta"], data["t0"])
        except KeyError as exception:
            raise ConfigurationError(
                "Family %r needs parameter %s" % (family, exception)
            ) from exception
        raise ConfigurationError(
            "Unknown family %r, valid families: %r" % (family, FAMILIES)
        )


class ConjugateYoung:
    """Young conjugate Ã(x) = sup_τ (τx - B(τ)).

    Evaluated as x·τ* - B(τ*) with τ* = b⁻¹(x), which is exact for convex B
    and for the plain exponential tail model once clipped at zero. A table
    of support points is built eagerly and used to bracket inversions.
    """

    def __init__(self, base):
        """Build the support table."""
        self.base = base
        grid = np.geomspace(1e-3, 1e8, 89)
        points = np.unique(np.concatenate([grid, self.breakpoints()]))
        points = points[points > 0.0]
        values = self.eval(points)
        points.setflags(write=False)
        values.setflags(write=False)
        self.table = (points, values)
        LOGGER.debug("Conjugate table of %r built with %d points", base, len(points))

    def breakpoints(self):
        """Kinks of Ã: the one-sided slopes of B at its junctions."""
        kinks = []
        segments = self.base.segments
        for segment, following in zip(segments[:-1], segments[1:]):
            end = np.asarray(segment.end, dtype=float)
            kinks.append(float(segment.derivative(end)))
            kinks.append(float(following.derivative(end)))
        kinks.append(self.zero_threshold)
        return sorted({kink for kink in kinks if 0.0 < kink < math.inf})

    @cached_property
    def zero_threshold(self):
        """sup{x : Ã(x) = 0}, where the conjugate leaves zero."""
        lo, hi = 0.0, 1.0
        while self.eval(hi) <= 0.0:
            lo, hi = hi, 2.0 * hi
        for _ in range(200):
            middle = 0.5 * (lo + hi)
            if self.eval(middle) > 0.0:
                hi = middle
            else:
                lo = middle
        return lo

    def ratio_at_log(self, log_x):
        """Ã(e^L)/e^L, vectorized and stable for L up to 1e8.

        On the interior of the tail the ratio equals
        τ* - τ*^{1-β}(1 - shift·e^{-τ*^β})/β, which avoids subtracting two
        numbers of size e^L.
        """
        array, scalar = _array(log_x)
        flat = np.atleast_1d(array).astype(float)
        base = self.base
        tau, power, interior = base._derivative_inverse_core(  # pylint:disable=protected-access
            flat
        )
        with np.errstate(over="ignore", invalid="ignore"):
            generic = tau - np.exp(base.log_eval(tau) - flat)
        tail = base.tail
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            closed = tau - tau ** (1.0 - tail.beta) * (
                1.0 - tail.shift * np.exp(-power)
            ) / tail.beta
        ratio = np.where(interior, closed, generic)
        ratio = np.where(flat == -np.inf, 0.0, ratio)
        return _wrap(np.maximum(ratio, 0.0).reshape(array.shape), scalar)

    def log_eval_at_log(self, log_x):
        """log Ã(e^L), -inf where Ã vanishes."""
        ratio = self.ratio_at_log(log_x)
        with np.errstate(divide="ignore"):
            return np.asarray(log_x) + np.log(ratio)

    def eval(self, x):
        """Ã(x) for x >= 0."""
        array, scalar = _array(x)
        if np.any(array < 0.0):
            raise DomainError("The conjugate is evaluated at x >= 0, got %r" % (x,))
        with np.errstate(divide="ignore"):
            ratio = self.ratio_at_log(np.log(array))
        return _wrap(array * ratio, scalar)

    __call__ = eval

    def log_eval(self, x):
        """log Ã(x)."""
        array, _ = _array(x)
        with np.errstate(divide="ignore"):
            return self.log_eval_at_log(np.log(array))

    def derivative(self, x):
        """Ã'(x) = b⁻¹(x)."""
        return self.base.derivative_inverse(x)

    def inverse(self, y):
        """Ã⁻¹(y) = sup{x : Ã(x) <= y}, by bracketed root-find.

        :param y: Level >= 0.
        :type y: float
        :return: The inverse.
        :rtype: float
        """
        y = float(y)
        points, values = self.table
        if y <= 0.0:
            return self.zero_threshold
        above = np.nonzero(values >= y)[0]
        if above.size:
            hi = float(points[above[0]])
            lo = float(points[above[0] - 1]) if above[0] > 0 else 0.0
        else:
            lo, hi = float(points[-1]), 2.0 * float(points[-1])
            while self.eval(hi) < y:
                lo, hi = hi, 2.0 * hi
        return optimize.brentq(
            lambda x: self.eval(x) - y, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps
        )

    def biconjugate(self, t):
        """sup_x (x·t - Ã(x)), the convex minorant of B at t."""
        t = float(t)
        if t <= 0.0:
            return 0.0
        upper = 2.0 * float(self.base.derivative(t)) + 2.0
        result = optimize.minimize_scalar(
            lambda x: self.eval(x) - x * t,
            bounds=(0.0, upper),
            method="bounded",
            options={"xatol": 1e-12 * upper},
        )
        return max(0.0, -float(result.fun))


def plain_exp(N, beta):  # pylint:disable=invalid-name
    """The tail model B(t) = N·e^{t^β} for t > 0, B(0) = 0.

    It jumps at the origin and serves as the reference tail of the
    asymptotic statements. Use the constructions below for proper Young
    functions.

    :raises DomainError: For N <= 0 or β < 1.
    """
    if N <= 0.0:
        raise DomainError("N must be positive, got %r" % N)
    if beta < 1.0:
        raise DomainError("The plain tail needs beta >= 1, got %r" % beta)
    return YoungFunction(
        [ExpTail(0.0, float(N), float(beta))], "plain-exp", {"N": N, "beta": beta}
    )


def _tangency(beta):
    """Tangency point of the line through the origin with e^{t^β} - 1."""
    power = optimize.brentq(
        lambda x: 1.0 - math.exp(-x) - beta * x, 1.0 - beta, 1.0 / beta, xtol=1e-15
    )
    return power ** (1.0 / beta), power


def construct_envelope_M(M, beta):  # pylint:disable=invalid-name
    """B_M = envelope(e^{t^β} - 1)/(M - 1).

    For β >= 1 the function is already convex; for β < 1 it is replaced by
    its tangent line through the origin up to the tangency point.

    :raises DomainError: If M <= 1 or β <= 0.
    """
    if M <= 1.0:
        raise DomainError("M must exceed 1, got %r" % M)
    if beta <= 0.0:
        raise DomainError("beta must be positive, got %r" % beta)
    scale = 1.0 / (M - 1.0)
    parameters = {"M": M, "beta": beta}
    if beta >= 1.0:
        tail = ExpTail(0.0, scale, float(beta), shift=1.0)
        return YoungFunction([tail], "envelope-M", parameters)
    tangent, power = _tangency(beta)
    slope = scale * math.expm1(power) / tangent
    LOGGER.debug("Envelope tangency for beta=%r at t=%r", beta, tangent)
    segments = [
        Linear(0.0, tangent, slope),
        ExpTail(tangent, scale, float(beta), shift=1.0),
    ]
    return YoungFunction(segments, "envelope-M", parameters)


def head_tail(N, beta, t0):  # pylint:disable=invalid-name
    """N·𝒜 with 𝒜(t) = t·e^{t0^β}/t0 below t0 and e^{t^β} beyond.

    :raises ConstructionError: If the junction slope condition t0^β >= 1/β
        fails, in which case the function is not convex.
    """
    if N <= 0.0 or t0 <= 0.0:
        raise DomainError("N and t0 must be positive, got %r and %r" % (N, t0))
    if beta * t0**beta < 1.0 - 1e-12:
        raise ConstructionError(
            "Head-tail function is not convex: t0=%r < beta^(-1/beta)=%r"
            % (t0, beta ** (-1.0 / beta))
        )
    slope = N * math.exp(t0**beta) / t0
    segments = [Linear(0.0, float(t0), slope), ExpTail(float(t0), float(N), float(beta))]
    return YoungFunction(segments, "head-tail", {"N": N, "beta": beta, "t0": t0})


def construct_head_tail(M, beta, t0=None):  # pylint:disable=invalid-name
    """Head-tail Young function normalized by N = 1/(M + e^{t0^β}).

    :param M: Modular bound, > 1.
    :type M: float
    :param beta: Tail exponent.
    :type beta: float
    :param t0: Junction, default max(β^{-1/β}, 1).
    :type t0: float
    :return: (B, N, t0)
    :rtype: tuple
    """
    if M <= 1.0:
        raise DomainError("M must exceed 1, got %r" % M)
    if t0 is None:
        t0 = max(beta ** (-1.0 / beta), 1.0)
    N = 1.0 / (M + math.exp(t0**beta))  # pylint:disable=invalid-name
    function = head_tail(N, beta, t0)
    function.parameters["M"] = M
    return function, N, t0


def construct_flattened(N, beta, t0):  # pylint:disable=invalid-name
    """N·A̲ where A̲ vanishes up to t0′, follows the tangent of A at t0 and
    equals A(t) = e^{t^β} beyond t0.

    :raises DomainError: If β <= 2.
    :raises ConstructionError: If t0′ = t0 - A(t0)/a(t0) <= 0.
    """
    if beta <= 2.0:
        raise DomainError("The flattened construction needs beta > 2, got %r" % beta)
    shifted = t0 - 1.0 / (beta * t0 ** (beta - 1.0))
    if shifted <= 0.0:
        raise ConstructionError(
            "Flattened function needs t0' > 0, got t0'=%r for t0=%r" % (shifted, t0)
        )
    value = math.exp(t0**beta)
    slope = beta * t0 ** (beta - 1.0) * value
    segments = [
        ZeroPlateau(0.0, shifted),
        Affine(shifted, float(t0), N * slope, float(t0), N * value),
        ExpTail(float(t0), float(N), float(beta)),
    ]
    return YoungFunction(segments, "flattened", {"N": N, "beta": beta, "t0": t0})


def flattened_shift(beta, t0):
    """t0′ = t0 - A(t0)/a(t0) for A(t) = e^{t^β}."""
    return t0 - 1.0 / (beta * t0 ** (beta - 1.0))


def norm_to_modular_M(N, beta, t0):  # pylint:disable=invalid-name
    """Modular bound implied by a Luxemburg norm <= 1 for head-tail B.

    If ∫B(|∇u|) <= 1 with B = N·𝒜 then ∫e^{|∇u|^β} <= e^{t0^β} + 1/N.
    """
    return math.exp(t0**beta) + 1.0 / N


def modular_to_norm_M(N, beta, t0):  # pylint:disable=invalid-name
    """Root in M > 1 of N·(e^{t0^β}/t0·B_M⁻¹(1) + M) = 1.

    The left side increases with M, so this is the smallest M at which it
    reaches 1 and every modular bound up to it satisfies the inequality.
    For such M the modular condition ∫e^{|∇u|^β} <= M implies that the
    Luxemburg norm with respect to the head-tail function N·𝒜 is at most 1.

    :raises ConstructionError: If N >= 1, since then no M > 1 qualifies.
    """
    if N >= 1.0:
        raise ConstructionError("No admissible M for N=%r >= 1" % N)
    weight = math.exp(t0**beta) / t0

    def excess(M):  # pylint:disable=invalid-name
        return N * (weight * construct_envelope_M(M, beta).inverse(1.0) + M) - 1.0

    return optimize.brentq(excess, 1.0 + 1e-15, 1.0 / N, xtol=1e-14)


def conjugate(function):
    """Young conjugate of a Young function."""
    return function.conjugate

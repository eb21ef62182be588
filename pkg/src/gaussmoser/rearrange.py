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
"""Rearrangements of monotone profiles of the first Gaussian coordinate.

A :class:`Profile` describes u(x) = h(x₁) with h nondecreasing. For such
functions the level sets are half-spaces, so the signed decreasing
rearrangement is u°(s) = h(Φ⁻¹(s)) exactly and the Ehrhard symmetral of u
is u itself. Gradient rearrangements are computed by level-set inversion
over the monotone branches of |h′|.

A :class:`RearrangedFunction` is a function on (0, 1). When it is of the
form s ↦ w(Φ⁻¹(s)) it may carry ``log_w`` and integrals are then taken in
the τ variable against the Gaussian weight; otherwise they are taken after
the substitution s = e^{-v}, which keeps logarithmic singularities at 0
integrable by adaptive quadrature.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from gaussmoser.exceptions import ConfigurationError
from gaussmoser.gauss_core import (
    FINE,
    LOG_SQRT_2PI,
    gauss_tail,
    gauss_tail_inv,
    isoperimetric,
)
from gaussmoser.library.quadrature import panel_edges, panel_sum

LOGGER = logging.getLogger(__name__)

# s = e^{-v} for v up to this stays inside the double range.
V_MAX = 690.0
# Integrands are capped at e^LOG_CAP; modulars that large only need to be "huge".
LOG_CAP = 600.0
TAU_LIMIT = 38.0


def _scalar(func):
    """Adapt a vectorized callable for scipy's scalar integrators."""
    return lambda x: float(func(np.asarray([x], dtype=float))[0])


@dataclass(frozen=True, eq=False)
class RearrangedFunction:
    """A nonnegative function on (0, 1), zero outside (support_start, support_end).

    :param g: Vectorized values on (0, 1).
    :param log_w: Optional log w(τ) with g(s) = w(Φ⁻¹(s)).
    :param tau_range: τ-interval where w is nonzero.
    :param decreasing: False for measurable representatives that are not
        rearranged (only modulars and pairings are then available).
    """

    g: Callable
    support_end: float = 1.0
    support_start: float = 0.0
    breakpoints: Tuple[float, ...] = ()
    log_w: Optional[Callable] = None
    tau_range: Tuple[float, float] = (-math.inf, math.inf)
    tau_breakpoints: Tuple[float, ...] = ()
    tau_at_log_level: Optional[Callable] = None
    decreasing: bool = True
    label: str = ""

    def __call__(self, s):
        """Values at s, zero outside the support."""
        s = np.asarray(s, dtype=float)
        inside = (s > self.support_start) & (s < self.support_end)
        safe = np.where(inside, s, 0.5 * (self.support_start + self.support_end))
        return np.where(inside, self.g(safe), 0.0)

    def log_value(self, s):
        """log of the values, -inf outside the support."""
        with np.errstate(divide="ignore"):
            return np.log(self(s))

    def scaled(self, factor):
        """The function multiplied by a positive constant."""
        log_w = None
        if self.log_w is not None:
            log_w = lambda tau, base=self.log_w: base(tau) + math.log(factor)
        return RearrangedFunction(
            g=lambda s, base=self.g: factor * base(s),
            support_end=self.support_end,
            support_start=self.support_start,
            breakpoints=self.breakpoints,
            log_w=log_w,
            tau_range=self.tau_range,
            tau_breakpoints=self.tau_breakpoints,
            decreasing=self.decreasing,
            label="%r*%s" % (factor, self.label),
        )

    def integrate_log(self, transform, quadrature=FINE, log_levels=()):
        """∫₀¹ exp(transform(log f(s))) ds.

        ``transform`` maps log values to log integrand values and must send
        -inf to -inf. Returns +inf when a tail-growth test shows that the
        integral diverges.
        ``log_levels`` are log values where the transform has kinks; they
        become panel edges when the Gaussian form can invert its levels.

        :param transform: Vectorized map on log values.
        :type transform: callable
        :param quadrature: Tolerances.
        :type quadrature: :obj:`gaussmoser.gauss_core.Quadrature`
        :param log_levels: Kinks of the transform.
        :type log_levels: iterable
        :return: The integral.
        :rtype: float
        """
        if self.log_w is not None:
            return self._integrate_gauss(transform, quadrature, log_levels)
        return self._integrate_unit(transform, quadrature)

    def _integrate_gauss(self, transform, quadrature, log_levels=()):
        lo, hi = self.tau_range
        cuts = list(self.tau_breakpoints)
        if self.tau_at_log_level is not None:
            cuts.extend(float(self.tau_at_log_level(level)) for level in log_levels)

        def log_integrand(tau):
            value = transform(self.log_w(tau)) - 0.5 * tau * tau - LOG_SQRT_2PI
            return np.minimum(value, LOG_CAP)

        for end in (lo, hi):
            if math.isinf(end):
                far = np.array([20.0, 40.0, 80.0, 160.0]) * math.copysign(1.0, end)
                values = log_integrand(far)
                growing = np.isfinite(values[-1]) and values[-1] >= values[-2]
                if values[-1] > -50.0 or growing:
                    LOGGER.debug("Gaussian tail grows at %r: %r", end, values)
                    return math.inf
        if math.isfinite(lo) and math.isfinite(hi):
            edges = panel_edges(lo, hi, cuts, unit=0.5)
            return panel_sum(lambda tau: np.exp(log_integrand(tau)), edges)
        points = [p for p in cuts if lo < p < hi]
        if lo < 0.0 < hi:
            points.append(0.0)
        return quadrature.integrate(
            _scalar(lambda tau: np.exp(log_integrand(tau))), lo, hi, points=points
        )

    def _integrate_unit(self, transform, quadrature):
        if self.support_end <= self.support_start:
            return 0.0

        def log_integrand(v):
            return np.minimum(transform(self.log_value(np.exp(-v))) - v, LOG_CAP)

        if self.support_start <= 0.0:
            far = log_integrand(np.array([V_MAX / 4, V_MAX / 2, V_MAX]))
            if np.isfinite(far[-1]) and not far[-1] < far[-2] < far[-3]:
                LOGGER.debug("Integrand does not decay at s -> 0: %r", far)
                return math.inf
        lo = -math.log(self.support_end)
        hi = -math.log(self.support_start) if self.support_start > 0 else math.inf
        points = [-math.log(b) for b in self.breakpoints if 0.0 < b < 1.0]
        return quadrature.integrate(
            _scalar(lambda v: np.exp(log_integrand(v))), lo, hi, points=points
        )


def indicator(measure, start=0.0):
    """Indicator of (start, start + measure) as a function on (0, 1)."""
    return RearrangedFunction(
        g=np.ones_like,
        support_start=start,
        support_end=start + measure,
        decreasing=start == 0.0,
        label="1_(%r,%r)" % (start, start + measure),
    )


def _tau_at_inverse_density(log_level):
    return math.sqrt(2.0 * max(log_level - LOG_SQRT_2PI, 0.0))


def inverse_isoperimetric(s):
    """1/I restricted to (s, 1/2), in Gaussian form 1/φ(τ) on (0, Φ⁻¹(s))."""
    top = float(gauss_tail_inv(s)) if s < 0.5 else 0.0
    return RearrangedFunction(
        g=lambda r: 1.0 / isoperimetric(r),
        support_start=s,
        support_end=0.5,
        log_w=lambda tau: 0.5 * tau * tau + LOG_SQRT_2PI,
        tau_at_log_level=_tau_at_inverse_density,
        tau_range=(0.0, top),
        decreasing=False,
        label="1/I on (%r, 1/2)" % s,
    )


def inverse_isoperimetric_tail(t):
    """1/I on (Φ(t), 1/2) for t possibly beyond the double range of Φ(t)."""
    return RearrangedFunction(
        g=lambda r: 1.0 / isoperimetric(r),
        support_start=float(gauss_tail(t)),
        support_end=0.5,
        log_w=lambda tau: 0.5 * tau * tau + LOG_SQRT_2PI,
        tau_at_log_level=_tau_at_inverse_density,
        tau_range=(0.0, float(t)),
        decreasing=False,
        label="1/I on (Phi(%r), 1/2)" % t,
    )


@dataclass(frozen=True, eq=False)
class Profile:  # pylint:disable=too-many-instance-attributes
    """u(x) = h(x₁) with h nondecreasing.

    ``gradient_star`` and ``gradient_support`` give |∇u|* in closed form
    when the construction knows it; :func:`gradient_rearrangement` falls
    back to level-set inversion otherwise. ``certificates`` carries
    family specific data (parameters, closed forms, constraint values).
    """

    h: Callable
    h_prime: Callable
    breakpoints: Tuple[float, ...] = ()
    label: str = ""
    log_h_prime: Optional[Callable] = None
    gradient_star: Optional[Callable] = None
    gradient_support: float = 1.0
    gradient_breakpoints: Tuple[float, ...] = ()
    odd: bool = False
    certificates: dict = field(default_factory=dict)

    def log_gradient(self, tau):
        """log|h′(τ)|."""
        if self.log_h_prime is not None:
            return self.log_h_prime(tau)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.h_prime(tau)))


def signed_rearrangement(profile):
    """u°(s) = h(Φ⁻¹(s)) for the nondecreasing profile h."""
    return lambda s: profile.h(gauss_tail_inv(np.asarray(s, dtype=float)))


def ehrhard_symmetral(profile):
    """x ↦ u°(Φ(x)); reproduces a monotone profile."""
    rearranged = signed_rearrangement(profile)
    return lambda x: rearranged(gauss_tail(np.asarray(x, dtype=float)))


def _branches(profile, samples=65):
    """Monotone branches of |h′| as (σ_lo, σ_hi, increasing_in_x) in Φ-coordinates."""
    cuts = [-math.inf] + sorted(profile.breakpoints) + [math.inf]
    branches = []
    for left, right in zip(cuts[:-1], cuts[1:]):
        sigma_hi = 1.0 if left == -math.inf else float(gauss_tail(left))
        sigma_lo = 0.0 if right == math.inf else float(gauss_tail(right))
        if sigma_hi - sigma_lo <= 0.0:
            continue
        grid = np.linspace(sigma_lo, sigma_hi, samples + 2)[1:-1]
        values = np.abs(profile.h_prime(gauss_tail_inv(grid)))
        steps = np.diff(values)
        scale = 1e-12 * max(1.0, float(np.max(values)))
        if np.all(steps <= scale):
            branches.append((sigma_lo, sigma_hi, True))
        elif np.all(steps >= -scale):
            branches.append((sigma_lo, sigma_hi, False))
        else:
            raise ConfigurationError(
                "|h'| is not monotone between %r and %r in profile %r"
                % (left, right, profile.label)
            )
    return branches


def _distribution(profile, branches, level, iterations=60):
    """γ₁{|h′| > level}, vectorized over levels."""
    level = np.asarray(level, dtype=float)
    total = np.zeros_like(level)
    for sigma_lo, sigma_hi, increasing in branches:
        lo = np.full_like(level, sigma_lo)
        hi = np.full_like(level, sigma_hi)
        for _ in range(iterations):
            middle = 0.5 * (lo + hi)
            inner = np.clip(middle, 1e-300, 1.0 - 1e-16)
            above = np.abs(profile.h_prime(gauss_tail_inv(inner))) > level
            # increasing in x means decreasing in σ: the set sits at small σ
            grow = above if increasing else ~above
            lo = np.where(grow, middle, lo)
            hi = np.where(grow, hi, middle)
        boundary = 0.5 * (lo + hi)
        total += (boundary - sigma_lo) if increasing else (sigma_hi - boundary)
    return total


def gradient_rearrangement(profile):
    """Decreasing rearrangement |∇u|* of x₁ ↦ |h′(x₁)| under γ₁.

    :raises ConfigurationError: If |h′| is not monotone between breakpoints.
    :return: The rearranged gradient.
    :rtype: :obj:`RearrangedFunction`
    """
    if profile.gradient_star is not None:
        return RearrangedFunction(
            g=profile.gradient_star,
            support_end=profile.gradient_support,
            breakpoints=profile.gradient_breakpoints,
            label="|grad %s|*" % profile.label,
        )
    branches = _branches(profile)
    support = float(_distribution(profile, branches, np.array([0.0]))[0])
    if support < 1e-15:
        support = 0.0

    def star(s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        hi = np.ones_like(s)
        for _ in range(200):
            open_ = _distribution(profile, branches, hi) > s
            if not np.any(open_):
                break
            hi = np.where(open_, 2.0 * hi, hi)
        lo = np.zeros_like(s)
        for _ in range(100):
            middle = 0.5 * (lo + hi)
            small = _distribution(profile, branches, middle) <= s
            hi = np.where(small, middle, hi)
            lo = np.where(small, lo, middle)
        return hi

    result = RearrangedFunction(
        g=star, support_end=support, label="|grad %s|*" % profile.label
    )
    grid = np.linspace(0.0, support, 18)[1:-1]
    values = result(grid)
    if np.any(np.diff(values) > 1e-9 * max(1.0, float(np.max(values, initial=0.0)))):
        raise ConfigurationError("Rearranged gradient of %r is not nonincreasing" % profile.label)
    return result


def decreasing_rearrangement(samples):
    """φ* of a sample vector with uniform weights."""
    return np.sort(np.abs(np.asarray(samples, dtype=float)))[::-1]


def maximal_function(function, s, quadrature=FINE):
    """φ**(s) = (1/s)∫₀^s φ*, +inf if the integral diverges.

    The substitution r = s·e^{-v} gives ∫₀^∞ φ*(s e^{-v}) e^{-v} dv, whose
    integrand stays bounded for logarithmic singularities at 0.

    :param function: Rearranged function.
    :type function: :obj:`RearrangedFunction`
    :param s: Point or points in (0, 1].
    :type s: float or :obj:`numpy.ndarray`
    :return: φ**(s).
    :rtype: float or :obj:`numpy.ndarray`
    """
    array = np.atleast_1d(np.asarray(s, dtype=float))
    result = np.empty_like(array)
    if function.support_end <= function.support_start:
        return 0.0 if np.ndim(s) == 0 else np.zeros_like(array)
    for index, point in enumerate(array):
        def log_integrand(v, point=point):
            return function.log_value(point * np.exp(-v)) - v

        far = log_integrand(np.array([V_MAX / 4, V_MAX / 2, V_MAX]))
        if np.isfinite(far[-1]) and not far[-1] < far[-2] < far[-3]:
            result[index] = math.inf
            continue
        points = [
            math.log(point / b)
            for b in (function.support_end,) + tuple(function.breakpoints)
            if 0.0 < b < point
        ]
        lo = max(0.0, math.log(point / function.support_end))
        result[index] = quadrature.integrate(
            _scalar(lambda v, f=log_integrand: np.exp(f(v))), lo, math.inf, points=points
        )
    return float(result[0]) if np.ndim(s) == 0 else result


def median_and_mean(profile, quadrature=FINE):
    """(med, mv) of u = h(x₁): med = h(0), mv = ∫h dγ₁.

    :raises IntegrationError: If h is not Gaussian-integrable.
    """
    median = float(profile.h(np.asarray([0.0]))[0])
    density = lambda x: profile.h(x) * np.exp(-0.5 * x * x - LOG_SQRT_2PI)
    points = sorted(set(profile.breakpoints) | {0.0})
    mean = quadrature.integrate(_scalar(density), -math.inf, math.inf, points=points)
    return median, mean


def gradient_l1(profile, quadrature=FINE):
    """∫|h′| dγ₁."""
    density = lambda x: np.abs(profile.h_prime(x)) * np.exp(-0.5 * x * x - LOG_SQRT_2PI)
    points = sorted(set(profile.breakpoints) | {0.0})
    return quadrature.integrate(_scalar(density), -math.inf, math.inf, points=points)


def med_mv_bound(profile, quadrature=FINE):
    """(|med - mv|, √(π/2)·‖∇u‖₁); the first never exceeds the second."""
    median, mean = median_and_mean(profile, quadrature)
    return abs(median - mean), math.sqrt(0.5 * math.pi) * gradient_l1(profile, quadrature)


def symubound_rhs(grad_star, s, quadrature=FINE):
    """(1/I(s))∫₀^s |∇u|* + ∫_s^{1/2} |∇u|*/I.

    The second integral is taken in τ = Φ⁻¹(r), where dr/I(r) = -dτ.

    :param grad_star: |∇u|*.
    :type grad_star: :obj:`RearrangedFunction`
    :param s: Point in (0, 1/2].
    :type s: float
    :return: The bound on u°(s) - med(u).
    :rtype: float
    """
    if not 0.0 < s <= 0.5:
        raise ConfigurationError("s must lie in (0, 1/2], got %r" % s)
    head = s * maximal_function(grad_star, s, quadrature) / isoperimetric(s)
    if not math.isfinite(head):
        return math.inf
    top = float(gauss_tail_inv(s)) if s < 0.5 else 0.0
    cuts = [
        float(gauss_tail_inv(b))
        for b in (grad_star.support_end,) + tuple(grad_star.breakpoints)
        if s < b < 0.5
    ]
    integrand = lambda tau: grad_star(gauss_tail(tau))
    tail = quadrature.integrate(_scalar(integrand), 0.0, top, points=cuts) if top else 0.0
    return head + tail


def gradient_representative(profile):
    """|h′(Φ⁻¹(s))| = -u°′(s)·I(s) as a function on (0, 1), Gaussian form."""
    return RearrangedFunction(
        g=lambda s: np.abs(profile.h_prime(gauss_tail_inv(s))),
        log_w=profile.log_gradient,
        tau_breakpoints=tuple(profile.breakpoints),
        decreasing=False,
        label="-u°'I of %s" % profile.label,
    )


def polya_szego_check(profile, function, quadrature=FINE):
    """(‖-u°′·I‖_{L^B(0,1)}, ‖∇u‖_{L^B(γ)}) by independent quadratures.

    The left side integrates in the Gaussian variable, the right side on
    (0, 1) through the rearranged gradient. They agree for monotone
    profiles.
    """
    from gaussmoser import norms  # pylint:disable=import-outside-toplevel,cyclic-import

    lhs = norms.luxemburg_norm(function, gradient_representative(profile), quadrature)
    rhs = norms.luxemburg_norm(function, gradient_rearrangement(profile), quadrature)
    return lhs.value, rhs.value


def hardy_littlewood_check(f, g, subset=None, seed=0):
    """(Σ_E |f g|/n, ∫₀^{|E|} f* g*) for uniform-weight samples.

    :param subset: Boolean mask of E; drawn at random when omitted.
    :raises ConfigurationError: If the sample lengths differ.
    """
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != g.shape:
        raise ConfigurationError("Length mismatch %r != %r" % (f.shape, g.shape))
    count = f.size
    if subset is None:
        subset = np.random.default_rng(seed).random(count) < 0.5
    subset = np.asarray(subset, dtype=bool)
    lhs = float(np.sum(np.abs(f[subset] * g[subset]))) / count
    size = int(np.sum(subset))
    rhs = float(
        np.sum(decreasing_rearrangement(f)[:size] * decreasing_rearrangement(g)[:size])
    )
    return lhs, rhs / count


def equimeasurability_gap(profile, level, iterations=200):
    """|γ₁{h > level} - |{u° > level}|| computed by two independent bisections."""
    lo, hi = -TAU_LIMIT, TAU_LIMIT
    h = lambda x: float(profile.h(np.asarray([x]))[0])
    if h(hi) <= level:
        gauss_side = 0.0
    elif h(lo) > level:
        gauss_side = 1.0
    else:
        for _ in range(iterations):
            middle = 0.5 * (lo + hi)
            lo, hi = (middle, hi) if h(middle) <= level else (lo, middle)
        gauss_side = float(gauss_tail(hi))
    rearranged = signed_rearrangement(profile)
    value = lambda s: float(rearranged(np.asarray([s]))[0])
    lo, hi = 1e-300, 1.0 - 1e-16
    if value(lo) <= level:
        unit_side = 0.0
    elif value(hi) > level:
        unit_side = 1.0
    else:
        for _ in range(iterations):
            middle = 0.5 * (lo + hi)
            lo, hi = (middle, hi) if value(middle) > level else (lo, middle)
        unit_side = lo
    return abs(gauss_side - unit_side)

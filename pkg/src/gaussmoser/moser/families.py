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
"""Extremal profiles u(x) = h(x₁) and their evaluation against the Moser integrand.

Every family is a :obj:`gaussmoser.rearrange.Profile`; odd families are
built from the gradient magnitude G on [t0, ∞) as h(x) = sgn(x)·∫_{t0}^{|x|}G.
All integrals over Gauss space are one-dimensional integrals against γ₁.
"""
import logging
import math

import numpy as np

from gaussmoser.exceptions import ConfigurationError, ConstructionError, DomainError
from gaussmoser.gauss_core import (
    FINE,
    LOG_SQRT_2PI,
    Quadrature,
    gauss_density,
    gauss_tail,
    gauss_tail_inv,
    gauss_tail_inv_log,
    log_gauss_tail,
)
from gaussmoser.library.quadrature import Antiderivative, geometric_edges, panel_sum
from gaussmoser.moser.curves import FAMILY_T_GRID, classify, log_truncations
from gaussmoser.moser.functionals import kappa_beta, leading_term, power
from gaussmoser.moser.schemas import FamilyReport
from gaussmoser.norms import (
    luxemburg_norm,
    marcinkiewicz_M_norm,
    marcinkiewicz_m_norm,
    modular,
)
from gaussmoser.rearrange import Profile, gradient_rearrangement, median_and_mean
from gaussmoser.young import ExpTail, flattened_shift

LOGGER = logging.getLogger(__name__)

CONSTRAINTS = ("luxemburg", "marcinkiewicz-M", "marcinkiewicz-m", "modular")
# Relative slack of the constraint checks norm <= 1 and modular <= M.
CONSTRAINT_SLACK = 1e-8


def _odd(values, x):
    return np.sign(x) * values


def family_supercritical(beta, lam, t0):
    """Odd profile with |h′(x)| = (λ·log(Φ(t0)/Φ(|x|)))^{1/β} beyond t0, zero inside.

    Its gradient modular ∫e^{|∇u|^β}dγ equals 1 - 2Φ(t0) + 2Φ(t0)/(1 - λ).

    :param beta: Tail exponent, > 0.
    :type beta: float
    :param lam: λ in (0, 1).
    :type lam: float
    :param t0: Inner radius, > 0.
    :type t0: float
    :raises DomainError: For parameters outside their ranges.
    :return: The profile.
    :rtype: :obj:`gaussmoser.rearrange.Profile`
    """
    if not 0.0 < lam < 1.0:
        raise DomainError("lambda must lie in (0, 1), got %r" % lam)
    if not t0 > 0.0 or not beta > 0.0:
        raise DomainError("t0 and beta must be positive, got %r and %r" % (t0, beta))
    log_tail0 = float(log_gauss_tail(t0))
    mass = 2.0 * float(gauss_tail(t0))

    def log_gap(tau):
        return np.maximum(log_tail0 - log_gauss_tail(np.abs(tau)), 0.0)

    def h_prime(x):
        return (lam * log_gap(x)) ** (1.0 / beta)

    def log_h_prime(x):
        with np.errstate(divide="ignore"):
            return (math.log(lam) + np.log(log_gap(x))) / beta

    integral = Antiderivative(h_prime, origin=t0, graded=True)

    def star(s):
        with np.errstate(divide="ignore"):
            return (lam * np.maximum(np.log(mass / np.asarray(s, dtype=float)), 0.0)) ** (
                1.0 / beta
            )

    closed = 1.0 - mass + mass / (1.0 - lam)
    LOGGER.debug("Supercritical profile beta=%r lambda=%r t0=%r", beta, lam, t0)
    return Profile(
        h=lambda x: _odd(integral(np.abs(x)), x),
        h_prime=h_prime,
        breakpoints=(-t0, t0),
        label="supercritical(beta=%r, lambda=%r, t0=%r)" % (beta, lam, t0),
        log_h_prime=log_h_prime,
        gradient_star=star,
        gradient_support=mass,
        odd=True,
        certificates={
            "beta": beta,
            "lambda": lam,
            "t0": t0,
            "gradient_modular": closed,
            "median": 0.0,
            "mean": 0.0,
        },
    )


def supercritical_t0(beta, lam, function, M=2.0):  # pylint:disable=invalid-name
    """Inner radius making the supercritical profile admissible.

    Picks Φ(t0) just below min{(M - 1)(1 - λ)/2, 1/(2(B(τ0⁺) + N/(1 - λ)))},
    so that ∫B(|∇u|)dγ ≤ 1 and ∫e^{|∇u|^β}dγ ≤ M.

    :raises DomainError: If M <= 1 or λ is outside (0, 1).
    """
    if M <= 1.0:
        raise DomainError("M must exceed 1, got %r" % M)
    if not 0.0 < lam < 1.0:
        raise DomainError("lambda must lie in (0, 1), got %r" % lam)
    norm_bound = 1.0 / (2.0 * (function.tail_floor + function.N / (1.0 - lam)))
    modular_bound = 0.5 * (M - 1.0) * (1.0 - lam)
    return float(gauss_tail_inv(0.999 * min(norm_bound, modular_bound, 0.499)))


def critical_maximal_function(beta, N, s):  # pylint:disable=invalid-name
    """(log 1/(Ns))^{1/β}, the maximal function of the critical gradient below s0."""
    return np.log(1.0 / (N * np.asarray(s, dtype=float))) ** (1.0 / beta)


def family_marcinkiewicz_critical(beta, N, tau0=0.0):  # pylint:disable=invalid-name
    """Odd profile whose gradient rearrangement is g(s) = L^{1/β} - L^{1/β-1}/β on (0, s0).

    Here L = log(1/(Ns)) and s0 = min{1/2, e^{-τ0^β}/N}. The gradient is
    g(2Φ(|x|)) for |x| ≥ t0 with 2Φ(t0) = s0, so that the rearrangement
    is g itself and its maximal function is L^{1/β}.

    :raises DomainError: If β is outside (0, 2] or N <= 0.
    :raises ConstructionError: If L(s0) < 1/β, where g is not a
        nonnegative decreasing function.
    """
    if not 0.0 < beta <= 2.0:
        raise DomainError("The critical family needs beta in (0, 2], got %r" % beta)
    if not N > 0.0:
        raise DomainError("N must be positive, got %r" % N)
    s0 = min(0.5, math.exp(-(tau0**beta)) / N)
    level0 = math.log(1.0 / (N * s0))
    if level0 < 1.0 / beta:
        raise ConstructionError(
            "g is not decreasing on (0, s0): log(1/(N s0))=%r < 1/beta=%r" % (level0, 1.0 / beta)
        )
    t0 = float(gauss_tail_inv(0.5 * s0))

    def level(tau):
        return -math.log(2.0 * N) - log_gauss_tail(np.maximum(np.abs(tau), t0))

    def h_prime(x):
        x = np.asarray(x, dtype=float)
        values = level(x)
        result = values ** (1.0 / beta - 1.0) * (values - 1.0 / beta)
        return np.where(np.abs(x) >= t0, result, 0.0)

    def star(s):
        values = np.log(1.0 / (N * np.asarray(s, dtype=float)))
        return values ** (1.0 / beta - 1.0) * (values - 1.0 / beta)

    integral = Antiderivative(h_prime, origin=t0)
    LOGGER.debug("Critical profile beta=%r N=%r s0=%r t0=%r", beta, N, s0, t0)
    return Profile(
        h=lambda x: _odd(integral(np.abs(x)), x),
        h_prime=h_prime,
        breakpoints=(-t0, t0),
        label="marcinkiewicz-critical(beta=%r, N=%r)" % (beta, N),
        gradient_star=star,
        gradient_support=s0,
        odd=True,
        certificates={
            "beta": beta,
            "N": N,
            "s0": s0,
            "t0": t0,
            "level0": level0,
            "median": 0.0,
            "mean": 0.0,
        },
    )


def _flattened_parameters(beta, t0):
    """(t0′, σ(t0), tail) for A(t) = e^{t^β}."""
    if beta <= 2.0:
        raise DomainError("The flattened family needs beta > 2, got %r" % beta)
    shifted = flattened_shift(beta, t0)
    if shifted <= 0.0:
        raise ConstructionError("Flattened family needs t0' > 0, got %r for t0=%r" % (shifted, t0))
    log_slope = t0**beta + (beta - 1.0) * math.log(t0) + math.log(beta)
    return shifted, math.sqrt(2.0 * log_slope), ExpTail(float(t0), 1.0, float(beta))


def _tail_power(tail, tau):
    """u = t^β with a(t) = e^{τ²/2}."""
    tau = np.asarray(tau, dtype=float)
    return tail.root_power(0.5 * tau * tau)


def family_flattened(beta, N, t0, k):  # pylint:disable=invalid-name
    """Odd profile with h′ = t0′ on |x| < σ, a⁻¹(e^{x²/2}) on σ ≤ |x| < k, zero beyond.

    σ = √(2 log a(t0)) for a = A′, A(t) = e^{t^β}; the gradient then
    takes its values on the flat and exponential parts of
    construct_flattened(N, β, t0).

    :raises DomainError: If β <= 2 or k <= σ.
    """
    shifted, sigma, tail = _flattened_parameters(beta, t0)
    if k <= sigma:
        raise DomainError("k must exceed sigma(t0)=%r, got %r" % (sigma, k))

    def h_prime(x):
        x = np.abs(np.asarray(x, dtype=float))
        inner = np.clip(x, sigma, k)
        values = _tail_power(tail, inner) ** (1.0 / beta)
        return np.where(x < sigma, shifted, np.where(x < k, values, 0.0))

    integral = Antiderivative(
        lambda x: _tail_power(tail, np.maximum(x, sigma)) ** (1.0 / beta), origin=sigma
    )

    def h(x):
        x = np.asarray(x, dtype=float)
        size = np.abs(x)
        return _odd(shifted * np.minimum(size, sigma) + integral(np.minimum(size, k)), x)

    outer = float(gauss_tail(k))
    split = 2.0 * (float(gauss_tail(sigma)) - outer)

    def star(s):
        s = np.asarray(s, dtype=float)
        inner = np.minimum(s, split)
        abscissa = gauss_tail_inv(np.clip(0.5 * inner + outer, 1e-300, 0.5))
        values = _tail_power(tail, np.clip(abscissa, sigma, k)) ** (1.0 / beta)
        return np.where(s < split, values, shifted)

    return Profile(
        h=h,
        h_prime=h_prime,
        breakpoints=(-k, -sigma, sigma, k),
        label="flattened(beta=%r, N=%r, t0=%r, k=%r)" % (beta, N, t0, k),
        gradient_star=star,
        gradient_support=1.0 - 2.0 * outer,
        gradient_breakpoints=(split,),
        odd=True,
        certificates={
            "beta": beta,
            "N": N,
            "t0": t0,
            "k": k,
            "sigma": sigma,
            "shifted": shifted,
            "median": 0.0,
            "mean": 0.0,
        },
    )


def _log_integral(density_at, lo):
    """∫_lo^∞ density in τ = lo·e^v, summed on geometric panels in v."""
    edges = np.concatenate([[0.0], geometric_edges(1.0 / 64.0, 256.0)])
    return panel_sum(lambda v: density_at(lo * np.exp(v)) * lo * np.exp(v), edges)


def flattened_modular(N, beta, t0):  # pylint:disable=invalid-name
    """M(t0) = 2N∫_σ^∞ e^{u}φ dτ, the supremum over k of the flattened modular.

    e^{u}φ = 1/(√(2π)·β·u^{(β-1)/β}) by the choice of u, which keeps the
    integrand far from overflow.
    """
    _, sigma, tail = _flattened_parameters(beta, t0)
    density = lambda tau: _tail_power(tail, tau) ** ((1.0 - beta) / beta)
    return N * math.sqrt(2.0 / math.pi) / beta * _log_integral(density, sigma)


def flattened_lambda(beta, t0):
    """lim_k (∫₀^k h′ - (2^{-1/β}β/(2+β))k^{2/β+1}) for the flattened family.

    The limit is t0′σ - g(σ) - ∫_σ^∞ ((τ²/2)^{1/β} - u^{1/β})dτ; the gap
    (τ²/2)^{1/β} - u^{1/β} = u^{1/β}·expm1(log1p(c/u)/β) with
    c = τ²/2 - u = ((β-1)/β)log u + log β.
    """
    shifted, sigma, tail = _flattened_parameters(beta, t0)

    def gap(tau):
        u = _tail_power(tail, tau)
        excess = 0.5 * tau * tau - u
        return u ** (1.0 / beta) * np.expm1(np.log1p(excess / u) / beta)

    return shifted * sigma - leading_term(beta, sigma) - _log_integral(gap, sigma)


def flattened_lower_bound(beta, t0, k, kappa=None):
    """log of 2Φ(k)·exp((κ·h(k))^p), a lower bound of the truncated target integral.

    :param kappa: Defaults to κ_β.
    :type kappa: float
    """
    kappa = kappa_beta(beta) if kappa is None else kappa
    profile = family_flattened(beta, 1.0, t0, k)
    height = float(profile.h(np.asarray([k]))[0])
    return math.log(2.0) + float(log_gauss_tail(k)) + (kappa * height) ** power(beta)


def head_tail_lambda(N, beta, t0):  # pylint:disable=invalid-name
    """J(t) - ∫_{τ0}^t (log 1/(NΦ))^{1/β} for the head-tail B = N·𝒜, constant in t > τ1.

    τ1 solves NΦ(τ1)e^{t0^β} = 1 and τ0 = Φ⁻¹(1/N) (0 if N <= 2). The
    head integral (t0/(N e^{t0^β}))∫₀^{τ1}dτ/Φ is evaluated as
    t0∫₀^{τ1}Φ(τ1)/Φ(τ1 - r)dr.

    :raises DomainError: If N e^{t0^β} <= 2.
    """
    log_level = t0**beta + math.log(N)
    if log_level <= math.log(2.0):
        raise DomainError("Head-tail shift needs N e^{t0^beta} > 2, got %r" % math.exp(log_level))
    tau1 = float(gauss_tail_inv_log(-log_level))
    edges = np.concatenate([[0.0], geometric_edges(0.25 / tau1, tau1)])
    head = t0 * panel_sum(
        lambda r: np.exp(-log_level - log_gauss_tail(tau1 - r)), edges
    )
    tau0 = 0.0 if N <= 2.0 else float(gauss_tail_inv(1.0 / N))
    tail = FINE.integrate(
        lambda tau: max(-math.log(N) - float(log_gauss_tail(tau)), 0.0) ** (1.0 / beta),
        tau0,
        tau1,
    )
    return head - tail


def family_medmv(k):
    """h = 0 on (-∞, 0], kx on (0, 1/k], 1 beyond.

    :raises DomainError: For k < 1.
    """
    if k < 1.0:
        raise DomainError("k must be at least 1, got %r" % k)
    edge = 1.0 / k
    upper = float(gauss_tail(edge))
    mean = upper + k * (float(gauss_density(0.0)) - float(gauss_density(edge)))
    return Profile(
        h=lambda x: np.clip(k * np.asarray(x, dtype=float), 0.0, 1.0),
        h_prime=lambda x: np.where(
            (np.asarray(x) > 0.0) & (np.asarray(x) < edge), float(k), 0.0
        ),
        breakpoints=(0.0, edge),
        label="medmv(k=%r)" % k,
        gradient_star=lambda s: np.full_like(np.asarray(s, dtype=float), float(k)),
        gradient_support=0.5 - upper,
        certificates={
            "k": k,
            "median": 0.0,
            "mean": mean,
            "gradient_l1": k * (0.5 - upper),
        },
    )


def family_linear():
    """u(x) = x₁, with ‖∇u‖_∞ = 1 and med = mv = 0."""
    return Profile(
        h=lambda x: np.asarray(x, dtype=float),
        h_prime=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        label="linear",
        log_h_prime=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        gradient_star=lambda s: np.ones_like(np.asarray(s, dtype=float)),
        odd=True,
        certificates={"sup_norm": 1.0, "median": 0.0, "mean": 0.0},
    )


def target_curve(
    profile, beta, kappa, T_grid=FAMILY_T_GRID, rel_tol=1e-6, route="family"
):  # pylint:disable=invalid-name,too-many-arguments
    """Verdict on ∫_{|x₁|≤T} e^{(κ|u|)^p}dγ₁ over the grid, p = 2β/(2+β).

    :return: Verdict with the curve as evidence.
    :rtype: :obj:`gaussmoser.moser.schemas.KappaVerdict`
    """
    exponent = power(beta)

    def side(sign):
        def log_integrand(x):
            x = np.asarray(x, dtype=float)
            return (
                (kappa * np.abs(profile.h(sign * x))) ** exponent - 0.5 * x * x - LOG_SQRT_2PI
            )

        return log_integrand

    cuts = sorted({abs(b) for b in profile.breakpoints if b != 0.0})
    right, nodes, values = log_truncations(side(1.0), T_grid, cuts, unit=0.5)
    grid = sorted({float(T) for T in T_grid})
    at_grid = side(1.0)(np.asarray(grid))
    if profile.odd:
        log_values = right + math.log(2.0)
    else:
        left, _, _ = log_truncations(side(-1.0), T_grid, cuts, unit=0.5)
        log_values = np.logaddexp(right, left)
        at_grid = np.logaddexp(at_grid, side(-1.0)(np.asarray(grid)))
    return classify(
        kappa,
        grid,
        log_values,
        at_grid,
        (nodes, values),
        rel_tol,
        route=route,
        fit_from=0.0,
    )


def gradient_modular(profile, beta, quadrature=FINE):
    """∫e^{|∇u|^β}dγ by quadrature in the log domain."""
    cuts = sorted(set(profile.breakpoints) | {0.0})

    def density(x):
        x = np.asarray([x], dtype=float)
        with np.errstate(over="ignore"):
            log_value = np.exp(beta * profile.log_gradient(x)) - 0.5 * x * x - LOG_SQRT_2PI
        return float(np.exp(log_value)[0])

    return quadrature.integrate(density, -math.inf, math.inf, points=cuts)


def evaluate_family(
    profile,
    beta,
    kappa,
    constraints=(),
    T_grid=FAMILY_T_GRID,
    function=None,
    quadrature=FINE,
    rel_tol=None,
    modular_bound=None,
):  # pylint:disable=invalid-name,too-many-arguments,too-many-locals
    """Constraints, centerings and target curve of a profile.

    Every computed norm and modular is checked against 1, and the gradient
    modular against ``modular_bound`` when given.

    :param profile: Profile to evaluate.
    :type profile: :obj:`gaussmoser.rearrange.Profile`
    :param beta: Exponent of the gradient modular and of p; inf for the
        supremum constraint.
    :type beta: float
    :param kappa: Constant of the target integral.
    :type kappa: float
    :param constraints: Subset of CONSTRAINTS, computed with ``function``.
    :type constraints: iterable
    :param rel_tol: Agreement of the last truncations for a finite verdict;
        GAUSSMOSER_REL_TOL when omitted.
    :type rel_tol: float
    :param modular_bound: M of the condition ∫e^{|∇u|^β}dγ <= M.
    :type modular_bound: float
    :raises ConfigurationError: For unknown constraints or a missing Young function.
    :return: The report.
    :rtype: :obj:`gaussmoser.moser.schemas.FamilyReport`
    """
    unknown = [name for name in constraints if name not in CONSTRAINTS]
    if unknown:
        raise ConfigurationError("Unknown constraints %r, valid: %r" % (unknown, CONSTRAINTS))
    if constraints and function is None:
        raise ConfigurationError("Constraints %r need a Young function" % (constraints,))
    norms = {}
    if constraints:
        star = gradient_rearrangement(profile)
        for name in constraints:
            if name == "luxemburg":
                norms[name] = luxemburg_norm(function, star, quadrature).value
            elif name == "marcinkiewicz-M":
                norms[name] = marcinkiewicz_M_norm(function, star, quadrature).value
            elif name == "marcinkiewicz-m":
                norms[name] = marcinkiewicz_m_norm(function, star).value
            else:
                norms[name] = modular(function, star, 1.0, quadrature)
    if profile.odd:
        median, mean = 0.0, 0.0
    else:
        median, mean = median_and_mean(profile, quadrature)
    grad_modular = (
        gradient_modular(profile, beta, quadrature) if math.isfinite(beta) else math.nan
    )
    rel_tol = Quadrature().rel_tol if rel_tol is None else rel_tol
    verdict = target_curve(profile, beta, kappa, T_grid, rel_tol, route="family")
    certificates = {
        key: value
        for key, value in profile.certificates.items()
        if isinstance(value, (int, float))
    }
    checks = {name: bool(value <= 1.0 + CONSTRAINT_SLACK) for name, value in norms.items()}
    if modular_bound is not None and math.isfinite(beta):
        checks["gradient_modular"] = bool(grad_modular <= modular_bound * (1.0 + CONSTRAINT_SLACK))
    failed = [name for name, holds in checks.items() if not holds]
    if failed:
        LOGGER.warning("Constraints %r fail for %s", failed, profile.label)
    LOGGER.info("Evaluated %s: %s", profile.label, verdict.classification)
    return FamilyReport(
        label=profile.label,
        kappa=kappa,
        beta=beta,
        gradient_modular=grad_modular,
        norms=norms,
        median=median,
        mean=mean,
        verdict=verdict,
        certificates=certificates,
        checks=checks,
    )

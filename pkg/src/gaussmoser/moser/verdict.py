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
"""Upper bound integral, lower bound families and the sharpness scan."""
import logging
import math

import numpy as np

from gaussmoser.exceptions import ConfigurationError, GaussMoserError
from gaussmoser.gauss_core import Quadrature
from gaussmoser.moser.curves import (
    DEFAULT_T_GRID,
    FAMILY_T_GRID,
    classify,
    decay_basis,
    log_truncations,
    normalize_grid,
    tail_basis,
)
from gaussmoser.moser.families import (
    family_linear,
    family_marcinkiewicz_critical,
    family_supercritical,
    supercritical_t0,
    target_curve,
)
from gaussmoser.moser.functionals import ORLICZ_KINDS, ReductionFunctional, kappa_beta
from gaussmoser.moser.schemas import ScanResult
from gaussmoser.norms import marcinkiewicz_M_norm
from gaussmoser.rearrange import gradient_rearrangement

LOGGER = logging.getLogger(__name__)

LOG_SQRT_2_OVER_PI = 0.5 * math.log(2.0 / math.pi)
# Smallest t used when fitting the late exponent of the upper bound.
FIT_FROM = 16.0


def moser_rhs(kappa, beta, functional, quadrature=None, T_grid=DEFAULT_T_GRID, rel_tol=None):
    """Classify √(2/π)∫₀^∞ exp([κF(t)]^p - t²/2)dt over increasing truncations.

    Power-law tails (Orlicz kinds with β < 2) are corrected with a fitted
    model of the late log integrand.

    :param kappa: κ > 0.
    :type kappa: float
    :param beta: Tail exponent; must match the functional for Orlicz kinds.
    :type beta: float
    :param functional: F.
    :type functional: :obj:`gaussmoser.moser.functionals.ReductionFunctional`
    :param quadrature: Truncation strategy and default tolerance.
    :type quadrature: :obj:`gaussmoser.gauss_core.Quadrature`
    :param T_grid: Truncation points.
    :type T_grid: iterable
    :raises ConfigurationError: If β does not match the functional.
    :return: The verdict.
    :rtype: :obj:`gaussmoser.moser.schemas.KappaVerdict`
    """
    quadrature = Quadrature() if quadrature is None else quadrature
    rel_tol = quadrature.rel_tol if rel_tol is None else rel_tol
    orlicz = functional.kind in ORLICZ_KINDS
    if orlicz and not math.isclose(beta, functional.beta, rel_tol=1e-12):
        raise ConfigurationError(
            "beta=%r does not match the Young function tail %r" % (beta, functional.beta)
        )
    if not kappa > 0.0:
        raise ConfigurationError("kappa must be positive, got %r" % kappa)

    def log_integrand(t):
        return functional.exponent(t, kappa) + LOG_SQRT_2_OVER_PI

    grid = normalize_grid(T_grid)
    log_values, nodes, values = log_truncations(log_integrand, grid)
    at_grid = log_integrand(np.asarray(grid))
    LOGGER.debug("Upper bound curve at kappa=%r: %r", kappa, log_values)
    return classify(
        kappa,
        grid,
        log_values,
        at_grid,
        (nodes, values),
        rel_tol,
        quadrature.truncation,
        decay=decay_basis(functional.beta) if orlicz else None,
        tail=tail_basis(functional.beta) if orlicz and functional.beta < 2.0 else None,
        route="upper",
        fit_from=FIT_FROM,
    )


def _critical_profile(function, rel_tol=1e-8):
    """Critical family admissible for the M-norm of ``function``, or None."""
    try:
        profile = family_marcinkiewicz_critical(function.beta, function.N, function.t0)
    except GaussMoserError as exception:
        LOGGER.warning("No critical family for %r: %s", function, exception)
        return None
    norm = marcinkiewicz_M_norm(function, gradient_rearrangement(profile)).value
    if norm > 1.0 + rel_tol:
        LOGGER.warning("Critical family has M-norm %r > 1 for %r", norm, function)
        return None
    return profile


def lower_route(kappa, beta, functional, family_grid=FAMILY_T_GRID, rel_tol=1e-6):
    """Verdict of the extremal family matching the constraint kind, or None.

    Orlicz kinds above κ_β use the supercritical family with
    λ = (1 + (κ_β/κ)^β)/2 and M = 2; Marcinkiewicz kinds with β ≤ 2 at
    κ ≥ κ_β use the critical family; supremum kinds at κ ≥ 1/√2 use u = x₁.
    """
    if functional.kind not in ORLICZ_KINDS:
        if kappa < kappa_beta(math.inf):
            return None
        return target_curve(family_linear(), math.inf, kappa, family_grid, rel_tol, "linear")
    function = functional.function
    threshold = kappa_beta(beta)
    marcinkiewicz = functional.kind.startswith("marcinkiewicz")
    if marcinkiewicz and beta <= 2.0 and kappa >= threshold * (1.0 - 1e-12):
        profile = _critical_profile(function)
        if profile is not None:
            return target_curve(profile, beta, kappa, family_grid, rel_tol, "critical")
    if kappa <= threshold:
        return None
    lam = 0.5 * (1.0 + (threshold / kappa) ** beta)
    t0 = supercritical_t0(beta, lam, function, M=2.0)
    profile = family_supercritical(beta, lam, t0)
    return target_curve(profile, beta, kappa, family_grid, rel_tol, "supercritical")


def _combine(upper, lower):
    if upper.classification == "finite":
        if lower is not None and lower.classification == "divergent":
            LOGGER.warning("Upper and lower routes disagree at kappa=%r", upper.kappa)
            return "inconclusive", "conflict"
        return "finite", "upper"
    if lower is not None and lower.classification == "divergent":
        return "divergent", lower.route
    return "inconclusive", "upper"


def sharpness_scan(
    beta, function, kind, kappas, quadrature=None, T_grid=DEFAULT_T_GRID, family_grid=FAMILY_T_GRID
):  # pylint:disable=too-many-arguments,too-many-locals
    """Per-κ verdicts from both routes and the transition estimate.

    :param beta: Tail exponent, inf for the supremum kinds.
    :type beta: float
    :param function: Young function B, None for the supremum kinds.
    :type function: :obj:`gaussmoser.young.YoungFunction`
    :param kind: Functional kind.
    :type kind: str
    :param kappas: κ grid.
    :type kappas: iterable
    :return: The scan.
    :rtype: :obj:`gaussmoser.moser.schemas.ScanResult`
    """
    quadrature = Quadrature() if quadrature is None else quadrature
    functional = ReductionFunctional(kind, beta, function)
    beta = functional.beta
    verdicts, lowers = [], []
    for kappa in sorted(float(k) for k in kappas):
        upper = moser_rhs(kappa, beta, functional, quadrature, T_grid)
        lower = lower_route(kappa, beta, functional, family_grid, quadrature.rel_tol)
        classification, route = _combine(upper, lower)
        verdicts.append(upper.copy(update={"classification": classification, "route": route}))
        lowers.append(lower)
    finite = [v.kappa for v in verdicts if v.classification == "finite"]
    divergent = [v.kappa for v in verdicts if v.classification == "divergent"]
    monotone = not (finite and divergent and max(finite) > min(divergent))
    if not monotone:
        LOGGER.warning("Classification regresses from divergent to finite in %r", kappas)
    transition = error = None
    if finite and divergent and monotone:
        low, high = max(finite), min(divergent)
        transition, error = 0.5 * (low + high), 0.5 * (high - low)
        LOGGER.info("Transition at %r +- %r (kappa_beta=%r)", transition, error, kappa_beta(beta))
    return ScanResult(
        beta=beta,
        kind=kind,
        kappa_beta=kappa_beta(beta),
        verdicts=verdicts,
        lower=lowers,
        transition=transition,
        transition_error=error,
        monotone=monotone,
    )

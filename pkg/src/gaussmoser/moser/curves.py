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
"""Truncated integrals ∫₀^T e^{L(t)}dt over a grid of T and their classification.

The integrals are accumulated in the log domain panel by panel, so a
divergent curve is reported by its logarithm long after e^{L} has left the
double range.
"""
import logging
import math

import numpy as np
from scipy import integrate
from scipy.special import logsumexp

from gaussmoser.exceptions import ConfigurationError, IntegrationError
from gaussmoser.library.quadrature import panel_edges, panel_nodes
from gaussmoser.moser.schemas import CurvePoint, KappaVerdict

LOGGER = logging.getLogger(__name__)

DEFAULT_T_GRID = tuple(8.0 * 2.0**j for j in range(9))
FAMILY_T_GRID = (4.0, 8.0, 16.0, 32.0, 64.0, 128.0)
CURVE_ORDER = 16
SUBPANELS = 4
# A fitted tail model is used only while it stays this close to the data.
TAIL_FIT_RESIDUAL = 1e-2
# exp() overflows beyond this.
LOG_DOUBLE_MAX = 709.0


def normalize_grid(grid):
    """Sorted unique positive truncation points.

    :raises ConfigurationError: If the grid is empty or has a point <= 0.
    """
    values = sorted({float(value) for value in grid})
    if not values or values[0] <= 0.0 or not all(map(math.isfinite, values)):
        raise ConfigurationError("Truncation grid needs finite positive points, got %r" % (grid,))
    return values


def truncation_edges(grid, breakpoints=(), unit=1.0, subpanels=SUBPANELS):
    """Panel edges on [0, T_max] that contain every T of the grid."""
    grid = normalize_grid(grid)
    edges = list(panel_edges(0.0, grid[0], breakpoints, unit=unit, uniform_until=grid[0]))
    for left, right in zip(grid[:-1], grid[1:]):
        edges.extend(np.linspace(left, right, subpanels + 1)[1:])
    edges.extend(b for b in breakpoints if 0.0 < b < grid[-1])
    return np.unique(np.asarray(edges, dtype=float)), grid


def log_truncations(log_integrand, grid, breakpoints=(), unit=1.0, order=CURVE_ORDER):
    """log ∫₀^T e^{L(t)}dt for each T of the grid.

    :param log_integrand: Vectorized L, any array shape.
    :type log_integrand: callable
    :param grid: Truncation points.
    :type grid: iterable
    :param breakpoints: Kinks of L.
    :type breakpoints: iterable
    :raises IntegrationError: If L is NaN at a node.
    :return: Log truncated integrals, the nodes and L at the nodes.
    :rtype: tuple
    """
    edges, grid = truncation_edges(grid, breakpoints, unit)
    points, weights = panel_nodes(edges, order)
    values = np.asarray(log_integrand(points), dtype=float).reshape(points.shape)
    if np.any(np.isnan(values)):
        raise IntegrationError(
            "Undefined log integrand", {"interval": (0.0, float(edges[-1]))}
        )
    with np.errstate(divide="ignore"):
        panels = logsumexp(values + np.log(weights), axis=1)
    cumulative = np.logaddexp.accumulate(panels)
    positions = np.searchsorted(edges, grid) - 1
    return cumulative[positions], points.ravel(), values.ravel()


def fit_coefficients(t, y, columns):
    """Least squares coefficients of y against the given basis functions of t."""
    design = np.column_stack([np.asarray(column(t), dtype=float) for column in columns])
    scale = np.max(np.abs(design), axis=0)
    scale[scale == 0.0] = 1.0
    coefficients = np.linalg.lstsq(design / scale, y, rcond=None)[0]
    return coefficients / scale


def quadratic_basis():
    """[t², log t, 1]."""
    return [np.square, np.log, np.ones_like]


def decay_basis(beta):
    """Basis whose first column is the predicted decay law of the exponent."""
    if beta < 2.0:
        return [np.log, np.ones_like]
    if beta == 2.0:
        return [
            lambda t: np.log(t) ** 2,
            lambda t: np.log(t) * np.log(np.log(t)),
            np.log,
            np.ones_like,
        ]
    return [lambda t: t ** (1.0 - 2.0 / beta), np.log, np.ones_like]


def tail_basis(beta):
    """Decay law of a power-law tail plus its 1/t corrections."""
    return decay_basis(beta) + [
        np.reciprocal,
        lambda t: np.log(t) / t,
        lambda t: (np.log(t) / t) ** 2,
        lambda t: t**-2.0,
        lambda t: np.log(t) / t**2,
    ]


def _log_model_tail(model, T):
    """log ∫_T^∞ e^{m(t)}dt in t = T·e^s, or inf unless m decays faster than 1/t."""

    def shifted(s):
        return float(model(np.asarray([T * math.exp(s)]))[0]) + s

    base = shifted(0.0)
    if not shifted(60.0) - shifted(50.0) < -1.0:
        return math.inf
    integral = integrate.quad(
        lambda s: math.exp(min(shifted(s) - base, LOG_DOUBLE_MAX)),
        0.0,
        math.inf,
        epsabs=0.0,
        epsrel=1e-10,
        limit=200,
    )[0]
    return math.log(T) + base + math.log(integral)


def fitted_log_tails(nodes, values, columns, starts):
    """log ∫_T^∞ of the least squares model of the log integrand, for each T of starts.

    :return: The log tails, or None when the model misses a node by more
        than TAIL_FIT_RESIDUAL.
    :rtype: list
    """
    coefficients = fit_coefficients(nodes, values, columns)

    def model(t):
        columns_at = (np.asarray(column(t), dtype=float) for column in columns)
        return sum(c * column for c, column in zip(coefficients, columns_at))

    residual = float(np.max(np.abs(model(nodes) - values)))
    if residual > TAIL_FIT_RESIDUAL:
        LOGGER.debug("Tail model residual %r too large, keeping the two-point bound", residual)
        return None
    return [_log_model_tail(model, float(T)) for T in starts]


def _late(nodes, values, grid, fit_from):
    start = max(grid[-1] / 32.0, fit_from)
    mask = (nodes >= start) & np.isfinite(values)
    return nodes[mask], values[mask]


def classify(
    kappa, grid, log_values, log_at_grid, fit_data, rel_tol, truncation="tail-bound", **options
):  # pylint:disable=too-many-arguments,too-many-locals,too-many-branches
    """Verdict of a truncated-integral curve.

    Finite when the last two truncations, tail-corrected if requested,
    agree within rel_tol. The tail bound extends the last two-point power
    law, or integrates a model of the late log integrand fitted on the
    ``tail`` basis when one is given and fits. Divergent when the curve
    grows over the last three steps and the integrand decays slower than
    1/t at the end.
    Anything else is inconclusive.

    :param fit_data: Nodes and log integrand at the nodes, for the fits.
    :type fit_data: tuple
    :param options: ``decay`` and ``tail`` (basis lists or None), ``route``
        (str) and ``fit_from`` (smallest t used by the fits).
    :return: The verdict.
    :rtype: :obj:`gaussmoser.moser.schemas.KappaVerdict`
    """
    grid = np.asarray(grid, dtype=float)
    log_values = np.asarray(log_values, dtype=float)
    log_at_grid = np.asarray(log_at_grid, dtype=float)
    slopes = np.full(len(grid), math.nan)
    corrected = log_values.copy()
    for j in range(1, len(grid)):
        alpha = -(log_at_grid[j] - log_at_grid[j - 1]) / math.log(grid[j] / grid[j - 1])
        slopes[j] = -alpha
        if truncation == "tail-bound":
            if alpha > 1.0:
                tail = log_at_grid[j] + math.log(grid[j]) - math.log(alpha - 1.0)
                corrected[j] = np.logaddexp(log_values[j], tail)
            else:
                corrected[j] = math.inf
    if truncation == "tail-bound" and options.get("tail") is not None and len(grid) >= 2:
        start = max(grid[-1] / 16.0, options.get("fit_from", 16.0))
        late = fit_data[0] >= start
        nodes, values = fit_data[0][late], fit_data[1][late]
        finite = np.isfinite(values)
        if np.count_nonzero(finite) >= 4 * len(options["tail"]):
            tails = fitted_log_tails(nodes[finite], values[finite], options["tail"], grid[-2:])
            if tails is not None:
                corrected[-2:] = np.logaddexp(log_values[-2:], tails)
    classification = "inconclusive"
    if len(grid) >= 2 and np.all(np.isfinite(corrected[-2:])):
        if abs(math.expm1(corrected[-1] - corrected[-2])) <= rel_tol:
            classification = "finite"
    if classification != "finite" and len(grid) >= 4:
        steps = np.diff(log_values[-4:])
        growing = bool(np.all(steps > math.log1p(rel_tol)))
        if growing and (slopes[-1] > -1.0 or not math.isfinite(log_values[-1])):
            classification = "divergent"
    nodes, values = _late(*fit_data, grid, options.get("fit_from", 16.0))
    exponent = decay = None
    if len(nodes) >= 4:
        exponent = float(fit_coefficients(nodes, values, quadratic_basis())[0])
        if options.get("decay") is not None:
            decay = float(fit_coefficients(nodes, values, options["decay"])[0])
    evidence = [
        CurvePoint(
            T=float(T),
            value=math.exp(value) if value < LOG_DOUBLE_MAX else math.inf,
            log_value=float(value),
            log_integrand=float(at_T),
        )
        for T, value, at_T in zip(grid, log_values, log_at_grid)
    ]
    verdict = KappaVerdict(
        kappa=kappa,
        classification=classification,
        evidence=evidence,
        exponent_estimate=exponent,
        decay_coefficient=decay,
        tail_slope=None if math.isnan(slopes[-1]) else float(slopes[-1]),
        route=options.get("route", "upper"),
    )
    if classification == "inconclusive":
        LOGGER.warning("kappa=%r inconclusive on route %s", kappa, verdict.route)
    else:
        LOGGER.info("kappa=%r %s on route %s", kappa, classification, verdict.route)
    return verdict

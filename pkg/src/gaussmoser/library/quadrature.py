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
"""Quadrature and root-finding plumbing.

Two integration engines are provided:

* :func:`adaptive` wraps :func:`scipy.integrate.quad` interval by interval
  (quad refuses breakpoints on infinite ranges) and raises
  :obj:`gaussmoser.exceptions.IntegrationError` instead of warning.
* :func:`panel_sum` is a composite Gauss-Legendre rule on caller-supplied
  panel edges, evaluating a vectorized integrand once on all nodes.

:func:`newton_bisect` is a vectorized safeguarded Newton iteration that
falls back to bisection whenever a step leaves the bracket.
"""
import logging
import threading
import warnings
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.integrate import IntegrationWarning

from gaussmoser.exceptions import IntegrationError

LOGGER = logging.getLogger(__name__)

DEFAULT_ORDER = 24


@lru_cache(maxsize=16)
def _legendre(order):
    nodes, weights = leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def panel_edges(lo, hi, breakpoints=(), unit=1.0, uniform_until=8.0):
    """Panel edges for a composite rule on [lo, hi].

    Panels have width ``unit`` up to ``uniform_until`` and double beyond,
    so that power and logarithmic growth are resolved with a few hundred
    nodes even for hi of order 1e20. Breakpoints inside (lo, hi) are
    inserted as edges.

    :param lo: Left end, finite.
    :type lo: float
    :param hi: Right end, finite and >= lo.
    :type hi: float
    :param breakpoints: Kinks of the integrand.
    :type breakpoints: iterable
    :param unit: Width of the uniform panels.
    :type unit: float
    :param uniform_until: Where doubling starts.
    :type uniform_until: float
    :return: Sorted unique edges.
    :rtype: :obj:`numpy.ndarray`
    """
    if hi <= lo:
        return np.array([lo, lo], dtype=float)
    edges = [lo]
    point = lo
    while point < hi:
        width = unit if point < uniform_until else max(point, unit)
        point = point + width
        edges.append(min(point, hi))
    edges.extend(b for b in breakpoints if lo < b < hi)
    return np.unique(np.asarray(edges, dtype=float))


def geometric_edges(lo, hi, ratio=2.0, breakpoints=()):
    """Edges growing by ``ratio`` from lo > 0 up to hi."""
    count = max(1, int(np.ceil(np.log(hi / lo) / np.log(ratio))))
    edges = list(np.geomspace(lo, hi, count + 1))
    edges.extend(b for b in breakpoints if lo < b < hi)
    return np.unique(np.asarray(edges, dtype=float))


def panel_nodes(edges, order=DEFAULT_ORDER):
    """Nodes and weights of the composite rule on consecutive edges."""
    nodes, weights = _legendre(order)
    edges = np.asarray(edges, dtype=float)
    left, right = edges[:-1, None], edges[1:, None]
    half = 0.5 * (right - left)
    points = left + half * (nodes[None, :] + 1.0)
    return points, half * weights[None, :]


def panel_sum(func, edges, order=DEFAULT_ORDER, per_panel=False):
    """Composite Gauss-Legendre integral of a vectorized function.

    :param func: Vectorized integrand.
    :type func: callable
    :param edges: Panel edges, sorted.
    :type edges: sequence
    :param order: Nodes per panel.
    :type order: int
    :param per_panel: Return the panel integrals instead of their sum.
    :type per_panel: bool
    :return: Integral, or panel integrals.
    :rtype: float or :obj:`numpy.ndarray`
    """
    if len(edges) < 2:
        return np.zeros(0) if per_panel else 0.0
    points, weights = panel_nodes(edges, order)
    values = np.asarray(func(points), dtype=float).reshape(points.shape)
    panels = np.sum(values * weights, axis=1)
    if not np.all(np.isfinite(panels)):
        raise IntegrationError(
            "Non-finite integrand on composite rule",
            {"interval": (float(edges[0]), float(edges[-1]))},
        )
    return panels if per_panel else float(np.sum(panels))


def adaptive(func, lo, hi, rel_tol=1e-10, abs_tol=1e-14, limit=200, points=()):
    """Adaptive integral of a scalar function over [lo, hi].

    Infinite ends are allowed. Breakpoints split the range and every piece
    is integrated separately. A piece whose flagged error estimate is still
    within a hundred times the requested tolerance is accepted with a debug
    line; anything worse raises.

    :raises IntegrationError: If quad fails on any piece.

    :return: Integral and summed error estimate.
    :rtype: tuple
    """
    cuts = sorted(p for p in points if lo < p < hi)
    bounds = [lo] + cuts + [hi]
    total = 0.0
    error = 0.0
    for left, right in zip(bounds[:-1], bounds[1:]):
        if left == right:
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntegrationWarning)
            result = integrate.quad(
                func,
                left,
                right,
                epsrel=rel_tol,
                epsabs=abs_tol,
                limit=limit,
                full_output=1,
            )
        value, err, info = result[:3]
        diagnostics = {
            "interval": (left, right),
            "estimate": value,
            "error": err,
            "subdivisions": info.get("last"),
        }
        if not np.isfinite(value) or not np.isfinite(err):
            raise IntegrationError("Non-finite integral", diagnostics)
        if len(result) > 3:
            if err > max(100 * rel_tol * abs(value), 100 * abs_tol):
                raise IntegrationError(str(result[3]).splitlines()[0], diagnostics)
            LOGGER.debug("Accepted flagged quad estimate %r", diagnostics)
        total += value
        error += err
    return total, error


def newton_bisect(func, lo, hi, x0=None, tol=1e-14, maxiter=100):
    """Vectorized safeguarded Newton iteration for increasing functions.

    ``func(x)`` returns ``(f, df)`` with f increasing in x on [lo, hi] and
    f(lo) <= 0 <= f(hi). Steps that leave the current bracket are replaced
    by bisection, so convergence is guaranteed.

    :param func: Function returning value and derivative arrays.
    :type func: callable
    :param lo: Lower bracket.
    :type lo: :obj:`numpy.ndarray`
    :param hi: Upper bracket.
    :type hi: :obj:`numpy.ndarray`
    :param x0: Starting point inside the bracket.
    :type x0: :obj:`numpy.ndarray`
    :param tol: Relative step tolerance.
    :type tol: float
    :param maxiter: Iteration limit.
    :type maxiter: int
    :return: Roots.
    :rtype: :obj:`numpy.ndarray`
    """
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    lo, hi = np.broadcast_arrays(lo, hi)
    lo, hi = lo.copy(), hi.copy()
    x = 0.5 * (lo + hi) if x0 is None else np.clip(np.asarray(x0, float), lo, hi)
    x = np.array(np.broadcast_to(x, lo.shape), dtype=float)
    for _ in range(maxiter):
        value, slope = func(x)
        value = np.asarray(value, dtype=float)
        slope = np.asarray(slope, dtype=float)
        lo = np.where(value < 0.0, x, lo)
        hi = np.where(value > 0.0, x, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = x - value / slope
        bad = ~np.isfinite(step) | (step <= lo) | (step >= hi)
        new = np.where(bad, 0.5 * (lo + hi), step)
        new = np.where(value == 0.0, x, new)
        done = np.abs(new - x) <= tol * np.maximum(np.abs(new), 1.0)
        x = new
        if np.all(done):
            break
    return x


class Antiderivative:
    """x ↦ ∫_origin^x density, tabulated on composite panels and extended on demand.

    The table holds the cumulative integral at panel edges; a value is the
    table entry at the nearest edge to the left plus one Gauss-Legendre
    panel up to x. Arguments left of the origin give 0.

    :param density: Vectorized integrand, elementwise on arrays of any shape.
    :type density: callable
    :param origin: Lower limit.
    :type origin: float
    :param breakpoints: Kinks of the density.
    :type breakpoints: iterable
    :param unit: Width of the uniform panels next to the origin.
    :type unit: float
    :param graded: Refine geometrically toward the origin, for densities
        with an algebraic singularity there.
    :type graded: bool
    """

    def __init__(
        self, density, origin=0.0, breakpoints=(), unit=0.5, order=DEFAULT_ORDER, graded=False
    ):  # pylint:disable=too-many-arguments
        """Start with an empty table."""
        self.density = density
        self.origin = float(origin)
        self.unit = unit
        self.order = order
        cuts = [float(b) for b in breakpoints]
        if graded:
            cuts.extend(self.origin + unit * 2.0**-j for j in range(1, 13))
        self.breakpoints = tuple(sorted(cuts))
        # Edges and cumulative table are published together as one tuple.
        self._state = (np.array([self.origin, self.origin]), np.zeros(2))
        self._lock = threading.Lock()

    def _extend(self, upper):
        """The (edges, table) pair covering upper."""
        state = self._state
        if upper <= state[0][-1]:
            return state
        with self._lock:
            state = self._state
            if upper <= state[0][-1]:
                return state
            span = 8.0
            while self.origin + span < upper:
                span *= 2.0
            edges = panel_edges(
                self.origin,
                self.origin + span,
                self.breakpoints,
                unit=self.unit,
                uniform_until=self.origin + 8.0,
            )
            panels = panel_sum(self.density, edges, self.order, per_panel=True)
            state = (edges, np.concatenate([[0.0], np.cumsum(panels)]))
            self._state = state
            LOGGER.debug("Antiderivative extended to %r with %d panels", edges[-1], len(panels))
        return state

    def __call__(self, x):
        """Integral from the origin to x, vectorized."""
        x = np.asarray(x, dtype=float)
        flat = np.maximum(x.ravel(), self.origin)
        if flat.size == 0:
            return np.zeros_like(x)
        edges, table = self._extend(float(np.max(flat)))
        index = np.clip(np.searchsorted(edges, flat, side="right") - 1, 0, len(edges) - 2)
        left = edges[index]
        nodes, weights = _legendre(self.order)
        half = 0.5 * (flat - left)
        points = left[:, None] + half[:, None] * (nodes[None, :] + 1.0)
        values = np.asarray(self.density(points), dtype=float).reshape(points.shape)
        partial = half * np.sum(values * weights[None, :], axis=1)
        result = table[index] + partial
        return float(result[0]) if x.ndim == 0 else result.reshape(x.shape)

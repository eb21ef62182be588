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
"""Term-ratio convergence checks for asymptotic expansions.

An expansion F(t) = E₁(t) + E₂(t) + ⋯ as t tends to its limit means that
(F - Σ_{i<j}Eᵢ)/Eⱼ tends to 1 for every registered j. The harness evaluates
these ratios on a grid ordered toward the limit and judges the last three
points.
"""
import logging
import math
from typing import Callable, List, Optional, Tuple

from pydantic import BaseModel, validator

from gaussmoser.exceptions import ConfigurationError, GaussMoserError

LOGGER = logging.getLogger(__name__)

DIRECTIONS = ("t->inf", "t->0+")
MODES = ("ratio", "constant", "inequality")
# Ratios this close to 1 count as exact.
EXACT = 1e-9


class AsymptoticExpansion(BaseModel):
    """A registered expansion of one target quantity.

    ``remainder(t, j)``, when given, returns target(t) - Σ_{i<j}Eᵢ(t)
    computed without cancellation and replaces the direct subtraction for
    j >= 2. In ``constant`` mode the target itself is expected to converge
    and ``terms`` is empty. In ``inequality`` mode the target is compared
    with the partial sum of all terms.
    """

    label: str
    target: Callable
    direction: str = "t->inf"
    mode: str = "ratio"
    terms: Tuple[Callable, ...] = ()
    grid: Tuple[float, ...]
    tolerance: float = 0.1
    remainder: Optional[Callable] = None
    variable: str = "t"
    note: str = ""

    class Config:  # pylint:disable=too-few-public-methods
        """Expansions are immutable."""

        allow_mutation = False

    @validator("direction")
    def validate_direction(
        cls, value
    ):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Direction is t->inf or t->0+."""
        if value not in DIRECTIONS:
            raise ValueError("Unknown direction %r, valid: %r" % (value, DIRECTIONS))
        return value

    @validator("mode")
    def validate_mode(cls, value):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Mode is ratio, constant or inequality."""
        if value not in MODES:
            raise ValueError("Unknown mode %r, valid: %r" % (value, MODES))
        return value

    @validator("terms")
    def validate_terms(
        cls, value, values
    ):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Ratio and inequality entries need at least one term."""
        if not value and values.get("mode", "ratio") != "constant":
            raise ValueError("Expansion %r has no terms" % values.get("label"))
        return value

    @validator("grid")
    def validate_grid(cls, value, values):  # Pydantic requires cls. pylint:disable=no-self-argument
        """At least three points, ordered toward the limit."""
        if len(value) < 3:
            raise ValueError("Grid needs at least three points, got %r" % (value,))
        steps = [b - a for a, b in zip(value[:-1], value[1:])]
        toward = all(step > 0 for step in steps)
        if values.get("direction") == "t->0+":
            toward = all(step < 0 for step in steps)
        if not toward:
            raise ValueError("Grid %r is not ordered toward the limit" % (value,))
        return value


class RatioPoint(BaseModel):
    """rⱼ(t), or the target value itself for constant entries."""

    label: str
    j: int
    t: float
    ratio: float

    def csv_row(self):
        """label, j, t, ratio."""
        return [self.label, self.j, repr(self.t), repr(self.ratio)]


class EntryResult(BaseModel):
    """Pass/fail judgement of one catalog entry."""

    label: str
    mode: str
    passed: bool
    final: float
    message: str
    points: List[RatioPoint]


def _term(expansion, index, t):
    value = float(expansion.terms[index](t))
    if value == 0.0 or not math.isfinite(value):
        raise ConfigurationError(
            "Term %d of %s is %r at %s=%r" % (index + 1, expansion.label, value, expansion.variable, t)
        )
    return value


def ratio_curve(target, expansion, grid=None):
    """Ratios of an expansion along a grid.

    :param target: The quantity being expanded.
    :type target: callable
    :param expansion: The expansion.
    :type expansion: :obj:`AsymptoticExpansion`
    :param grid: Points ordered toward the limit; the expansion's grid by default.
    :type grid: iterable
    :raises ConfigurationError: If a term evaluates to 0 on the grid.
    :return: One point per (t, j).
    :rtype: list
    """
    grid = expansion.grid if grid is None else tuple(float(t) for t in grid)
    points = []
    for t in grid:
        value = float(target(t))
        if expansion.mode == "constant":
            points.append(RatioPoint(label=expansion.label, j=0, t=t, ratio=value))
            continue
        if expansion.mode == "inequality":
            partial = sum(_term(expansion, index, t) for index in range(len(expansion.terms)))
            points.append(RatioPoint(label=expansion.label, j=len(expansion.terms), t=t, ratio=value / partial))
            continue
        subtracted = 0.0
        for index in range(len(expansion.terms)):
            term = _term(expansion, index, t)
            if index and expansion.remainder is not None:
                numerator = float(expansion.remainder(t, index + 1))
            else:
                numerator = value - subtracted
            points.append(RatioPoint(label=expansion.label, j=index + 1, t=t, ratio=numerator / term))
            subtracted += term
    LOGGER.debug("Ratio curve of %s: %r", expansion.label, [(p.t, p.j, p.ratio) for p in points])
    return points


def judge(expansion, points):
    """Check the convergence criterion of an entry on its ratio curve.

    Ratio entries pass when r_k at the last point lies within the tolerance
    of 1 and |r_k - 1| does not increase over the last three points.
    Constant entries pass when the Cauchy differences of the last three
    points decrease and the last one is within the tolerance relative to
    max(1, |value|). Inequality entries pass when the last ratio stays
    below 1 + tolerance.

    :return: The judgement.
    :rtype: :obj:`EntryResult`
    """
    tol = expansion.tolerance
    if expansion.mode == "constant":
        values = [point.ratio for point in points]
        steps = [abs(b - a) for a, b in zip(values[:-1], values[1:])]
        final = values[-1]
        passed = steps[-1] <= tol * max(1.0, abs(final)) and steps[-1] <= steps[-2]
        message = "Cauchy differences %r" % (steps[-2:],)
    else:
        k = max(point.j for point in points)
        ratios = [point.ratio for point in points if point.j == k]
        final = ratios[-1]
        if expansion.mode == "inequality":
            passed = final <= 1.0 + tol
            message = "ratio to partial sum %r" % final
        else:
            distances = [abs(r - 1.0) for r in ratios[-3:]]
            approach = all(b <= a for a, b in zip(distances[:-1], distances[1:]))
            approach = approach or distances[-1] <= EXACT
            passed = abs(final - 1.0) <= tol and approach
            message = "r_%d approaches 1 as %r" % (k, ratios[-3:])
    level = logging.INFO if passed else logging.WARNING
    LOGGER.log(level, "%s %s: %s", expansion.label, "passed" if passed else "FAILED", message)
    return EntryResult(
        label=expansion.label,
        mode=expansion.mode,
        passed=bool(passed and math.isfinite(final)),
        final=final,
        message=message,
        points=points,
    )


def run_catalog(catalog, labels=None):
    """Judge catalog entries, optionally restricted to labels containing a filter.

    An entry whose evaluation fails is reported as failed with the error
    message instead of aborting the run.

    :param catalog: Expansions by label.
    :type catalog: dict
    :param labels: Substrings selecting entries.
    :type labels: iterable
    :return: Results in catalog order.
    :rtype: list
    """
    results = []
    for label, expansion in catalog.items():
        if labels and not any(part in label for part in labels):
            continue
        try:
            points = ratio_curve(expansion.target, expansion)
        except GaussMoserError as exception:
            LOGGER.warning("%s could not be evaluated: %s", label, exception)
            results.append(
                EntryResult(
                    label=label,
                    mode=expansion.mode,
                    passed=False,
                    final=math.nan,
                    message=str(exception),
                    points=[],
                )
            )
            continue
        results.append(judge(expansion, points))
    return results

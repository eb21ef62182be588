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
"""Tests for the quadrature library."""
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from gaussmoser.exceptions import IntegrationError
from gaussmoser.library.quadrature import (
    Antiderivative,
    adaptive,
    geometric_edges,
    newton_bisect,
    panel_edges,
    panel_sum,
)

logging.basicConfig(level=logging.DEBUG, stream=sys.stdout)


class TestQuadrature:
    """Test the composite and adaptive integration engines."""

    logger = logging.getLogger(__name__)

    def test_panel_sum_polynomial(self):
        """Test that the composite rule integrates a polynomial exactly.

        Approval criteria:
            - ∫₀¹ x² dx shall equal 1/3 to machine precision.

        Test steps::
            1. Integrate x² on uniform panels.
            2. Verify the result.
        """
        self.logger.info("STEP: Integrate x² on uniform panels.")
        value = panel_sum(lambda x: x**2, panel_edges(0.0, 1.0, unit=0.25))
        self.logger.info("STEP: Verify the result.")
        assert value == pytest.approx(1.0 / 3.0, rel=1e-14)

    def test_panel_edges_double_beyond_uniform_range(self):
        """Test that panel edges double once past the uniform range.

        Approval criteria:
            - Edges shall be uniform up to 8 and then double.
            - Breakpoints shall be inserted as edges.

        Test steps::
            1. Build edges on [0, 64] with a breakpoint at 2.5.
            2. Verify the edges.
        """
        self.logger.info("STEP: Build edges on [0, 64] with a breakpoint at 2.5.")
        edges = panel_edges(0.0, 64.0, breakpoints=(2.5,), unit=1.0)
        self.logger.info("STEP: Verify the edges.")
        assert list(edges) == [0.0, 1.0, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 16.0, 32.0, 64.0]
        assert geometric_edges(1.0, 8.0)[-1] == pytest.approx(8.0)

    def test_panel_sum_raises_on_nan(self):
        """Test that a non-finite integrand raises an integration error.

        Approval criteria:
            - IntegrationError shall be raised, carrying the interval.

        Test steps::
            1. Integrate a function returning nan.
            2. Verify the exception and its diagnostics.
        """
        self.logger.info("STEP: Integrate a function returning nan.")
        with pytest.raises(IntegrationError) as exception:
            panel_sum(lambda x: np.full_like(x, math.nan), [0.0, 1.0])
        self.logger.info("STEP: Verify the exception and its diagnostics.")
        assert exception.value.diagnostics["interval"] == (0.0, 1.0)

    def test_adaptive_with_breakpoint(self):
        """Test adaptive integration of a kinked function.

        Approval criteria:
            - ∫₀¹ |x - 0.3| dx shall equal 0.29.

        Test steps::
            1. Integrate with the kink as a breakpoint.
            2. Verify the result.
        """
        self.logger.info("STEP: Integrate with the kink as a breakpoint.")
        value, error = adaptive(lambda x: abs(x - 0.3), 0.0, 1.0, points=(0.3,))
        self.logger.info("STEP: Verify the result.")
        assert value == pytest.approx(0.29, rel=1e-12)
        assert error < 1e-10

    def test_adaptive_infinite_range(self):
        """Test adaptive integration on an infinite range.

        Approval criteria:
            - ∫₀^∞ e^{-x} dx shall equal 1.

        Test steps::
            1. Integrate e^{-x} on [0, inf) with a breakpoint at 1.
            2. Verify the result.
        """
        self.logger.info("STEP: Integrate e^{-x} on [0, inf) with a breakpoint at 1.")
        value, _ = adaptive(lambda x: math.exp(-x), 0.0, math.inf, points=(1.0,))
        self.logger.info("STEP: Verify the result.")
        assert value == pytest.approx(1.0, rel=1e-12)

    def test_adaptive_raises_on_nan(self):
        """Test that adaptive integration raises on a non-finite integral.

        Approval criteria:
            - IntegrationError shall be raised.

        Test steps::
            1. Integrate a function returning nan.
            2. Verify that IntegrationError was raised.
        """
        self.logger.info("STEP: Integrate a function returning nan.")
        with pytest.raises(IntegrationError):
            adaptive(lambda x: math.nan, 0.0, 1.0)

    def test_newton_bisect_cube_roots(self):
        """Test the vectorized safeguarded Newton iteration.

        Approval criteria:
            - Roots of x³ = c shall be found for several c at once.

        Test steps::
            1. Solve x³ - c = 0 on [0, 10] for c in 1, 8, 27, 500.
            2. Verify the roots.
        """
        targets = np.array([1.0, 8.0, 27.0, 500.0])
        self.logger.info("STEP: Solve x³ - c = 0 on [0, 10] for c in 1, 8, 27, 500.")
        roots = newton_bisect(lambda x: (x**3 - targets, 3.0 * x**2), 0.0, 10.0)
        self.logger.info("STEP: Verify the roots.")
        assert roots == pytest.approx(np.cbrt(targets), rel=1e-12)

    def test_antiderivative(self):
        """Test the tabulated antiderivative.

        Approval criteria:
            - ∫₀^x cos shall equal sin(x), also beyond the first table.
            - Arguments left of the origin shall give 0.

        Test steps::
            1. Evaluate the antiderivative of cos on an array.
            2. Evaluate it beyond the first table extent.
            3. Evaluate it left of the origin.
        """
        primitive = Antiderivative(np.cos)
        points = np.array([0.25, 1.0, 3.0, 7.5])
        self.logger.info("STEP: Evaluate the antiderivative of cos on an array.")
        assert primitive(points) == pytest.approx(np.sin(points), abs=1e-13)
        self.logger.info("STEP: Evaluate it beyond the first table extent.")
        assert primitive(40.0) == pytest.approx(math.sin(40.0), abs=1e-12)
        self.logger.info("STEP: Evaluate it left of the origin.")
        assert primitive(-1.0) == 0.0

    def test_graded_antiderivative(self):
        """Test the graded table on a density with a root singularity at the origin.

        Approval criteria:
            - ∫₀^x √t dt shall equal 2x^{3/2}/3 to 1e-8.

        Test steps::
            1. Build a graded antiderivative of √t.
            2. Verify it at a few points.
        """
        self.logger.info("STEP: Build a graded antiderivative of √t.")
        primitive = Antiderivative(np.sqrt, graded=True)
        self.logger.info("STEP: Verify it at a few points.")
        for x in (0.5, 2.0, 10.0):
            assert primitive(x) == pytest.approx(2.0 / 3.0 * x**1.5, rel=1e-8)

    def test_antiderivative_concurrent_extension(self):
        """Test that concurrent calls see a consistent table while it grows.

        Approval criteria:
            - Every thread shall get ∫₀^x cos = sin(x) while others extend the table.

        Test steps::
            1. Evaluate one antiderivative from eight threads at growing extents.
            2. Verify every result.
        """
        primitive = Antiderivative(np.cos)
        extents = [5.0, 10.0, 20.0, 40.0] * 8

        def evaluate(extent):
            points = np.linspace(0.0, extent, 33)
            return points, primitive(points)

        self.logger.info("STEP: Evaluate one antiderivative from eight threads at growing extents.")
        with ThreadPoolExecutor(max_workers=8) as executor:
            results = list(executor.map(evaluate, extents))
        self.logger.info("STEP: Verify every result.")
        for points, values in results:
            assert values == pytest.approx(np.sin(points), abs=1e-10)

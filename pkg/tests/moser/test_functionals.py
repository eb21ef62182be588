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
"""Tests for the reduction functionals."""
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from gaussmoser.exceptions import ConfigurationError, DomainError
from gaussmoser.gauss_core import FINE, gauss_density, log_gauss_tail
from gaussmoser.moser import functionals
from gaussmoser.moser.functionals import (
    ReductionFunctional,
    functional_LB,
    functional_Linf,
    kappa_beta,
    leading_term,
    power,
)
from gaussmoser.young import construct_envelope_M, plain_exp

logging.basicConfig(level=logging.DEBUG, stream=sys.stdout)


class TestFunctionals:
    """Test F(t) for every constraint kind."""

    logger = logging.getLogger(__name__)

    def test_sharp_constants(self):
        """Test κ_β = 1/√2 + √2/β.

        Approval criteria:
            - κ₁ = 3/√2, κ₂ = √2, κ₄ = 1/√2 + √2/4 and κ_∞ = 1/√2.
            - β <= 0 shall raise DomainError.

        Test steps::
            1. Compute the constants.
            2. Compute the constant for β = 0.
        """
        self.logger.info("STEP: Compute the constants.")
        assert kappa_beta(1.0) == pytest.approx(3.0 / math.sqrt(2.0), rel=1e-15)
        assert kappa_beta(2.0) == pytest.approx(math.sqrt(2.0), rel=1e-15)
        assert kappa_beta(4.0) == pytest.approx(1.0 / math.sqrt(2.0) + math.sqrt(2.0) / 4.0)
        assert kappa_beta(math.inf) == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-15)
        assert power(2.0) == 1.0
        assert power(math.inf) == 2.0
        self.logger.info("STEP: Compute the constant for β = 0.")
        with pytest.raises(DomainError):
            kappa_beta(0.0)

    def test_sharp_constant_limit(self):
        """Test that κ_β decreases to 1/√2 as β grows.

        Approval criteria:
            - κ_β shall decrease strictly along β = 10², 10⁴, 10⁶.
            - Every value shall exceed 1/√2 by exactly √2/β.
        """
        betas = (1e2, 1e4, 1e6)
        values = [kappa_beta(beta) for beta in betas]
        assert values[0] > values[1] > values[2] > kappa_beta(math.inf)
        for beta, value in zip(betas, values):
            assert value - kappa_beta(math.inf) == pytest.approx(math.sqrt(2.0) / beta, rel=1e-6)

    @pytest.mark.parametrize("beta", [1.0, 2.0, 4.0])
    def test_leading_term_is_sharp(self, beta):
        """Test that (κ_β·g(t))^p = t²/2.

        Approval criteria:
            - The identity shall hold to 1e-12.

        Test steps::
            1. Evaluate the leading term on a grid.
            2. Verify the identity.
        """
        t = np.array([1.0, 10.0, 100.0])
        self.logger.info("STEP: Evaluate the leading term on a grid.")
        values = (kappa_beta(beta) * leading_term(beta, t)) ** power(beta)
        self.logger.info("STEP: Verify the identity.")
        assert values == pytest.approx(0.5 * t * t, rel=1e-12)

    def test_supremum_functionals(self):
        """Test F for the supremum constraint.

        Approval criteria:
            - With median centering F(t) = t.
            - With mean centering F(t) = E|X - t| for a standard Gaussian X.

        Test steps::
            1. Evaluate the median functional.
            2. Compare the mean functional with a quadrature.
        """
        self.logger.info("STEP: Evaluate the median functional.")
        assert functional_Linf(3.5) == 3.5
        self.logger.info("STEP: Compare the mean functional with a quadrature.")
        expected = FINE.integrate(
            lambda x: abs(x - 0.7) * gauss_density(x), -math.inf, math.inf, points=(0.7,)
        )
        assert functional_Linf(0.7, centering="mean") == pytest.approx(expected, rel=1e-10)
        with pytest.raises(ConfigurationError):
            functional_Linf(1.0, centering="mode")

    def test_supremum_exponent(self):
        """Test the exponent of the Moser integrand for the supremum constraint.

        Approval criteria:
            - [κF(t)]² - t²/2 shall be (κ² - 1/2)t² with median centering.

        Test steps::
            1. Evaluate the exponent.
            2. Verify the closed form.
        """
        functional = ReductionFunctional("l-infinity-median")
        t = np.array([1.0, 4.0])
        self.logger.info("STEP: Evaluate the exponent.")
        values = functional.exponent(t, 0.6)
        self.logger.info("STEP: Verify the closed form.")
        assert values == pytest.approx((0.36 - 0.5) * t * t, rel=1e-14)

    def test_first_term(self):
        """Test the shifted tail integral against a direct quadrature.

        Approval criteria:
            - e^{t²/2}∫_t^∞ B⁻¹(1/Φ)e^{-τ²/2} shall match to 1e-9.

        Test steps::
            1. Evaluate the first term for B = e^{t²} at t = 3.
            2. Compare with a direct quadrature.
        """
        functional = ReductionFunctional("marcinkiewicz-m", function=plain_exp(1.0, 2.0))
        self.logger.info("STEP: Evaluate the first term for B = e^{t²} at t = 3.")
        value = functional.first_term(3.0)
        self.logger.info("STEP: Compare with a direct quadrature.")
        expected = FINE.integrate(
            lambda tau: math.sqrt(-float(log_gauss_tail(tau))) * math.exp(-0.5 * (tau * tau - 9.0)),
            3.0,
            math.inf,
        )
        assert value == pytest.approx(expected, rel=1e-9)

    def test_j_integral(self):
        """Test the tabulated J integral against a direct quadrature.

        Approval criteria:
            - ∫₀^t B⁻¹(1/Φ) shall match to 1e-9 at t = 5.

        Test steps::
            1. Evaluate J for an envelope function.
            2. Compare with a direct quadrature.
        """
        function = construct_envelope_M(2.0, 2.0)
        functional = ReductionFunctional("marcinkiewicz-m", function=function)
        self.logger.info("STEP: Evaluate J for an envelope function.")
        value = functional.j_integral(5.0)
        self.logger.info("STEP: Compare with a direct quadrature.")
        expected = FINE.integrate(
            lambda tau: float(function.inverse_log(-log_gauss_tail(tau))), 0.0, 5.0
        )
        assert value == pytest.approx(expected, rel=1e-9)

    def test_marcinkiewicz_value(self):
        """Test that F_mB is the first term plus J plus the constant term.

        Approval criteria:
            - F(t) shall equal its three parts.
            - Cached values shall be returned unchanged.

        Test steps::
            1. Evaluate F at two points.
            2. Compare with its parts.
        """
        functional = ReductionFunctional("marcinkiewicz-m", function=construct_envelope_M(2.0, 2.0))
        self.logger.info("STEP: Evaluate F at two points.")
        values = functional.value(np.array([2.0, 6.0]))
        self.logger.info("STEP: Compare with its parts.")
        for t, value in zip((2.0, 6.0), values):
            parts = functional.first_term(t) + functional.j_integral(t) + functional.constant_term
            assert value == pytest.approx(parts, rel=1e-12)
        assert functional.value(6.0) == pytest.approx(values[1], rel=1e-15)

    def test_concurrent_values(self, monkeypatch):
        """Test that one functional serves concurrent callers with a bounded cache.

        Approval criteria:
            - Values from eight threads shall match a sequential evaluation.
            - The cache shall never hold more than its size plus one batch.

        Test steps::
            1. Evaluate a shared functional from eight threads.
            2. Compare with a fresh functional evaluated sequentially.
        """
        monkeypatch.setattr(functionals, "CACHE_SIZE", 8)
        function = construct_envelope_M(2.0, 2.0)
        shared = ReductionFunctional("marcinkiewicz-m", function=function)
        batches = [np.linspace(1.0 + j, 4.0 + j, 4) for j in range(8)] * 2
        self.logger.info("STEP: Evaluate a shared functional from eight threads.")
        with ThreadPoolExecutor(max_workers=8) as executor:
            results = list(executor.map(shared.value, batches))
        assert len(shared._cache) <= 8 + 4  # pylint:disable=protected-access
        self.logger.info("STEP: Compare with a fresh functional evaluated sequentially.")
        fresh = ReductionFunctional("marcinkiewicz-m", function=function)
        for batch, values in zip(batches, results):
            assert values == pytest.approx(fresh.value(batch), rel=1e-12)

    def test_luxemburg_increasing(self):
        """Test that F_LB grows like its leading term.

        Approval criteria:
            - F_LB shall increase and F_LB(t)/g(t) shall lie in (0.5, 1.5) at t = 20.

        Test steps::
            1. Evaluate F_LB for B = e^{t²}.
            2. Verify growth and the leading term.
        """
        function = plain_exp(1.0, 2.0)
        self.logger.info("STEP: Evaluate F_LB for B = e^{t²}.")
        values = functional_LB(function, np.array([5.0, 10.0, 20.0]))
        self.logger.info("STEP: Verify growth and the leading term.")
        assert values[0] < values[1] < values[2]
        assert 0.5 < values[2] / leading_term(2.0, 20.0) < 1.5

    def test_invalid_use(self):
        """Test that misuse of the functional raises.

        Approval criteria:
            - Unknown kinds and Orlicz kinds without a Young function raise ConfigurationError.
            - t <= 0 and κ <= 0 raise DomainError.
            - Supremum kinds have no remainder.

        Test steps::
            1. Create invalid functionals.
            2. Evaluate at invalid points.
        """
        self.logger.info("STEP: Create invalid functionals.")
        with pytest.raises(ConfigurationError):
            ReductionFunctional("sobolev")
        with pytest.raises(ConfigurationError):
            ReductionFunctional("luxemburg")
        self.logger.info("STEP: Evaluate at invalid points.")
        functional = ReductionFunctional("l-infinity-median")
        with pytest.raises(DomainError):
            functional.value(0.0)
        with pytest.raises(DomainError):
            functional.exponent(1.0, 0.0)
        with pytest.raises(ConfigurationError):
            functional.remainder(1.0)
        with pytest.raises(ConfigurationError):
            functional.j_remainder(1.0)

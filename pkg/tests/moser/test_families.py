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
"""Tests for the extremal families."""
import logging
import math
import sys

import numpy as np
import pytest

from gaussmoser.exceptions import ConfigurationError, ConstructionError, DomainError
from gaussmoser.moser.families import (
    evaluate_family,
    family_flattened,
    family_linear,
    critical_maximal_function,
    family_marcinkiewicz_critical,
    family_medmv,
    family_supercritical,
    flattened_lower_bound,
    supercritical_t0,
    target_curve,
)
from gaussmoser.moser.functionals import kappa_beta
from gaussmoser.norms import marcinkiewicz_M_norm
from gaussmoser.rearrange import gradient_rearrangement, maximal_function
from gaussmoser.young import construct_envelope_M, plain_exp

logging.basicConfig(level=logging.DEBUG, stream=sys.stdout)


class TestFamilies:
    """Test the families that realize the lower bounds."""

    logger = logging.getLogger(__name__)

    def test_supercritical_family(self):
        """Test the supercritical family for β = 2 above κ₂.

        Approval criteria:
            - The Luxemburg norm of the gradient shall be at most 1.
            - The gradient modular shall be at most 2 and match its closed form.
            - The target integral shall diverge like e^{c·T²} with c close to
              (κ√(λ/2)/2 - 1/2)·2.

        Test steps::
            1. Build the family for λ = 0.9 and an admissible t0.
            2. Evaluate it at κ = 1.1κ₂.
            3. Verify the constraints and the verdict.
        """
        function = construct_envelope_M(2.0, 2.0)
        kappa = 1.1 * kappa_beta(2.0)
        self.logger.info("STEP: Build the family for λ = 0.9 and an admissible t0.")
        t0 = supercritical_t0(2.0, 0.9, function, M=2.0)
        profile = family_supercritical(2.0, 0.9, t0)
        self.logger.info("STEP: Evaluate it at κ = 1.1κ₂.")
        report = evaluate_family(
            profile,
            2.0,
            kappa,
            constraints=("luxemburg", "modular"),
            function=function,
            modular_bound=2.0,
        )
        self.logger.info("STEP: Verify the constraints and the verdict.")
        assert report.constraints_hold
        assert set(report.checks) == {"luxemburg", "modular", "gradient_modular"}
        assert report.norms["luxemburg"] <= 1.0
        assert report.norms["modular"] <= 1.0
        assert report.gradient_modular <= 2.0
        assert report.gradient_modular == pytest.approx(
            report.certificates["gradient_modular"], rel=1e-6
        )
        assert report.verdict.classification == "divergent"
        predicted = kappa * math.sqrt(0.45) / 2.0 - 0.5
        assert report.verdict.exponent_estimate == pytest.approx(predicted, rel=0.5)

    def test_supercritical_constraint_failure(self):
        """Test that an inner radius too small breaks the modular condition.

        Approval criteria:
            - t0 = 0.1 with λ = 0.9 shall give ∫e^{|∇u|²}dγ ≈ 9.28 > 2.
            - The report shall mark the gradient modular check as failed.

        Test steps::
            1. Evaluate the family for t0 = 0.1 with M = 2.
            2. Verify the checks.
        """
        self.logger.info("STEP: Evaluate the family for t0 = 0.1 with M = 2.")
        profile = family_supercritical(2.0, 0.9, 0.1)
        report = evaluate_family(profile, 2.0, 1.1 * kappa_beta(2.0), modular_bound=2.0)
        self.logger.info("STEP: Verify the checks.")
        assert report.gradient_modular == pytest.approx(9.28, rel=1e-2)
        assert report.checks == {"gradient_modular": False}
        assert not report.constraints_hold

    def test_critical_family(self):
        """Test the Marcinkiewicz critical family for β = 1.

        Approval criteria:
            - The maximal function of the gradient shall be (log 1/(Ns))^{1/β}.
            - The gradient shall have Marcinkiewicz norm 1 for B = e^{t}/2.
            - The target integral at κ₁ shall grow like T³.

        Test steps::
            1. Build the family for N = 1/2.
            2. Compute the Marcinkiewicz norm.
            3. Compute the target curve at T = 10, 20, 40.
        """
        self.logger.info("STEP: Build the family for N = 1/2.")
        profile = family_marcinkiewicz_critical(1.0, 0.5)
        star = gradient_rearrangement(profile)
        s = np.array([1e-3, 0.1, 0.4])
        assert maximal_function(star, s) == pytest.approx(
            critical_maximal_function(1.0, 0.5, s), rel=1e-9
        )
        self.logger.info("STEP: Compute the Marcinkiewicz norm.")
        norm = marcinkiewicz_M_norm(plain_exp(0.5, 1.0), star)
        assert norm.value == pytest.approx(1.0, abs=1e-8)
        self.logger.info("STEP: Compute the target curve at T = 10, 20, 40.")
        verdict = target_curve(profile, 1.0, kappa_beta(1.0), (10.0, 20.0, 40.0))
        values = [point.value for point in verdict.evidence]
        assert 4.0 <= values[1] / values[0] <= 16.0
        assert 4.0 <= values[2] / values[1] <= 16.0

    def test_critical_family_needs_room(self):
        """Test that the critical family rejects a too small level.

        Approval criteria:
            - N = 1, β = 1 shall raise ConstructionError.
            - β > 2 shall raise DomainError.

        Test steps::
            1. Build the family for invalid parameters.
        """
        self.logger.info("STEP: Build the family for invalid parameters.")
        with pytest.raises(ConstructionError):
            family_marcinkiewicz_critical(1.0, 1.0)
        with pytest.raises(DomainError):
            family_marcinkiewicz_critical(3.0, 0.5)

    def test_linear_family(self):
        """Test u(x) = x₁ at and below the supremum threshold.

        Approval criteria:
            - At κ = 1/√2 the truncated integral shall be √(2/π)·T and diverge.
            - At κ = 1/2 it shall be finite.

        Test steps::
            1. Compute the target curve at κ = 1/√2.
            2. Compute the target curve at κ = 1/2.
        """
        profile = family_linear()
        self.logger.info("STEP: Compute the target curve at κ = 1/√2.")
        verdict = target_curve(profile, math.inf, kappa_beta(math.inf))
        for point in verdict.evidence:
            assert point.value == pytest.approx(math.sqrt(2.0 / math.pi) * point.T, rel=1e-8)
        assert verdict.classification == "divergent"
        self.logger.info("STEP: Compute the target curve at κ = 1/2.")
        verdict = target_curve(profile, math.inf, 0.5, rel_tol=1e-8)
        assert verdict.classification == "finite"
        assert verdict.evidence[-1].value == pytest.approx(math.sqrt(2.0), rel=1e-8)

    def test_medmv_family(self):
        """Test that the mean of the median/mean family matches its closed form.

        Approval criteria:
            - The computed mean shall match the certificate.
            - The target integral at κ = 1/2 shall be finite.

        Test steps::
            1. Evaluate the family for k = 4.
            2. Verify the mean and the verdict.
        """
        profile = family_medmv(4.0)
        self.logger.info("STEP: Evaluate the family for k = 4.")
        report = evaluate_family(profile, math.inf, 0.5)
        self.logger.info("STEP: Verify the mean and the verdict.")
        assert report.mean == pytest.approx(profile.certificates["mean"], rel=1e-6)
        assert math.isnan(report.gradient_modular)
        assert report.verdict.classification == "finite"

    def test_flattened_lower_bound_grows(self):
        """Test that the flattened family pushes the target integral up at κ₄.

        Approval criteria:
            - The lower bound shall increase with k and gain at least log 2.

        Test steps::
            1. Read σ from the family for t0 = 2.
            2. Compute the lower bound for k = σ + 1, ..., σ + 6.
        """
        self.logger.info("STEP: Read σ from the family for t0 = 2.")
        sigma = family_flattened(4.0, 1.0, 2.0, 20.0).certificates["sigma"]
        self.logger.info("STEP: Compute the lower bound for k = σ + 1, ..., σ + 6.")
        bounds = [flattened_lower_bound(4.0, 2.0, sigma + step) for step in range(1, 7)]
        assert np.all(np.diff(bounds) > 0.0)
        assert bounds[-1] - bounds[0] >= math.log(2.0)

    @pytest.mark.parametrize(
        "build",
        [
            lambda: family_supercritical(2.0, 1.0, 1.0),
            lambda: family_supercritical(2.0, 0.5, 0.0),
            lambda: family_flattened(2.0, 1.0, 2.0, 10.0),
            lambda: family_flattened(4.0, 1.0, 2.0, 1.0),
            lambda: family_medmv(0.5),
            lambda: supercritical_t0(2.0, 0.5, construct_envelope_M(2.0, 2.0), M=1.0),
        ],
    )
    def test_domain_errors(self, build):
        """Test that families reject parameters outside their ranges.

        Approval criteria:
            - DomainError shall be raised.

        Test steps::
            1. Build the family.
        """
        self.logger.info("STEP: Build the family.")
        with pytest.raises(DomainError):
            build()

    def test_evaluate_family_errors(self):
        """Test constraint validation of evaluate_family.

        Approval criteria:
            - Unknown constraints and a missing Young function raise ConfigurationError.

        Test steps::
            1. Evaluate with an unknown constraint.
            2. Evaluate without a Young function.
        """
        profile = family_linear()
        self.logger.info("STEP: Evaluate with an unknown constraint.")
        with pytest.raises(ConfigurationError):
            evaluate_family(profile, math.inf, 0.5, constraints=("sobolev",))
        self.logger.info("STEP: Evaluate without a Young function.")
        with pytest.raises(ConfigurationError):
            evaluate_family(profile, math.inf, 0.5, constraints=("luxemburg",))

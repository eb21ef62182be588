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
"""Report models for verdicts, extremal families and scans."""
import math
from typing import List, Optional

from pydantic import BaseModel, validator

# There's a bug with pylint detecting subscription on Optional objects as problematic.
# https://github.com/PyCQA/pylint/issues/3882
# pylint: disable=unsubscriptable-object

CLASSIFICATIONS = ("finite", "divergent", "inconclusive")


class CurvePoint(BaseModel):
    """A truncated integral ∫₀^T and the log integrand at T."""

    T: float
    value: float
    log_value: float
    log_integrand: float

    def csv_row(self):
        """Row of the curve CSV: T, truncated_value, log_integrand_at_T."""
        return [repr(self.T), repr(self.value), repr(self.log_integrand)]


class KappaVerdict(BaseModel):
    """Finite, divergent or inconclusive, with the evidence."""

    kappa: float
    classification: str
    evidence: List[CurvePoint] = []
    exponent_estimate: Optional[float] = None
    decay_coefficient: Optional[float] = None
    tail_slope: Optional[float] = None
    route: str = "upper"

    @validator("classification")
    def validate_classification(
        cls, value
    ):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Classification is one of CLASSIFICATIONS.

        :param value: Classification to validate.
        :type value: str
        :return: Same as value, if validated.
        :rtype: str
        """
        if value not in CLASSIFICATIONS:
            raise ValueError("Unknown classification %r, valid: %r" % (value, CLASSIFICATIONS))
        return value

    @property
    def value(self):
        """Last truncated value, inf when divergent."""
        if self.classification == "divergent":
            return math.inf
        return self.evidence[-1].value if self.evidence else math.nan


class FamilyReport(BaseModel):
    """Constraints, centerings and target curve of one extremal profile."""

    label: str
    kappa: float
    beta: float
    gradient_modular: float
    norms: dict = {}
    median: float
    mean: float
    verdict: KappaVerdict
    certificates: dict = {}
    checks: dict = {}

    @property
    def constraints_hold(self):
        """True when every checked constraint holds."""
        return all(self.checks.values())


class ScanResult(BaseModel):
    """Per-κ verdicts of a sharpness scan and the transition estimate."""

    beta: float
    kind: str
    kappa_beta: float
    verdicts: List[KappaVerdict]
    lower: List[Optional[KappaVerdict]] = []
    transition: Optional[float] = None
    transition_error: Optional[float] = None
    monotone: bool = True

    @property
    def inconclusive(self):
        """κ values left inconclusive."""
        return [v.kappa for v in self.verdicts if v.classification == "inconclusive"]

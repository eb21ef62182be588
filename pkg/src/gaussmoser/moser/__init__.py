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
"""Reduction functionals, extremal families and the κ scanner."""
from gaussmoser.moser.families import (
    evaluate_family,
    family_flattened,
    family_linear,
    family_marcinkiewicz_critical,
    family_medmv,
    family_supercritical,
    flattened_lambda,
    flattened_lower_bound,
    flattened_modular,
    head_tail_lambda,
    supercritical_t0,
)
from gaussmoser.moser.functionals import (
    KINDS,
    ReductionFunctional,
    functional_LB,
    functional_Linf,
    functional_mB,
    kappa_beta,
    leading_term,
    power,
)
from gaussmoser.moser.verdict import moser_rhs, sharpness_scan

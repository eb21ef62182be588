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
"""Exceptions raised by gaussmoser."""


class GaussMoserError(Exception):
    """Base class of all gaussmoser errors."""


class DomainError(GaussMoserError, ValueError):
    """Argument outside of the domain of an operation."""


class ConstructionError(GaussMoserError, ValueError):
    """A Young function or an extremal family could not be built."""


class ConfigurationError(GaussMoserError, ValueError):
    """Inconsistent combination of inputs."""


class IntegrationError(GaussMoserError, ArithmeticError):
    """Quadrature did not reach the requested accuracy.

    :param message: Human readable description.
    :type message: str
    :param diagnostics: Interval, estimate, error estimate and subdivisions.
    :type diagnostics: dict
    """

    def __init__(self, message, diagnostics=None):
        """Store diagnostics alongside the message."""
        super().__init__(message)
        self.diagnostics = diagnostics or {}

    def __str__(self):
        """Message followed by the diagnostics, if any."""
        message = super().__str__()
        if self.diagnostics:
            return "%s %r" % (message, self.diagnostics)
        return message

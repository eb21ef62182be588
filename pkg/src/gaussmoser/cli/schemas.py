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
"""Validated command line configuration."""
import math
from typing import List, Optional

from pydantic import BaseModel, validator

from gaussmoser.young import FAMILIES, YoungFunction

# There's a bug with pylint detecting subscription on Optional objects as problematic.
# https://github.com/PyCQA/pylint/issues/3882
# pylint: disable=unsubscriptable-object

COMMANDS = ("constants", "bound", "extremal", "scan", "verify")
KIND_FLAGS = {
    "lux": "luxemburg",
    "marc-M": "marcinkiewicz-M",
    "marc-m": "marcinkiewicz-m",
    "linf-med": "l-infinity-median",
    "linf-mean": "l-infinity-mean",
}
EXTREMAL_FAMILIES = ("supercritical", "critical", "flattened", "medmv", "linear")
FORMATS = ("json", "csv")
REQUIRED_PARAMETERS = {
    "plain-exp": ("N",),
    "envelope-M": ("M",),
    "head-tail": ("M",),
    "flattened": ("N", "t0"),
}


class YoungSpec(BaseModel):
    """JSON form of a Young function: family tag plus parameters."""

    family: str
    beta: float
    N: Optional[float] = None  # pylint:disable=invalid-name
    M: Optional[float] = None  # pylint:disable=invalid-name
    t0: Optional[float] = None

    @validator("family")
    def validate_family(cls, family):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Family is one of the constructions.

        :param family: Family tag to validate.
        :type family: str
        :return: Same as family, if validated.
        :rtype: str
        """
        if family not in FAMILIES:
            raise ValueError("Unknown family %r, valid families: %r" % (family, FAMILIES))
        return family

    @validator("beta")
    def validate_beta(cls, beta):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Tail exponent is positive and finite."""
        if not 0.0 < beta < math.inf:
            raise ValueError("beta must be positive and finite, got %r" % beta)
        return beta

    @validator("t0", always=True)
    def validate_parameters(
        cls, t0, values
    ):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Every parameter the family needs is present.

        A head-tail function takes either M alone or N and t0.

        :param t0: The value of 't0', validated last.
        :type t0: float or None
        :param values: The values set on the model.
        :type values: dict
        :return: Same as t0, if validated.
        :rtype: float or None
        """
        family = values.get("family")
        given = dict(values, t0=t0)
        if family == "head-tail" and t0 is not None:
            required = ("N", "t0")
        else:
            required = REQUIRED_PARAMETERS.get(family, ())
        missing = [name for name in required if given.get(name) is None]
        if missing:
            raise ValueError("Family %r needs parameters %r" % (family, missing))
        return t0

    def build(self):
        """The Young function.

        :rtype: :obj:`gaussmoser.young.YoungFunction`
        """
        return YoungFunction.from_spec(self)


class RunConfig(BaseModel):
    """Everything one command needs, checked before any computation."""

    command: str
    beta: List[float] = []
    kind: str = "lux"
    young: Optional[YoungSpec] = None
    kappa: Optional[float] = None
    kappa_grid: Optional[List[float]] = None
    family: Optional[str] = None
    parameters: dict = {}
    constraints: List[str] = []
    entries: List[str] = []
    t_grid: Optional[List[float]] = None
    rel_tol: Optional[float] = None
    format: str = "json"
    out: Optional[str] = None

    @validator("command")
    def validate_command(cls, command):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Command is one of COMMANDS."""
        if command not in COMMANDS:
            raise ValueError("Unknown command %r, valid commands: %r" % (command, COMMANDS))
        return command

    @validator("beta", each_item=True)
    def validate_beta(cls, beta):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Every β is positive; inf is allowed."""
        if not beta > 0.0:
            raise ValueError("beta must be positive, got %r" % beta)
        return beta

    @validator("kind")
    def validate_kind(cls, kind):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Kind is one of the flag names."""
        if kind not in KIND_FLAGS:
            raise ValueError("Unknown kind %r, valid kinds: %r" % (kind, tuple(KIND_FLAGS)))
        return kind

    @validator("young", always=True)
    def validate_young(
        cls, young, values
    ):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Orlicz kinds need a Young function whose β matches --beta.

        :param young: The value of 'young' to validate.
        :type young: :obj:`YoungSpec` or None
        :param values: The values set on the model.
        :type values: dict
        :return: Same as young, if validated.
        :rtype: :obj:`YoungSpec` or None
        """
        command = values.get("command")
        betas = values.get("beta", [])
        orlicz = not values.get("kind", "lux").startswith("linf")
        if command in ("bound", "scan") and orlicz and young is None:
            raise ValueError("Kind %r needs --young" % values.get("kind"))
        if young is not None and betas and not math.isclose(betas[0], young.beta):
            raise ValueError("--beta %r does not match the Young function beta %r" % (betas[0], young.beta))
        return young

    @validator("kappa", always=True)
    def validate_kappa(
        cls, kappa, values
    ):  # Pydantic requires cls. pylint:disable=no-self-argument
        """bound and extremal need one positive --kappa."""
        if values.get("command") in ("bound", "extremal"):
            if kappa is None:
                raise ValueError("Command %r needs --kappa" % values.get("command"))
        if kappa is not None and not kappa > 0.0:
            raise ValueError("kappa must be positive, got %r" % kappa)
        return kappa

    @validator("kappa_grid", always=True)
    def validate_kappa_grid(
        cls, kappa_grid, values
    ):  # Pydantic requires cls. pylint:disable=no-self-argument
        """scan needs a nonempty positive --kappa-grid and no --kappa."""
        if values.get("command") == "scan":
            if not kappa_grid:
                raise ValueError("Command 'scan' needs --kappa-grid")
            if values.get("kappa") is not None:
                raise ValueError("Use either --kappa or --kappa-grid, not both")
        if kappa_grid and min(kappa_grid) <= 0.0:
            raise ValueError("kappa grid must be positive, got %r" % (kappa_grid,))
        return kappa_grid

    @validator("family", always=True)
    def validate_family(
        cls, family, values
    ):  # Pydantic requires cls. pylint:disable=no-self-argument
        """extremal needs one of EXTREMAL_FAMILIES."""
        if values.get("command") == "extremal" and family not in EXTREMAL_FAMILIES:
            raise ValueError(
                "Unknown extremal family %r, valid: %r" % (family, EXTREMAL_FAMILIES)
            )
        return family

    @validator("t_grid")
    def validate_t_grid(cls, t_grid):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Truncation points are positive and strictly increasing."""
        if t_grid is not None:
            if len(t_grid) < 2 or min(t_grid) <= 0.0:
                raise ValueError("T grid needs two positive points, got %r" % (t_grid,))
            if any(b <= a for a, b in zip(t_grid[:-1], t_grid[1:])):
                raise ValueError("T grid must increase, got %r" % (t_grid,))
        return t_grid

    @validator("rel_tol")
    def validate_rel_tol(cls, rel_tol):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Tolerance lies in (0, 1)."""
        if rel_tol is not None and not 0.0 < rel_tol < 1.0:
            raise ValueError("rel_tol must lie in (0, 1), got %r" % rel_tol)
        return rel_tol

    @validator("format")
    def validate_format(cls, value):  # Pydantic requires cls. pylint:disable=no-self-argument
        """Output format is json or csv."""
        if value not in FORMATS:
            raise ValueError("Unknown format %r, valid: %r" % (value, FORMATS))
        return value

    @property
    def functional_kind(self):
        """Kind name of the reduction functional."""
        return KIND_FLAGS[self.kind]

    @property
    def tail_beta(self):
        """β of the run: --beta, the Young function's, or inf for supremum kinds."""
        if self.beta:
            return self.beta[0]
        if self.young is not None:
            return self.young.beta
        return math.inf

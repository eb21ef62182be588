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
"""Gaussmoser context based logging."""
import logging
from contextvars import ContextVar

FORMAT = (
    "%(asctime)s %(levelname)s [%(identifier)s] %(application)s %(version)s "
    "(%(environment)s) %(name)s: %(message)s"
)


class ContextLogging(logging.Logger):
    """A specialized context based logging class.

    Scans evaluate many kappa values and truncation grids and their log
    lines interleave. Each command sets a run identifier in a ContextVar
    and every logging method adds it to the record, so that lines can be
    attributed to the run that produced them.
    """

    identifier = ContextVar("identifier")

    def _extra(self, kwargs):
        extra = dict(kwargs.pop("extra", None) or {})
        extra.setdefault("identifier", self.identifier.get("Main"))  # Default=Main
        kwargs["extra"] = extra
        return kwargs

    def critical(self, msg, *args, **kwargs):
        """Add identifier to critical calls.

        For documentation read :obj:`logging.Logger.critical`
        """
        return super().critical(msg, *args, **self._extra(kwargs))

    def error(self, msg, *args, **kwargs):
        """Add identifier to error calls.

        For documentation read :obj:`logging.Logger.error`
        """
        return super().error(msg, *args, **self._extra(kwargs))

    def warning(self, msg, *args, **kwargs):
        """Add identifier to warning calls.

        For documentation read :obj:`logging.Logger.warning`
        """
        return super().warning(msg, *args, **self._extra(kwargs))

    def info(self, msg, *args, **kwargs):
        """Add identifier to info calls.

        For documentation read :obj:`logging.Logger.info`
        """
        return super().info(msg, *args, **self._extra(kwargs))

    def debug(self, msg, *args, **kwargs):
        """Add identifier to debug calls.

        For documentation read :obj:`logging.Logger.debug`
        """
        return super().debug(msg, *args, **self._extra(kwargs))


class ApplicationFilter(logging.Filter):  # pylint:disable=too-few-public-methods
    """Fill in the fields that the format needs on every record."""

    def __init__(self, application, version, environment):
        """Store the static fields."""
        super().__init__()
        self.application = application
        self.version = version
        self.environment = environment

    def filter(self, record):
        """Add application fields and a default identifier."""
        record.application = self.application
        record.version = self.version
        record.environment = self.environment
        if not hasattr(record, "identifier"):
            record.identifier = ContextLogging.identifier.get("Main")
        return True


def setup_logging(application, version, environment, level=logging.INFO):
    """Set up a stream handler carrying the run identifier.

    Calling it more than once replaces the handler installed earlier.

    :param application: Name to show in every log line.
    :type application: str
    :param version: Version of the application.
    :type version: str
    :param environment: 'development' or 'production'.
    :type environment: str
    :param level: Root log level.
    :type level: int
    :return: The installed handler.
    :rtype: :obj:`logging.Handler`
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "gaussmoser", False):
            root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.gaussmoser = True
    handler.addFilter(ApplicationFilter(application, version, environment))
    handler.setFormatter(logging.Formatter(FORMAT))
    root.addHandler(handler)
    root.setLevel(level)
    return handler


logging.setLoggerClass(ContextLogging)

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
"""Gaussian Moser inequality numerics."""
import os
from importlib.metadata import version, PackageNotFoundError
from gaussmoser.library.context_logging import ContextLogging, setup_logging

try:
    VERSION = version("gaussmoser")
except PackageNotFoundError:
    VERSION = "Unknown"

DEV = os.getenv("DEV", "false").lower() == "true"
ENVIRONMENT = "development" if DEV else "production"
PRECISION = os.getenv("GAUSSMOSER_PRECISION", "double").lower()

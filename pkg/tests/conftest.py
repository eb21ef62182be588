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
"""Shared fixtures for the gaussmoser tests."""
import pytest


@pytest.fixture(autouse=True)
def double_precision(monkeypatch):
    """Run every test with the default precision and tolerance settings."""
    monkeypatch.setenv("GAUSSMOSER_PRECISION", "double")
    monkeypatch.delenv("GAUSSMOSER_DPS", raising=False)
    monkeypatch.delenv("GAUSSMOSER_REL_TOL", raising=False)

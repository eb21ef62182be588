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
"""Tests for the command line front end."""
import csv
import json
import logging
import math
import sys

import pytest

from gaussmoser.cli.main import EXIT_CHECK_FAILED, EXIT_ERROR, EXIT_OK, main

logging.basicConfig(level=logging.DEBUG, stream=sys.stdout)

ENVELOPE = '{"family": "envelope-M", "M": 2, "beta": 2}'


def _run(tmp_path, *argv, name="out.json"):
    """Run the CLI writing to a file and return exit code and file text."""
    out = tmp_path / name
    code = main(list(argv) + ["--out", str(out)])
    return code, out.read_text(encoding="utf-8") if out.exists() else None


class TestMain:
    """Test the subcommands end to end."""

    logger = logging.getLogger(__name__)

    def test_constants_json(self, tmp_path):
        """Test the constants subcommand with JSON output.

        Approval criteria:
            - κ₂ = √2, p = 1 and κ₂^p = √2 shall be reported with exit code 0.

        Test steps::
            1. Run 'constants --beta 1 2'.
            2. Parse the JSON output.
        """
        self.logger.info("STEP: Run 'constants --beta 1 2'.")
        code, text = _run(tmp_path, "constants", "--beta", "1", "2")
        assert code == EXIT_OK
        self.logger.info("STEP: Parse the JSON output.")
        rows = json.loads(text)["constants"]
        assert [row["beta"] for row in rows] == [1.0, 2.0]
        assert rows[1]["kappa_beta"] == pytest.approx(math.sqrt(2.0))
        assert rows[1]["p"] == pytest.approx(1.0)
        assert rows[1]["kappa_beta_power"] == pytest.approx(math.sqrt(2.0))
        assert rows[0]["kappa_beta"] == pytest.approx(3.0 / math.sqrt(2.0))

    def test_constants_csv(self, tmp_path):
        """Test the constants subcommand with CSV output.

        Approval criteria:
            - The header shall be beta, kappa_beta, p, kappa_beta_power.

        Test steps::
            1. Run 'constants --beta 4 --format csv'.
            2. Read the CSV output.
        """
        self.logger.info("STEP: Run 'constants --beta 4 --format csv'.")
        code, text = _run(tmp_path, "constants", "--beta", "4", "--format", "csv", name="c.csv")
        assert code == EXIT_OK
        self.logger.info("STEP: Read the CSV output.")
        rows = list(csv.reader(text.splitlines()))
        assert rows[0] == ["beta", "kappa_beta", "p", "kappa_beta_power"]
        assert float(rows[1][2]) == pytest.approx(4.0 / 3.0)

    def test_stdout(self, capsys):
        """Test that output goes to stdout without --out.

        Approval criteria:
            - The constants document shall be printed.

        Test steps::
            1. Run 'constants --beta 2'.
        """
        self.logger.info("STEP: Run 'constants --beta 2'.")
        assert main(["constants", "--beta", "2"]) == EXIT_OK
        assert '"constants"' in capsys.readouterr().out

    @pytest.mark.parametrize(
        "argv",
        [
            ["constants", "--beta", "0"],
            ["constants"],
            ["bound", "--kind", "lux", "--kappa", "1.0"],
            ["bound", "--kind", "linf-med", "--kappa", "0"],
            ["bound", "--kind", "marc-m", "--young", '{"family": "sobolev", "beta": 2}', "--kappa", "1"],
            ["bound", "--kind", "marc-m", "--young", ENVELOPE, "--beta", "3", "--kappa", "1"],
            ["scan", "--kind", "linf-med", "--kappa-grid", "0.5,-1"],
            ["extremal", "--family", "supercritical", "--beta", "2", "--kappa", "2"],
            ["extremal", "--family", "flattened", "--kappa", "2"],
            ["bound", "--kind", "linf-med", "--kappa", "1", "--tmax-grid", "8,4,2"],
        ],
    )
    def test_invalid_input(self, argv):
        """Test that invalid input gives exit code 2.

        Approval criteria:
            - main shall return 2 without raising.

        Test steps::
            1. Run the command.
        """
        self.logger.info("STEP: Run the command.")
        assert main(argv) == EXIT_ERROR

    def test_bound(self, tmp_path):
        """Test the bound subcommand for the supremum constraint.

        Approval criteria:
            - κ = 1/2 shall be finite with exit code 0.

        Test steps::
            1. Run 'bound --kind linf-med --kappa 0.5'.
            2. Parse the verdict.
        """
        self.logger.info("STEP: Run 'bound --kind linf-med --kappa 0.5'.")
        code, text = _run(tmp_path, "bound", "--kind", "linf-med", "--kappa", "0.5")
        assert code == EXIT_OK
        self.logger.info("STEP: Parse the verdict.")
        verdict = json.loads(text)
        assert verdict["classification"] == "finite"
        assert verdict["evidence"][-1]["value"] == pytest.approx(math.sqrt(2.0), rel=1e-6)

    def test_bound_young_file(self, tmp_path):
        """Test --young given as a file and CSV curve output.

        Approval criteria:
            - The Marcinkiewicz bound at κ = 1.6 for β = 2 shall be written as a
              curve with one row per truncation point.

        Test steps::
            1. Write the Young function to a file.
            2. Run 'bound' with the file and a short T grid.
        """
        self.logger.info("STEP: Write the Young function to a file.")
        young = tmp_path / "young.json"
        young.write_text(ENVELOPE, encoding="utf-8")
        self.logger.info("STEP: Run 'bound' with the file and a short T grid.")
        code, text = _run(
            tmp_path,
            "bound",
            "--kind",
            "marc-m",
            "--young",
            str(young),
            "--kappa",
            "1.6",
            "--tmax-grid",
            "8,16,32,64",
            "--format",
            "csv",
            name="curve.csv",
        )
        assert code == EXIT_OK
        rows = list(csv.reader(text.splitlines()))
        assert rows[0] == ["T", "truncated_value", "log_integrand_at_T"]
        assert [float(row[0]) for row in rows[1:]] == [8.0, 16.0, 32.0, 64.0]

    def test_scan(self, tmp_path):
        """Test the scan subcommand for the supremum constraint.

        Approval criteria:
            - The transition shall be 0.675 ± 0.075 with exit code 0.

        Test steps::
            1. Run 'scan --kind linf-med --kappa-grid 0.5,0.6,0.75,0.9'.
        """
        self.logger.info("STEP: Run 'scan --kind linf-med --kappa-grid 0.5,0.6,0.75,0.9'.")
        code, text = _run(tmp_path, "scan", "--kind", "linf-med", "--kappa-grid", "0.5,0.6,0.75,0.9")
        assert code == EXIT_OK
        scan = json.loads(text)
        assert scan["transition"] == pytest.approx(0.675)
        assert scan["transition_error"] == pytest.approx(0.075)

    def test_extremal(self, tmp_path):
        """Test the extremal subcommand for the linear family.

        Approval criteria:
            - u = x₁ at κ = 1/2 shall be finite with median and mean 0.

        Test steps::
            1. Run 'extremal --family linear --kappa 0.5'.
        """
        self.logger.info("STEP: Run 'extremal --family linear --kappa 0.5'.")
        code, text = _run(tmp_path, "extremal", "--family", "linear", "--kappa", "0.5")
        assert code == EXIT_OK
        report = json.loads(text)
        assert report["verdict"]["classification"] == "finite"
        assert report["median"] == 0.0
        assert report["mean"] == 0.0

    def test_extremal_constraints(self, tmp_path):
        """Test that extremal fails when the profile breaks its constraints.

        Approval criteria:
            - An admissible supercritical profile shall exit 0 with every check passing.
            - t0 = 0.1 shall break ∫e^{|∇u|²}dγ <= 2 and exit 1.

        Test steps::
            1. Run the supercritical family with t0 chosen from --young.
            2. Run it again with t0 = 0.1.
        """
        kappa = repr(1.1 * math.sqrt(2.0))
        self.logger.info("STEP: Run the supercritical family with t0 chosen from --young.")
        code, text = _run(
            tmp_path,
            "extremal",
            "--family",
            "supercritical",
            "--young",
            ENVELOPE,
            "--param",
            "lam=0.9",
            "--kappa",
            kappa,
            "--constraints",
            "luxemburg",
            "modular",
        )
        assert code == EXIT_OK
        assert all(json.loads(text)["checks"].values())
        self.logger.info("STEP: Run it again with t0 = 0.1.")
        code, text = _run(
            tmp_path,
            "extremal",
            "--family",
            "supercritical",
            "--beta",
            "2",
            "--param",
            "lam=0.9",
            "--param",
            "t0=0.1",
            "--kappa",
            kappa,
            name="violated.json",
        )
        assert code == EXIT_CHECK_FAILED
        assert json.loads(text)["checks"] == {"gradient_modular": False}

    def test_verify(self, tmp_path):
        """Test the verify subcommand on selected entries.

        Approval criteria:
            - The Gaussian tail entries shall pass with exit code 0.
            - An entry filter matching nothing shall give exit code 2.

        Test steps::
            1. Run 'verify --beta 1 --entries log-Phi Phi-prime'.
            2. Run 'verify' with an unknown entry.
        """
        self.logger.info("STEP: Run 'verify --beta 1 --entries log-Phi Phi-prime'.")
        code, text = _run(tmp_path, "verify", "--beta", "1", "--entries", "log-Phi", "Phi-prime")
        assert code == EXIT_OK
        results = json.loads(text)["results"]
        assert [result["label"] for result in results] == ["log-Phi", "Phi-prime"]
        assert all(result["passed"] for result in results)
        self.logger.info("STEP: Run 'verify' with an unknown entry.")
        assert main(["verify", "--beta", "1", "--entries", "nothing"]) == EXIT_ERROR

    def test_deterministic(self, tmp_path):
        """Test that repeated runs write identical output.

        Approval criteria:
            - Two runs of the same command shall produce the same bytes.

        Test steps::
            1. Run the same bound twice.
        """
        self.logger.info("STEP: Run the same bound twice.")
        argv = ["bound", "--kind", "linf-mean", "--kappa", "0.6"]
        first = _run(tmp_path, *argv, name="first.json")
        second = _run(tmp_path, *argv, name="second.json")
        assert first == second

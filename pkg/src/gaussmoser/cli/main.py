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
"""Command line front end.

Every subcommand builds a :obj:`gaussmoser.cli.schemas.RunConfig`, runs one
library operation and writes sorted-key JSON or CSV. The exit code is 0
when every verdict is conclusive and every check passed, 1 otherwise and 2
on invalid input or numerical failure.
"""
import argparse
import csv
import io
import json
import logging
import math
import os
import sys

from pydantic import ValidationError

from gaussmoser import ENVIRONMENT, VERSION
from gaussmoser.asympt import builtin_expansions, run_catalog
from gaussmoser.cli.schemas import EXTREMAL_FAMILIES, FORMATS, KIND_FLAGS, RunConfig, YoungSpec
from gaussmoser.exceptions import ConfigurationError, GaussMoserError
from gaussmoser.gauss_core import Quadrature
from gaussmoser.library.context_logging import ContextLogging, setup_logging
from gaussmoser.moser import families
from gaussmoser.moser.curves import DEFAULT_T_GRID, FAMILY_T_GRID
from gaussmoser.moser.families import CONSTRAINTS
from gaussmoser.moser.functionals import ReductionFunctional, kappa_beta, power
from gaussmoser.moser.verdict import moser_rhs, sharpness_scan

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


def _floats(text):
    return [float(part) for part in text.replace(",", " ").split()]


def _young(text):
    """--young takes a JSON object or the path of a file holding one."""
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as young_file:
            text = young_file.read()
    return YoungSpec.parse_raw(text)


def _parameters(pairs):
    parameters = {}
    for pair in pairs or []:
        key, _, value = pair.partition("=")
        if not value:
            raise ConfigurationError("Family parameters are key=value, got %r" % pair)
        parameters[key] = float(value)
    return parameters


def parser():
    """Argument parser with one subcommand per experiment.

    :return: The parser.
    :rtype: :obj:`argparse.ArgumentParser`
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--beta", type=float, nargs="+", default=[], help="Tail exponent(s) beta.")
    common.add_argument(
        "--young",
        default=None,
        help="Young function B as JSON, or a file holding it, "
        'e.g. \'{"family": "envelope-M", "M": 2, "beta": 2}\'.',
    )
    common.add_argument(
        "--kind",
        choices=tuple(KIND_FLAGS),
        default="lux",
        help="Gradient constraint of the reduction functional (default: lux).",
    )
    common.add_argument(
        "--tmax-grid",
        type=_floats,
        default=None,
        help="Increasing truncation points T, comma separated (default: %r)."
        % (DEFAULT_T_GRID,),
    )
    common.add_argument(
        "--rel-tol",
        type=float,
        default=None,
        help="Agreement of the last truncations for a finite verdict "
        "(default: GAUSSMOSER_REL_TOL or 1e-6).",
    )
    common.add_argument("--format", choices=FORMATS, default="json", help="Output format.")
    common.add_argument("--out", default=None, help="Output file (default: stdout).")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging.")

    main_parser = argparse.ArgumentParser(
        prog="gaussmoser", description="Sharp exponential integrability in Gauss space."
    )
    main_parser.add_argument("--version", action="version", version=VERSION)
    commands = main_parser.add_subparsers(dest="command", required=True)
    commands.add_parser(
        "constants", parents=[common], help="kappa_beta, p and kappa_beta^p per beta."
    )
    bound = commands.add_parser(
        "bound", parents=[common], help="Classify the reduced exponential integral at one kappa."
    )
    bound.add_argument("--kappa", type=float, required=True)
    extremal = commands.add_parser(
        "extremal", parents=[common], help="Constraints and target curve of an extremal profile."
    )
    extremal.add_argument("--family", choices=EXTREMAL_FAMILIES, required=True)
    extremal.add_argument(
        "--param",
        action="append",
        metavar="KEY=VALUE",
        help="Family parameter: lam, t0 and M (supercritical), N and tau0 (critical), "
        "N, t0 and k (flattened), k (medmv).",
    )
    extremal.add_argument("--kappa", type=float, required=True)
    extremal.add_argument(
        "--constraints", nargs="*", choices=CONSTRAINTS, default=[], help="Norms to certify."
    )
    scan = commands.add_parser(
        "scan", parents=[common], help="Sharpness scan over a kappa grid."
    )
    scan.add_argument("--kappa-grid", type=_floats, required=True)
    verify = commands.add_parser(
        "verify", parents=[common], help="Check the asymptotic expansion catalog."
    )
    verify.add_argument(
        "--entries", nargs="*", default=[], help="Substrings selecting catalog entries."
    )
    return main_parser


def _config(arguments):
    data = {
        "command": arguments.command,
        "beta": arguments.beta,
        "kind": arguments.kind,
        "young": _young(arguments.young) if arguments.young else None,
        "t_grid": arguments.tmax_grid,
        "rel_tol": arguments.rel_tol,
        "format": arguments.format,
        "out": arguments.out,
    }
    for name in ("kappa", "kappa_grid", "family", "constraints", "entries"):
        if hasattr(arguments, name):
            data[name] = getattr(arguments, name)
    if hasattr(arguments, "param"):
        data["parameters"] = _parameters(arguments.param)
    return RunConfig(**data)


def _quadrature(config):
    if config.rel_tol is None:
        return Quadrature()
    return Quadrature(rel_tol=config.rel_tol)


def _function(config):
    return config.young.build() if config.young is not None else None


def _csv(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _json(data):
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def cmd_constants(config):
    """κ_β, p = 2β/(2+β) and κ_β^p for every --beta.

    :return: Output text and exit code.
    :rtype: tuple
    """
    if not config.beta:
        raise ConfigurationError("Command 'constants' needs at least one --beta")
    rows = []
    for beta in config.beta:
        kappa, exponent = kappa_beta(beta), power(beta)
        rows.append(
            {"beta": beta, "kappa_beta": kappa, "p": exponent, "kappa_beta_power": kappa**exponent}
        )
    if config.format == "csv":
        keys = ("beta", "kappa_beta", "p", "kappa_beta_power")
        return _csv(keys, [[repr(row[key]) for key in keys] for row in rows]), EXIT_OK
    return _json({"constants": rows}), EXIT_OK


def _verdict_output(config, verdict, extra=None):
    if config.format == "csv":
        return _csv(
            ("T", "truncated_value", "log_integrand_at_T"),
            [point.csv_row() for point in verdict.evidence],
        )
    data = json.loads(verdict.json())
    if extra:
        data = dict(extra, verdict=data)
    return _json(data)


def cmd_bound(config):
    """moser_rhs at one κ."""
    beta = config.tail_beta
    functional = ReductionFunctional(config.functional_kind, beta, _function(config))
    verdict = moser_rhs(
        config.kappa,
        functional.beta,
        functional,
        _quadrature(config),
        config.t_grid or DEFAULT_T_GRID,
        config.rel_tol,
    )
    LOGGER.info("kappa=%r is %s", config.kappa, verdict.classification)
    code = EXIT_CHECK_FAILED if verdict.classification == "inconclusive" else EXIT_OK
    return _verdict_output(config, verdict), code


def _profile(config, function):
    """The extremal profile named by --family with its --param values."""
    parameters = config.parameters
    beta = config.tail_beta
    try:
        if config.family == "supercritical":
            lam = parameters["lam"]
            t0 = parameters.get("t0")
            if t0 is None:
                if function is None:
                    raise ConfigurationError("Supercritical family needs t0 or --young")
                t0 = families.supercritical_t0(beta, lam, function, parameters.get("M", 2.0))
            return families.family_supercritical(beta, lam, t0)
        if config.family == "critical":
            return families.family_marcinkiewicz_critical(
                beta, parameters.get("N", 1.0), parameters.get("tau0", 0.0)
            )
        if config.family == "flattened":
            return families.family_flattened(
                beta, parameters.get("N", 1.0), parameters["t0"], parameters["k"]
            )
        if config.family == "medmv":
            return families.family_medmv(parameters["k"])
        return families.family_linear()
    except KeyError as exception:
        raise ConfigurationError(
            "Family %r needs --param %s=..." % (config.family, exception.args[0])
        ) from exception


def cmd_extremal(config):
    """evaluate_family for one extremal profile."""
    function = _function(config)
    beta = math.inf if config.family == "linear" else config.tail_beta
    if math.isinf(beta) and config.family not in ("linear", "medmv"):
        raise ConfigurationError("Family %r needs --beta or --young" % config.family)
    report = families.evaluate_family(
        _profile(config, function),
        beta,
        config.kappa,
        config.constraints,
        config.t_grid or FAMILY_T_GRID,
        function,
        _quadrature(config),
        config.rel_tol,
        config.parameters.get("M", 2.0) if config.family == "supercritical" else None,
    )
    failed = report.verdict.classification == "inconclusive" or not report.constraints_hold
    code = EXIT_CHECK_FAILED if failed else EXIT_OK
    if config.format == "csv":
        return _verdict_output(config, report.verdict), code
    return _json(json.loads(report.json())), code


def cmd_scan(config):
    """sharpness_scan over --kappa-grid."""
    result = sharpness_scan(
        config.tail_beta,
        _function(config),
        config.functional_kind,
        config.kappa_grid,
        _quadrature(config),
        config.t_grid or DEFAULT_T_GRID,
    )
    code = EXIT_CHECK_FAILED if result.inconclusive or not result.monotone else EXIT_OK
    if config.format == "csv":
        rows = [
            [repr(v.kappa), v.classification, v.route, repr(v.value)] for v in result.verdicts
        ]
        return _csv(("kappa", "classification", "route", "truncated_value"), rows), code
    return _json(json.loads(result.json())), code


def cmd_verify(config):
    """Run the asymptotic catalog."""
    catalog = builtin_expansions(config.tail_beta, _function(config))
    results = run_catalog(catalog, config.entries)
    if not results:
        raise ConfigurationError("No catalog entry matches %r" % (config.entries,))
    code = EXIT_OK if all(result.passed for result in results) else EXIT_CHECK_FAILED
    if config.format == "csv":
        rows = [point.csv_row() for result in results for point in result.points]
        return _csv(("label", "j", "t", "ratio"), rows), code
    summary = [
        {
            "label": result.label,
            "mode": result.mode,
            "passed": result.passed,
            "final": result.final,
            "message": result.message,
        }
        for result in results
    ]
    return _json({"beta": config.tail_beta, "results": summary}), code


COMMANDS = {
    "constants": cmd_constants,
    "bound": cmd_bound,
    "extremal": cmd_extremal,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


def main(argv=None):
    """Parse arguments, run one command and write its output.

    :param argv: Arguments without the program name.
    :type argv: list
    :return: Exit code.
    :rtype: int
    """
    arguments = parser().parse_args(argv)
    setup_logging(
        "gaussmoser",
        VERSION,
        ENVIRONMENT,
        logging.DEBUG if arguments.verbose else logging.INFO,
    )
    label = ",".join(repr(beta) for beta in arguments.beta) or "default"
    ContextLogging.identifier.set("%s:%s" % (arguments.command, label))
    try:
        config = _config(arguments)
        output, code = COMMANDS[config.command](config)
    except (ValidationError, GaussMoserError, ValueError) as exception:
        LOGGER.error("%s failed: %s", arguments.command, exception)
        return EXIT_ERROR
    if config.out:
        with open(config.out, "w", encoding="utf-8") as out_file:
            out_file.write(output)
    else:
        sys.stdout.write(output)
    LOGGER.info("%s finished with exit code %d", config.command, code)
    return code


def run():
    """Console script entry point."""
    sys.exit(main(sys.argv[1:]))

"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import sys

import click
from rich.console import Console
from rich.table import Table

from cocycle_forge.cmd import fail
from cocycle_forge.cmd import interrupted
from cocycle_forge.cmd import pass_state_context
from cocycle_forge import constants
from cocycle_forge import exceptions
from cocycle_forge import serialize
from cocycle_forge.suites import run_suite


def _summary(report):
    table = Table(title=f"Suite {report.name}")
    table.add_column("check")
    table.add_column("runs", justify="right")
    table.add_column("failed", justify="right")
    table.add_column("worst value", justify="right")
    for name in sorted({c["name"] for c in report.checks}):
        checks = [c for c in report.checks if c["name"] == name]
        failed = sum(not c["passed"] for c in checks)
        worst = report.constants.get(name)
        table.add_row(name, str(len(checks)), str(failed),
                      "" if worst is None else f"{worst:.3g}")
    return table


@click.command(help="Run a verification suite over seeded corpora.")
@pass_state_context
@click.option("--suite", type=click.Choice(constants.SUITES), required=True,
              help="Suite to run")
@click.option("--seeds", type=click.IntRange(min=1),
              help="Number of seeds (configured default otherwise)")
@click.option("--report", type=click.Path(dir_okay=False),
              help="Write the machine-readable report as JSON")
def verify(state, suite, seeds, report):
    try:
        result = run_suite(suite, seeds=seeds,
                           base_seed=state.seed or None)
        if report:
            serialize.write_text(report,
                                 serialize.encode(result.as_dict()) + "\n")
        Console(stderr=True).print(_summary(result))
        if not result.passed:
            raise exceptions.CheckError(
                f"Suite {suite} failed at seed "
                f"{result.first_failing_seed()}",
                seed=result.first_failing_seed())
    except exceptions.ForgeError as error:
        fail(error)
    except KeyboardInterrupt:
        interrupted()
    except BrokenPipeError:
        sys.exit()

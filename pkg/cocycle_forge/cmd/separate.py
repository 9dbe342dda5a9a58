"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import sys

import click

from cocycle_forge.cmd import fail
from cocycle_forge.cmd import interrupted
from cocycle_forge.cmd.options import eps_option
from cocycle_forge.cmd.options import in_option
from cocycle_forge.cmd.options import out_option
from cocycle_forge.cmd.options import scale_option
from cocycle_forge.cmd import pass_state_context
from cocycle_forge import exceptions
from cocycle_forge.separation import separate_exponents
from cocycle_forge import serialize


@click.command(help="Insert small rotations that undo exponent cancellation.")
@pass_state_context
@in_option
@scale_option
@eps_option
@click.option("--tolerance", type=float,
              help="Fail when the empirical slack exceeds this value")
@click.option("--report", type=click.Path(dir_okay=False),
              help="Write the Z-score table as CSV")
@out_option("Separated cocycle JSON file")
def separate(state, source, scale, eps, tolerance, report, out):
    try:
        cocycle = serialize.read_cocycle(source)
        result = separate_exponents(cocycle, scale, eps, seed=state.seed,
                                    tolerance=tolerance)
        if report:
            serialize.write_text(report, serialize.z_scores_to_csv(
                result.metadata["table"]))
        text = serialize.cocycle_to_json(result)
        if out:
            serialize.write_text(out, text)
        else:
            click.echo(text, nl=False)
    except exceptions.ForgeError as error:
        fail(error)
    except KeyboardInterrupt:
        interrupted()
    except BrokenPipeError:
        sys.exit()

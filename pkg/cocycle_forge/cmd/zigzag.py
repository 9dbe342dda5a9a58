"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import sys

import click

from cocycle_forge.cmd import fail
from cocycle_forge.cmd import interrupted
from cocycle_forge.cmd.options import out_option
from cocycle_forge.cmd import pass_state_context
from cocycle_forge import exceptions
from cocycle_forge.majorization import zigzag_path
from cocycle_forge import serialize


@click.command(help="Plan single-coordinate graph raises from src to dst.")
@pass_state_context
@click.option("--src", type=click.Path(dir_okay=False), required=True,
              help="Starting graph JSON file")
@click.option("--dst", type=click.Path(dir_okay=False), required=True,
              help="Destination graph JSON file")
@click.option("--delta", type=click.FloatRange(min=0.0, min_open=True),
              required=True, help="Stop once within delta of dst")
@click.option("--preserve-index", is_flag=True,
              help="Keep the graph index along the plan")
@out_option("Plan CSV file")
def zigzag(state, src, dst, delta, preserve_index, out):
    try:
        plan = zigzag_path(serialize.read_graph(src),
                           serialize.read_graph(dst), delta,
                           preserve_index=preserve_index)
        text = serialize.plan_to_csv(plan)
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

"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import sys

import click

from cocycle_forge.cmd import emit_path
from cocycle_forge.cmd import fail
from cocycle_forge.cmd import interrupted
from cocycle_forge.cmd.options import end_option
from cocycle_forge.cmd.options import eps_option
from cocycle_forge.cmd.options import in_option
from cocycle_forge.cmd.options import out_option
from cocycle_forge.cmd.options import target_option
from cocycle_forge.cmd import pass_state_context
from cocycle_forge import exceptions
from cocycle_forge.raising import raise_graph
from cocycle_forge import serialize


@click.command(name="raise", help="Raise the Lyapunov graph to a target.")
@pass_state_context
@in_option
@target_option
@eps_option
@click.option("--respect-finest", type=click.IntRange(min=1),
              help="Pin the finest splitting dominated at this length")
@click.option("--preserve-index", is_flag=True,
              help="Keep the graph index along the path")
@out_option("Path CSV file")
@end_option
def raise_cmd(state, source, target, eps, respect_finest, preserve_index,
              out, end):
    try:
        cocycle = serialize.read_cocycle(source)
        goal = serialize.read_graph(target)
        path = raise_graph(cocycle, goal, eps,
                           respect_finest=respect_finest,
                           preserve_index=preserve_index)
        emit_path(path, out, end)
    except exceptions.ForgeError as error:
        fail(error)
    except KeyboardInterrupt:
        interrupted()
    except BrokenPipeError:
        sys.exit()

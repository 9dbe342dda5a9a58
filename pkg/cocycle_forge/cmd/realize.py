"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import sys

import click

from cocycle_forge.cmd import fail
from cocycle_forge.cmd import interrupted
from cocycle_forge.cmd.options import ell_option
from cocycle_forge.cmd.options import eps_option
from cocycle_forge.cmd.options import in_option
from cocycle_forge.cmd.options import out_option
from cocycle_forge.cmd.options import scale_option
from cocycle_forge.cmd.options import target_option
from cocycle_forge.cmd import pass_state_context
from cocycle_forge import exceptions
from cocycle_forge.separation import realize_graph
from cocycle_forge import serialize


@click.command(help="Lower by separation, then raise to a target graph.")
@pass_state_context
@in_option
@target_option
@scale_option
@eps_option
@ell_option(help_text="Pin the finest splitting dominated at this length")
@out_option("Realized cocycle JSON file")
def realize(state, source, target, scale, eps, ell, out):
    try:
        cocycle = serialize.read_cocycle(source)
        result = realize_graph(cocycle, serialize.read_graph(target), scale,
                               eps, ell=ell, seed=state.seed)
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

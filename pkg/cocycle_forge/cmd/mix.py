"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import sys

import click

from cocycle_forge.cmd import emit_path
from cocycle_forge.cmd import fail
from cocycle_forge.cmd import interrupted
from cocycle_forge.cmd.options import ell_option
from cocycle_forge.cmd.options import end_option
from cocycle_forge.cmd.options import eps_option
from cocycle_forge.cmd.options import in_option
from cocycle_forge.cmd.options import out_option
from cocycle_forge.cmd import pass_state_context
from cocycle_forge import exceptions
from cocycle_forge.mixing import mix_two_exponents
from cocycle_forge import serialize


@click.command(help="Raise sigma_i by mixing exponents i and i+1.")
@pass_state_context
@in_option
@click.option("--index", type=click.IntRange(min=1), required=True,
              help="Graph index i to raise")
@eps_option
@ell_option()
@click.option("--stop-at", type=float,
              help="Stop once sigma_i reaches this value")
@out_option("Path CSV file")
@end_option
def mix(state, source, index, eps, ell, stop_at, out, end):
    try:
        cocycle = serialize.read_cocycle(source)
        path = mix_two_exponents(cocycle, index, eps, ell=ell,
                                 stop_at=stop_at)
        emit_path(path, out, end)
    except exceptions.ForgeError as error:
        fail(error)
    except KeyboardInterrupt:
        interrupted()
    except BrokenPipeError:
        sys.exit()

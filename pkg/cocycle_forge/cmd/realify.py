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
from cocycle_forge.cmd import pass_state_context
from cocycle_forge import exceptions
from cocycle_forge.realify import make_eigenvalues_real
from cocycle_forge import serialize


@click.command(help="Make every eigenvalue of the period product real.")
@pass_state_context
@in_option
@eps_option
@out_option("Path CSV file")
@end_option
def realify(state, source, eps, out, end):
    try:
        cocycle = serialize.read_cocycle(source)
        emit_path(make_eigenvalues_real(cocycle, eps), out, end)
    except exceptions.ForgeError as error:
        fail(error)
    except KeyboardInterrupt:
        interrupted()
    except BrokenPipeError:
        sys.exit()

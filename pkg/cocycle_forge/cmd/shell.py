"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import logging

import click

from cocycle_forge.cmd.analyze import analyze
from cocycle_forge.cmd.dominate import dominate
from cocycle_forge.cmd import fail
from cocycle_forge.cmd.gen import gen
from cocycle_forge.cmd.mix import mix
from cocycle_forge.cmd.options import config_option
from cocycle_forge.cmd.options import debug_option
from cocycle_forge.cmd.options import seed_option
from cocycle_forge.cmd import pass_state_context
from cocycle_forge.cmd.raise_graph import raise_cmd
from cocycle_forge.cmd.realify import realify
from cocycle_forge.cmd.realize import realize
from cocycle_forge.cmd.separate import separate
from cocycle_forge.cmd.verify import verify
from cocycle_forge.cmd.version import version
from cocycle_forge.cmd.zigzag import zigzag
from cocycle_forge import config
from cocycle_forge import exceptions
from cocycle_forge.log import setup_log


@click.group(
    help="\nPerturb cyclic matrix cocycles to move their Lyapunov graphs."
)
@pass_state_context
@debug_option
@config_option
@seed_option
def cli(state, debug, config_file, seed):
    setup_log(debug=state.debug)

    if state.debug:
        click.secho("Running cocycle-forge.", err=True)
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        config.use_config(config.load_config(state.config))
    except exceptions.ForgeError as error:
        fail(error)


def main():
    cli(prog_name="cocycle-forge")


# cocycle-forge subcommands
cli.add_command(analyze)
cli.add_command(dominate)
cli.add_command(gen)
cli.add_command(mix)
cli.add_command(raise_cmd)
cli.add_command(realify)
cli.add_command(realize)
cli.add_command(separate)
cli.add_command(verify)
cli.add_command(version)
cli.add_command(zigzag)

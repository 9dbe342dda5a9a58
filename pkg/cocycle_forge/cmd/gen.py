"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import sys

import click

from cocycle_forge.cmd import fail
from cocycle_forge.cmd import interrupted
from cocycle_forge.cmd.options import generator_options
from cocycle_forge.cmd.options import out_option
from cocycle_forge.cmd import pass_state_context
from cocycle_forge import exceptions
from cocycle_forge.generators import generate
from cocycle_forge.generators import GeneratorSpec
from cocycle_forge import serialize


@click.command(help="Generate a seeded cocycle.")
@pass_state_context
@generator_options
@click.option("--seed", "gen_seed", type=int,
              help="Seed for this cocycle (defaults to the global --seed)")
@out_option("Cocycle JSON file")
def gen(state, kind, dim, period, bound, segment, ell, rate, dominant,
        gen_seed, out):
    try:
        spec = GeneratorSpec(kind, dim, period, bound,
                             state.seed if gen_seed is None else gen_seed,
                             segment=segment, ell=ell, rate=rate,
                             dominant=dominant)
        text = serialize.cocycle_to_json(generate(spec))
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

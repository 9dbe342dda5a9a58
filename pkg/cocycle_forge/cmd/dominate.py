"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import sys

import click

from cocycle_forge.cmd import fail
from cocycle_forge.cmd import interrupted
from cocycle_forge.cmd.options import ell_option
from cocycle_forge.cmd.options import in_option
from cocycle_forge.cmd.options import out_option
from cocycle_forge.cmd import pass_state_context
from cocycle_forge import domination
from cocycle_forge import exceptions
from cocycle_forge import serialize


@click.command(help="Check for dominated splittings.")
@pass_state_context
@in_option
@ell_option(required=True)
@click.option("--index", type=click.IntRange(min=1),
              help="Only report this index")
@out_option("Domination report JSON file")
def dominate(state, source, ell, index, out):
    try:
        cocycle = serialize.read_cocycle(source)
        finder = domination.SplittingFinder(cocycle)
        indices = [index] if index else range(1, cocycle.dim)
        reports = [domination.check_domination(cocycle, i, ell, finder)
                   for i in indices]
        finest = [r.index for r in reports if r.dominated] if index \
            else domination.dominated_indices(cocycle, ell, finder)
        text = serialize.encode({
            "ell": ell,
            "reports": [r.as_dict() for r in reports],
            "finest_indices": finest,
        }) + "\n"
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

"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0
"""

import sys

import click

from cocycle_forge import serialize


class State:
    def __init__(self):
        self.debug = False
        self.config = None
        self.seed = 0


# pass state between cocycle-forge and its sub-commands
pass_state_context = click.make_pass_decorator(State, ensure=True)


def fail(error):
    """Report a ForgeError and exit with its status."""
    click.secho(f"error - {error}", err=True)
    sys.exit(error.exit_code)


def interrupted():
    click.secho("\n" + ("Exiting at your request."))
    sys.exit(130)


def emit_path(path, out, end):
    """Write the path CSV (stdout without out) and optionally its end."""
    text = serialize.path_to_csv(path)
    if out:
        serialize.write_text(out, text)
    else:
        click.echo(text, nl=False)
    if end:
        serialize.write_text(end, serialize.cocycle_to_json(path.end))

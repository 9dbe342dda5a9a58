"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import click

from cocycle_forge.cmd import State
from cocycle_forge import constants

"""global options"""


def debug_option(f):
    def callback(ctxt, param, value):
        state = ctxt.ensure_object(State)
        state.debug = value
        return value
    return click.option(
        "--debug",
        is_flag=True,
        help="Increase verbosity",
        callback=callback
    )(f)


def config_option(f):
    def callback(ctxt, param, value):
        state = ctxt.ensure_object(State)
        state.config = value
        return value
    return click.option(
        "--config", "config_file",
        help="YAML file overriding the built-in settings",
        type=click.Path(dir_okay=False),
        nargs=1,
        callback=callback
    )(f)


def seed_option(f):
    def callback(ctxt, param, value):
        state = ctxt.ensure_object(State)
        state.seed = value
        return value
    return click.option(
        "--seed",
        help="64-bit seed for every random choice",
        type=int,
        default=0,
        show_default=True,
        callback=callback
    )(f)


"""input/output options"""


def in_option(f):
    return click.option(
        "--in", "source",
        help="Cocycle JSON file",
        type=click.Path(dir_okay=False),
        required=True,
    )(f)


def target_option(f):
    return click.option(
        "--target",
        help="Target graph JSON file",
        type=click.Path(dir_okay=False),
        required=True,
    )(f)


def out_option(help_text):
    def decorator(f):
        return click.option(
            "--out",
            help=f"{help_text} (stdout when omitted)",
            type=click.Path(dir_okay=False),
        )(f)
    return decorator


def end_option(f):
    return click.option(
        "--end",
        help="Write the last cocycle of the path as JSON",
        type=click.Path(dir_okay=False),
    )(f)


"""engine options"""


def eps_option(f):
    return click.option(
        "--eps",
        help="Perturbation size bound",
        type=click.FloatRange(min=0.0, min_open=True),
        required=True,
    )(f)


def ell_option(required=False, help_text="Domination length (power of two)"):
    def decorator(f):
        return click.option(
            "--ell",
            help=help_text,
            type=click.IntRange(min=1),
            required=required,
        )(f)
    return decorator


def scale_option(f):
    return click.option(
        "--scale",
        help="Window length m of the finite-scale functionals",
        type=click.IntRange(min=1),
        required=True,
    )(f)


"""generator options"""


def generator_options(f):
    f = click.option("--kind", type=click.Choice(constants.GENERATOR_KINDS),
                     required=True, help="Cocycle family")(f)
    f = click.option("--dim", type=click.IntRange(min=1), required=True,
                     help="Dimension d")(f)
    f = click.option("--period", type=click.IntRange(min=1), required=True,
                     help="Period n")(f)
    f = click.option("--bound", type=float, required=True,
                     help="Bound K on ||A|| and 1/m(A)")(f)
    f = click.option("--segment", type=click.IntRange(min=1),
                     help="Run length of the cancellation and switching "
                          "families")(f)
    f = click.option("--ell", type=click.IntRange(min=1), default=1,
                     show_default=True,
                     help="Certified domination length of the dominated "
                          "family")(f)
    f = click.option("--rate", type=float,
                     help="Exponent scale of the switching and "
                          "near_isometry families")(f)
    f = click.option("--dominant", type=click.IntRange(min=0), default=0,
                     show_default=True,
                     help="Dominating fast axes of the switching family")(f)
    return f

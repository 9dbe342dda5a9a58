"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import sys

import click
from rich.console import Console
from rich.table import Table

from cocycle_forge.cmd import fail
from cocycle_forge.cmd import interrupted
from cocycle_forge.cmd.options import in_option
from cocycle_forge.cmd.options import out_option
from cocycle_forge.cmd import pass_state_context
from cocycle_forge.cocycle import finite_time_graph
from cocycle_forge import exceptions
from cocycle_forge.majorization import graph_index
from cocycle_forge import serialize
from cocycle_forge import spectrum


def _table(graph, finite, scale):
    table = Table(title="Lyapunov graph")
    table.add_column("i", justify="right")
    table.add_column("exponent", justify="right")
    table.add_column("sigma_i", justify="right")
    if finite is not None:
        table.add_column(f"finite top sum (m={scale})", justify="right")
    exponents = [""] + [f"{e:.9g}" for e in graph.exponents]
    for i, sigma in enumerate(graph.sigma):
        row = [str(i), exponents[i], f"{sigma:.9g}"]
        if finite is not None:
            row.append(f"{finite[i]:.9g}")
        table.add_row(*row)
    return table


@click.command(help="Lyapunov graph, index and finite-time graph.")
@pass_state_context
@in_option
@click.option("--scale", type=click.IntRange(min=1),
              help="Window length of the finite-time graph")
@out_option("Analysis JSON file")
def analyze(state, source, scale, out):
    try:
        cocycle = serialize.read_cocycle(source)
        graph = spectrum.lyapunov_graph(cocycle)
        finite = finite_time_graph(cocycle, scale) if scale else None
        report = {
            "dim": cocycle.dim,
            "period": cocycle.period,
            "bound": cocycle.bound,
            "exponents": graph.exponents,
            "sigma": graph.sigma,
            "index": graph_index(graph),
            "real_spectrum": spectrum.has_real_spectrum(cocycle),
        }
        if finite is not None:
            report["scale"] = scale
            report["finite_time_top_sums"] = finite
        text = serialize.encode(report) + "\n"
        if out:
            serialize.write_text(out, text)
            Console().print(_table(graph, finite, scale))
        else:
            click.echo(text, nl=False)
    except exceptions.ForgeError as error:
        fail(error)
    except KeyboardInterrupt:
        interrupted()
    except BrokenPipeError:
        sys.exit()

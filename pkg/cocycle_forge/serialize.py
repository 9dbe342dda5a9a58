"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import csv
import io
import json
import logging
import math
import pathlib

import numpy as np

from cocycle_forge.cocycle import CyclicCocycle
from cocycle_forge import constants
from cocycle_forge import exceptions
from cocycle_forge.graph import LyapunovGraph

LOG = logging.getLogger(__name__)


def format_float(value):
    value = float(value)
    if not math.isfinite(value):
        raise exceptions.ArgumentError(f"Cannot serialize {value!r}")
    return format(value, constants.FLOAT_FORMAT)


def encode(value, indent=0):
    """JSON text with every float written to 17 significant digits."""
    pad = " " * (indent + 2)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {encode(v, indent + 2)}"
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple, np.ndarray))
               for v in value):
            return "[" + ", ".join(encode(v) for v in value) + "]"
        items = [pad + encode(v, indent + 2) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"
    if isinstance(value, (bool, np.bool_)) or value is None:
        return json.dumps(None if value is None else bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return json.dumps(str(value))


def _load(text, origin):
    try:
        return json.loads(text)
    except json.JSONDecodeError as error:
        raise exceptions.SchemaError(
            f"{origin}: invalid JSON at line {error.lineno} column "
            f"{error.colno}")


def _require(data, keys, origin):
    if not isinstance(data, dict):
        raise exceptions.SchemaError(f"{origin}: expected a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise exceptions.SchemaError(
            f"{origin}: missing {', '.join(missing)}")


def _integer(data, key, origin):
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise exceptions.SchemaError(
            f"{origin}: {key} must be a positive integer")
    return value


def _array(value, shape, origin):
    try:
        array = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise exceptions.SchemaError(f"{origin}: non-numeric entries")
    if array.shape != shape:
        raise exceptions.SchemaError(
            f"{origin}: expected shape {shape}, got {array.shape}")
    if not np.all(np.isfinite(array)):
        raise exceptions.SchemaError(f"{origin}: non-finite entries")
    return array


def cocycle_to_json(cocycle):
    return encode({
        "dim": cocycle.dim,
        "period": cocycle.period,
        "matrices": cocycle.stack,
    }) + "\n"


def cocycle_from_json(text, origin="cocycle"):
    data = _load(text, origin)
    _require(data, ("dim", "period", "matrices"), origin)
    d = _integer(data, "dim", origin)
    n = _integer(data, "period", origin)
    stack = _array(data["matrices"], (n, d, d), origin)
    try:
        return CyclicCocycle(stack)
    except exceptions.ArgumentError as error:
        raise exceptions.SchemaError(f"{origin}: {error}")


def graph_to_json(graph):
    return encode({"dim": graph.dim, "sigma": graph.sigma}) + "\n"


def graph_from_json(text, origin="graph"):
    data = _load(text, origin)
    _require(data, ("dim", "sigma"), origin)
    d = _integer(data, "dim", origin)
    sigma = _array(data["sigma"], (d + 1,), origin)
    try:
        return LyapunovGraph(sigma)
    except exceptions.ArgumentError as error:
        raise exceptions.SchemaError(f"{origin}: {error}")


def read_text(path):
    path = pathlib.Path(path)
    if not path.exists():
        raise exceptions.ArgumentError(f"Unable to find {path}.")
    with open(path, "r") as f:
        return f.read()


def read_cocycle(path):
    return cocycle_from_json(read_text(path), pathlib.Path(path).name)


def read_graph(path):
    return graph_from_json(read_text(path), pathlib.Path(path).name)


def write_text(path, text):
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(text)
    LOG.debug(f"Wrote {path}")


def _table(header, rows):
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v
                         for v in row])
    return stream.getvalue()


def _sigma_header(dim):
    return [f"sigma_{i}" for i in range(dim + 1)]


def path_to_csv(path):
    """sample, max deviation from the base, sigma_0..sigma_d per sample."""
    deviations = path.deviations()
    rows = ([k, float(dev)] + [float(s) for s in graph.sigma]
            for k, (dev, graph) in enumerate(zip(deviations, path.graphs)))
    return _table(["sample", "max_deviation"]
                  + _sigma_header(path.base.dim), rows)


def plan_to_csv(plan):
    """step, moved index (empty for the start), sigma_0..sigma_d."""
    moved = [""] + list(plan.moved_index)
    rows = ([k, moved[k]] + [float(s) for s in vertex.sigma]
            for k, vertex in enumerate(plan.vertices))
    return _table(["step", "moved_index"] + _sigma_header(plan.start.dim),
                  rows)


def z_scores_to_csv(table):
    header = ["phase"] + [f"z_{i}" for i in range(1, table.dim + 1)] \
        + ["good"]
    rows = ([y] + [float(z) for z in table.rows[y, 1:]]
            + [int(y == table.good_phase)] for y in range(table.period))
    return _table(header, rows)


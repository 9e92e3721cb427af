#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module implements the result files written by markovrotor.

Tables are CSV files whose first line is a '#' followed by a JSON record of
all run parameters, or JSON documents holding the same provenance. Floats
are written with repr, so reading a file back reproduces every value
bit-exactly. No timestamps are recorded, identical runs give identical
files.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import csv
import json
import logging
import math
import os

from typing import Any, Dict, List, Optional, Tuple

import attr
import numpy as np

from .const import OUTPUT_DIR_ENV, OUTPUT_FORMATS
from .decorators import handle_io_exceptions
from .exceptions import RotorIOError, RotorParameterError
from .variance import VarianceCurve
from .witness import DeltaScan, WitnessCurve

_LOGGER = logging.getLogger(__name__)

PROVENANCE_PREFIX = "# "
META_SUFFIX = ".meta.json"


@attr.s(auto_attribs=True, frozen=True)
class Table:
    """Columns and rows of a result file with its provenance record."""

    provenance: Dict[str, Any] = attr.ib(
        validator=attr.validators.instance_of(dict))
    columns: Tuple[str, ...] = attr.ib(converter=tuple)
    rows: Tuple[Tuple[Any, ...], ...] = attr.ib(
        converter=lambda rows: tuple(tuple(row) for row in rows))

    def column(self, name: str) -> List[Any]:
        """Return the values of one column."""
        try:
            index = self.columns.index(name)
        except ValueError as err:
            raise RotorParameterError(
                "Unknown column {}".format(name)) from err
        return [row[index] for row in self.rows]


def format_value(value: Any) -> str:
    """Format a cell, floats with their shortest exact representation."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if value is None:
        return ""
    return str(value)


def parse_value(text: str) -> Any:
    """Parse a cell written by format_value."""
    if text == "":
        return None
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def _json_value(value: Any) -> Any:
    """Convert numpy scalars for the json module."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def dump_provenance(provenance: Dict[str, Any]) -> str:
    """Return the provenance record as a single JSON line."""
    return json.dumps(provenance, sort_keys=True, separators=(",", ":"))


def resolve_output_path(out: Optional[str], default_name: str) -> str:
    """
    Return the path of a result file.

    Bare file names, and a missing path, are placed in the directory named
    by the environment variable MARKOVROTOR_OUTPUT_DIR if it is set.
    """
    path = out or default_name
    directory = os.environ.get(OUTPUT_DIR_ENV)
    if directory and not os.path.dirname(path):
        path = os.path.join(directory, path)
    return path


@handle_io_exceptions
def write_csv(path: str, table: Table) -> None:
    """Write a table as CSV with the provenance line on top."""
    with open(path, "w", newline="", encoding="utf-8") as file:
        file.write(PROVENANCE_PREFIX + dump_provenance(table.provenance))
        file.write("\n")
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([format_value(value) for value in row])
    _LOGGER.debug("Wrote %s rows to %s", len(table.rows), path)


@handle_io_exceptions
def read_csv(path: str) -> Table:
    """Read a table written by write_csv."""
    with open(path, newline="", encoding="utf-8") as file:
        first = file.readline()
        if not first.startswith(PROVENANCE_PREFIX):
            raise RotorIOError("Missing provenance line", path)
        try:
            provenance = json.loads(first[len(PROVENANCE_PREFIX):])
        except json.JSONDecodeError as err:
            raise RotorIOError(
                "Invalid provenance line: {}".format(err), path) from err
        reader = csv.reader(file)
        try:
            columns = next(reader)
        except StopIteration:
            raise RotorIOError("Missing header line", path) from None
        rows = [[parse_value(value) for value in row] for row in reader]
    return Table(provenance=provenance, columns=columns, rows=rows)


@handle_io_exceptions
def write_json(path: str, table: Table) -> None:
    """Write a table as JSON document."""
    document = {
        "provenance": table.provenance,
        "columns": list(table.columns),
        "rows": [[_json_value(value) for value in row] for row in table.rows]}
    with open(path, "w", encoding="utf-8") as file:
        json.dump(document, file, sort_keys=True, indent=1)
        file.write("\n")
    _LOGGER.debug("Wrote %s rows to %s", len(table.rows), path)


@handle_io_exceptions
def read_json(path: str) -> Table:
    """Read a table written by write_json."""
    with open(path, encoding="utf-8") as file:
        try:
            document = json.load(file)
        except json.JSONDecodeError as err:
            raise RotorIOError(
                "Invalid JSON document: {}".format(err), path) from err
    try:
        return Table(
            provenance=document["provenance"],
            columns=document["columns"],
            rows=document["rows"])
    except (KeyError, TypeError) as err:
        raise RotorIOError(
            "Incomplete JSON document: {}".format(err), path) from err


def write_table(path: str, table: Table, fmt: str = "csv") -> None:
    """Write a table in the given format."""
    if fmt not in OUTPUT_FORMATS:
        raise RotorParameterError("Invalid output format: {}".format(fmt))
    if fmt == "json":
        write_json(path, table)
    else:
        write_csv(path, table)


def read_table(path: str, fmt: str = "csv") -> Table:
    """Read a table in the given format."""
    if fmt not in OUTPUT_FORMATS:
        raise RotorParameterError("Invalid output format: {}".format(fmt))
    if fmt == "json":
        return read_json(path)
    return read_csv(path)


def variance_table(
        curve: VarianceCurve, provenance: Dict[str, Any]) -> Table:
    """
    Return the table N, variance, stderr of a variance curve.

    stderr is empty for exact curves.
    """
    rows = [(point.N, point.value, point.stderr) for point in curve.points]
    return Table(
        provenance=provenance, columns=("N", "variance", "stderr"), rows=rows)


def witness_table(
        curve: WitnessCurve, provenance: Dict[str, Any]) -> Table:
    """Return the table N, hs_squared, discrepancy, violation of a curve."""
    rows = [
        (point.N, point.hs_squared, point.discrepancy, point.violation)
        for point in curve.points]
    return Table(
        provenance=provenance,
        columns=("N", "hs_squared", "discrepancy", "violation"),
        rows=rows)


def delta_metadata(scan: DeltaScan) -> Dict[str, Any]:
    """Return the scan summary stored next to the Delta matrix."""
    return {
        "G": scan.grid_size,
        "eps_sing": scan.eps_sing,
        "masked": scan.masked_count,
        "min": scan.min_value,
        "argmin": list(scan.argmin),
        "theta_argmin": list(scan.theta(scan.argmin)),
        "regular_min": scan.regular_min,
        "regular_argmin": list(scan.regular_argmin)}


def delta_table(scan: DeltaScan, provenance: Dict[str, Any]) -> Table:
    """Return the Delta matrix, one row per theta_1 grid point."""
    columns = ["row"] + ["c{}".format(col) for col in range(scan.grid_size)]
    rows = [
        [index] + [float(value) for value in row]
        for index, row in enumerate(scan.values)]
    return Table(provenance=provenance, columns=columns, rows=rows)


@handle_io_exceptions
def write_metadata(path: str, metadata: Dict[str, Any]) -> None:
    """Write a sidecar metadata record."""
    with open(path, "w", encoding="utf-8") as file:
        json.dump(metadata, file, sort_keys=True, indent=1)
        file.write("\n")


@handle_io_exceptions
def read_metadata(path: str) -> Dict[str, Any]:
    """Read a sidecar metadata record."""
    with open(path, encoding="utf-8") as file:
        return json.load(file)


def write_delta_scan(
        path: str,
        scan: DeltaScan,
        provenance: Dict[str, Any],
        fmt: str = "csv") -> str:
    """Write the Delta matrix and its sidecar, return the sidecar path."""
    write_table(path, delta_table(scan, provenance), fmt)
    meta_path = path + META_SUFFIX
    metadata = dict(provenance)
    metadata.update(delta_metadata(scan))
    write_metadata(meta_path, metadata)
    return meta_path


def table_matrix(table: Table) -> np.ndarray:
    """Return the Delta matrix stored in a table, NaN for masked points."""
    return np.array(
        [[math.nan if value is None else value for value in row[1:]]
         for row in table.rows], dtype=float)

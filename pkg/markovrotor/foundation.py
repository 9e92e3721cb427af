#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module implements the foundation classes for the kicked rotor.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import logging
import math
import os

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, TypeVar, Union

import attr
import numpy as np

from .const import (
    TAU_IRRATIONAL, TAU_RATIONAL, TAU_SPEC_PATTERN, VALID_TAU_KINDS, TauKind)
from .exceptions import RotorParameterError

_LOGGER = logging.getLogger(__name__)

BlockResult = TypeVar("BlockResult")


def convert_tau_kind(value: Union[TauKind, str, int]) -> TauKind:
    """Convert a tau kind given by name or code."""
    for kind in VALID_TAU_KINDS:
        if value in (kind, kind.name, kind.code):
            return kind
    raise RotorParameterError("Invalid tau kind: {}".format(value))


def positive_multiplier(instance, attribute, value) -> None:
    """Validate that the tau multiplier is finite and positive."""
    # pylint: disable=unused-argument
    if not math.isfinite(value) or value <= 0:
        raise RotorParameterError(
            "tau must be positive, got multiplier {}".format(value))


@attr.s(auto_attribs=True, frozen=True)
class TauSpec:
    """
    Kick period tau = 2pi * multiplier with its recorded intent.

    :param multiplier: Factor in front of 2pi.
    :type multiplier: float

    :param kind: Whether tau/2pi is meant as rational or irrational.
    :type kind: TauKind

    :param label: Human readable form, e.g. "2pi*sqrt2".
    :type label: str
    """

    multiplier: float = attr.ib(
        converter=float, validator=positive_multiplier)
    kind: TauKind = attr.ib(converter=convert_tau_kind, default=TAU_RATIONAL)
    label: str = attr.ib(converter=str, default="")

    @property
    def value(self) -> float:
        """Return tau as float."""
        return 2.0 * math.pi * self.multiplier

    def phase(self, steps: Union[int, np.ndarray]) -> Union[float, np.ndarray]:
        """
        Return the free rotation angle of steps * tau reduced to [0, 2pi).

        The reduction is done on the multiplier, thus multiples of 2pi are
        exactly zero for integer multipliers.
        """
        return 2.0 * math.pi * np.mod(
            self.multiplier * np.asarray(steps, dtype=float), 1.0)


def parse_tau_spec(spec: str) -> TauSpec:
    """
    Parse a symbolic kick period.

    Accepted forms are "2pi", "2pi*sqrtR" (also "2pi*sqrt(R)") and
    "2pi*<decimal>". The float conversion happens only here.
    """
    normalized = str(spec).replace(" ", "").lower()
    match = TAU_SPEC_PATTERN.match(normalized)
    if match is None:
        raise RotorParameterError("Invalid tau spec: {}".format(spec))

    if match.group("root") is not None:
        root = float(match.group("root"))
        multiplier = math.sqrt(root)
        is_square = (
            root == int(root) and math.isqrt(int(root)) ** 2 == int(root))
        kind = TAU_RATIONAL if is_square else TAU_IRRATIONAL
    elif match.group("decimal") is not None:
        multiplier = float(match.group("decimal"))
        kind = TAU_RATIONAL
    else:
        multiplier = 1.0
        kind = TAU_RATIONAL

    return TauSpec(multiplier=multiplier, kind=kind, label=normalized)


def convert_tau(value: Union[TauSpec, str]) -> TauSpec:
    """Convert tau given as symbolic string."""
    if isinstance(value, TauSpec):
        return value
    return parse_tau_spec(value)


def finite_float(instance, attribute, value) -> None:
    """Validate that an attribute is a finite float."""
    # pylint: disable=unused-argument
    if not math.isfinite(value):
        raise RotorParameterError(
            "{} must be finite, got {}".format(attribute.name, value))


@attr.s(auto_attribs=True, frozen=True)
class RotorParams:
    """
    Parameters of the linear kicked rotor.

    :param K: Kick strength (action units, hbar = 1).
    :type K: float

    :param tau: Kick period as TauSpec or symbolic string.
    :type tau: TauSpec or str
    """

    K: float = attr.ib(converter=float, validator=finite_float)
    tau: TauSpec = attr.ib(
        converter=convert_tau, default=TauSpec(multiplier=1.0, label="2pi"))

    def phase(self, steps: Union[int, np.ndarray]) -> Union[float, np.ndarray]:
        """Return steps * tau reduced to [0, 2pi)."""
        return self.tau.phase(steps)

    def as_dict(self) -> dict:
        """Return the parameters for provenance records."""
        return {
            "K": self.K,
            "tau": self.tau.label,
            "tau_multiplier": self.tau.multiplier,
            "tau_kind": self.tau.kind.name,
            "tau_value": self.tau.value}


def resolve_threads(threads: int) -> int:
    """Return the number of worker threads, 0 meaning all cores."""
    if threads < 0:
        raise RotorParameterError(
            "threads must be non-negative, got {}".format(threads))
    if threads == 0:
        return os.cpu_count() or 1
    return threads


def split_blocks(size: int, blocks: int) -> List[slice]:
    """Split range(size) into at most blocks contiguous slices."""
    blocks = max(1, min(blocks, size))
    bounds = np.linspace(0, size, blocks + 1).astype(int)
    return [slice(int(bounds[i]), int(bounds[i + 1])) for i in range(blocks)]


def run_blocks(
        func: Callable[[slice], BlockResult],
        size: int,
        threads: int = 1,
        block_size: Optional[int] = None) -> List[BlockResult]:
    """
    Evaluate func on contiguous blocks of range(size).

    Results are returned in block order. With a fixed block_size the
    partition, and thus any reduction over the results, does not depend on
    the number of threads.
    """
    workers = resolve_threads(threads)
    if block_size is None:
        slices = split_blocks(size, workers)
    else:
        slices = [
            slice(start, min(start + block_size, size))
            for start in range(0, size, block_size)]
    if workers == 1 or len(slices) == 1:
        return [func(block) for block in slices]

    _LOGGER.debug("Evaluating %s blocks on %s threads", len(slices), workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, slices))


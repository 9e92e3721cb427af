#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module implements the angular momentum variance of the kicked rotor.

All variances refer to the initial momentum eigenstate |0>, for which the
mean momentum stays zero and the variance of a single realization is
K^2/2 |sum_j (1 - x_j) exp(i j tau)|^2.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import logging
import math

from typing import Optional, Tuple

import attr
import numpy as np

from .const import MIN_TRIALS, VARIANCE_MODES
from .decorators import handle_numerical_exceptions
from .exceptions import RotorParameterError
from .foundation import RotorParams, run_blocks
from .markov import (
    Realization, all_bit_strings, all_probabilities, sample_bits,
    trajectory_rng, validate_horizon, validate_memory)

_LOGGER = logging.getLogger(__name__)

# Trials per Monte Carlo block, fixed so results do not depend on threads
MC_BLOCK_SIZE = 1024


@attr.s(auto_attribs=True, frozen=True)
class VariancePoint:
    """Variance after N kicks, with standard error for Monte Carlo runs."""

    N: int = attr.ib(converter=int)
    value: float = attr.ib(converter=float)
    stderr: Optional[float] = attr.ib(
        converter=attr.converters.optional(float), default=None)


@attr.s(auto_attribs=True, frozen=True)
class VarianceCurve:
    """Momentum variance as function of the number of kicks."""

    params: RotorParams = attr.ib(
        validator=attr.validators.instance_of(RotorParams))
    a: Optional[float] = attr.ib(converter=attr.converters.optional(float))
    mode: str = attr.ib(validator=attr.validators.in_(VARIANCE_MODES))
    points: Tuple[VariancePoint, ...] = attr.ib(
        converter=tuple,
        validator=attr.validators.deep_iterable(
            attr.validators.instance_of(VariancePoint),
            attr.validators.instance_of(tuple)))

    @property
    def deterministic(self) -> bool:
        """Return True for the curve without stochastic kicks."""
        return self.a is None

    @property
    def steps(self) -> np.ndarray:
        """Return the kick numbers N."""
        return np.array([point.N for point in self.points])

    @property
    def values(self) -> np.ndarray:
        """Return the variances."""
        return np.array([point.value for point in self.points])

    def slope(self, start: int, stop: int) -> float:
        """Return the least squares slope over start <= N <= stop."""
        steps = self.steps
        window = (steps >= start) & (steps <= stop)
        if np.count_nonzero(window) < 2:
            raise RotorParameterError(
                "Slope needs two points in [{}, {}]".format(start, stop))
        return float(np.polyfit(steps[window], self.values[window], 1)[0])


def _rotation_factors(params: RotorParams, horizon: int) -> np.ndarray:
    """Return exp(i j tau) for j = 1..N."""
    return np.exp(1j * params.phase(np.arange(1, horizon + 1)))


def _lag_cosine_sum(
        params: RotorParams, horizon: int, lag_weights: np.ndarray) -> float:
    """
    Return sum_{j,k=1..N} c_|j-k| cos((j-k) tau).

    lag_weights holds c_0..c_{N-1}; the double sum folds into
    N c_0 + 2 sum_d (N - d) c_d cos(d tau).
    """
    lags = np.arange(1, horizon)
    folded = ((horizon - lags) * lag_weights[1:]) * np.cos(params.phase(lags))
    return horizon * lag_weights[0] + 2.0 * float(np.sum(folded))


def _markov_lag_weights(a: float, horizon: int) -> np.ndarray:
    """Return 1 + a^d for d = 0..N-1."""
    return 1.0 + np.power(a, np.arange(horizon, dtype=float))


def variance_realization(params: RotorParams, x: Realization) -> float:
    """Return the variance for one realization of the kicks."""
    kicks = 1.0 - x.as_array()
    total = np.dot(kicks, _rotation_factors(params, len(x)))
    return 0.5 * params.K ** 2 * abs(total) ** 2


def variance_deterministic(params: RotorParams, horizon: int) -> float:
    """Return the variance of the Maryland model with every kick on."""
    horizon = validate_horizon(horizon)
    return 0.5 * params.K ** 2 * _lag_cosine_sum(
        params, horizon, np.ones(horizon))


def variance_markov_exact(
        params: RotorParams, a: float, horizon: int) -> float:
    """Return the variance averaged over the Markov kick process."""
    a = validate_memory(a)
    horizon = validate_horizon(horizon)
    return params.K ** 2 / 8.0 * _lag_cosine_sum(
        params, horizon, _markov_lag_weights(a, horizon))


def variance_markov_double_sum(
        params: RotorParams, a: float, horizon: int) -> float:
    """Return the averaged variance by the explicit O(N^2) double sum."""
    a = validate_memory(a)
    horizon = validate_horizon(horizon)
    steps = np.arange(1, horizon + 1)
    lags = np.subtract.outer(steps, steps)
    terms = (1.0 + np.power(a, np.abs(lags).astype(float))) * np.cos(
        params.phase(lags))
    return params.K ** 2 / 8.0 * float(np.sum(terms))


def variance_markov_enumerated(
        params: RotorParams, a: float, horizon: int) -> float:
    """Return the averaged variance as p-weighted sum over all kick strings."""
    bits = all_bit_strings(horizon)
    totals = (1.0 - bits) @ _rotation_factors(params, horizon)
    return 0.5 * params.K ** 2 * float(
        np.dot(all_probabilities(a, bits), np.abs(totals) ** 2))


def _mc_block(
        params: RotorParams,
        a: float,
        horizon: int,
        seed: int,
        block: slice) -> np.ndarray:
    """Return the variances after 1..N kicks for the trials of a block."""
    rotation = _rotation_factors(params, horizon)
    trials = range(block.start, block.stop)
    kicks = np.empty((len(trials), horizon))
    for row, index in enumerate(trials):
        kicks[row] = 1.0 - sample_bits(trajectory_rng(seed, index), a, horizon)
    partial = np.cumsum(kicks * rotation, axis=1)
    return 0.5 * params.K ** 2 * np.abs(partial) ** 2


def _validate_trials(trials: int) -> int:
    """Return trials if the count is large enough for error estimates."""
    if int(trials) != trials or trials < MIN_TRIALS:
        raise RotorParameterError(
            "At least {} trials are needed, got {}".format(MIN_TRIALS, trials))
    return int(trials)


@handle_numerical_exceptions
def variance_samples(
        params: RotorParams,
        a: float,
        horizon: int,
        trials: int,
        seed: int,
        threads: int = 1) -> np.ndarray:
    """Return the variance after N kicks of every sampled trajectory."""
    a = validate_memory(a)
    horizon = validate_horizon(horizon)

    def last_column(block: slice) -> np.ndarray:
        return _mc_block(params, a, horizon, seed, block)[:, -1]

    return np.concatenate(run_blocks(
        last_column, trials, threads=threads, block_size=MC_BLOCK_SIZE))


def variance_markov_mc(
        params: RotorParams,
        a: float,
        horizon: int,
        trials: int,
        seed: int,
        threads: int = 1) -> Tuple[float, float]:
    """Return Monte Carlo mean and standard error of the variance."""
    trials = _validate_trials(trials)
    samples = variance_samples(params, a, horizon, trials, seed, threads)
    mean = float(np.mean(samples))
    stderr = float(np.std(samples, ddof=1)) / math.sqrt(trials)
    _LOGGER.debug(
        "Monte Carlo variance N=%s a=%s: %s +- %s", horizon, a, mean, stderr)
    return mean, stderr


def _exact_curve_values(
        params: RotorParams, a: Optional[float], n_max: int) -> np.ndarray:
    """
    Return the exact variances for N = 1..N_max by O(1) updates.

    Going from N-1 to N adds the new row and column of the double sum,
    coef * (c_0 + 2 sum_{d<N} c_d cos(d tau)).
    """
    if a is None:
        coef = 0.5 * params.K ** 2
        weights = np.ones(n_max)
    else:
        coef = params.K ** 2 / 8.0
        weights = _markov_lag_weights(a, n_max)
    lag_terms = weights[1:] * np.cos(params.phase(np.arange(1, n_max)))
    running = np.concatenate(([0.0], np.cumsum(lag_terms)))
    return np.cumsum(coef * (weights[0] + 2.0 * running))


@handle_numerical_exceptions
def variance_curve(
        params: RotorParams,
        a: Optional[float],
        n_max: int,
        mode: str = "exact",
        trials: int = 10000,
        seed: int = 0,
        threads: int = 1) -> VarianceCurve:
    """
    Return the variance for N = 1..N_max.

    a=None selects the deterministic model. In mode "mc" every trajectory
    is sampled once up to N_max and all its prefixes are used.
    """
    n_max = validate_horizon(n_max)
    if a is not None:
        a = validate_memory(a)
    if mode not in VARIANCE_MODES:
        raise RotorParameterError("Invalid mode: {}".format(mode))

    if mode == "exact":
        values = _exact_curve_values(params, a, n_max)
        points = [
            VariancePoint(N=step, value=value)
            for step, value in enumerate(values, start=1)]
        return VarianceCurve(params=params, a=a, mode=mode, points=points)

    if a is None:
        raise RotorParameterError(
            "Monte Carlo curves need a memory parameter")
    trials = _validate_trials(trials)

    def moments(block: slice) -> np.ndarray:
        values = _mc_block(params, a, n_max, seed, block)
        return np.stack((values.sum(axis=0), (values ** 2).sum(axis=0)))

    totals = np.sum(run_blocks(
        moments, trials, threads=threads, block_size=MC_BLOCK_SIZE), axis=0)
    mean = totals[0] / trials
    spread = np.maximum(totals[1] / trials - mean ** 2, 0.0)
    stderr = np.sqrt(spread * trials / (trials - 1) / trials)
    points = [
        VariancePoint(N=step, value=value, stderr=err)
        for step, (value, err) in enumerate(zip(mean, stderr), start=1)]
    return VarianceCurve(params=params, a=a, mode=mode, points=points)

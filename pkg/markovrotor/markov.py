#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module implements the one-step Markov process of the kick strengths.

Each kick is on (symbol 0) or off (symbol 1) with probability 1/2. The
memory parameter a interpolates between a Bernoulli process (a = 0) and a
process frozen at its first symbol (a = 1).

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import itertools
import logging

from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

import attr
import numpy as np

from .const import MAX_ENUMERATION_HORIZON, SYMBOL_PROBABILITIES
from .exceptions import RotorHorizonError, RotorParameterError

_LOGGER = logging.getLogger(__name__)

Phases = Union[Sequence[float], np.ndarray]


def validate_memory(a: float) -> float:
    """Return a as float if it is a valid memory parameter."""
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise RotorParameterError(
            "Memory parameter must be in [0, 1], got {}".format(a))
    return a


def validate_horizon(horizon: int, maximum: Optional[int] = None) -> int:
    """Return horizon as int if it is a valid number of steps."""
    if int(horizon) != horizon or horizon < 1:
        raise RotorParameterError(
            "Horizon must be a positive integer, got {}".format(horizon))
    if maximum is not None and horizon > maximum:
        raise RotorHorizonError(
            "Horizon {} exceeds the enumeration limit {}".format(
                horizon, maximum))
    return int(horizon)


def memory_validator(instance, attribute, value) -> None:
    """Validate the memory parameter of a process."""
    # pylint: disable=unused-argument
    validate_memory(value)


def transition_matrix(a: float) -> np.ndarray:
    """
    Return the transition matrix T = a*1 + (1-a)/2 * ones.

    Entry T[y, x] is the probability that symbol x is followed by y.
    """
    a = validate_memory(a)
    return a * np.eye(2) + 0.5 * (1.0 - a) * np.ones((2, 2))


def transition_power(a: float, n: int) -> np.ndarray:
    """Return T^n = a^n*1 + (1-a^n)/2 * ones."""
    a = validate_memory(a)
    if int(n) != n or n < 0:
        raise RotorParameterError(
            "Power must be a non-negative integer, got {}".format(n))
    a_n = a ** int(n)
    return a_n * np.eye(2) + 0.5 * (1.0 - a_n) * np.ones((2, 2))


def second_moment(a: float, j: int, k: int) -> float:
    """Return <x_j x_k> = (1 + a^|k-j|) / 4."""
    a = validate_memory(a)
    if j < 1 or k < 1:
        raise RotorParameterError(
            "Time indices start at 1, got j={} k={}".format(j, k))
    return 0.25 * (1.0 + a ** abs(int(k) - int(j)))


def chain_probability(a: float, bits: Sequence[int]) -> float:
    """Return p(x_1..x_N) = T[x_N, x_N-1] ... T[x_2, x_1] p(x_1)."""
    trans = transition_matrix(a)
    bits = np.asarray(bits, dtype=np.intp)
    if bits.ndim != 1 or bits.size == 0:
        raise RotorParameterError("A realization needs at least one symbol")
    return float(
        SYMBOL_PROBABILITIES[bits[0]] * np.prod(trans[bits[1:], bits[:-1]]))


def convert_bits(value: Iterable[int]) -> Tuple[int, ...]:
    """Convert a bit sequence or bit string to a tuple of ints."""
    if isinstance(value, str):
        value = value.strip()
    return tuple(int(bit) for bit in value)


def bits_validator(instance, attribute, value) -> None:
    """Validate that bits is a non-empty sequence of 0 and 1."""
    # pylint: disable=unused-argument
    if not value:
        raise RotorParameterError("A realization needs at least one symbol")
    if any(bit not in (0, 1) for bit in value):
        raise RotorParameterError("Symbols must be 0 or 1: {}".format(value))


def probability_validator(instance, attribute, value) -> None:
    """Validate a probability."""
    # pylint: disable=unused-argument
    if not 0.0 <= value <= 1.0:
        raise RotorParameterError("Invalid probability: {}".format(value))


@attr.s(auto_attribs=True, frozen=True)
class Realization:
    """A finite realization of the kick process with its probability."""

    bits: Tuple[int, ...] = attr.ib(
        converter=convert_bits, validator=bits_validator)
    probability: float = attr.ib(
        converter=float, validator=probability_validator)

    def __len__(self) -> int:
        """Return the horizon N."""
        return len(self.bits)

    def as_array(self) -> np.ndarray:
        """Return the bits as integer array."""
        return np.asarray(self.bits, dtype=np.int8)

    def to_text(self) -> str:
        """Serialize to the compact form "0110 p=0.03125"."""
        return "{} p={!r}".format(
            "".join(str(bit) for bit in self.bits), self.probability)

    @classmethod
    def from_text(cls, text: str) -> "Realization":
        """Parse the compact text form."""
        try:
            bits, prob = text.split()
            if not prob.startswith("p="):
                raise ValueError("missing p= field")
            return cls(bits=bits, probability=float(prob[2:]))
        except ValueError as err:
            raise RotorParameterError(
                "Invalid realization text {!r}: {}".format(text, err)) from err


def trajectory_rng(seed: int, index: int = 0) -> np.random.Generator:
    """
    Return the random generator of one trajectory.

    Stream splitting rule: trajectory index i of a run with seed s draws
    from SeedSequence(s, spawn_key=(i,)), so every trajectory is
    reproducible on its own regardless of how trials are scheduled.
    """
    if seed < 0 or index < 0:
        raise RotorParameterError(
            "Seed and trajectory index must be non-negative, got {} {}".format(
                seed, index))
    return np.random.default_rng(
        np.random.SeedSequence(int(seed), spawn_key=(int(index),)))


def sample_bits(
        rng: np.random.Generator, a: float, horizon: int) -> np.ndarray:
    """
    Draw the symbols of one chain.

    With probability a the previous symbol is kept, otherwise a fresh fair
    symbol is drawn; this reproduces the columns of the transition matrix.
    """
    first = rng.integers(0, 2)
    keep = rng.random(horizon - 1) < a
    fresh = rng.integers(0, 2, size=horizon - 1)

    symbols = np.empty(horizon, dtype=np.int8)
    symbols[0] = first
    symbols[1:] = fresh
    # Index of the symbol each position copies from
    source = np.arange(horizon)
    source[1:][keep] = 0
    source = np.maximum.accumulate(source)
    return symbols[source]


def _phase_factors(u: Phases) -> np.ndarray:
    """Return exp(-i u_j) with the phase index as first axis."""
    u = np.asarray(u, dtype=float)
    if u.ndim == 0 or u.shape[0] == 0:
        raise RotorParameterError("Phase vector must not be empty")
    return np.exp(-1j * u)


def iter_characteristic(
        a: float, phase_factors: Iterable[np.ndarray]) -> Iterator[np.ndarray]:
    """
    Yield Lambda_1, ..., Lambda_N by the transfer-matrix recursion.

    phase_factors yields exp(-i u_j) for j = 1..N, scalars or arrays of a
    common shape. The running vector starts at (1, exp(-i u_1)) / 2 and is
    advanced by T_u = E_u T.
    """
    trans = transition_matrix(a)
    factors = iter(phase_factors)
    try:
        factor = np.asarray(next(factors))
    except StopIteration:
        raise RotorParameterError("Phase vector must not be empty") from None

    vec0 = np.full(factor.shape, 0.5, dtype=complex)
    vec1 = 0.5 * factor
    yield vec0 + vec1
    for factor in factors:
        vec0, vec1 = (
            trans[0, 0] * vec0 + trans[0, 1] * vec1,
            (trans[1, 0] * vec0 + trans[1, 1] * vec1) * factor)
        yield vec0 + vec1


def _as_result(value: np.ndarray) -> Union[complex, np.ndarray]:
    """Return 0-d arrays as complex."""
    if np.ndim(value) == 0:
        return complex(value)
    return value


def characteristic_fn(a: float, u: Phases) -> Union[complex, np.ndarray]:
    """
    Return Lambda_N(u) = (1,1) T_{u_N}...T_{u_2} (1, exp(-i u_1))^T / 2.

    u holds the phases along its first axis; further axes are evaluated
    element-wise.
    """
    res = None
    for res in iter_characteristic(a, _phase_factors(u)):
        pass
    return _as_result(res)


def all_bit_strings(horizon: int) -> np.ndarray:
    """Return all 2^N bit strings as rows, first symbol most significant."""
    validate_horizon(horizon, MAX_ENUMERATION_HORIZON)
    _LOGGER.debug("Enumerating %s realizations", 2 ** horizon)
    return np.array(
        list(itertools.product((0, 1), repeat=horizon)), dtype=np.intp)


def all_probabilities(a: float, bits: np.ndarray) -> np.ndarray:
    """Return p(x) for every row of bits."""
    trans = transition_matrix(a)
    first = np.asarray(SYMBOL_PROBABILITIES)[bits[:, 0]]
    return first * np.prod(trans[bits[:, 1:], bits[:, :-1]], axis=1)


def characteristic_fn_enumerated(
        a: float, u: Phases) -> Union[complex, np.ndarray]:
    """Return sum over all x of exp(-i <x|u>) p(x), cost 2^N."""
    u = np.asarray(u, dtype=float)
    if u.ndim == 0 or u.shape[0] == 0:
        raise RotorParameterError("Phase vector must not be empty")
    bits = all_bit_strings(u.shape[0])
    probs = all_probabilities(a, bits)
    phases = np.tensordot(bits.astype(float), u, axes=1)
    return _as_result(np.tensordot(probs, np.exp(-1j * phases), axes=1))


@attr.s(auto_attribs=True, frozen=True)
class MarkovKickProcess:
    """
    Stationary one-step Markov process of the kick symbols.

    :param a: Memory parameter, 0 <= a <= 1.
    :type a: float
    """

    a: float = attr.ib(converter=float, validator=memory_validator)

    @property
    def probabilities(self) -> Tuple[float, float]:
        """Return the stationary symbol probabilities (1/2, 1/2)."""
        return SYMBOL_PROBABILITIES

    @property
    def transition(self) -> np.ndarray:
        """Return the transition matrix."""
        return transition_matrix(self.a)

    def power(self, n: int) -> np.ndarray:
        """Return the n-step transition matrix."""
        return transition_power(self.a, n)

    def probability(self, bits: Sequence[int]) -> float:
        """Return the probability of a bit sequence."""
        return chain_probability(self.a, bits)

    def second_moment(self, j: int, k: int) -> float:
        """Return <x_j x_k>."""
        return second_moment(self.a, j, k)

    def covariance(self, j: int, k: int) -> float:
        """Return <x_j x_k> - <x_j><x_k> = a^|k-j| / 4."""
        return self.second_moment(j, k) - 0.25

    def characteristic(self, u: Phases) -> Union[complex, np.ndarray]:
        """Return Lambda_N(u) by transfer matrices."""
        return characteristic_fn(self.a, u)

    def characteristic_enumerated(
            self, u: Phases) -> Union[complex, np.ndarray]:
        """Return Lambda_N(u) by enumeration of all realizations."""
        return characteristic_fn_enumerated(self.a, u)

    def realizations(self, horizon: int) -> Iterator[Realization]:
        """Iterate over all 2^N realizations with their probabilities."""
        bits = all_bit_strings(horizon)
        for row, prob in zip(bits, all_probabilities(self.a, bits)):
            yield Realization(bits=row, probability=prob)

    def sample(self, horizon: int, seed: int, index: int = 0) -> Realization:
        """Sample one realization of trajectory index from seed."""
        horizon = validate_horizon(horizon)
        bits = sample_bits(trajectory_rng(seed, index), self.a, horizon)
        return Realization(bits=bits, probability=self.probability(bits))


def enumerate_realizations(a: float, horizon: int) -> Iterator[Realization]:
    """Iterate over all realizations of length horizon."""
    return MarkovKickProcess(a).realizations(horizon)


def sample_chain(
        a: float, horizon: int, seed: int, index: int = 0) -> Realization:
    """Sample a realization of length horizon, deterministic for fixed seed."""
    return MarkovKickProcess(a).sample(horizon, seed, index)


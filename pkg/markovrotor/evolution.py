#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module implements the dynamical maps of the stochastic kicked rotor.

Density matrices live on the truncated momentum basis |n>, |n| <= n_max.
One step with symbol x applies U_x = exp(-i K (1 - x) cos(theta)) exp(-i p tau)
and symbol 0 means the kick is on.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import logging
import math
import struct

from collections import namedtuple
from typing import Optional, Tuple, Union

import attr
import numpy as np

from scipy.linalg import eigvalsh, toeplitz

from .const import (
    DENSITY_HEADER_FORMAT, DENSITY_MAGIC, MAX_EVOLUTION_HORIZON,
    MIN_QUAD_POINTS, N_MAX_BASE, SYMBOL_PROBABILITIES)
from .decorators import (
    handle_io_exceptions, handle_numerical_exceptions, readonly_lru_cache)
from .exceptions import RotorIOError, RotorParameterError
from .foundation import RotorParams, TauSpec
from .markov import (
    iter_characteristic, transition_matrix, validate_horizon, validate_memory)

_LOGGER = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-10

StateDiagnostics = namedtuple(
    "StateDiagnostics", ["trace_error", "hermiticity_error", "min_eigenvalue"])


def default_n_max(K: float, horizon: int) -> int:
    """
    Return the default truncation radius for N kicks of strength K.

    A branch moves momentum by at most K |sum_{l in S} exp(i l tau)|, which
    is below K N / pi for equidistributed phases; 25 extra levels cover the
    Bessel tails.
    """
    return (
        int(math.ceil(abs(K))) + N_MAX_BASE
        + int(math.ceil(abs(K) * horizon / math.pi)))


def default_quad_points(n_max: int) -> int:
    """Return the smallest power of two >= max(4 n_max, 64)."""
    needed = max(4 * n_max, MIN_QUAD_POINTS)
    return 1 << (needed - 1).bit_length()


def momentum_numbers(n_max: int) -> np.ndarray:
    """Return the momentum quantum numbers -n_max..n_max."""
    return np.arange(-n_max, n_max + 1)


def convert_matrix(value) -> np.ndarray:
    """Convert to a read-only complex matrix."""
    res = np.array(value, dtype=complex)
    res.setflags(write=False)
    return res


def matrix_validator(instance, attribute, value) -> None:
    """Validate a square matrix on an odd number of momentum levels."""
    # pylint: disable=unused-argument
    if value.ndim != 2 or value.shape[0] != value.shape[1]:
        raise RotorParameterError(
            "{} must be a square matrix, got shape {}".format(
                attribute.name, value.shape))
    if value.shape[0] % 2 != 1:
        raise RotorParameterError(
            "{} must have 2 n_max + 1 rows, got {}".format(
                attribute.name, value.shape[0]))


def hermitian_validator(instance, attribute, value) -> None:
    """Validate that a matrix is Hermitian within tolerance."""
    matrix_validator(instance, attribute, value)
    error = float(np.max(np.abs(value - value.conj().T), initial=0.0))
    if error > HERMITIAN_TOLERANCE:
        raise RotorParameterError(
            "{} is not Hermitian, deviation {}".format(attribute.name, error))


@attr.s(auto_attribs=True, frozen=True, eq=False)
class DensityMatrix:
    """Hermitian matrix on the momentum levels -n_max..n_max."""

    entries: np.ndarray = attr.ib(
        converter=convert_matrix, validator=hermitian_validator)

    @property
    def n_max(self) -> int:
        """Return the truncation radius."""
        return (self.entries.shape[0] - 1) // 2

    @property
    def dimension(self) -> int:
        """Return the number of momentum levels."""
        return self.entries.shape[0]

    @property
    def trace(self) -> float:
        """Return the (real) trace."""
        return float(np.trace(self.entries).real)

    def diagnostics(self) -> StateDiagnostics:
        """Return trace error, Hermiticity error and smallest eigenvalue."""
        return StateDiagnostics(
            trace_error=abs(self.trace - 1.0),
            hermiticity_error=float(
                np.max(np.abs(self.entries - self.entries.conj().T))),
            min_eigenvalue=float(eigvalsh(self.entries)[0]))

    def level(self, n: int) -> int:
        """Return the row index of momentum n."""
        if abs(n) > self.n_max:
            raise RotorParameterError(
                "Momentum {} outside the truncation {}".format(n, self.n_max))
        return n + self.n_max

    @classmethod
    def momentum_eigenstate(cls, n_max: int, n: int = 0) -> "DensityMatrix":
        """Return the projector |n><n|."""
        entries = np.zeros((2 * n_max + 1, 2 * n_max + 1), dtype=complex)
        entries[n + n_max, n + n_max] = 1.0
        return cls(entries)

    @classmethod
    def maximally_mixed(cls, n_max: int) -> "DensityMatrix":
        """Return the identity divided by the dimension."""
        dim = 2 * n_max + 1
        return cls(np.eye(dim, dtype=complex) / dim)

    @classmethod
    def from_vector(cls, vector: np.ndarray) -> "DensityMatrix":
        """Return the projector on a normalized vector."""
        vector = np.asarray(vector, dtype=complex)
        vector = vector / np.linalg.norm(vector)
        return cls(np.outer(vector, vector.conj()))


@attr.s(auto_attribs=True, frozen=True, eq=False)
class KickUnitary:
    """Matrix of exp(-i z cos(theta)) on the truncated momentum basis."""

    entries: np.ndarray = attr.ib(
        converter=convert_matrix, validator=matrix_validator)
    strength: float = attr.ib(converter=float)
    quad_points: int = attr.ib(converter=int)

    @property
    def n_max(self) -> int:
        """Return the truncation radius."""
        return (self.entries.shape[0] - 1) // 2


@attr.s(auto_attribs=True, frozen=True, eq=False)
class ConditionalStatePair:
    """Unnormalized states conditioned on the last kick symbol."""

    zero: np.ndarray = attr.ib(converter=convert_matrix)
    one: np.ndarray = attr.ib(converter=convert_matrix)

    @property
    def total(self) -> np.ndarray:
        """Return rho^(0) + rho^(1)."""
        return self.zero + self.one

    @property
    def traces(self) -> Tuple[float, float]:
        """Return the probabilities of the last symbol."""
        return (
            float(np.trace(self.zero).real), float(np.trace(self.one).real))


@readonly_lru_cache(maxsize=16)
def _kick_matrix(strength: float, n_max: int, quad_points: int) -> np.ndarray:
    """
    Return <m|exp(-i z cos(theta))|n> by uniform quadrature.

    The element only depends on m - n; the rectangle rule on quad_points
    nodes equals (-i)^(m-n) J_(m-n)(z) up to aliased Bessel tails.
    """
    theta = 2.0 * np.pi * np.arange(quad_points) / quad_points
    coeffs = np.fft.fft(np.exp(-1j * strength * np.cos(theta))) / quad_points
    offsets = np.arange(2 * n_max + 1)
    _LOGGER.debug(
        "Kick matrix z=%s n_max=%s on %s nodes", strength, n_max, quad_points)
    return toeplitz(coeffs[offsets], coeffs[-offsets % quad_points])


def kick_unitary(
        z: float,
        n_max: int,
        quad_points: Optional[int] = None) -> KickUnitary:
    """Return the kick unitary of strength z on |n| <= n_max."""
    if int(n_max) != n_max or n_max < 0:
        raise RotorParameterError("Invalid truncation: {}".format(n_max))
    if quad_points is None:
        quad_points = default_quad_points(n_max)
    quad_points = int(quad_points)
    if quad_points < 4 * n_max or quad_points & (quad_points - 1):
        raise RotorParameterError(
            "Quadrature resolution {} too low for n_max {}, need a power of "
            "two >= {}".format(quad_points, n_max, 4 * n_max))
    return KickUnitary(
        entries=_kick_matrix(float(z), int(n_max), quad_points),
        strength=z, quad_points=quad_points)


def free_rotation(tau: Union[float, TauSpec], n_max: int) -> np.ndarray:
    """
    Return the diagonal of exp(-i p tau), entries exp(-i n tau).

    For a TauSpec the phases n tau are reduced on the multiplier, so tau = 2pi
    gives the identity exactly.
    """
    levels = momentum_numbers(n_max)
    if isinstance(tau, TauSpec):
        return np.exp(-1j * tau.phase(levels))
    return np.exp(-1j * float(tau) * levels)


def step_unitaries(
        params: RotorParams,
        n_max: int,
        quad_points: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Return U_0 (kick K) and U_1 (no kick), both after free rotation."""
    rotation = free_rotation(params.tau, n_max)
    return tuple(
        kick_unitary(params.K * (1 - symbol), n_max, quad_points).entries
        * rotation[np.newaxis, :]
        for symbol in (0, 1))


def _conjugate(unitary: np.ndarray, operator: np.ndarray) -> np.ndarray:
    """Return U X U^dagger."""
    return unitary @ operator @ unitary.conj().T


def _hermitian_part(operator: np.ndarray) -> np.ndarray:
    """Return (X + X^dagger) / 2."""
    return 0.5 * (operator + operator.conj().T)


def conditional_states(
        operator: np.ndarray,
        params: RotorParams,
        a: float,
        horizon: int,
        quad_points: Optional[int] = None) -> ConditionalStatePair:
    """
    Return the states after N kicks conditioned on the last symbol.

    rho^(y)_1 = p_y U_y X U_y^dagger and
    rho^(y)_(l+1) = U_y (sum_x T[y, x] rho^(x)_l) U_y^dagger.
    """
    trans = transition_matrix(validate_memory(a))
    horizon = validate_horizon(horizon)
    n_max = (operator.shape[0] - 1) // 2
    unitaries = step_unitaries(params, n_max, quad_points)

    states = [
        prob * _conjugate(unitary, operator)
        for prob, unitary in zip(SYMBOL_PROBABILITIES, unitaries)]
    for _ in range(horizon - 1):
        states = [
            _conjugate(
                unitaries[symbol],
                trans[symbol, 0] * states[0] + trans[symbol, 1] * states[1])
            for symbol in (0, 1)]
    return ConditionalStatePair(zero=states[0], one=states[1])


@handle_numerical_exceptions
def apply_map(
        operator: np.ndarray,
        params: RotorParams,
        a: float,
        horizon: int,
        quad_points: Optional[int] = None) -> np.ndarray:
    """Return Phi_N[X] for any operator X on the truncated basis."""
    operator = np.asarray(operator, dtype=complex)
    return conditional_states(operator, params, a, horizon, quad_points).total


def evolve_recursive(
        rho0: DensityMatrix,
        params: RotorParams,
        a: float,
        horizon: int,
        quad_points: Optional[int] = None) -> DensityMatrix:
    """Return Phi_N[rho0] with cost linear in N."""
    res = apply_map(rho0.entries, params, a, horizon, quad_points)
    return DensityMatrix(_hermitian_part(res))


@handle_numerical_exceptions
def evolve_enumerated(
        rho0: DensityMatrix,
        params: RotorParams,
        a: float,
        horizon: int,
        quad_points: Optional[int] = None) -> DensityMatrix:
    """Return Phi_N[rho0] as sum over all 2^N realizations."""
    trans = transition_matrix(validate_memory(a))
    horizon = validate_horizon(horizon, MAX_EVOLUTION_HORIZON)
    unitaries = step_unitaries(params, rho0.n_max, quad_points)
    total = np.zeros_like(rho0.entries)

    def branch(state, prob, last, depth):
        nonlocal total
        if depth == horizon:
            total = total + prob * state
            return
        for symbol in (0, 1):
            branch(
                _conjugate(unitaries[symbol], state),
                prob * trans[symbol, last], symbol, depth + 1)

    for symbol in (0, 1):
        branch(
            _conjugate(unitaries[symbol], rho0.entries),
            SYMBOL_PROBABILITIES[symbol], symbol, 1)
    return DensityMatrix(_hermitian_part(total))


@handle_numerical_exceptions
def bernoulli_step(
        rho: DensityMatrix,
        params: RotorParams,
        quad_points: Optional[int] = None) -> DensityMatrix:
    """Return Phi[rho] = sum_x 1/2 U_x rho U_x^dagger, the memoryless step."""
    unitaries = step_unitaries(params, rho.n_max, quad_points)
    res = sum(
        prob * _conjugate(unitary, rho.entries)
        for prob, unitary in zip(SYMBOL_PROBABILITIES, unitaries))
    return DensityMatrix(_hermitian_part(res))


@handle_numerical_exceptions
def evolve_factorized(
        rho0: DensityMatrix,
        params: RotorParams,
        a: float,
        horizon: int,
        quad_points: Optional[int] = None) -> DensityMatrix:
    """
    Return Phi_N[rho0] = exp(-i p N tau) Psi_N[rho0] exp(i p N tau).

    Psi_N multiplies the angle kernel of rho0 by
    sum_x p(x) exp(-i <1 - x|d>) = exp(-i sum d) Lambda_N(-d) with
    d_l = K (cos(theta_1 + l tau) - cos(theta_2 + l tau)).
    """
    a = validate_memory(a)
    horizon = validate_horizon(horizon)
    n_max = rho0.n_max
    if quad_points is None:
        quad_points = default_quad_points(n_max)
    theta = 2.0 * np.pi * np.arange(quad_points) / quad_points
    levels = momentum_numbers(n_max)
    basis = np.exp(1j * np.outer(theta, levels))

    angles = params.phase(np.arange(1, horizon + 1))
    kicks = params.K * np.cos(theta[np.newaxis, :] + angles[:, np.newaxis])

    def factors():
        for row in kicks:
            phase = np.exp(1j * row)
            yield np.outer(phase, phase.conj())

    char = None
    for char in iter_characteristic(a, factors()):
        pass
    total = np.exp(-1j * kicks.sum(axis=0))
    kernel = np.outer(total, total.conj()) * char

    angle_rho = basis @ rho0.entries @ basis.conj().T
    res = basis.conj().T @ (kernel * angle_rho) @ basis / quad_points ** 2
    rotation = np.exp(-1j * params.phase(horizon * levels))
    res = rotation[:, np.newaxis] * res * rotation.conj()[np.newaxis, :]
    return DensityMatrix(_hermitian_part(res))


def hs_norm_trace(rho: Union[DensityMatrix, np.ndarray]) -> float:
    """Return the Hilbert-Schmidt norm sqrt(Tr(rho^dagger rho))."""
    entries = rho.entries if isinstance(rho, DensityMatrix) else rho
    return float(np.linalg.norm(entries, "fro"))


@handle_io_exceptions
def save_density_matrix(
        path: str,
        rho: DensityMatrix,
        params: RotorParams,
        a: Optional[float],
        horizon: int) -> None:
    """
    Write rho to the binary container.

    Layout: magic, header (n_max, N, K, tau multiplier, tau kind code, a)
    little-endian, then row-major complex entries as float64 pairs.
    """
    header = struct.pack(
        DENSITY_HEADER_FORMAT, rho.n_max, int(horizon), params.K,
        params.tau.multiplier, params.tau.kind.code,
        math.nan if a is None else float(a))
    with open(path, "wb") as file:
        file.write(DENSITY_MAGIC)
        file.write(header)
        file.write(np.ascontiguousarray(rho.entries, dtype="<c16").tobytes())


@handle_io_exceptions
def load_density_matrix(path: str) -> Tuple[DensityMatrix, dict]:
    """Read a density matrix and its header from the binary container."""
    with open(path, "rb") as file:
        content = file.read()

    header_size = struct.calcsize(DENSITY_HEADER_FORMAT)
    start = len(DENSITY_MAGIC)
    if content[:start] != DENSITY_MAGIC:
        raise RotorIOError("Not a density matrix container", path)
    n_max, horizon, K, multiplier, kind, a = struct.unpack(
        DENSITY_HEADER_FORMAT, content[start:start + header_size])
    dim = 2 * n_max + 1
    body = content[start + header_size:]
    if len(body) != dim * dim * 16:
        raise RotorIOError(
            "Container body has {} bytes, expected {}".format(
                len(body), dim * dim * 16), path)

    entries = np.frombuffer(body, dtype="<c16").reshape(dim, dim)
    tau = TauSpec(
        multiplier=multiplier, kind=kind, label="2pi*{!r}".format(multiplier))
    header = {
        "n_max": n_max,
        "N": horizon,
        "params": RotorParams(K=K, tau=tau),
        "a": None if math.isnan(a) else a}
    return DensityMatrix(entries), header

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module implements the non-Markovianity diagnostics of the rotor.

Two witnesses are provided: the time behaviour of the Hilbert-Schmidt norm
of Phi_N[rho] and the positivity probe Delta of the intertwining map
Phi_2 o Phi_1^-1.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import logging

from typing import Optional, Tuple, Union

import attr
import numpy as np

from .const import (
    CONVERGENCE_TOLERANCE, DEFAULT_GRID, DEFAULT_SCAN_GRID, DEFAULT_SMEAR_EPS,
    EPS_SING, MIN_GRID, MIN_SCAN_GRID, REGULAR_DENOMINATOR, SMEAR_POINTS,
    TOL_MONO)
from .decorators import handle_numerical_exceptions
from .evolution import DensityMatrix, momentum_numbers
from .exceptions import (
    RotorConvergenceError, RotorParameterError, RotorSingularityError)
from .foundation import RotorParams, run_blocks
from .markov import (
    characteristic_fn, iter_characteristic, validate_horizon, validate_memory)

_LOGGER = logging.getLogger(__name__)

Angles = Union[float, np.ndarray]
GridIndex = Tuple[int, int]


@attr.s(auto_attribs=True, frozen=True)
class WitnessPoint:
    """HS norm squared after N kicks with its grid-refinement discrepancy."""

    N: int = attr.ib(converter=int)
    hs_squared: float = attr.ib(converter=float)
    discrepancy: float = attr.ib(converter=float, default=0.0)
    violation: bool = attr.ib(converter=bool, default=False)


@attr.s(auto_attribs=True, frozen=True)
class WitnessCurve:
    """Curve N -> ||Phi_N[rho]||^2_HS and its monotonicity violations."""

    params: RotorParams = attr.ib(
        validator=attr.validators.instance_of(RotorParams))
    a: float = attr.ib(converter=float)
    grid: int = attr.ib(converter=int)
    points: Tuple[WitnessPoint, ...] = attr.ib(converter=tuple)
    tol_mono: float = attr.ib(converter=float, default=TOL_MONO)

    @property
    def violations(self) -> Tuple[int, ...]:
        """Return the N at which the HS norm increased."""
        return tuple(point.N for point in self.points if point.violation)

    @property
    def steps(self) -> np.ndarray:
        """Return the kick counts."""
        return np.array([point.N for point in self.points])

    @property
    def values(self) -> np.ndarray:
        """Return the HS norms squared."""
        return np.array([point.hs_squared for point in self.points])


@attr.s(auto_attribs=True, frozen=True, eq=False)
class DeltaScan:
    """
    Delta on the uniform grid theta_k = 2 pi k / G over [0, 2pi)^2.

    Masked entries are NaN in values. argmin and regular_argmin are
    (row, column) indices, ties broken by the smallest row, then column.
    """

    grid_size: int
    values: np.ndarray
    mask: np.ndarray
    min_value: float
    argmin: GridIndex
    regular_min: float
    regular_argmin: GridIndex
    eps_sing: float = EPS_SING

    def theta(self, index: GridIndex) -> Tuple[float, float]:
        """Return the angles (theta_1, theta_2) of a grid index."""
        return (
            2.0 * np.pi * index[0] / self.grid_size,
            2.0 * np.pi * index[1] / self.grid_size)

    @property
    def masked_count(self) -> int:
        """Return the number of near-singular grid points."""
        return int(np.count_nonzero(self.mask))


def _validate_grid(grid: int, minimum: int) -> int:
    """Return grid as int if it is a power of two >= minimum."""
    if int(grid) != grid or grid < minimum or int(grid) & (int(grid) - 1):
        raise RotorParameterError(
            "Grid must be a power of two >= {}, got {}".format(minimum, grid))
    return int(grid)


def _angle_weights(grid: int, rho: Optional[DensityMatrix]) -> np.ndarray:
    """
    Return |<theta_1|rho|theta_2>|^2 (2 pi)^2 on the grid.

    For |0><0| the weight is 1 everywhere.
    """
    if rho is None:
        return np.ones((grid, grid))
    theta = 2.0 * np.pi * np.arange(grid) / grid
    basis = np.exp(1j * np.outer(theta, momentum_numbers(rho.n_max)))
    return np.abs(basis @ rho.entries @ basis.conj().T) ** 2


@handle_numerical_exceptions
def hs_squared_series(
        params: RotorParams,
        a: float,
        n_max: int,
        grid: int = DEFAULT_GRID,
        rho: Optional[DensityMatrix] = None,
        threads: int = 1) -> np.ndarray:
    """
    Return ||Phi_N[rho]||^2_HS for N = 1..n_max on a G x G angle grid.

    The integrand is |<theta_1|rho|theta_2>|^2 |Lambda_N(u)|^2 with
    u_j = K (cos(theta_1 + j tau) - cos(theta_2 + j tau)). All N are
    obtained in one pass of the running transfer vectors. Rows are
    reduced in order, so the result does not depend on threads.
    """
    a = validate_memory(a)
    n_max = validate_horizon(n_max)
    grid = _validate_grid(grid, MIN_GRID)
    theta = 2.0 * np.pi * np.arange(grid) / grid
    angles = params.phase(np.arange(1, n_max + 1))
    kicks = np.exp(
        -1j * params.K
        * np.cos(theta[np.newaxis, :] + angles[:, np.newaxis]))
    weights = _angle_weights(grid, rho)

    def row_sums(rows: slice) -> np.ndarray:
        def factors():
            for row in kicks:
                yield np.outer(row[rows], row.conj())

        res = np.empty((n_max, rows.stop - rows.start))
        for index, char in enumerate(iter_characteristic(a, factors())):
            res[index] = np.sum(np.abs(char) ** 2 * weights[rows], axis=1)
        return res

    sums = np.concatenate(run_blocks(row_sums, grid, threads), axis=1)
    return sums.sum(axis=1) / grid ** 2


def _checked_series(
        params: RotorParams,
        a: float,
        n_max: int,
        grid: int,
        rho: Optional[DensityMatrix],
        threads: int,
        tolerance: float) -> Tuple[np.ndarray, np.ndarray]:
    """Return the series on G and its discrepancy to the series on 2G."""
    coarse = hs_squared_series(params, a, n_max, grid, rho, threads)
    fine = hs_squared_series(params, a, n_max, 2 * grid, rho, threads)
    discrepancy = np.abs(coarse - fine)
    worst = int(np.argmax(discrepancy))
    _LOGGER.debug(
        "HS quadrature on %s points, max refinement discrepancy %s at N=%s",
        grid, discrepancy[worst], worst + 1)
    if discrepancy[worst] > tolerance:
        raise RotorConvergenceError(
            "HS quadrature not converged on {} points: discrepancy {} at "
            "N={}".format(grid, discrepancy[worst], worst + 1),
            "hs_squared")
    return coarse, discrepancy


def hs_squared_quadrature(
        params: RotorParams,
        a: float,
        horizon: int,
        grid: int = DEFAULT_GRID,
        rho: Optional[DensityMatrix] = None,
        threads: int = 1,
        tolerance: float = CONVERGENCE_TOLERANCE) -> float:
    """
    Return ||Phi_N[rho]||^2_HS after N kicks, rho = |0><0| by default.

    The value on G points is accepted if it agrees with 2G points within
    tolerance, otherwise RotorConvergenceError is raised.
    """
    coarse, _ = _checked_series(
        params, a, horizon, grid, rho, threads, tolerance)
    return float(coarse[-1])


def witness_curve(
        params: RotorParams,
        a: float,
        n_max: int,
        grid: int = DEFAULT_GRID,
        rho: Optional[DensityMatrix] = None,
        tol_mono: float = TOL_MONO,
        threads: int = 1,
        tolerance: float = CONVERGENCE_TOLERANCE) -> WitnessCurve:
    """
    Return the HS norm curve up to n_max with its monotonicity violations.

    An increase from N-1 to N is reported when it exceeds tol_mono and the
    grid-refinement discrepancy at both N-1 and N.
    """
    if int(n_max) != n_max or n_max < 2:
        raise RotorParameterError(
            "The witness curve needs n_max >= 2, got {}".format(n_max))
    values, discrepancy = _checked_series(
        params, a, n_max, grid, rho, threads, tolerance)

    increase = np.diff(values)
    noise = np.maximum(discrepancy[1:], discrepancy[:-1])
    flags = np.concatenate(
        ([False], (increase > tol_mono) & (increase > noise)))
    points = [
        WitnessPoint(
            N=index + 1, hs_squared=value, discrepancy=error, violation=flag)
        for index, (value, error, flag) in enumerate(
            zip(values, discrepancy, flags))]
    _LOGGER.debug(
        "Witness curve a=%s: %s monotonicity violations", a,
        int(np.count_nonzero(flags)))
    return WitnessCurve(
        params=params, a=a, grid=grid, points=points, tol_mono=tol_mono)


def _phase_differences(
        params: RotorParams,
        theta1: Angles,
        theta2: Angles) -> Tuple[np.ndarray, np.ndarray]:
    """
    Return the phase differences A and B of the two kicks.

    A = K (cos(theta_2 - tau) - cos(theta_1 - tau)) and
    B = K (cos(theta_2) - cos(theta_1)).
    """
    theta1 = np.asarray(theta1, dtype=float)
    theta2 = np.asarray(theta2, dtype=float)
    shift = params.tau.value
    diff_a = params.K * (np.cos(theta2 - shift) - np.cos(theta1 - shift))
    diff_b = params.K * (np.cos(theta2) - np.cos(theta1))
    return diff_a, diff_b


def delta_values(
        params: RotorParams,
        a: float,
        theta1: Angles,
        theta2: Angles) -> Tuple[np.ndarray, np.ndarray]:
    """
    Return Delta = 2 - delta and the denominator |cos(A/2)|.

    delta = 2 cos(B/2) / cos(A/2) (cos(A/2) cos(B/2) - a sin(A/2) sin(B/2)).
    Swapping theta_1 and theta_2 flips the signs of A and B only, so the
    evaluation goes through |A|, |B| and their sign product.
    """
    diff_a, diff_b = _phase_differences(params, theta1, theta2)
    half_a = 0.5 * np.abs(diff_a)
    half_b = 0.5 * np.abs(diff_b)
    sign = np.sign(diff_a) * np.sign(diff_b)
    cos_a = np.cos(half_a)
    cos_b = np.cos(half_b)
    with np.errstate(divide="ignore", invalid="ignore"):
        delta = 2.0 * cos_b / cos_a * (
            cos_a * cos_b - a * sign * np.sin(half_a) * np.sin(half_b))
    return 2.0 - delta, np.abs(cos_a)


def delta_probe(
        params: RotorParams,
        a: float,
        theta1: float,
        theta2: float,
        eps_sing: float = EPS_SING) -> float:
    """
    Return Delta(theta_1, theta_2) of the intertwining map Phi_2 o Phi_1^-1.

    Negative values show that the intertwining map is not positive.
    Raises RotorSingularityError where |cos(A/2)| <= eps_sing.
    """
    a = validate_memory(a)
    value, denominator = delta_values(params, a, theta1, theta2)
    if denominator <= eps_sing:
        raise RotorSingularityError(
            "Denominator {} vanishes at theta=({}, {})".format(
                float(denominator), theta1, theta2),
            "delta")
    return float(value)


def _first_argmin(values: np.ndarray, excluded: np.ndarray) -> GridIndex:
    """Return the first row-major index of the minimum outside excluded."""
    flat = int(np.argmin(np.where(excluded, np.inf, values)))
    row, column = np.unravel_index(flat, values.shape)
    return (int(row), int(column))


@handle_numerical_exceptions
def delta_scan(
        params: RotorParams,
        a: float,
        grid: int = DEFAULT_SCAN_GRID,
        eps_sing: float = EPS_SING,
        threads: int = 1) -> DeltaScan:
    """Evaluate Delta on the G x G uniform grid and record its minima."""
    a = validate_memory(a)
    grid = _validate_grid(grid, MIN_SCAN_GRID)
    theta = 2.0 * np.pi * np.arange(grid) / grid

    def rows(block: slice) -> Tuple[np.ndarray, np.ndarray]:
        return delta_values(
            params, a, theta[block, np.newaxis], theta[np.newaxis, :])

    blocks = run_blocks(rows, grid, threads)
    values = np.concatenate([block[0] for block in blocks])
    denominator = np.concatenate([block[1] for block in blocks])

    mask = denominator <= eps_sing
    irregular = denominator < REGULAR_DENOMINATOR
    values[mask] = np.nan
    if mask.all():
        raise RotorSingularityError(
            "Every grid point is singular", "delta")
    argmin = _first_argmin(values, mask)
    regular_argmin = _first_argmin(values, irregular | mask)
    _LOGGER.debug(
        "Delta scan a=%s on %s points: min %s at %s, %s points masked",
        a, grid, values[argmin], argmin, int(np.count_nonzero(mask)))
    return DeltaScan(
        grid_size=grid,
        values=values,
        mask=mask,
        min_value=float(values[argmin]),
        argmin=argmin,
        regular_min=float(values[regular_argmin]),
        regular_argmin=regular_argmin,
        eps_sing=eps_sing)


def gamma_kernel(
        params: RotorParams,
        a: float,
        theta1: Angles,
        theta2: Angles,
        eps_sing: float = EPS_SING) -> Union[complex, np.ndarray]:
    """
    Return G(theta_1, theta_2) = Lambda_2(A, B) / Lambda_1(A).

    G is the angle kernel of the intertwining map; array angles are
    evaluated element-wise.
    """
    a = validate_memory(a)
    diff_a, diff_b = _phase_differences(params, theta1, theta2)
    first = characteristic_fn(a, diff_a[np.newaxis])
    second = characteristic_fn(a, np.stack([diff_a, diff_b]))
    if np.any(np.abs(first) <= eps_sing):
        raise RotorSingularityError(
            "Lambda_1 vanishes in the evaluation range", "gamma")
    return second / first


def _window_denominator(
        params: RotorParams,
        first: float,
        second: float,
        offsets: np.ndarray) -> np.ndarray:
    """Return the signed cos(A/2) on a window around (first, second)."""
    diff_a, _ = _phase_differences(
        params, first + offsets[:, np.newaxis],
        second + offsets[np.newaxis, :])
    return np.cos(0.5 * diff_a)


def delta_smeared(
        params: RotorParams,
        a: float,
        theta1: float,
        theta2: float,
        eps: float = DEFAULT_SMEAR_EPS,
        points: int = SMEAR_POINTS,
        eps_sing: float = EPS_SING) -> float:
    """
    Return Delta(eps) = Re(I_11 + I_22 - I_12 - I_21).

    I_ij is the mean of G over the window [theta_i - eps/2, theta_i + eps/2] x
    [theta_j - eps/2, theta_j + eps/2], integrated by Gauss-Legendre rules.
    Delta(eps) tends to Delta(theta_1, theta_2) for eps -> 0.

    G has a pole where cos(A/2) vanishes. A window reaching that set has no
    finite mean and raises RotorSingularityError.
    """
    if eps <= 0:
        raise RotorParameterError(
            "Window width must be positive, got {}".format(eps))
    nodes, weights = np.polynomial.legendre.leggauss(int(points))
    plane = 0.25 * np.outer(weights, weights)
    half_width = 0.5 * eps
    edges = half_width * np.concatenate(([-1.0], nodes, [1.0]))

    def window(first: float, second: float) -> complex:
        denominator = _window_denominator(params, first, second, edges)
        if denominator.min() <= eps_sing and denominator.max() >= -eps_sing:
            raise RotorSingularityError(
                "Window of width {} around ({}, {}) crosses the pole of "
                "G".format(eps, first, second), "delta")
        kernel = gamma_kernel(
            params, a,
            first + half_width * nodes[:, np.newaxis],
            second + half_width * nodes[np.newaxis, :],
            eps_sing)
        return complex(np.sum(plane * kernel))

    res = (
        window(theta1, theta1) + window(theta2, theta2)
        - window(theta1, theta2) - window(theta2, theta1))
    return float(res.real)

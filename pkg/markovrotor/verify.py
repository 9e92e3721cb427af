#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module implements the oracle suites of markovrotor.

Each suite compares a production evaluation with an independent one
(enumeration, closed form or another discretization) and reports the
largest deviation found.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import logging

from typing import Callable, List, Sequence

import attr
import numpy as np

from .const import REGULAR_DENOMINATOR
from .evolution import (
    DensityMatrix, bernoulli_step, default_n_max, evolve_enumerated,
    evolve_factorized, evolve_recursive, hs_norm_trace)
from .exceptions import RotorOracleError
from .foundation import RotorParams
from .markov import characteristic_fn, characteristic_fn_enumerated
from .variance import variance_markov_enumerated, variance_markov_exact
from .witness import delta_values, gamma_kernel, witness_curve

_LOGGER = logging.getLogger(__name__)

ORACLE_PARAMS = RotorParams(K=3.0, tau="2pi*sqrt2")
CHARACTERISTIC_CASES = 100
DELTA_CASES = 10000
HS_MEMORIES = (0.0, 0.5, 0.9)
VARIANCE_MEMORIES = (0.0, 0.3, 0.7, 1.0)
ENUMERATION_HORIZON = 12
SHORT_HORIZON = 6


@attr.s(auto_attribs=True, frozen=True)
class OracleResult:
    """Largest deviation between two evaluations of one quantity."""

    name: str
    max_error: float = attr.ib(converter=float)
    tolerance: float = attr.ib(converter=float)
    cases: int = attr.ib(converter=int)

    @property
    def passed(self) -> bool:
        """Return True if the deviation is within tolerance."""
        return self.max_error <= self.tolerance


def characteristic_suite(
        max_n: int, perturb: float, seed: int) -> OracleResult:
    """Compare transfer matrices with enumeration for random (a, u)."""
    rng = np.random.default_rng(seed)
    error = 0.0
    for _ in range(CHARACTERISTIC_CASES):
        horizon = int(rng.integers(1, min(max_n, 12) + 1))
        a = float(rng.random())
        u = rng.uniform(-np.pi, np.pi, horizon)
        fast = characteristic_fn(a, u) + perturb
        error = max(error, abs(fast - characteristic_fn_enumerated(a, u)))
    return OracleResult(
        name="characteristic", max_error=error, tolerance=1e-12,
        cases=CHARACTERISTIC_CASES)


def variance_suite(max_n: int, perturb: float) -> OracleResult:
    """Compare the closed-form variance with the enumerated average."""
    error = 0.0
    cases = 0
    for a in VARIANCE_MEMORIES:
        for horizon in range(1, min(max_n, 12) + 1):
            fast = variance_markov_exact(ORACLE_PARAMS, a, horizon) + perturb
            error = max(error, abs(
                fast - variance_markov_enumerated(ORACLE_PARAMS, a, horizon)))
            cases += 1
    return OracleResult(
        name="variance", max_error=error, tolerance=1e-10, cases=cases)


def _matrix_error(first: np.ndarray, second: np.ndarray) -> float:
    return float(np.max(np.abs(first - second)))


def evolution_suite(max_n: int, perturb: float) -> OracleResult:
    """Compare the recursion with enumeration and the factorized form."""
    top = min(max_n, ENUMERATION_HORIZON)
    rho0 = DensityMatrix.momentum_eigenstate(
        default_n_max(ORACLE_PARAMS.K, top))
    error = 0.0
    cases = 0
    for horizon in range(1, top + 1):
        fast = evolve_recursive(rho0, ORACLE_PARAMS, 0.5, horizon).entries
        fast = fast + perturb
        error = max(error, _matrix_error(fast, evolve_enumerated(
            rho0, ORACLE_PARAMS, 0.5, horizon).entries))
        cases += 1
        if horizon <= SHORT_HORIZON:
            error = max(error, _matrix_error(fast, evolve_factorized(
                rho0, ORACLE_PARAMS, 0.5, horizon).entries))
            cases += 1
    return OracleResult(
        name="evolution", max_error=error, tolerance=1e-10, cases=cases)


def semigroup_suite(max_n: int, perturb: float) -> OracleResult:
    """Compare Phi_N at a=0 with N memoryless steps."""
    top = min(max_n, SHORT_HORIZON)
    rho0 = DensityMatrix.momentum_eigenstate(
        default_n_max(ORACLE_PARAMS.K, top))
    state = rho0
    error = 0.0
    for horizon in range(1, top + 1):
        state = bernoulli_step(state, ORACLE_PARAMS)
        fast = evolve_recursive(rho0, ORACLE_PARAMS, 0.0, horizon).entries
        error = max(error, _matrix_error(fast + perturb, state.entries))
    return OracleResult(
        name="semigroup", max_error=error, tolerance=1e-10, cases=top)


def hs_suite(max_n: int, perturb: float, threads: int) -> OracleResult:
    """Compare the HS norm quadrature with the trace of the evolved state."""
    top = max(2, min(max_n, 8))
    rho0 = DensityMatrix.momentum_eigenstate(
        default_n_max(ORACLE_PARAMS.K, top))
    error = 0.0
    for a in HS_MEMORIES:
        curve = witness_curve(ORACLE_PARAMS, a, top, threads=threads)
        for point in curve.points:
            state = evolve_recursive(rho0, ORACLE_PARAMS, a, point.N)
            fast = point.hs_squared + perturb
            error = max(error, abs(fast - hs_norm_trace(state) ** 2))
    return OracleResult(
        name="hs_norm", max_error=error, tolerance=1e-5,
        cases=top * len(HS_MEMORIES))


def state_suite(max_n: int, perturb: float) -> List[OracleResult]:
    """Check trace, Hermiticity and positivity of evolved states."""
    top = min(max_n, 8)
    rho0 = DensityMatrix.momentum_eigenstate(
        default_n_max(ORACLE_PARAMS.K, top))
    trace_error = 0.0
    positivity_error = 0.0
    for a in HS_MEMORIES:
        for horizon in range(1, top + 1):
            state = evolve_recursive(rho0, ORACLE_PARAMS, a, horizon)
            diag = state.diagnostics()
            trace_error = max(
                trace_error, diag.trace_error + abs(perturb),
                diag.hermiticity_error)
            positivity_error = max(
                positivity_error, -diag.min_eigenvalue,
                hs_norm_trace(state) ** 2 - 1.0)
    cases = top * len(HS_MEMORIES)
    return [
        OracleResult(
            name="trace", max_error=trace_error, tolerance=1e-10,
            cases=cases),
        OracleResult(
            name="positivity", max_error=positivity_error, tolerance=1e-8,
            cases=cases)]


def delta_suite(perturb: float, seed: int) -> OracleResult:
    """Compare the closed-form Delta with 2 - G(1, 2) - G(2, 1)."""
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 2.0 * np.pi, (2, 4 * DELTA_CASES))
    values, denominator = delta_values(
        ORACLE_PARAMS, 0.1, angles[0], angles[1])
    regular = np.flatnonzero(denominator >= REGULAR_DENOMINATOR)[:DELTA_CASES]
    first, second = angles[0][regular], angles[1][regular]
    kernel_sum = (
        gamma_kernel(ORACLE_PARAMS, 0.1, first, second)
        + gamma_kernel(ORACLE_PARAMS, 0.1, second, first))
    error = float(np.max(np.abs(
        values[regular] + perturb - (2.0 - kernel_sum.real))))
    return OracleResult(
        name="delta", max_error=error, tolerance=1e-10, cases=regular.size)


def run_oracles(
        max_n: int = 12,
        perturb: float = 0.0,
        seed: int = 0,
        threads: int = 1) -> List[OracleResult]:
    """Run every oracle suite up to max_n kicks."""
    suites: Sequence[Callable[[], object]] = (
        lambda: characteristic_suite(max_n, perturb, seed),
        lambda: variance_suite(max_n, perturb),
        lambda: evolution_suite(max_n, perturb),
        lambda: semigroup_suite(max_n, perturb),
        lambda: hs_suite(max_n, perturb, threads),
        lambda: state_suite(max_n, perturb),
        lambda: delta_suite(perturb, seed))
    results = []
    for suite in suites:
        res = suite()
        results.extend(res if isinstance(res, list) else [res])
        _LOGGER.debug("Oracle suite finished: %s", results[-1])
    return results


def format_report(results: Sequence[OracleResult]) -> str:
    """Return the pass/fail table of oracle results."""
    lines = ["{:<16}{:>8}{:>14}{:>12}  {}".format(
        "suite", "cases", "max_error", "tolerance", "status")]
    for res in results:
        lines.append("{:<16}{:>8}{:>14.3e}{:>12.1e}  {}".format(
            res.name, res.cases, res.max_error, res.tolerance,
            "pass" if res.passed else "FAIL"))
    return "\n".join(lines)


def check_oracles(results: Sequence[OracleResult]) -> None:
    """Raise RotorOracleError if any oracle failed."""
    failed = [res.name for res in results if not res.passed]
    if failed:
        raise RotorOracleError(
            "Oracle mismatch in: {}".format(", ".join(failed)))

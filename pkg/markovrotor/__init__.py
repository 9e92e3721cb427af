#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Quantum linear kicked rotor driven by Markovian stochastic kicks.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

# Set default logging handler to avoid "No handler found" warnings.
import logging

# Import markovrotor modules
from .foundation import RotorParams, TauSpec, parse_tau_spec
from .markov import (
    MarkovKickProcess, Realization, characteristic_fn, enumerate_realizations,
    sample_chain)
from .variance import (
    VarianceCurve, variance_curve, variance_deterministic,
    variance_markov_exact, variance_markov_mc, variance_realization)
from .evolution import (
    DensityMatrix, evolve_enumerated, evolve_factorized, evolve_recursive,
    hs_norm_trace, kick_unitary)
from .witness import (
    DeltaScan, WitnessCurve, delta_probe, delta_scan, gamma_kernel,
    hs_squared_quadrature, witness_curve)

logging.getLogger(__name__).addHandler(logging.NullHandler())

__title__ = "markovrotor"
__version__ = "0.1.0.dev1"

__all__ = [
    "DeltaScan", "DensityMatrix", "MarkovKickProcess", "Realization",
    "RotorParams", "TauSpec", "VarianceCurve", "WitnessCurve",
    "characteristic_fn", "delta_probe", "delta_scan", "enumerate_realizations",
    "evolve_enumerated", "evolve_factorized", "evolve_recursive",
    "gamma_kernel", "hs_norm_trace", "hs_squared_quadrature", "kick_unitary",
    "parse_tau_spec", "sample_chain", "variance_curve",
    "variance_deterministic", "variance_markov_exact", "variance_markov_mc",
    "variance_realization", "witness_curve"]

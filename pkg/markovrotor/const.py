#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module inherits constants for the stochastic kicked rotor.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import re

from collections import namedtuple

import attr

# Attr constants
ROTOR_ATTR_SETATTR = [attr.setters.validate, attr.setters.convert]

# Types for constants
TauKind = namedtuple("TauKind", ["name", "code"])
ExitCodes = namedtuple(
    "ExitCodes", ["ok", "io", "config", "convergence", "oracle"])

# Kinds of kick periods, tau = 2pi * multiplier
TAU_RATIONAL = TauKind(name="rational-2pi", code=0)
TAU_IRRATIONAL = TauKind(name="irrational-2pi", code=1)
VALID_TAU_KINDS = (TAU_RATIONAL, TAU_IRRATIONAL)

# tau specs accepted on the command line
TAU_SPEC_PATTERN = re.compile(
    r"^2pi(\*(sqrt\(?(?P<root>\d+(\.\d+)?)\)?"
    r"|(?P<decimal>\d*\.?\d+(e[-+]?\d+)?)))?$")

# Symbol probabilities of the kick process
SYMBOL_PROBABILITIES = (0.5, 0.5)

# Enumeration horizons (cost 2^N)
MAX_ENUMERATION_HORIZON = 20
MAX_EVOLUTION_HORIZON = 14

# Monte Carlo
MIN_TRIALS = 100

# Truncated momentum basis
N_MAX_BASE = 25
MIN_QUAD_POINTS = 64

# Quadrature of the Hilbert-Schmidt norm
DEFAULT_GRID = 256
MIN_GRID = 64
CONVERGENCE_TOLERANCE = 1e-6
TOL_MONO = 1e-8

# Positivity probe of the intertwining map
DEFAULT_SCAN_GRID = 512
MIN_SCAN_GRID = 128
EPS_SING = 1e-6
REGULAR_DENOMINATOR = 0.05
DEFAULT_SMEAR_EPS = 1e-3
SMEAR_POINTS = 32

# Density matrix container
DENSITY_MAGIC = b"MKRDM\x01"
DENSITY_HEADER_FORMAT = "<iiddBd"

# Command line
OUTPUT_DIR_ENV = "MARKOVROTOR_OUTPUT_DIR"
OUTPUT_FORMATS = ("csv", "json")
VARIANCE_MODES = ("exact", "mc")
EXIT_CODES = ExitCodes(ok=0, io=1, config=2, convergence=3, oracle=4)

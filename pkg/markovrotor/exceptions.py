#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module implements the errors raised by markovrotor.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""


class MarkovRotorError(Exception):
    """Define an error for the stochastic kicked rotor."""


class RotorParameterError(MarkovRotorError):
    """Define an error for parameters violating a precondition."""

    # pylint: disable=useless-super-delegation
    def __init__(self, message: str, *args, **kwargs) -> None:
        """Create a new instance."""
        super().__init__(message, *args, **kwargs)


class RotorHorizonError(RotorParameterError):
    """Define an error for horizons too large for enumeration."""


class RotorNumericalError(MarkovRotorError):
    """Define an error related to a numerical evaluation."""

    def __init__(
            self, message: str, quantity: str, *args, **kwargs) -> None:
        """Create a new instance."""
        self.quantity = quantity
        super().__init__(message, *args, **kwargs)


class RotorConvergenceError(RotorNumericalError):
    """Define an error for quadratures failing their refinement gate."""


class RotorSingularityError(RotorNumericalError):
    """Define an error for evaluations at a vanishing denominator."""


class RotorOracleError(MarkovRotorError):
    """Define an error for mismatches between independent evaluations."""

    # pylint: disable=useless-super-delegation
    def __init__(self, message: str, *args, **kwargs) -> None:
        """Create a new instance."""
        super().__init__(message, *args, **kwargs)


class RotorIOError(MarkovRotorError):
    """Define an error for reading or writing artifacts."""

    def __init__(self, message: str, path: str, *args, **kwargs) -> None:
        """Create a new instance."""
        self.path = path
        super().__init__(message, *args, **kwargs)

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module implements decorators shared by the markovrotor modules.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import logging

from functools import lru_cache, wraps
from typing import Callable

import numpy as np

from .exceptions import RotorIOError, RotorNumericalError

_LOGGER = logging.getLogger(__name__)


def handle_numerical_exceptions(func: Callable) -> Callable:
    """
    Handle floating point and linear algebra failures of a computation.

    The decorated function is evaluated with numpy raising on invalid
    operations and overflows. Errors are translated into
    RotorNumericalError carrying the function name as quantity.
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            with np.errstate(invalid="raise", over="raise"):
                return func(*args, **kwargs)
        except FloatingPointError as err:
            _LOGGER.debug(
                "Floating point error in %s", func.__name__, exc_info=True)
            raise RotorNumericalError(
                "FloatingPointError: {}".format(err), func.__name__) from err
        except np.linalg.LinAlgError as err:
            _LOGGER.debug(
                "Linear algebra error in %s", func.__name__, exc_info=True)
            raise RotorNumericalError(
                "LinAlgError: {}".format(err), func.__name__) from err

    return wrapper


def handle_io_exceptions(func: Callable) -> Callable:
    """
    Handle OS errors raised when reading or writing an artifact.

    The decorated function must either have the path as first argument or
    as "path" keyword argument.
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except OSError as err:
            path = kwargs.get("path", args[0] if args else None)
            _LOGGER.debug("OS error on path %s", path, exc_info=True)
            raise RotorIOError(
                "OSError: {}".format(err), str(path)) from err

    return wrapper


def readonly_lru_cache(maxsize: int = 32) -> Callable:
    """
    Decorate a pure array-valued function with an lru_cache.

    Cached arrays are shared between callers, thus they are returned with
    the writeable flag cleared. The cache is cleared if the function raises.
    """
    def decorator(func: Callable) -> Callable:
        @lru_cache(maxsize=maxsize)
        def cached(*args):
            res = func(*args)
            res.setflags(write=False)
            return res

        @wraps(func)
        def wrapper(*args):
            try:
                return cached(*args)
            except Exception as err:
                _LOGGER.debug("Exception %s raised, clearing cache", err)
                cached.cache_clear()
                raise

        wrapper.cache_info = cached.cache_info
        wrapper.cache_clear = cached.cache_clear
        return wrapper

    return decorator

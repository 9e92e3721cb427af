#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module implements the command line interface of markovrotor.

Exit codes: 0 ok, 1 I/O failure, 2 invalid configuration, 3 numerical
failure (quadrature not converged), 4 oracle mismatch.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import argparse
import logging
import math
import sys

from typing import Any, Callable, Dict, List, Optional

import attr

from . import __title__, __version__
from .artifacts import (
    dump_provenance, resolve_output_path, variance_table, witness_table,
    write_delta_scan, write_table)
from .const import (
    DEFAULT_GRID, DEFAULT_SCAN_GRID, EXIT_CODES, MIN_TRIALS, OUTPUT_FORMATS,
    ROTOR_ATTR_SETATTR, VARIANCE_MODES)
from .evolution import (
    DensityMatrix, default_n_max, evolve_recursive, hs_norm_trace,
    save_density_matrix)
from .exceptions import (
    MarkovRotorError, RotorIOError, RotorNumericalError, RotorOracleError,
    RotorParameterError)
from .foundation import RotorParams, parse_tau_spec, resolve_threads
from .markov import sample_chain, validate_memory
from .variance import variance_curve
from .verify import check_oracles, format_report, run_oracles
from .witness import delta_scan, witness_curve

_LOGGER = logging.getLogger(__name__)

SUBCOMMANDS = ("variance", "witness", "delta", "evolve", "sample", "verify")
DEFAULT_TAU = "2pi*sqrt2"


def tau_spec_validator(instance, attribute, value) -> None:
    """Validate a symbolic tau spec."""
    # pylint: disable=unused-argument
    parse_tau_spec(value)


def memory_or_none(instance, attribute, value) -> None:
    """Validate an optional memory parameter."""
    # pylint: disable=unused-argument
    if value is not None:
        validate_memory(value)


def positive_int(instance, attribute, value) -> None:
    """Validate a positive integer."""
    # pylint: disable=unused-argument
    if value < 1:
        raise RotorParameterError(
            "{} must be positive, got {}".format(attribute.name, value))


def non_negative_int(instance, attribute, value) -> None:
    """Validate a non-negative integer."""
    # pylint: disable=unused-argument
    if value < 0:
        raise RotorParameterError(
            "{} must not be negative, got {}".format(attribute.name, value))


def choice(values) -> Callable:
    """Return a validator accepting only the given values."""
    def validator(instance, attribute, value) -> None:
        # pylint: disable=unused-argument
        if value not in values:
            raise RotorParameterError(
                "{} must be one of {}, got {}".format(
                    attribute.name, ", ".join(values), value))
    return validator


def finite_or_none(instance, attribute, value) -> None:
    """Validate an optional finite float."""
    # pylint: disable=unused-argument
    if value is not None and not math.isfinite(value):
        raise RotorParameterError(
            "{} must be finite, got {}".format(attribute.name, value))


@attr.s(auto_attribs=True, on_setattr=ROTOR_ATTR_SETATTR)
class RunConfig:
    """Validated configuration of one command line run."""

    subcommand: str = attr.ib(validator=choice(SUBCOMMANDS))
    K: Optional[float] = attr.ib(
        converter=attr.converters.optional(float), validator=finite_or_none,
        default=None)
    tau_spec: str = attr.ib(
        converter=str, validator=tau_spec_validator, default=DEFAULT_TAU)
    a: Optional[float] = attr.ib(
        converter=attr.converters.optional(float), validator=memory_or_none,
        default=0.0)
    n_max: int = attr.ib(converter=int, validator=positive_int, default=1)
    basis_n_max: Optional[int] = attr.ib(
        converter=attr.converters.optional(int), default=None)
    grid: Optional[int] = attr.ib(
        converter=attr.converters.optional(int), default=None)
    mode: str = attr.ib(validator=choice(VARIANCE_MODES), default="exact")
    trials: int = attr.ib(converter=int, validator=positive_int, default=10000)
    seed: int = attr.ib(converter=int, validator=non_negative_int, default=0)
    index: int = attr.ib(converter=int, validator=non_negative_int, default=0)
    threads: int = attr.ib(
        converter=int, validator=non_negative_int, default=1)
    out_path: Optional[str] = attr.ib(default=None)
    fmt: str = attr.ib(validator=choice(OUTPUT_FORMATS), default="csv")
    perturb: float = attr.ib(converter=float, default=0.0)

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "RunConfig":
        """Create a config from parsed command line arguments."""
        values = {
            field.name: getattr(args, field.name)
            for field in attr.fields(cls) if hasattr(args, field.name)}
        if getattr(args, "deterministic", False):
            values["a"] = None
        try:
            return cls(**values)
        except (TypeError, ValueError) as err:
            raise RotorParameterError(
                "Invalid configuration: {}".format(err)) from err

    @property
    def params(self) -> RotorParams:
        """Return the rotor parameters."""
        if self.K is None:
            raise RotorParameterError(
                "--K is required for {}".format(self.subcommand))
        return RotorParams(K=self.K, tau=self.tau_spec)

    def output_path(self, stem: str) -> str:
        """Return the output file, named after stem if no --out is given."""
        extension = "bin" if self.subcommand == "evolve" else self.fmt
        return resolve_output_path(
            self.out_path, "{}.{}".format(stem, extension))

    def provenance(self, **extra: Any) -> Dict[str, Any]:
        """Return every parameter defining the output of this run."""
        record = {
            "program": __title__,
            "version": __version__,
            "command": self.subcommand,
            "a": self.a,
            "seed": self.seed}
        record.update(self.params.as_dict())
        record.update(extra)
        return record


def cmd_variance(config: RunConfig) -> int:
    """Write the variance curve."""
    curve = variance_curve(
        config.params, config.a, config.n_max, mode=config.mode,
        trials=config.trials, seed=config.seed, threads=config.threads)
    extra = {"N_max": config.n_max, "mode": config.mode}
    if config.mode == "mc":
        extra["trials"] = config.trials
    provenance = config.provenance(**extra)
    path = config.output_path("variance")
    write_table(path, variance_table(curve, provenance), config.fmt)
    print(dump_provenance(provenance))
    print("Wrote {} points to {}".format(len(curve.points), path))
    return EXIT_CODES.ok


def cmd_witness(config: RunConfig) -> int:
    """Write the HS norm curve and count monotonicity violations."""
    grid = config.grid or DEFAULT_GRID
    curve = witness_curve(
        config.params, config.a, config.n_max, grid=grid,
        threads=config.threads)
    provenance = config.provenance(
        N_max=config.n_max, grid=grid, tol_mono=curve.tol_mono)
    path = config.output_path("witness")
    write_table(path, witness_table(curve, provenance), config.fmt)
    print("violations: {}".format(len(curve.violations)))
    if curve.violations:
        print("violation at N: {}".format(
            " ".join(str(step) for step in curve.violations)))
    return EXIT_CODES.ok


def cmd_delta(config: RunConfig) -> int:
    """Write the Delta scan with its metadata."""
    grid = config.grid or DEFAULT_SCAN_GRID
    scan = delta_scan(config.params, config.a, grid, threads=config.threads)
    provenance = config.provenance(G=grid, eps_sing=scan.eps_sing)
    path = config.output_path("delta")
    meta_path = write_delta_scan(path, scan, provenance, config.fmt)
    print("min: {!r} at {} theta={}".format(
        scan.min_value, scan.argmin, scan.theta(scan.argmin)))
    print("regular min: {!r} at {}".format(
        scan.regular_min, scan.regular_argmin))
    print("Wrote {} and {}".format(path, meta_path))
    return EXIT_CODES.ok


def cmd_evolve(config: RunConfig) -> int:
    """Evolve |0><0| and write the density matrix container."""
    params = config.params
    basis = config.basis_n_max or default_n_max(params.K, config.n_max)
    rho = evolve_recursive(
        DensityMatrix.momentum_eigenstate(basis), params, config.a,
        config.n_max)
    path = config.output_path("rho")
    save_density_matrix(path, rho, params, config.a, config.n_max)
    print("trace: {!r}".format(rho.trace))
    print("hs_norm: {!r}".format(hs_norm_trace(rho)))
    print("Wrote {}".format(path))
    return EXIT_CODES.ok


def cmd_sample(config: RunConfig) -> int:
    """Print one sampled realization."""
    realization = sample_chain(
        config.a, config.n_max, config.seed, config.index)
    print(realization.to_text())
    return EXIT_CODES.ok


def cmd_verify(config: RunConfig) -> int:
    """Run the oracle suites and print the pass/fail table."""
    results = run_oracles(
        max_n=config.n_max, perturb=config.perturb, seed=config.seed,
        threads=config.threads)
    print(format_report(results))
    check_oracles(results)
    return EXIT_CODES.ok


COMMANDS = {
    "variance": cmd_variance,
    "witness": cmd_witness,
    "delta": cmd_delta,
    "evolve": cmd_evolve,
    "sample": cmd_sample,
    "verify": cmd_verify}


def _add_rotor_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--K", type=float, required=True, help="kick strength")
    parser.add_argument(
        "--tau", dest="tau_spec", default=DEFAULT_TAU,
        help="kick period: 2pi, 2pi*sqrtR or 2pi*<decimal> (default: "
        "%(default)s)")
    parser.add_argument(
        "--a", type=float, default=0.0, help="memory parameter in [0, 1]")


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--threads", type=int, default=1, help="worker threads, 0 = all cores")
    parser.add_argument(
        "--out", dest="out_path", help="output file; bare names go to "
        "$MARKOVROTOR_OUTPUT_DIR if set")
    parser.add_argument(
        "--format", dest="fmt", choices=OUTPUT_FORMATS, default="csv")


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with all subcommands."""
    parser = argparse.ArgumentParser(
        prog=__title__,
        description="Quantum linear kicked rotor with Markovian kicks.")
    parser.add_argument(
        "--version", action="version",
        version="%(prog)s {}".format(__version__))
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    variance = subparsers.add_parser(
        "variance", help="angular momentum variance curve")
    _add_rotor_arguments(variance)
    variance.add_argument(
        "--deterministic", action="store_true",
        help="every kick on, ignores --a")
    variance.add_argument("--N-max", dest="n_max", type=int, default=500)
    variance.add_argument("--mode", choices=VARIANCE_MODES, default="exact")
    variance.add_argument(
        "--trials", type=int, default=10000,
        help="Monte Carlo trials, at least {}".format(MIN_TRIALS))
    variance.add_argument("--seed", type=int, default=0)
    _add_output_arguments(variance)

    witness = subparsers.add_parser(
        "witness", help="Hilbert-Schmidt norm witness curve")
    _add_rotor_arguments(witness)
    witness.add_argument("--N-max", dest="n_max", type=int, default=40)
    witness.add_argument("--grid", type=int, default=DEFAULT_GRID)
    _add_output_arguments(witness)

    delta = subparsers.add_parser(
        "delta", help="positivity probe of the intertwining map")
    _add_rotor_arguments(delta)
    delta.add_argument("--grid", type=int, default=DEFAULT_SCAN_GRID)
    _add_output_arguments(delta)

    evolve = subparsers.add_parser(
        "evolve", help="evolve |0><0| and store the density matrix")
    _add_rotor_arguments(evolve)
    evolve.add_argument("--N", dest="n_max", type=int, default=10)
    evolve.add_argument(
        "--n-max", dest="basis_n_max", type=int,
        help="momentum truncation (default: from K and N)")
    evolve.add_argument("--out", dest="out_path")

    sample = subparsers.add_parser(
        "sample", help="print one realization of the kick process")
    sample.add_argument("--a", type=float, default=0.0)
    sample.add_argument("--N", dest="n_max", type=int, default=20)
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--index", type=int, default=0)

    verify = subparsers.add_parser("verify", help="run the oracle suites")
    verify.add_argument("--max-N", dest="n_max", type=int, default=12)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--threads", type=int, default=1)
    verify.add_argument("--perturb", type=float, default=0.0,
                        help=argparse.SUPPRESS)
    return parser


def exit_code(err: MarkovRotorError) -> int:
    """Return the exit code of an error."""
    if isinstance(err, RotorIOError):
        return EXIT_CODES.io
    if isinstance(err, RotorParameterError):
        return EXIT_CODES.config
    if isinstance(err, RotorNumericalError):
        return EXIT_CODES.convergence
    if isinstance(err, RotorOracleError):
        return EXIT_CODES.oracle
    return EXIT_CODES.config


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line interface and return the exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        config = RunConfig.from_namespace(args)
        resolve_threads(config.threads)
        return COMMANDS[config.subcommand](config)
    except MarkovRotorError as err:
        _LOGGER.debug("%s failed", args.subcommand, exc_info=True)
        print("{}: error: {}".format(__title__, err), file=sys.stderr)
        return exit_code(err)

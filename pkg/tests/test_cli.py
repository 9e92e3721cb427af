#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module covers the tests of the command line interface and artifacts.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import math

import numpy as np
import pytest

from markovrotor.artifacts import (
    Table, format_value, parse_value, read_csv, read_metadata, read_table,
    resolve_output_path, table_matrix, write_csv, write_json)
from markovrotor.cli import RunConfig, build_parser, main
from markovrotor.const import OUTPUT_DIR_ENV
from markovrotor.evolution import load_density_matrix
from markovrotor.exceptions import RotorIOError, RotorParameterError
from markovrotor.foundation import RotorParams
from markovrotor.markov import Realization
from markovrotor.variance import variance_curve
from markovrotor.verify import evolution_suite
from markovrotor.witness import delta_scan

ROTOR = ["--K", "3", "--tau", "2pi*sqrt2"]


class TestArtifacts:
    """Test case for result files."""

    @pytest.mark.parametrize("value,text", [
        (3, "3"), (True, "1"), (0.1, "0.1"), (1 / 3, "0.3333333333333333"),
        (float("nan"), "nan"), (None, ""), ("2pi", "2pi")])
    def test_format_value(self, value, text):
        """Test the cell formatting."""
        assert format_value(value) == text

    def test_parse_value(self):
        """Test that cells are parsed back to numbers."""
        assert parse_value("3") == 3
        assert parse_value("0.3333333333333333") == 1 / 3
        assert math.isnan(parse_value("nan"))
        assert parse_value("") is None
        assert parse_value("abc") == "abc"

    @pytest.mark.parametrize("writer,fmt", [
        (write_csv, "csv"), (write_json, "json")])
    def test_round_trip(self, tmp_path, writer, fmt):
        """Test that tables are read back bit-exactly."""
        values = np.random.default_rng(1).normal(size=20)
        table = Table(
            provenance={"K": 3.0, "tau": "2pi*sqrt2"},
            columns=("N", "value"),
            rows=[(index, value) for index, value in enumerate(values)])
        path = str(tmp_path / "table.{}".format(fmt))
        writer(path, table)
        loaded = read_table(path, fmt)
        assert loaded.provenance == table.provenance
        assert loaded.columns == table.columns
        np.testing.assert_array_equal(loaded.column("value"), values)
        assert loaded.column("N") == list(range(20))

    def test_missing_provenance(self, tmp_path):
        """Test that CSV files need their provenance line."""
        path = tmp_path / "plain.csv"
        path.write_text("N,value\n1,2.0\n")
        with pytest.raises(RotorIOError):
            read_csv(str(path))

    def test_unknown_column(self):
        """Test that unknown columns are reported."""
        table = Table(provenance={}, columns=("N",), rows=[(1,)])
        with pytest.raises(RotorParameterError):
            table.column("value")

    def test_output_directory(self, monkeypatch, tmp_path):
        """Test the output directory environment variable."""
        monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
        assert resolve_output_path(None, "out.csv") == str(
            tmp_path / "out.csv")
        assert resolve_output_path("sub/x.csv", "out.csv") == "sub/x.csv"
        monkeypatch.delenv(OUTPUT_DIR_ENV)
        assert resolve_output_path("x.csv", "out.csv") == "x.csv"


class TestRunConfig:
    """Test case for the run configuration."""

    def test_from_arguments(self):
        """Test that parsed arguments map to a validated config."""
        args = build_parser().parse_args(
            ["variance"] + ROTOR + ["--a", "0.5", "--N-max", "20"])
        config = RunConfig.from_namespace(args)
        assert config.params == RotorParams(K=3.0, tau="2pi*sqrt2")
        assert config.a == 0.5
        assert config.n_max == 20
        assert config.output_path("variance") == "variance.csv"

    def test_deterministic(self):
        """Test that --deterministic drops the memory parameter."""
        args = build_parser().parse_args(
            ["variance"] + ROTOR + ["--deterministic"])
        assert RunConfig.from_namespace(args).a is None

    def test_validated_on_set(self):
        """Test that changing a field is validated."""
        config = RunConfig(subcommand="witness", K=3.0)
        with pytest.raises(RotorParameterError):
            config.a = 2.0
        with pytest.raises(RotorParameterError):
            config.tau_spec = "3pi"
        config.tau_spec = "2pi*0.5"
        assert config.params.tau.value == pytest.approx(math.pi)


class TestCommands:
    """Test case for the subcommands."""

    def test_variance(self, tmp_path, capsys):
        """Test the variance curve of the memoryless process."""
        path = str(tmp_path / "variance.csv")
        code = main(
            ["variance"] + ROTOR + ["--a", "0", "--N-max", "500", "--out",
                                    path])
        assert code == 0
        table = read_csv(path)
        assert len(table.rows) == 500
        assert table.provenance["K"] == 3.0
        assert table.provenance["tau"] == "2pi*sqrt2"
        assert table.provenance["tau_kind"] == "irrational-2pi"
        expected = variance_curve(RotorParams(K=3.0, tau="2pi*sqrt2"), 0.0,
                                  500).values
        np.testing.assert_array_equal(table.column("variance"), expected)
        assert '"command":"variance"' in capsys.readouterr().out

    def test_exact_variance_columns(self, tmp_path):
        """Test that exact curves keep an empty stderr column."""
        path = str(tmp_path / "variance.csv")
        assert main(
            ["variance"] + ROTOR + ["--N-max", "5", "--out", path]) == 0
        table = read_csv(path)
        assert table.columns == ("N", "variance", "stderr")
        assert table.column("stderr") == [None] * 5

    def test_mc_variance_columns(self, tmp_path):
        """Test that Monte Carlo curves fill the stderr column."""
        path = str(tmp_path / "variance.csv")
        assert main(
            ["variance"] + ROTOR + ["--a", "0.5", "--N-max", "5", "--mode",
                                    "mc", "--trials", "200", "--out",
                                    path]) == 0
        table = read_csv(path)
        assert table.columns == ("N", "variance", "stderr")
        assert all(err > 0 for err in table.column("stderr"))

    def test_resonant_variance(self, tmp_path):
        """Test the quadratic growth column at tau = 2pi."""
        path = str(tmp_path / "variance.json")
        assert main(
            ["variance", "--K", "3", "--tau", "2pi", "--deterministic",
             "--N-max", "50", "--format", "json", "--out", path]) == 0
        table = read_table(path, "json")
        steps = np.array(table.column("N"))
        np.testing.assert_array_equal(
            table.column("variance"), 4.5 * steps ** 2)
        assert table.provenance["a"] is None

    def test_reproducible_files(self, tmp_path):
        """Test that identical runs write identical files."""
        paths = [str(tmp_path / "run{}.csv".format(i)) for i in range(2)]
        for path in paths:
            assert main(
                ["variance"] + ROTOR + ["--a", "0.5", "--N-max", "30",
                                        "--mode", "mc", "--trials", "500",
                                        "--seed", "9", "--out", path]) == 0
        with open(paths[0], "rb") as first, open(paths[1], "rb") as second:
            assert first.read() == second.read()

    def test_missing_strength(self):
        """Test that --K is required."""
        with pytest.raises(SystemExit) as err:
            main(["variance", "--tau", "2pi"])
        assert err.value.code == 2

    @pytest.mark.parametrize("arguments", [
        ["variance", "--K", "3", "--tau", "3pi"],
        ["variance", "--K", "3", "--a", "1.5"],
        ["variance", "--K", "3", "--deterministic", "--mode", "mc"],
        ["variance", "--K", "3", "--mode", "mc", "--trials", "10"],
        ["delta", "--K", "3", "--grid", "100"],
        ["witness", "--K", "3", "--N-max", "1"]])
    def test_invalid_configuration(self, tmp_path, monkeypatch, arguments):
        """Test exit code 2 for invalid configurations."""
        monkeypatch.chdir(tmp_path)
        assert main(arguments) == 2

    def test_io_failure(self, tmp_path):
        """Test exit code 1 if the output cannot be written."""
        path = str(tmp_path / "missing" / "variance.csv")
        assert main(
            ["variance"] + ROTOR + ["--N-max", "5", "--out", path]) == 1

    def test_witness(self, tmp_path, capsys):
        """Test the memoryless witness curve."""
        path = str(tmp_path / "witness.csv")
        assert main(
            ["witness"] + ROTOR + ["--a", "0", "--N-max", "40", "--out",
                                   path]) == 0
        assert "violations: 0" in capsys.readouterr().out
        table = read_csv(path)
        assert table.columns == ("N", "hs_squared", "discrepancy",
                                 "violation")
        assert sum(table.column("violation")) == 0

    def test_witness_without_kicks(self, tmp_path):
        """Test that K=0 gives hs_squared = 1."""
        path = str(tmp_path / "witness.csv")
        assert main(
            ["witness", "--K", "0", "--N-max", "5", "--grid", "64", "--out",
             path]) == 0
        np.testing.assert_allclose(
            read_csv(path).column("hs_squared"), 1.0, atol=1e-14)

    def test_witness_not_converged(self, tmp_path, monkeypatch):
        """Test exit code 3 if the quadrature fails its gate."""
        monkeypatch.chdir(tmp_path)
        assert main(
            ["witness", "--K", "40", "--a", "0.5", "--N-max", "6",
             "--grid", "64"]) == 3

    def test_delta(self, tmp_path, capsys):
        """Test the Delta scan with its sidecar."""
        path = str(tmp_path / "delta.csv")
        assert main(
            ["delta"] + ROTOR + ["--a", "0.1", "--grid", "256", "--out",
                                 path]) == 0
        out = capsys.readouterr().out
        assert out.startswith("min: -")
        metadata = read_metadata(path + ".meta.json")
        assert metadata["min"] < 0
        assert metadata["G"] == 256
        scan = delta_scan(RotorParams(K=3.0, tau="2pi*sqrt2"), 0.1, 256)
        assert metadata["argmin"] == list(scan.argmin)
        np.testing.assert_array_equal(
            table_matrix(read_csv(path)), scan.values)

    def test_evolve(self, tmp_path, capsys):
        """Test that the evolved state is stored."""
        path = str(tmp_path / "rho.bin")
        assert main(
            ["evolve"] + ROTOR + ["--a", "0.5", "--N", "4", "--out",
                                  path]) == 0
        rho, header = load_density_matrix(path)
        assert header["N"] == 4
        assert rho.trace == pytest.approx(1.0, abs=1e-10)
        assert "trace: " in capsys.readouterr().out

    def test_sample(self, capsys):
        """Test that a realization is printed in its text form."""
        assert main(["sample", "--a", "1", "--N", "12", "--seed", "3"]) == 0
        real = Realization.from_text(capsys.readouterr().out)
        assert len(real) == 12
        assert len(set(real.bits)) == 1
        assert real.probability == 0.5

    def test_verify(self, capsys):
        """Test that the oracle suites pass."""
        assert main(["verify", "--max-N", "4"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        for suite in ("characteristic", "variance", "evolution", "hs_norm",
                      "delta"):
            assert suite in out

    def test_evolution_oracle_horizon(self):
        """Test that enumeration is compared up to twelve kicks."""
        result = evolution_suite(12, 0.0)
        assert result.cases == 12 + 6
        assert result.passed

    def test_verify_negative_control(self, capsys):
        """Test that a perturbed oracle is reported."""
        assert main(["verify", "--max-N", "3", "--perturb", "1e-3"]) == 4
        assert "FAIL" in capsys.readouterr().out

    def test_output_directory(self, tmp_path, monkeypatch):
        """Test that bare output names go to the output directory."""
        monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
        assert main(
            ["variance"] + ROTOR + ["--N-max", "5", "--out", "v.csv"]) == 0
        assert (tmp_path / "v.csv").exists()

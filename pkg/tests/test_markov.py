#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
This module covers the tests of the Markov kick process.

:copyright: (c) 2026 by the markovrotor authors.
:license: MIT, see LICENSE for more details.
"""

import numpy as np
import pytest

from markovrotor.exceptions import RotorHorizonError, RotorParameterError
from markovrotor.markov import (
    MarkovKickProcess, Realization, all_bit_strings, all_probabilities,
    chain_probability, characteristic_fn, characteristic_fn_enumerated,
    enumerate_realizations, sample_chain, second_moment, transition_matrix,
    transition_power, trajectory_rng)


class TestTransitions:
    """Test case for the transition matrix of the kick process."""

    @pytest.mark.parametrize("a,expected", [
        (0.0, [[0.5, 0.5], [0.5, 0.5]]),
        (1.0, [[1.0, 0.0], [0.0, 1.0]]),
        (0.5, [[0.75, 0.25], [0.25, 0.75]])])
    def test_transition_matrix(self, a, expected):
        """Test the transition matrix at characteristic memories."""
        np.testing.assert_allclose(transition_matrix(a), expected, atol=1e-15)

    @pytest.mark.parametrize("a", np.linspace(0.0, 1.0, 11))
    def test_stochastic_and_stationary(self, a):
        """Test that columns sum to 1 and (1/2, 1/2) is stationary."""
        trans = transition_matrix(a)
        np.testing.assert_allclose(trans.sum(axis=0), 1.0, atol=1e-15)
        assert np.all((trans >= 0.0) & (trans <= 1.0))
        np.testing.assert_allclose(trans @ [0.5, 0.5], [0.5, 0.5], atol=1e-15)

    @pytest.mark.parametrize("a", [-0.1, 1.5, float("nan")])
    def test_invalid_memory(self, a):
        """Test that memories outside [0, 1] are rejected."""
        with pytest.raises(RotorParameterError):
            transition_matrix(a)

    def test_transition_power_examples(self):
        """Test the closed form powers of the transition matrix."""
        np.testing.assert_allclose(
            transition_power(0.5, 2), [[0.625, 0.375], [0.375, 0.625]],
            atol=1e-15)
        np.testing.assert_array_equal(transition_power(0.3, 0), np.eye(2))
        np.testing.assert_array_equal(transition_power(1.0, 7), np.eye(2))

    @pytest.mark.parametrize("a", [0.0, 0.25, 0.9, 1.0])
    def test_transition_power_matches_product(self, a):
        """Test that T^n equals the n-fold matrix product."""
        trans = transition_matrix(a)
        product = np.eye(2)
        for n in range(65):
            np.testing.assert_allclose(
                transition_power(a, n), product, atol=1e-12)
            product = trans @ product

    @pytest.mark.parametrize("a,j,k,expected", [
        (0.3, 4, 4, 0.5),
        (0.5, 1, 3, 0.3125),
        (0.0, 2, 5, 0.25),
        (0.0, 5, 2, 0.25)])
    def test_second_moment(self, a, j, k, expected):
        """Test <x_j x_k> = (1 + a^|k-j|) / 4."""
        assert second_moment(a, j, k) == pytest.approx(expected, abs=1e-15)

    def test_second_moment_by_enumeration(self):
        """Test <x_1 x_3> at a=0.5 against all chains of length 3."""
        bits = all_bit_strings(3)
        probs = all_probabilities(0.5, bits)
        assert np.dot(probs, bits[:, 0] * bits[:, 2]) == pytest.approx(
            0.3125, abs=1e-15)

    def test_covariance(self):
        """Test that the covariance decays as a^|k-j| / 4."""
        process = MarkovKickProcess(a=0.6)
        assert process.covariance(2, 5) == pytest.approx(0.6 ** 3 / 4)


class TestRealizations:
    """Test case for realizations and their probabilities."""

    @pytest.mark.parametrize("a", np.linspace(0.0, 1.0, 11))
    @pytest.mark.parametrize("horizon", [1, 5, 12])
    def test_probability_conservation(self, a, horizon):
        """Test that probabilities of all realizations sum to 1."""
        probs = all_probabilities(a, all_bit_strings(horizon))
        assert probs.sum() == pytest.approx(1.0, abs=1e-12)

    def test_stationary_marginal(self):
        """Test that the marginal of x_2 is (1/2, 1/2)."""
        bits = all_bit_strings(2)
        probs = all_probabilities(0.37, bits)
        assert probs[bits[:, 1] == 0].sum() == pytest.approx(0.5, abs=1e-15)

    def test_chain_probability(self):
        """Test the chain product for an explicit realization."""
        # 1/2 * T[1,0] * T[1,1] * T[0,1] at a=0.5
        expected = 0.5 * 0.25 * 0.75 * 0.25
        assert chain_probability(0.5, [0, 1, 1, 0]) == pytest.approx(expected)

    def test_enumerate_realizations(self):
        """Test enumeration order and probabilities."""
        realizations = list(enumerate_realizations(0.0, 3))
        assert len(realizations) == 8
        assert realizations[0].bits == (0, 0, 0)
        assert realizations[-1].bits == (1, 1, 1)
        assert all(
            real.probability == pytest.approx(0.125)
            for real in realizations)

    def test_enumeration_limit(self):
        """Test that huge horizons are refused."""
        with pytest.raises(RotorHorizonError):
            all_bit_strings(21)

    def test_text_form(self):
        """Test the compact text form of a realization."""
        real = Realization(bits="0110", probability=0.0625)
        assert real.to_text() == "0110 p=0.0625"
        assert Realization.from_text(real.to_text()) == real
        assert len(real) == 4

    @pytest.mark.parametrize("text", ["0120 p=0.5", "0110", "0110 q=0.5", ""])
    def test_invalid_text(self, text):
        """Test that malformed realization texts are rejected."""
        with pytest.raises(RotorParameterError):
            Realization.from_text(text)


class TestSampling:
    """Test case for sampling realizations of the kick process."""

    def test_reproducible(self):
        """Test that a seed and trajectory index fix the realization."""
        first = sample_chain(0.4, 50, seed=7, index=3)
        assert first == sample_chain(0.4, 50, seed=7, index=3)
        assert first != sample_chain(0.4, 50, seed=7, index=4)

    def test_stream_splitting(self):
        """Test that trajectory streams are independent of each other."""
        first = trajectory_rng(1, 0).random(4)
        second = trajectory_rng(1, 1).random(4)
        np.testing.assert_array_equal(first, trajectory_rng(1, 0).random(4))
        assert not np.array_equal(first, second)

    @pytest.mark.parametrize("seed", range(8))
    def test_full_memory_is_frozen(self, seed):
        """Test that a=1 repeats the first symbol."""
        bits = sample_chain(1.0, 200, seed=seed).as_array()
        assert np.all(bits == bits[0])

    def test_bernoulli_mean(self):
        """Test the empirical mean of a long memoryless chain."""
        bits = sample_chain(0.0, 100000, seed=11).as_array()
        assert abs(bits.mean() - 0.5) < 3 * 0.5 / np.sqrt(1e5)

    def test_lag_one_correlation(self):
        """Test the empirical lag-1 covariance a / 4 of a long chain."""
        bits = sample_chain(0.8, 100000, seed=5).as_array().astype(float)
        cov = (
            np.mean(bits[1:] * bits[:-1])
            - bits[1:].mean() * bits[:-1].mean())
        assert cov == pytest.approx(0.2, abs=0.02)


class TestCharacteristicFunction:
    """Test case for the characteristic function of the kick process."""

    @pytest.mark.parametrize("seed", range(100))
    def test_transfer_matrix_matches_enumeration(self, seed):
        """Test transfer matrices against enumeration of all realizations."""
        rng = np.random.default_rng(seed)
        horizon = int(rng.integers(1, 13))
        a = float(rng.random())
        u = rng.uniform(-5.0, 5.0, horizon)
        assert abs(characteristic_fn(a, u)
                   - characteristic_fn_enumerated(a, u)) < 1e-12

    @pytest.mark.parametrize("a", [0.0, 0.3, 1.0])
    def test_zero_phases(self, a):
        """Test normalization Lambda_N(0) = 1."""
        assert characteristic_fn(a, np.zeros(9)) == pytest.approx(1.0)
        assert characteristic_fn_enumerated(a, np.zeros(9)) == pytest.approx(
            1.0)

    @pytest.mark.parametrize("a", [0.0, 0.5, 1.0])
    def test_single_kick(self, a):
        """Test Lambda_1(u) = (1 + exp(-iu)) / 2 for any memory."""
        assert characteristic_fn(a, [1.3]) == pytest.approx(
            (1 + np.exp(-1.3j)) / 2, abs=1e-15)

    def test_full_memory(self):
        """Test that only the constant chains survive at a=1."""
        assert characteristic_fn(1.0, [0.4, 1.1]) == pytest.approx(
            (1 + np.exp(-1.5j)) / 2, abs=1e-15)

    def test_memoryless_factorization(self):
        """Test the product form at a=0."""
        u = np.random.default_rng(3).uniform(-4.0, 4.0, 10)
        expected = np.prod((1 + np.exp(-1j * u)) / 2)
        assert abs(characteristic_fn(0.0, u) - expected) < 1e-12
        assert abs(characteristic_fn(0.0, [np.pi] * 3)) < 1e-15

    def test_bounded_and_hermitian(self):
        """Test |Lambda| <= 1 and Lambda(-u) = conj(Lambda(u))."""
        rng = np.random.default_rng(9)
        u = rng.uniform(-10.0, 10.0, (8, 10000))
        values = characteristic_fn(0.7, u)
        assert values.shape == (10000,)
        assert np.all(np.abs(values) <= 1.0 + 1e-12)
        np.testing.assert_allclose(
            characteristic_fn(0.7, -u), values.conj(), atol=1e-14)

    def test_empty_phases(self):
        """Test that an empty phase vector is rejected."""
        with pytest.raises(RotorParameterError):
            characteristic_fn(0.5, [])

"""Squeezing factors: minimum-uncertainty anchors, natural-regime collapse,
inversion readout identities and variance floors.

The T = 0 zeros of the l = 1 factors are exact analytically; numerically
they carry the truncation tail (epsilon = 1e-12 weighted by photon
numbers) plus rounding of ~625-sized cancellations, so they are asserted
relative to the cancelled magnitude rather than at a fixed 1e-12.
"""

from __future__ import annotations

import numpy as np
import pytest

from tjcm.core import ModelConfig
from tjcm.dynamics import atomic_inversion, evolve, mean_photon, moment_generic
from tjcm.dynamics import PAIR_NUM
from tjcm.errors import ConfigError
from tjcm.squeezing import (difference_squeezing, natural_conditions_hold,
                            pair_conditions_hold, single_mode_squeezing,
                            sum_squeezing, two_mode_squeezing)

SAMPLE_T = np.linspace(0.0, 12.0, 50)


class TestCoherentAnchors:
    """Initial coherent states are minimum-uncertainty: factors start at 0."""

    def test_single_mode_zero(self, cfg11):
        r = single_mode_squeezing(cfg11, 0.0, 1)
        assert r.s_factor == pytest.approx(0.0, abs=50 * 1e-12)
        assert r.q_factor == pytest.approx(0.0, abs=50 * 1e-12)

    def test_two_mode_zero(self, cfg11):
        r = two_mode_squeezing(cfg11, 0.0)
        assert r.s_factor == pytest.approx(0.0, abs=100 * 1e-12)
        assert r.q_factor == pytest.approx(0.0, abs=100 * 1e-12)

    def test_sum_zero(self, cfg11):
        r = sum_squeezing(cfg11, 0.0)
        assert r.s_factor == pytest.approx(0.0, abs=1250 * 1e-12)
        assert r.q_factor == pytest.approx(0.0, abs=1250 * 1e-12)

    def test_difference_anchor(self, cfg11):
        # alpha^4 + alpha^4 + alpha^2 - 2 alpha^4 leaves alpha^2
        r = difference_squeezing(cfg11, 0.0)
        assert r.s_factor == pytest.approx(25.0, abs=1e-8)
        assert r.q_factor == pytest.approx(25.0, abs=1e-8)


class TestNaturalRegime:
    def test_conditions_by_spacing(self, cfg11, cfg_l3):
        assert natural_conditions_hold(cfg_l3, SAMPLE_T) == (True, True)
        assert natural_conditions_hold(cfg11, [0.0]) == (False, False)

    def test_spacing_two_fails(self):
        cfg = ModelConfig(k1=1, k2=1, l1=2, l2=2, alpha1=5.0, alpha2=5.0)
        assert natural_conditions_hold(cfg, [0.0]) == (False, False)

    def test_spacing_four_passes(self):
        cfg = ModelConfig(k1=1, k2=1, l1=4, l2=4, alpha1=3.0, alpha2=3.0)
        assert natural_conditions_hold(cfg, SAMPLE_T) == (True, True)

    def test_mixed_modes(self):
        cfg = ModelConfig(k1=1, k2=1, l1=3, l2=1, alpha1=5.0, alpha2=5.0)
        assert natural_conditions_hold(cfg, [0.0, 2.0]) == (True, False)
        assert pair_conditions_hold(cfg, [0.0, 2.0])

    def test_initial_factor_is_mean_photon(self, cfg_l3):
        r = single_mode_squeezing(cfg_l3, 0.0, 1)
        assert r.s_factor == pytest.approx(75.0, abs=1e-8)
        assert r.q_factor == pytest.approx(75.0, abs=1e-8)

    def test_two_mode_reduces_to_mean_sum(self, cfg_l3):
        for T in (0.0, 3.3):
            r = two_mode_squeezing(cfg_l3, T)
            target = mean_photon(cfg_l3, T, 1) + mean_photon(cfg_l3, T, 2)
            assert r.s_factor == pytest.approx(target, abs=1e-9)
            assert r.q_factor == pytest.approx(target, abs=1e-9)

    def test_sum_reduces_to_pair_number(self, cfg_l3):
        for T in (0.0, 1.1, 6.9):
            r = sum_squeezing(cfg_l3, T)
            pair = moment_generic(evolve(cfg_l3, T), PAIR_NUM).real
            assert r.s_factor == pytest.approx(pair, abs=1e-9)
            assert r.q_factor == pytest.approx(pair, abs=1e-9)

    def test_single_collapses_to_mean_photon(self, cfg_l3):
        for T in np.linspace(0.0, 8.0, 7):
            r = single_mode_squeezing(cfg_l3, float(T), 1)
            target = mean_photon(cfg_l3, float(T), 1)
            assert r.s_factor == pytest.approx(target, abs=1e-9)
            assert r.q_factor == pytest.approx(target, abs=1e-9)


class TestReadoutIdentities:
    """Inversion readout from squeezing under the natural conditions."""

    def test_single_mode_readout(self, cfg_l3):
        n0 = mean_photon(cfg_l3, 0.0, 1)
        for T in np.linspace(0.0, 10.0, 21):
            s = single_mode_squeezing(cfg_l3, float(T), 1).s_factor
            assert 2 * n0 + 1 - 2 * s == pytest.approx(
                atomic_inversion(cfg_l3, float(T)), abs=1e-9)

    def test_two_mode_readout(self, cfg_l3):
        total0 = mean_photon(cfg_l3, 0.0, 1) + mean_photon(cfg_l3, 0.0, 2)
        for T in np.linspace(0.0, 10.0, 21):
            s2 = two_mode_squeezing(cfg_l3, float(T)).s_factor
            assert total0 + 1 - s2 == pytest.approx(
                atomic_inversion(cfg_l3, float(T)), abs=1e-9)


class TestFloorsAndPreconditions:
    @pytest.mark.parametrize("mode", [1, 2])
    def test_single_mode_floor(self, cfg31, mode):
        for T in np.linspace(0.0, 20.0, 41):
            r = single_mode_squeezing(cfg31, float(T), mode)
            assert r.s_factor >= -0.5 - 1e-12
            assert r.q_factor >= -0.5 - 1e-12

    def test_two_mode_floor(self, cfg22):
        for T in np.linspace(0.0, 15.0, 31):
            r = two_mode_squeezing(cfg22, float(T))
            assert r.s_factor >= -1.0 - 1e-12
            assert r.q_factor >= -1.0 - 1e-12

    def test_sum_commutator_mean(self, cfg11):
        r = sum_squeezing(cfg11, 0.0)
        assert r.commutator_mean == pytest.approx(51.0, abs=1e-9)

    def test_difference_commutator_mean_symmetric(self, cfg11):
        assert difference_squeezing(cfg11, 0.0).commutator_mean == \
            pytest.approx(0.0, abs=1e-9)

    def test_difference_rejects_asymmetric(self):
        cfg = ModelConfig(k1=1, k2=1, alpha1=5.0, alpha2=4.0)
        with pytest.raises(ConfigError, match="alpha1 == alpha2"):
            difference_squeezing(cfg, 0.0)
        cfg = ModelConfig(k1=1, k2=1, l1=3, l2=1, alpha1=5.0, alpha2=5.0)
        with pytest.raises(ConfigError, match="l1 == l2"):
            difference_squeezing(cfg, 0.0)

    def test_report_quadrature_accessor(self, cfg11):
        r = single_mode_squeezing(cfg11, 1.0, 1)
        assert r.factor("X") == r.s_factor
        assert r.factor("Y") == r.q_factor
        with pytest.raises(ValueError):
            r.factor("Z")

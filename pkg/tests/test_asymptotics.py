"""Strong-field asymptotics: algebraic identities, limits, classification.

Groups:
 1. the gap-ratio quotient vs its printed exact rearrangement (identity)
 2. closed-form limits and convergence of the exact ratios toward them
 3. the joint ratio: eight-term expansion, factored check, limit 2
 4. the (2, 2) frequency gap and its 1/n convergence
 5. the intensity-independence classifier (k1 + k2 = 4 exactly)
 6. surrogate cosine sums vs the exact moments
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from tjcm.asymptotics import (approx_mode1_squared, approx_pair_squared,
                              gap_ratio, gap_ratio_expanded, gap_ratio_limit,
                              joint_gap_ratio, joint_gap_ratio_limit,
                              joint_gap_ratio_limit_factored, rcp_pairs,
                              shift2_gap, shift22_gap)
from tjcm.analysis import detect_revivals
from tjcm.core import ModelConfig
from tjcm.dynamics import MomentOrder, evolve, moment_generic, series


def _cfg(k1, k2, alpha=5.0):
    return ModelConfig(k1=k1, k2=k2, alpha1=alpha, alpha2=alpha)


class TestGapRatioIdentity:
    @pytest.mark.parametrize("k1,k2", [(1, 1), (2, 1), (3, 1), (2, 2),
                                       (1, 3), (4, 2)])
    def test_quotient_equals_expansion(self, k1, k2):
        cfg = _cfg(k1, k2)
        for n in range(0, 51, 5):
            for m in range(0, 51, 5):
                assert gap_ratio(n, m, cfg) == pytest.approx(
                    gap_ratio_expanded(n, m, cfg), abs=1e-10, rel=1e-10)

    def test_unit_case_anchor(self):
        assert gap_ratio(0, 0, _cfg(1, 1)) == pytest.approx(
            (math.sqrt(3) - 1) / 2, abs=1e-14)


class TestGapRatioLimits:
    def test_closed_form_values(self):
        assert gap_ratio_limit(_cfg(3, 1), 10.0, 10.0) == 1.5
        assert gap_ratio_limit(_cfg(1, 3), 7.0, 7.0) == 0.5
        assert gap_ratio_limit(_cfg(2, 2), 123.0, 123.0) == 1.0

    def test_exact_reaches_limit(self):
        n = 10_000
        assert gap_ratio(n, n, _cfg(3, 1)) == pytest.approx(1.5, rel=1e-3)
        assert gap_ratio(n, n, _cfg(1, 3)) == pytest.approx(0.5, rel=1e-3)
        assert gap_ratio(n, n, _cfg(2, 2)) == pytest.approx(1.0, rel=1e-3)

    def test_intensity_dependence_off_diagonal(self):
        # (2, 1): exponents do not cancel, the limit keeps an nbar factor
        v25 = gap_ratio_limit(_cfg(2, 1), 25.0, 25.0)
        v100 = gap_ratio_limit(_cfg(2, 1), 100.0, 100.0)
        assert v100 / v25 == pytest.approx(0.5, rel=1e-12)

    @pytest.mark.parametrize("k1,k2", [(3, 1), (1, 3), (2, 2)])
    def test_monotone_convergence(self, k1, k2):
        cfg = _cfg(k1, k2)
        target = gap_ratio_limit(cfg, 1.0, 1.0)
        errs = [abs(gap_ratio(n, n, cfg) - target) / target
                for n in (100, 1000, 10_000)]
        assert errs[0] > errs[1] > errs[2]


class TestJointGapRatio:
    @pytest.mark.parametrize("k1,k2", [(3, 1), (1, 3), (2, 2)])
    def test_limit_is_two(self, k1, k2):
        cfg = _cfg(k1, k2)
        assert joint_gap_ratio_limit(cfg, 1e4, 1e4) == pytest.approx(2.0, abs=1e-2)
        assert joint_gap_ratio(10_000, 10_000, cfg) == pytest.approx(2.0, abs=1e-2)

    @pytest.mark.parametrize("k1,k2", [(3, 1), (1, 3), (2, 2), (2, 1), (4, 2)])
    def test_expansion_matches_factored_product(self, k1, k2):
        cfg = _cfg(k1, k2)
        for n1, n2 in ((25.0, 25.0), (100.0, 50.0), (1e4, 1e4)):
            assert joint_gap_ratio_limit(cfg, n1, n2) == pytest.approx(
                joint_gap_ratio_limit_factored(cfg, n1, n2), rel=1e-12)

    @pytest.mark.parametrize("k1,k2", [(3, 1), (2, 2)])
    def test_exact_vs_expansion(self, k1, k2):
        cfg = _cfg(k1, k2)
        n = 10_000
        assert joint_gap_ratio(n, n, cfg) == pytest.approx(
            joint_gap_ratio_limit(cfg, float(n), float(n)), rel=1e-3)


class TestPairGap22:
    def test_large_n_limit(self):
        cfg = _cfg(2, 2)
        n, m = 10 ** 6, 3
        target = 2 * math.sqrt((m + 1) * (m + 2))
        assert shift2_gap(n, m, cfg) == pytest.approx(target, rel=1e-4)

    def test_exact_at_origin(self):
        # sqrt(3*4*1*2) - sqrt(1*2*1*2) straight from the frequencies
        cfg = _cfg(2, 2)
        assert shift2_gap(0, 0, cfg) == pytest.approx(
            math.sqrt(24) - 2.0, abs=1e-12)

    def test_quadratic_convergence(self):
        # gap = 2 sqrt((m+1)(m+2)) (1 + 1/(8 n^2) + ...): the log-log slope
        # of the error is -2
        cfg = _cfg(2, 2)
        m = 3
        target = 2 * math.sqrt((m + 1) * (m + 2))
        ns = np.array([100.0, 1000.0, 10_000.0])
        errs = np.array([abs(shift2_gap(int(n), m, cfg) - target) for n in ns])
        assert np.all(np.diff(errs) < 0)
        slope = np.polyfit(np.log(ns), np.log(errs), 1)[0]
        assert slope == pytest.approx(-2.0, abs=0.1)

    def test_joint_gap_consistency(self):
        cfg = _cfg(1, 1)
        assert shift22_gap(4, 7, cfg) == pytest.approx(
            math.sqrt(7 * 10) - math.sqrt(5 * 8), abs=1e-12)


class TestRcpClassifier:
    def test_exactly_the_diagonal(self):
        assert rcp_pairs(max_total=6) == {(3, 1), (1, 3), (2, 2)}

    def test_larger_scan_adds_nothing(self):
        assert rcp_pairs(max_total=8) == {(3, 1), (1, 3), (2, 2)}


class TestSurrogates:
    def test_initial_values(self):
        cfg = _cfg(3, 1)
        assert approx_mode1_squared(cfg, 0.0) == pytest.approx(25.0, abs=1e-9)
        assert approx_pair_squared(cfg, 0.0) == pytest.approx(625.0, abs=1e-8)

    def test_rejects_multiphoton(self, cfg_l3):
        with pytest.raises(ValueError):
            approx_mode1_squared(cfg_l3, 0.0)

    def test_tracks_exact_moment(self):
        # bounded drift from the exact second moment over the figure range
        cfg = _cfg(3, 1)
        worst = 0.0
        for T in np.linspace(0.0, 25.0, 120):
            exact = moment_generic(evolve(cfg, float(T)),
                                   MomentOrder(0, 2, 0, 0)).real
            worst = max(worst, abs(approx_mode1_squared(cfg, float(T)) - exact))
        assert worst < 0.15 * 25.0

    def test_pair_surrogate_tracks_exact(self):
        cfg = _cfg(2, 2)
        worst = 0.0
        for T in np.linspace(0.0, 10.0, 60):
            exact = moment_generic(evolve(cfg, float(T)),
                                   MomentOrder(0, 2, 0, 2)).real
            worst = max(worst, abs(approx_pair_squared(cfg, float(T)) - exact))
        assert worst < 0.15 * 625.0

    def test_no_revival_structure_off_diagonal(self):
        # (2, 1) surrogate: the comb spacing is intensity-dependent, no RCP
        cfg = _cfg(2, 1)
        ts = series(cfg, np.linspace(0.0, 25.0, 2000), "harmonic:mode1_sq")
        assert not detect_revivals(ts).has_rcp()

"""Revival-collapse detector: synthetic signals, invariances, real traces.

The synthetic revival signal used here is a burst train: a fast carrier
under periodic Gaussian envelopes, the shape the detector is built for.
"""

from __future__ import annotations

import numpy as np
import pytest

from tjcm.analysis import (RcpReport, align_revivals, detect_revivals,
                           dominant_period, envelope, render_report)
from tjcm.dynamics import TimeSeries, atomic_inversion, series


def burst_train(t0=0.0, span=25.0, n=2000, period=6.0, width=0.5,
                carrier=50.0, amplitude=1.0, secondary=0.0):
    """Carrier under periodic Gaussian envelopes, bursts at t0 + q*period."""
    grid = np.linspace(t0, t0 + span, n)
    env = np.zeros_like(grid)
    for q in range(1, int(span / period) + 2):
        env += np.exp(-0.5 * ((grid - t0 - q * period) / width) ** 2)
        if secondary:
            env += secondary * np.exp(
                -0.5 * ((grid - t0 - (q + 0.5) * period) / width) ** 2)
    values = amplitude * env * np.cos(carrier * (grid - t0))
    return TimeSeries(grid=grid, values=values, label="burst")


class TestEnvelope:
    def test_constant_series_zero_envelope(self):
        ts = TimeSeries(grid=np.linspace(0, 10, 200),
                        values=np.full(200, 3.3), label="c")
        env = envelope(ts, window=1.0)
        assert np.all(env.values < 1e-12)

    def test_pure_cosine_envelope_is_one(self):
        grid = np.linspace(0, 30, 3000)
        ts = TimeSeries(grid=grid, values=np.cos(2 * grid), label="cos")
        env = envelope(ts, window=2 * np.pi)
        inner = env.values[200:-200]
        # baseline is the sample mean, slightly off zero over a span that
        # is not a whole number of periods
        assert np.all(inner > 0.95) and np.all(inner < 1.01)

    def test_rejects_window_below_spacing(self):
        ts = burst_train()
        with pytest.raises(ValueError, match="grid spacing"):
            envelope(ts, window=1e-4)

    def test_inversion_collapse_region(self, cfg11, grid25):
        # the collapse between the initial burst and the first revival
        ts = series(cfg11, grid25, atomic_inversion, label="inversion")
        env = envelope(ts, window=0.35)
        mid = (grid25 > 2.0) & (grid25 < 4.5)
        assert env.values[mid].max() < 0.05


class TestDetector:
    def test_burst_train_revivals(self):
        rep = detect_revivals(burst_train())
        assert len(rep.revival_times) == 4
        assert rep.revival_times == pytest.approx((6, 12, 18, 24), abs=0.05)
        assert rep.period_estimate == pytest.approx(6.0, abs=0.02)
        assert rep.has_rcp()

    def test_secondary_detection(self):
        rep = detect_revivals(burst_train(secondary=0.2))
        assert len(rep.secondary_revival_times) >= 2
        assert rep.secondary_revival_times[0] == pytest.approx(9.0, abs=0.1)

    def test_period_needs_three_revivals(self):
        rep = detect_revivals(burst_train(span=13.0, n=1300))
        assert len(rep.revival_times) == 2
        assert rep.period_estimate is None

    def test_one_sided_spikes_are_not_revivals(self):
        # periodic dips without carrier oscillation: no RCP
        grid = np.linspace(0, 25, 2000)
        values = -np.exp(-0.5 * ((grid % 6.0 - 3.0) / 0.2) ** 2)
        rep = detect_revivals(TimeSeries(grid=grid, values=values, label="spikes"))
        assert rep.revival_times == ()

    def test_determinism(self):
        a = detect_revivals(burst_train())
        b = detect_revivals(burst_train())
        assert a == b

    def test_translation_covariance(self):
        shift = 5.0
        a = detect_revivals(burst_train(t0=0.0))
        b = detect_revivals(burst_train(t0=shift))
        assert np.allclose(np.array(b.revival_times) - shift,
                           a.revival_times, atol=1e-9)
        assert b.period_estimate == pytest.approx(a.period_estimate, abs=1e-9)

    def test_scale_invariance(self):
        a = detect_revivals(burst_train(amplitude=1.0))
        b = detect_revivals(burst_train(amplitude=7.3))
        assert b.revival_times == pytest.approx(a.revival_times, abs=1e-12)
        c = detect_revivals(burst_train(amplitude=7.3),
                            prominence=7.3 * a.prominence)
        assert c.revival_times == pytest.approx(a.revival_times, abs=1e-12)

    def test_rejects_bad_prominence(self):
        with pytest.raises(ValueError, match="prominence"):
            detect_revivals(burst_train(), prominence=-1.0)

    def test_collapse_intervals_sorted_disjoint(self):
        rep = detect_revivals(burst_train())
        flat = [edge for pair in rep.collapse_intervals for edge in pair]
        assert flat == sorted(flat)

    def test_dominant_period(self):
        ts = burst_train(carrier=50.0)
        assert dominant_period(ts) == pytest.approx(2 * np.pi / 50.0, rel=0.1)


class TestAlignment:
    def test_identical_reports(self):
        rep = detect_revivals(burst_train())
        assert align_revivals(rep, rep, tol=0.1) == 1.0

    def test_disjoint_reports(self):
        a = RcpReport(revival_times=(1.0, 2.0))
        b = RcpReport(revival_times=(10.0, 20.0))
        assert align_revivals(a, b, tol=0.5) == 0.0

    def test_partial_overlap(self):
        a = RcpReport(revival_times=(1.0, 2.0, 3.0, 4.0))
        b = RcpReport(revival_times=(1.02, 2.9))
        assert align_revivals(a, b, tol=0.2) == 0.5

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="non-empty"):
            align_revivals(RcpReport(), RcpReport(revival_times=(1.0,)), tol=0.1)

    def test_rejects_bad_tol(self):
        a = RcpReport(revival_times=(1.0,))
        with pytest.raises(ValueError, match="tol"):
            align_revivals(a, a, tol=0.0)


class TestReportText:
    def test_render_contains_keys(self):
        rep = detect_revivals(burst_train())
        text = render_report(rep, extra={"quantity": "burst"})
        for key in ("collapse_intervals", "revival_times", "period_estimate",
                    "secondary_revival_times", "quantity"):
            assert f"{key} = " in text

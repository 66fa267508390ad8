import math
import warnings

import numpy as np
import pytest

from hypcircle import constants
from hypcircle.counting import BallSpec, list_distances
from hypcircle.errors import ScheduleViolation, ValidationError, WindowOutOfRange
from hypcircle.experiments import (
    DistributionEstimate,
    ErrorSeries,
    distribution_estimate,
    exact_e_alpha,
    first_moment,
    hybrid_run,
    method_budget,
    pointwise_exponent,
    pointwise_scan,
    sample_e_alpha,
    sample_error,
    schedule_condition,
    synthetic_series,
    variance_report,
    window_variance,
)
from hypcircle.fracint import SampledSeries
from hypcircle.geometry import Point
from hypcircle.spectral import Amplitude
from hypcircle.spectral.transforms import r_alpha

I = Point(0.0, 1.0)


def const_series(c, T=16.0, step=1.0 / 64.0):
    n = int(T / step) + 1
    return ErrorSeries(series=SampledSeries(0.0, step, np.full(n, c)),
                       z=None, w=None, alpha=None, method="test")


def cosine_series(A, freq, phase=0.3, T=400.0, step=1.0 / 64.0):
    n = int(T / step) + 1
    g = step * np.arange(n)
    return ErrorSeries(series=SampledSeries(0.0, step, A * np.cos(freq * g + phase)),
                       z=None, w=None, alpha=None, method="test")


class TestSampleError:
    def test_small_radius_shape(self, distances_14):
        err = sample_error(I, I, 14.0, distances=distances_14)
        g = err.grid
        first_pos = distances_14.values[distances_14.values > 1e-12][0]
        mask = g < first_pos - 1e-3
        ref = (2.0 - 3.0 * np.exp(g[mask])) * np.exp(-0.5 * g[mask])
        assert np.max(np.abs(err.values[mask] - ref)) == 0.0

    def test_jump_heights(self, distances_14):
        # e jumps by (multiplicity) e^{-d/2} at each orbit distance
        step = 1.0 / 512.0
        err = sample_error(I, I, 14.0, step=step, distances=distances_14)
        d = distances_14.values
        d3 = d[d > 1e-12][0]  # acosh(1.5), multiplicity 8
        k = int(math.ceil(d3 / step))
        jump = (err.values[k] - err.values[k - 1])
        expected = 8.0 * math.exp(-0.5 * d3)
        # discrete grid also carries the smooth -3 e^{s/2} drift over one step
        assert jump == pytest.approx(expected, abs=0.02)

    def test_mean_much_smaller_than_std_high_window(self, distances_14):
        # qualitative first-moment smallness over the top window [12, 14]
        err = sample_error(I, I, 14.0, distances=distances_14)
        grid, vals = err.grid, err.values
        sel = (grid >= 12.0) & (grid <= 14.0)
        m = float(np.mean(vals[sel]))
        s = float(np.std(vals[sel]))
        assert abs(m) <= 0.5 * s


class TestSampleEAlpha:
    def test_order_one_matches_quadrature(self, distances_14):
        err = sample_e_alpha(I, I, 1.0, 10.0, distances=distances_14)
        base = sample_error(I, I, 10.0, distances=distances_14)
        # trapezoid of e agrees with the order-1 product rule on smooth spans
        ref = np.concatenate([[0.0], np.cumsum(
            0.5 * (base.values[1:] + base.values[:-1]) * base.series.step)])
        assert np.max(np.abs(err.values - ref)) <= 1e-6

    @pytest.mark.parametrize("alpha", [0.1, 0.25, 0.5, 0.75, 1.0])
    def test_grid_vs_exact_budget(self, alpha, distances_14):
        err = sample_e_alpha(I, I, alpha, 10.0, method="grid", distances=distances_14)
        idx = np.linspace(0, len(err.values) - 1, 129).astype(int)
        exact = exact_e_alpha(distances_14, alpha, err.grid[idx])
        diff = float(np.max(np.abs(err.values[idx] - exact)))
        assert diff <= method_budget(alpha)
        assert diff >= method_budget(alpha) / 20.0  # drift guard on the pin

    def test_exact_method_crosschecks(self, distances_14):
        with warnings.catch_warnings():
            warnings.simplefilter("error")  # no MethodDisagreement expected
            err = sample_e_alpha(I, I, 0.5, 6.0, method="exact",
                                 distances=distances_14)
        assert err.method == "exact"

    def test_boundedness_above_half(self, distances_14):
        err = sample_e_alpha(I, I, 0.75, 14.0, distances=distances_14)
        sel = (err.grid >= 5.0)
        assert np.max(np.abs(err.values[sel])) <= constants.POINTWISE_BOUNDED_C

    def test_grid_vs_exact_generic_points(self):
        # the dual-method agreement is not special to the symmetric center
        z, w = Point(0.2, 1.3), Point(-0.1, 0.9)
        dist = list_distances(BallSpec(z, w, 6.0))
        err = sample_e_alpha(z, w, 0.4, 6.0, distances=dist)
        idx = np.linspace(0, len(err.values) - 1, 65).astype(int)
        exact = exact_e_alpha(dist, 0.4, err.grid[idx])
        assert float(np.max(np.abs(err.values[idx] - exact))) <= method_budget(0.4)


class TestLayerCake:
    def test_jump_sum_reproduces_weighted_count_integral(self):
        # sum over orbit distances of the order-1 jump integrals equals the
        # exact piecewise-constant integral of N(t) e^{-t/2}
        from hypcircle.fracint import frac_indicator_exp

        s = 5.0
        dist = list_distances(BallSpec(I, I, s))
        total = float(np.sum([frac_indicator_exp(float(d), 1.0, s)
                              for d in dist.values]))
        edges = np.concatenate([dist.values, [s]])
        counts = np.arange(1, dist.count + 1, dtype=float)
        ref = float(np.sum(counts * 2.0 * (np.exp(-0.5 * edges[:-1])
                                           - np.exp(-0.5 * edges[1:]))))
        assert total == pytest.approx(ref, abs=1e-6)


class TestMoments:
    def test_first_moment_constant(self):
        assert first_moment(const_series(2.5), 4.0) == pytest.approx(2.5, rel=1e-13)

    def test_first_moment_cosine(self):
        A, freq, T = 1.7, 9.0, 150.0
        fm = first_moment(cosine_series(A, freq), T)
        assert abs(fm) <= A / (T * freq) * 2.0 + 1e-9

    def test_window_variance_constant(self):
        assert window_variance(const_series(-1.5), 4.0) == pytest.approx(2.25, rel=1e-13)

    def test_window_variance_cosine(self):
        A, freq, T = 2.0, 7.0, 150.0
        wv = window_variance(cosine_series(A, freq), T)
        assert wv == pytest.approx(A * A / 2.0, abs=A * A / (freq * T) * 3.0)

    def test_window_out_of_range(self):
        with pytest.raises(WindowOutOfRange):
            first_moment(const_series(1.0, T=4.0), 3.0)

    def test_zero_window_variant(self):
        s = cosine_series(1.0, 3.0, T=50.0)
        assert abs(first_moment(s, 40.0, window="0T")) <= 0.02


class TestSyntheticClosedLoop:
    def test_single_frequency_variance(self):
        amp = [Amplitude(10.0, 1.5)]
        ser = synthetic_series(amp, 0.25, 5.0e3, step=1.0 / 64.0)
        target = 0.5 * abs(1.5 * r_alpha(10.0, 0.25)) ** 2
        assert window_variance(ser, 2.5e3, window="T2T") == pytest.approx(target, rel=2e-2)
        # the [0, L] window converges to the same limit
        assert window_variance(ser, 5.0e3, window="0T") == pytest.approx(target, rel=2e-2)

    def test_variance_report_synthetic_ratio(self):
        amp = [Amplitude(10.0, 1.5)]
        ser = synthetic_series(amp, 0.25, 2.0e4, step=1.0 / 64.0)
        rep = variance_report(ser, amp, 0.25, 1.0e4)
        assert rep.ratio == pytest.approx(1.0, abs=0.02)

    def test_variance_report_real_containment(self, distances_14, amplitudes_ii):
        err = sample_e_alpha(I, I, 0.75, 14.0, distances=distances_14)
        rep = variance_report(err, amplitudes_ii, 0.75, 7.0)
        scan = pointwise_scan(err)
        assert rep.empirical <= scan.envelope_constant ** 2
        assert math.isfinite(rep.ratio) and rep.ratio > 0.0

    def test_variance_report_real_smoke(self, distances_14, amplitudes_ii):
        err = sample_e_alpha(I, I, 0.25, 14.0, distances=distances_14)
        rep = variance_report(err, amplitudes_ii, 0.25, 12.0, window="0T")
        assert math.isfinite(rep.ratio) and rep.ratio > 0.0


class TestPointwiseScan:
    def test_exponent_cases(self):
        assert pointwise_exponent(0.25) == pytest.approx(0.1)
        assert pointwise_exponent(0.1) == pytest.approx(0.8 / 5.6)
        assert pointwise_exponent(0.75) == 0.0

    @pytest.mark.parametrize("alpha,cap", [(0.1, constants.POINTWISE_ENVELOPE_C),
                                           (0.25, constants.POINTWISE_ENVELOPE_C)])
    def test_envelopes_non_increasing(self, alpha, cap, distances_14):
        err = sample_e_alpha(I, I, alpha, 14.0, distances=distances_14)
        scan = pointwise_scan(err)
        env = scan.envelopes
        assert all(e2 <= e1 * (1.0 + 1e-12) for e1, e2 in zip(env, env[1:]))
        assert scan.envelope_constant <= cap

    def test_half_order_linear_bound(self, distances_14):
        err = sample_e_alpha(I, I, 0.5, 14.0, distances=distances_14)
        scan = pointwise_scan(err)
        assert scan.envelope_constant <= constants.POINTWISE_HALF_C

    @pytest.mark.parametrize("alpha", [0.75, 0.9])
    def test_bounded_orders(self, alpha, distances_14):
        err = sample_e_alpha(I, I, alpha, 14.0, distances=distances_14)
        scan = pointwise_scan(err)
        assert scan.envelope_constant <= constants.POINTWISE_BOUNDED_C
        assert scan.fitted_exponent <= 0.05


class TestDistribution:
    def test_single_form_arcsine(self):
        amp = [Amplitude(10.0, 1.0)]
        ser = synthetic_series(amp, 0.25, 1.0e5, step=1.0 / 128.0)
        A = abs(r_alpha(10.0, 0.25))
        vals = np.sort(ser.values)
        n = vals.size
        cdf = 0.5 + np.arcsin(np.clip(vals / A, -1.0, 1.0)) / math.pi
        ks = float(np.max(np.abs(np.arange(1, n + 1) / n - cdf)))
        assert ks <= 0.01

    def test_multi_form_stability(self, amplitudes_ii):
        ser = synthetic_series(amplitudes_ii, 0.25, 1.0e5, step=1.0 / 128.0)
        est = distribution_estimate(ser)
        assert est.ks_halves <= 0.02
        assert abs(est.mean) <= 2.0 * math.sqrt(est.variance / est.count) + 1e-6

    def test_real_data_within_pointwise_bound(self, distances_14):
        err = sample_e_alpha(I, I, 0.75, 14.0, distances=distances_14)
        scan = pointwise_scan(err)
        est = distribution_estimate(err)
        B = scan.envelope_constant
        assert est.edges[0] >= -B - 1e-9 and est.edges[-1] <= B + 1e-9

    def test_histogram_invariants(self):
        ser = cosine_series(1.0, 5.0, T=100.0)
        est = distribution_estimate(ser, bins=32)
        assert int(np.sum(est.counts)) == est.count
        assert np.all(np.diff(est.edges) > 0)

    def test_bad_histogram_rejected(self):
        with pytest.raises(ValidationError):
            DistributionEstimate(edges=np.array([0.0, 1.0]), counts=np.array([3]),
                                 mean=0.0, variance=1.0, count=5, ks_halves=0.0)


class TestHybrid:
    def test_inv_sqrt_schedule(self, distances_14):
        pts = hybrid_run(I, I, "inv-sqrt", [6.0, 9.0, 12.0], distances=distances_14)
        assert [p.T for p in pts] == [6.0, 9.0, 12.0]
        for p in pts:
            assert p.alpha == pytest.approx(1.0 / math.sqrt(p.T))
            assert p.condition == pytest.approx(
                math.sqrt(p.T) * math.exp(-2.0 * math.sqrt(p.T)), rel=1e-12)
            assert p.variance <= constants.HYBRID_VARIANCE_C
        assert pts[1].condition <= 0.02

    def test_inv_T_schedule_rejected(self, distances_14):
        with pytest.raises(ScheduleViolation):
            hybrid_run(I, I, "inv-T", [6.0, 9.0, 12.0], distances=distances_14)

    def test_condition_quantity(self):
        assert schedule_condition(1.0 / 3.0, 9.0) == pytest.approx(
            3.0 * math.exp(-6.0), rel=1e-12)


class TestPreTraceSanity:
    def test_truncated_spectral_sum_tracks_error_term(self, amplitudes_ii):
        # smoothed partial sum over the bundled spectrum reproduces e(s) up to
        # a bounded residual (continuous spectrum omitted, eigenvalues
        # truncated at the bundled ceiling)
        from hypcircle.spectral.transforms import htilde, shc_direct

        dist = list_distances(BallSpec(I, I, 10.0))
        err = sample_error(I, I, 10.0, step=1.0 / 64.0, distances=dist)
        delta = 0.04
        sel = (err.grid >= 6.0) & (err.grid <= 10.0)
        svals = err.grid[sel]
        partial = np.zeros_like(svals)
        for a in amplitudes_ii:
            if abs(a.b) < 1e-12:
                continue
            hd = htilde(delta, a.t)
            hs = np.array([shc_direct(float(s) + delta, a.t) for s in svals])
            partial += hd * hs * a.b.real
        resid = float(np.mean(np.abs(err.values[sel] - partial)))
        assert resid <= constants.PRETRACE_RESIDUAL_C
        assert resid >= constants.PRETRACE_RESIDUAL_C / 8.0  # drift guard

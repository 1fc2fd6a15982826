"""Tests for Popular / Prestigious classification."""

import numpy as np
import pytest

from journal_status.analysis.outliers import OutlierClassifier, classify_outliers
from journal_status.errors import DegenerateStatisticsError
from journal_status.metrics import MetricName
from tests.fixtures import (
    POPULAR_ID,
    PRESTIGIOUS_ID,
    planted_outlier_vectors,
    vector,
)


def brute_force(if_vec, prw_vec, low=40.0, high=90.0):
    """Independent re-derivation of both lists from plain sums."""
    ids = list(if_vec.ids)
    ys = [if_vec[i] for i in ids]
    xs = [prw_vec[i] for i in ids]
    n = len(ids)

    def percentile(values, q):
        ordered = sorted(values)
        h = (n - 1) * q / 100.0
        k = int(h)
        if k >= n - 1:
            return ordered[-1]
        return ordered[k] + (h - k) * (ordered[k + 1] - ordered[k])

    x_mean, y_mean = sum(xs) / n, sum(ys) / n
    slope = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys)) / sum(
        (x - x_mean) ** 2 for x in xs
    )
    intercept = y_mean - slope * x_mean
    delta = {i: y - (intercept + slope * x) for i, x, y in zip(ids, xs, ys)}
    prw = dict(zip(ids, xs))
    on_line = 1e-9 * max(1.0, max(abs(y) for y in ys))

    low_cut, high_cut = percentile(xs, low), percentile(xs, high)
    popular = sorted(
        (i for i in ids if prw[i] < low_cut and delta[i] > on_line), key=lambda i: (-delta[i], i)
    )
    prestigious = sorted(
        (i for i in ids if prw[i] > high_cut and delta[i] < -on_line), key=lambda i: (delta[i], i)
    )
    return popular, prestigious


def ids_of(entries):
    return [e.id for e in entries]


class TestClassifyOutliers:
    """Tests for the outlier classifier."""

    def test_planted_outliers(self):
        """Test that the two planted journals are the only outliers."""
        if_vec, prw_vec = planted_outlier_vectors(np.random.default_rng(1))
        report = classify_outliers(if_vec, prw_vec)

        assert ids_of(report.popular) == [POPULAR_ID]
        assert ids_of(report.prestigious) == [PRESTIGIOUS_ID]
        assert report.thresholds.low_percentile == 40.0
        assert report.thresholds.high_percentile == 90.0

    def test_planted_outliers_match_brute_force(self):
        """Test membership and order against an independent computation on 100 datasets."""
        rng = np.random.default_rng(7)
        for _ in range(100):
            size = int(rng.integers(20, 201))
            if_vec, prw_vec = planted_outlier_vectors(rng, size)
            report = classify_outliers(if_vec, prw_vec)
            popular, prestigious = brute_force(if_vec, prw_vec)

            assert ids_of(report.popular) == popular == [POPULAR_ID]
            assert ids_of(report.prestigious) == prestigious == [PRESTIGIOUS_ID]

    def test_random_data_matches_brute_force(self):
        """Test unplanted random data, where many journals qualify."""
        rng = np.random.default_rng(13)
        for _ in range(100):
            size = int(rng.integers(20, 201))
            ids = [f"J{k:03d}" for k in range(size)]
            prw = vector(MetricName.PRW, dict(zip(ids, (rng.random(size) * 0.01).tolist())))
            impact = vector(MetricName.IF, dict(zip(ids, (rng.random(size) * 20).tolist())))
            report = classify_outliers(impact, prw)
            popular, prestigious = brute_force(impact, prw)

            assert ids_of(report.popular) == popular
            assert ids_of(report.prestigious) == prestigious
            assert all(e.if_delta > 0 for e in report.popular)
            assert all(e.if_delta < 0 for e in report.prestigious)
            assert not set(popular) & set(prestigious)

    def test_collinear(self):
        """Test that journals exactly on a line are never outliers."""
        ids = [f"J{k}" for k in range(10)]
        prw = vector(MetricName.PRW, {i: float(k) for k, i in enumerate(ids)})
        impact = vector(MetricName.IF, {i: 2.0 * k + 1.0 for k, i in enumerate(ids)})
        report = classify_outliers(impact, prw)

        assert report.popular == ()
        assert report.prestigious == ()
        assert report.model.slope == 2.0
        assert report.model.intercept == 1.0

    def test_collinear_realistic_prw(self):
        """Test that round-off in the residuals of collinear data makes no outliers."""
        rng = np.random.default_rng(29)
        for _ in range(20):
            ids = [f"J{k:03d}" for k in range(50)]
            xs = rng.uniform(1e-4, 2e-2, size=50)
            prw = vector(MetricName.PRW, dict(zip(ids, xs.tolist())))
            impact = vector(MetricName.IF, dict(zip(ids, (0.7 + 137.3 * xs).tolist())))
            report = classify_outliers(impact, prw)

            assert report.popular == ()
            assert report.prestigious == ()

    def test_top_k(self):
        """Test that each list is cut to top_k, largest deviations first."""
        rng = np.random.default_rng(19)
        ids = [f"J{k:03d}" for k in range(100)]
        prw = vector(MetricName.PRW, dict(zip(ids, rng.random(100).tolist())))
        impact = vector(MetricName.IF, dict(zip(ids, (rng.random(100) * 20).tolist())))

        full = classify_outliers(impact, prw)
        cut = classify_outliers(impact, prw, top_k=3)

        assert len(full.popular) > 3
        assert cut.popular == full.popular[:3]
        assert cut.prestigious == full.prestigious[:3]
        deltas = [e.if_delta for e in full.popular]
        assert deltas == sorted(deltas, reverse=True)

    def test_explicit_defaults(self):
        """Test that passing 40 / 90 explicitly changes nothing."""
        if_vec, prw_vec = planted_outlier_vectors(np.random.default_rng(2))
        assert classify_outliers(if_vec, prw_vec) == OutlierClassifier(40, 90).classify(
            if_vec, prw_vec
        )

    def test_low_not_below_high(self):
        """Test that the low percentile must be below the high one."""
        with pytest.raises(ValueError, match="below"):
            OutlierClassifier(low_percentile=95, high_percentile=40)

    def test_constant_prw(self):
        """Test that a flat PR_w vector makes the regression undefined."""
        prw = vector(MetricName.PRW, {"A": 0.1, "B": 0.1, "C": 0.1})
        impact = vector(MetricName.IF, {"A": 1.0, "B": 2.0, "C": 3.0})
        with pytest.raises(DegenerateStatisticsError):
            classify_outliers(impact, prw)

    @pytest.mark.parametrize("value", [0.1, 0.3, 1e-3, 7.77])
    def test_constant_prw_non_dyadic(self, value):
        """Test that a flat PR_w vector is caught whatever its value."""
        ids = [f"J{k}" for k in range(7)]
        prw = vector(MetricName.PRW, {i: value for i in ids})
        impact = vector(MetricName.IF, {i: float(k) for k, i in enumerate(ids)})
        with pytest.raises(DegenerateStatisticsError):
            classify_outliers(impact, prw)

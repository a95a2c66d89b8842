import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import exhaustive_average_precision, mann_whitney_auc, random_instance
from vusmetrics import (
    ScoredSeries,
    ThresholdGrid,
    auc_pr,
    auc_roc,
    normalize_score,
    sweep_curve,
)


def _curve(score, labels, grid=None):
    series = ScoredSeries(normalize_score(score), labels)
    grid = grid or ThresholdGrid.from_scores(series.score)
    return sweep_curve(series, grid)


class TestSweepCurve:
    def test_two_point_instance(self):
        curve = _curve([0.0, 1.0], [0, 1], ThresholdGrid([0.0, 0.5, 1.0]))
        assert [(c.tpr, c.fpr) for c in curve] == [(1.0, 1.0), (1.0, 0.0), (1.0, 0.0)]

    def test_all_zero_labels_pin_tpr(self):
        curve = _curve([0.3, 0.7, 0.1], [0, 0, 0])
        assert all(c.tpr == 0.0 for c in curve)

    def test_threshold_zero_predicts_everything(self):
        curve = _curve([0.2, 0.9, 0.4], [0, 1, 0], ThresholdGrid.uniform(4))
        assert curve[0].tpr == 1.0 and curve[0].fpr == 1.0

    def test_points_ordered_by_threshold(self):
        curve = _curve([0.1, 0.5, 0.9], [0, 1, 1])
        ths = [c.threshold for c in curve]
        assert ths == sorted(ths)


class TestAucRoc:
    def test_perfect_separation(self):
        assert auc_roc(_curve([0.0, 0.1, 0.9, 1.0], [0, 0, 1, 1])) == 1.0

    def test_pair_counting_value(self):
        curve = _curve([0.8, 0.6, 0.4, 0.2], [1, 0, 1, 0])
        assert auc_roc(curve) == pytest.approx(0.75, abs=1e-12)

    def test_anti_separation(self):
        assert auc_roc(_curve([1.0, 0.9, 0.1, 0.0], [0, 0, 1, 1])) == 0.0

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 100_000))
    def test_matches_mann_whitney(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 31))
        score, labels = random_instance(rng, n)
        if labels.sum() in (0, n):
            return
        pos = set(score[labels == 1].tolist())
        neg = set(score[labels == 0].tolist())
        if pos & neg:
            return  # cross-class ties break the pair-counting identity
        got = auc_roc(_curve(score, labels))
        assert got == pytest.approx(mann_whitney_auc(score, labels), abs=1e-9)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 100_000))
    def test_complement_identity(self, seed):
        rng = np.random.default_rng(seed)
        score, labels = random_instance(rng, int(rng.integers(4, 30)))
        if labels.sum() in (0, labels.size):
            return
        if len(set(score.tolist())) != score.size:
            return  # identity needs fully distinct scores
        a = auc_roc(_curve(score, labels))
        b = auc_roc(_curve(1.0 - score, labels))
        assert a + b == pytest.approx(1.0, abs=1e-9)

    def test_monotone_transform_invariance(self, rng):
        score, labels = random_instance(rng, 25)
        if labels.sum() in (0, labels.size):
            labels[0] = 1 - labels[0]
        transformed = np.exp(3.0 * score)
        a = auc_roc(_curve(score, labels))
        b = auc_roc(_curve(transformed, labels))
        assert a == pytest.approx(b, abs=1e-9)

    def test_grid_refinement_converges(self, rng):
        score, labels = random_instance(rng, 200)
        series = ScoredSeries(normalize_score(score), labels)
        reference = auc_roc(sweep_curve(series, ThresholdGrid.from_scores(series.score)))
        deltas = []
        for n in (25, 50, 100, 200, 400):
            approx = auc_roc(sweep_curve(series, ThresholdGrid.uniform(n)))
            deltas.append(abs(approx - reference))
        assert deltas[-1] <= deltas[0]
        assert deltas[-1] < 0.02


class TestAucPr:
    def test_perfect_score(self):
        assert auc_pr(_curve([0.0, 0.1, 0.9, 1.0], [0, 0, 1, 1])) == pytest.approx(1.0)

    def test_all_one_labels(self):
        assert auc_pr(_curve([0.2, 0.9, 0.5], [1, 1, 1])) == pytest.approx(1.0)

    def test_exhaustive_walker_value(self):
        # computed with the exhaustive threshold walker: 0.5*1 + 0.5*(2/3)
        curve = _curve([0.8, 0.6, 0.4, 0.2], [1, 0, 1, 0])
        assert auc_pr(curve) == pytest.approx(5.0 / 6.0, abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 100_000))
    def test_matches_exhaustive_oracle(self, seed):
        rng = np.random.default_rng(seed)
        score, labels = random_instance(rng, int(rng.integers(3, 40)))
        score = normalize_score(score)
        got = auc_pr(_curve(score, labels))
        want = exhaustive_average_precision(score.tolist(), labels.tolist())
        assert got == pytest.approx(want, abs=1e-9)

    def test_at_least_density_for_perfect_score(self):
        labels = np.array([0, 0, 0, 1, 0, 0])
        score = labels.astype(float)
        assert auc_pr(_curve(score, labels)) >= labels.mean()

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 100_000))
    def test_unit_interval(self, seed):
        rng = np.random.default_rng(seed)
        score, labels = random_instance(rng, int(rng.integers(3, 40)))
        assert 0.0 <= auc_pr(_curve(score, labels)) <= 1.0

    def test_trapezoid_mode_runs(self):
        curve = _curve([0.8, 0.6, 0.4, 0.2], [1, 0, 1, 0])
        value = auc_pr(curve, method="trapezoid")
        assert 0.0 <= value <= 1.0


class TestDegenerateLabels:
    def test_all_zero_labels(self):
        curve = _curve([0.3, 0.8, 0.2], [0, 0, 0])
        assert auc_roc(curve) == 0.0
        assert auc_pr(curve) == 0.0  # density of an anomaly-free series

    def test_all_one_labels(self):
        curve = _curve([0.3, 0.8, 0.2], [1, 1, 1])
        assert auc_roc(curve) == 0.0
        assert auc_pr(curve) == pytest.approx(1.0)  # density 1

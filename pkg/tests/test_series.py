import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vusmetrics import (
    AnomalyRange,
    DataError,
    ScoredSeries,
    ThresholdGrid,
    UsageError,
    apply_threshold,
    default_threshold,
    extract_ranges,
    normalize_score,
    ranges_to_labels,
)

labels_vectors = st.lists(st.integers(0, 1), min_size=1, max_size=60)


class TestNormalizeScore:
    def test_affine_endpoints(self):
        np.testing.assert_allclose(normalize_score([2, 4, 6]), [0.0, 0.5, 1.0])

    def test_constant_maps_to_half(self):
        np.testing.assert_array_equal(normalize_score([3, 3, 3]), [0.5, 0.5, 0.5])

    def test_hand_evaluated(self):
        np.testing.assert_allclose(normalize_score([0.1, 0.9, 0.5]), [0.0, 1.0, 0.5])

    def test_rejects_non_finite(self):
        with pytest.raises(DataError):
            normalize_score([0.0, np.nan])
        with pytest.raises(DataError):
            normalize_score([np.inf, 1.0])

    @given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=50))
    def test_idempotent_on_normalized(self, raw):
        once = normalize_score(raw)
        np.testing.assert_allclose(normalize_score(once), once, atol=1e-12)


class TestExtractRanges:
    def test_runs(self):
        assert extract_ranges([0, 1, 1, 0, 1]) == [AnomalyRange(1, 2), AnomalyRange(4, 4)]

    def test_empty(self):
        assert extract_ranges([0, 0, 0]) == []

    def test_whole_series(self):
        assert extract_ranges([1, 1, 1]) == [AnomalyRange(0, 2)]

    @given(labels_vectors)
    def test_round_trip(self, labels):
        ranges = extract_ranges(labels)
        rebuilt = ranges_to_labels(ranges, len(labels))
        np.testing.assert_array_equal(rebuilt, np.asarray(labels, dtype=np.int8))

    @given(labels_vectors)
    def test_sorted_disjoint(self, labels):
        ranges = extract_ranges(labels)
        for a, b in zip(ranges, ranges[1:]):
            assert a.end + 1 < b.start  # maximal runs never touch


class TestApplyThreshold:
    def test_basic(self):
        np.testing.assert_array_equal(apply_threshold([0.2, 0.8], 0.5).bits, [0, 1])

    def test_boundary_is_inclusive(self):
        assert apply_threshold([0.5], 0.5).bits[0] == 1

    def test_elementwise(self):
        mask = apply_threshold([0.1, 0.4, 0.9, 0.6], 0.55)
        np.testing.assert_array_equal(mask.bits, [0, 0, 1, 1])

    @given(st.lists(st.floats(0, 1), min_size=1, max_size=40))
    def test_extreme_thresholds(self, score):
        assert apply_threshold(score, 0.0).bits.all()
        assert not apply_threshold(score, 1.0 + 1e-9).bits.any()


class TestDefaultThreshold:
    def test_constant_score(self):
        assert default_threshold([0.5, 0.5]) == 0.5

    def test_two_point_clamped(self):
        # mean 0.5, population std 0.5 -> 2.0, clamped to 1.0
        assert default_threshold([0, 1]) == 1.0

    def test_skewed_clamped(self):
        assert default_threshold([0, 0, 0, 1]) == 1.0

    def test_unclamped_value(self):
        score = np.array([0.4, 0.5, 0.6])
        expected = 0.5 + 3 * np.std(score)
        assert default_threshold(score) == pytest.approx(expected)


class TestScoredSeries:
    def test_requires_equal_lengths(self):
        with pytest.raises(UsageError):
            ScoredSeries([0.1, 0.2], [0])

    def test_rejects_bad_labels(self):
        with pytest.raises(DataError):
            ScoredSeries([0.1, 0.2], [0, 2])

    def test_rejects_empty(self):
        with pytest.raises(DataError):
            ScoredSeries([], [])

    def test_immutable(self):
        s = ScoredSeries([0.1, 0.9], [0, 1])
        with pytest.raises(ValueError):
            s.score[0] = 5.0


class TestThresholdGrid:
    def test_uniform_endpoints(self):
        grid = ThresholdGrid.uniform(4)
        np.testing.assert_allclose(grid.values, [0, 0.25, 0.5, 0.75, 1.0])
        assert grid.count == 4

    def test_from_scores_includes_endpoints(self):
        grid = ThresholdGrid.from_scores([0.25, 0.5])
        np.testing.assert_allclose(grid.values, [0, 0.25, 0.5, 1.0])

    def test_rejects_non_increasing(self):
        with pytest.raises(UsageError):
            ThresholdGrid([0.0, 0.0, 1.0])

import numpy as np
import pytest
from sklearn.metrics import roc_auc_score

from multiplex_linkpred.evaluation.metrics import (
	auc_bounds,
	mann_whitney_counts,
	mann_whitney_counts_by_negatives,
	precision_at_n,
	ranking_order,
	roc_auc,
	split_metrics,
	top_n_hits,
)
from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.scoring.spec import ScoredPair


def brute_auc(pos, neg):
	wins = ties = 0
	for p in pos:
		for q in neg:
			if p > q:
				wins += 1
			elif p == q:
				ties += 1
	return (wins + 0.5 * ties) / (len(pos) * len(neg))


def scored(pairs, scores):
	return [ScoredPair(int(u), int(v), float(s)) for (u, v), s in zip(pairs, scores)]


def sparse_scores(rng, size, zero_rate):
	scores = rng.integers(0, 6, size=size).astype(np.float64)
	scores[rng.random(size) < zero_rate] = 0.0
	return scores


class TestRocAuc:
	def test_examples(self):
		assert roc_auc([2], [1]) == 1.0
		assert roc_auc([1], [1]) == 0.5
		assert roc_auc([2, 0], [1, 0]) == 0.625

	def test_empty(self):
		with pytest.raises(ValidationError):
			roc_auc([], [1.0])
		with pytest.raises(ValidationError):
			roc_auc([1.0], [])

	def test_matches_pairwise_definition(self):
		rng = np.random.default_rng(0)
		for _ in range(1000):
			pos = rng.integers(0, 8, size=int(rng.integers(1, 40))).astype(np.float64)
			neg = rng.integers(0, 8, size=int(rng.integers(1, 40))).astype(np.float64)
			assert roc_auc(pos, neg) == pytest.approx(brute_auc(pos, neg), abs=1e-12)

	def test_matches_pairwise_definition_on_large_lists(self):
		rng = np.random.default_rng(1)
		for _ in range(20):
			pos = np.round(rng.random(200), 2)
			neg = np.round(rng.random(200), 2)
			assert roc_auc(pos, neg) == pytest.approx(brute_auc(pos, neg), abs=1e-12)

	@pytest.mark.parametrize("seed", range(5))
	def test_matches_sklearn(self, seed):
		rng = np.random.default_rng(seed)
		pos = sparse_scores(rng, 150, 0.4)
		neg = sparse_scores(rng, 300, 0.7)
		labels = np.r_[np.ones(len(pos)), np.zeros(len(neg))]
		expected = roc_auc_score(labels, np.r_[pos, neg])
		assert roc_auc(pos, neg) == pytest.approx(expected, abs=1e-12)

	def test_complementary(self):
		rng = np.random.default_rng(2)
		pos, neg = sparse_scores(rng, 50, 0.3), sparse_scores(rng, 70, 0.3)
		assert roc_auc(pos, neg) + roc_auc(neg, pos) == pytest.approx(1.0, abs=1e-12)

	def test_invariant_under_increasing_transform(self):
		rng = np.random.default_rng(3)
		pos, neg = sparse_scores(rng, 60, 0.5), sparse_scores(rng, 90, 0.5)
		for transform in (lambda x: 3 * x + 1, lambda x: x**3 + 2 * x, np.exp):
			assert roc_auc(transform(pos), transform(neg)) == roc_auc(pos, neg)


class TestMannWhitneyCounts:
	@pytest.mark.parametrize("seed", range(10))
	def test_either_side_sorted(self, seed):
		rng = np.random.default_rng(seed)
		pos = rng.integers(0, 6, size=rng.integers(0, 40)).astype(float)
		neg = rng.integers(0, 6, size=rng.integers(1, 60)).astype(float)
		expected = mann_whitney_counts(pos, np.sort(neg))
		assert mann_whitney_counts_by_negatives(np.sort(pos), neg) == expected

	def test_counts(self):
		assert mann_whitney_counts_by_negatives(np.array([1.0, 2.0, 3.0]), np.array([2.0, 0.0])) == (4, 1)
		assert mann_whitney_counts_by_negatives(np.array([]), np.array([1.0])) == (0, 0)


class TestAucBounds:
	def test_examples(self):
		assert auc_bounds(1.0, 1.0) == (0.0, 1.0)
		assert auc_bounds(0.0, 0.0) == (0.5, 0.5)
		assert auc_bounds(0.5, 0.5) == pytest.approx((0.375, 0.625), abs=1e-15)

	def test_out_of_range(self):
		with pytest.raises(ValidationError):
			auc_bounds(1.2, 0.5)
		with pytest.raises(ValidationError):
			auc_bounds(0.5, -0.1)

	def test_width_is_p1_times_p2(self):
		rng = np.random.default_rng(4)
		for p1, p2 in rng.random((100, 2)):
			low, high = auc_bounds(p1, p2)
			assert high - low == pytest.approx(p1 * p2, abs=1e-12)


class TestPrecision:
	def test_example(self):
		ranked = scored([(0, 1), (0, 2), (0, 3)], [3.0, 2.0, 1.0])
		assert precision_at_n(ranked, [(0, 1), (0, 3)], 2) == 0.5

	def test_all_first_and_none_first(self):
		ranked = scored([(0, 1), (0, 2), (0, 3), (1, 2)], [4.0, 3.0, 2.0, 1.0])
		assert precision_at_n(ranked, [(0, 1), (0, 2)]) == 1.0
		assert precision_at_n(ranked, [(0, 3), (1, 2)]) == 0.0

	def test_ties_go_to_smaller_pairs(self):
		ranked = scored([(2, 3), (0, 4), (1, 2)], [1.0, 1.0, 1.0])
		assert precision_at_n(ranked, [(0, 4)]) == 1.0
		assert precision_at_n(ranked, [(4, 0)]) == 1.0
		assert precision_at_n(ranked, [(2, 3)]) == 0.0

	def test_n_too_large(self):
		ranked = scored([(0, 1)], [1.0])
		with pytest.raises(ValidationError):
			precision_at_n(ranked, [(0, 1)], 2)
		with pytest.raises(ValidationError):
			precision_at_n(ranked, [(0, 1)], 0)

	def test_invariant_under_increasing_transform(self):
		rng = np.random.default_rng(5)
		pairs = [(u, v) for u in range(12) for v in range(u + 1, 12)]
		scores = sparse_scores(rng, len(pairs), 0.5)
		positives = [pairs[i] for i in rng.choice(len(pairs), size=10, replace=False)]
		base = precision_at_n(scored(pairs, scores), positives)
		assert precision_at_n(scored(pairs, np.exp(scores)), positives) == base

	def test_ranking_order(self):
		pairs = np.array([[1, 2], [0, 3], [0, 2]])
		np.testing.assert_array_equal(ranking_order(pairs, np.array([1.0, 2.0, 1.0])), [1, 2, 0])

	def test_top_n_hits_rows(self):
		scores = np.array([[3.0, 2.0, 1.0], [1.0, 1.0, 1.0], [0.0, 0.0, 5.0]])
		labels = np.array([True, False, True])
		np.testing.assert_array_equal(top_n_hits(scores, labels, 2), [1, 1, 2])
		np.testing.assert_array_equal(top_n_hits(scores, labels, 0), [0, 0, 0])


class TestSplitMetrics:
	@pytest.mark.parametrize("seed", range(10))
	def test_agrees_with_single_metrics(self, seed):
		rng = np.random.default_rng(seed)
		pairs = [(u, v) for u in range(15) for v in range(u + 1, 15)]
		scores = sparse_scores(rng, len(pairs), 0.6)
		labels = np.zeros(len(pairs), dtype=bool)
		labels[rng.choice(len(pairs), size=12, replace=False)] = True
		metrics = split_metrics(scores, labels)
		positives = [p for p, hit in zip(pairs, labels) if hit]
		assert metrics.n == 12
		assert metrics.auc == roc_auc(scores[labels], scores[~labels])
		assert metrics.precision == precision_at_n(scored(pairs, scores), positives)
		assert metrics.p1 == np.count_nonzero(scores[labels]) / 12
		assert metrics.auc_max == pytest.approx(metrics.auc_min + metrics.p1 * metrics.p2, abs=1e-12)

	@pytest.mark.parametrize("seed", range(20))
	def test_auc_within_bounds(self, seed):
		rng = np.random.default_rng(seed)
		scores = sparse_scores(rng, 300, float(rng.random()))
		labels = rng.random(300) < 0.3
		labels[:2] = (True, False)
		metrics = split_metrics(scores, labels)
		assert metrics.auc_min - 1e-9 <= metrics.auc <= metrics.auc_max + 1e-9

	def test_all_zero_scores(self):
		metrics = split_metrics(np.zeros(5), np.array([False, True, False, True, False]))
		assert (metrics.auc, metrics.auc_min, metrics.auc_max) == (0.5, 0.5, 0.5)
		assert metrics.precision == 0.5

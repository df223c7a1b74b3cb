"""
Tie-aware ROC-AUC, its analytic bounds from scoreless links, and precision at n.

AUC is the Mann-Whitney form: over all (positive, negative) pairs, wins count 1 and
ties count 1/2. Precision ranks by descending score, ties by ascending (u, v).
"""

from collections.abc import Collection, Sequence
from dataclasses import dataclass

import numpy as np

from multiplex_linkpred.exceptions import ValidationError


@dataclass(frozen=True)
class SplitMetrics:
	"""
	Metrics of one scorer on one split
	"""

	auc: float
	auc_min: float
	auc_max: float
	p1: float
	p2: float
	precision: float
	n: int


def mann_whitney_counts(pos_scores: np.ndarray, neg_sorted: np.ndarray) -> tuple[int, int]:
	"""
	(wins, ties) of positives against an ascending array of negative scores
	"""
	below = np.searchsorted(neg_sorted, pos_scores, side="left")
	at_or_below = np.searchsorted(neg_sorted, pos_scores, side="right")
	wins = int(below.sum())
	ties = int((at_or_below - below).sum())
	return wins, ties


def mann_whitney_counts_by_negatives(pos_sorted: np.ndarray, neg_scores: np.ndarray) -> tuple[int, int]:
	"""
	Same counts as mann_whitney_counts, searching each negative among ascending positives
	"""
	below = np.searchsorted(pos_sorted, neg_scores, side="left")
	at_or_below = np.searchsorted(pos_sorted, neg_scores, side="right")
	wins = int((len(pos_sorted) - at_or_below).sum())
	ties = int((at_or_below - below).sum())
	return wins, ties


def roc_auc(pos_scores: Sequence[float], neg_scores: Sequence[float]) -> float:
	pos = np.asarray(pos_scores, dtype=np.float64)
	neg = np.asarray(neg_scores, dtype=np.float64)
	if len(pos) == 0 or len(neg) == 0:
		raise ValidationError("AUC needs at least one positive and one negative score")
	wins, ties = mann_whitney_counts(pos, np.sort(neg))
	return (wins + 0.5 * ties) / (len(pos) * len(neg))


def auc_bounds(p1: float, p2: float) -> tuple[float, float]:
	"""
	Worst and best AUC given the fractions of positives (p1) and negatives (p2) with a nonzero score
	"""
	for name, value in (("p1", p1), ("p2", p2)):
		if not 0.0 <= value <= 1.0:
			raise ValidationError(f"{name} must lie in [0, 1], got {value}")
	auc_min = 0.5 * (1.0 + p1) * (1.0 - p2)
	return auc_min, auc_min + p1 * p2


def scored_fraction(scores: np.ndarray) -> float:
	scores = np.asarray(scores)
	if len(scores) == 0:
		return 0.0
	return float(np.count_nonzero(scores != 0)) / len(scores)


def top_n_hits(scores: np.ndarray, labels: np.ndarray, n: int) -> np.ndarray:
	"""
	Positives among the top n of each row; ties at the cut go to earlier columns.

	scores is (m, C) with columns already in tie-break order; labels is (C,) bool.
	"""
	scores = np.atleast_2d(scores)
	n_rows, n_cols = scores.shape
	if n_rows == 0 or n == 0:
		return np.zeros(n_rows, dtype=np.int64)
	threshold = -np.partition(-scores, n - 1, axis=1)[:, n - 1]
	above = scores > threshold[:, np.newaxis]
	at = scores == threshold[:, np.newaxis]
	remaining = n - above.sum(axis=1)
	taken_at = at & (np.cumsum(at, axis=1) <= remaining[:, np.newaxis])
	labels = np.asarray(labels, dtype=bool)
	return ((above | taken_at) & labels).sum(axis=1)


def ranking_order(pairs: np.ndarray, scores: np.ndarray) -> np.ndarray:
	"""
	Indices by descending score, then ascending (u, v)
	"""
	return np.lexsort((pairs[:, 1], pairs[:, 0], -scores))


def precision_at_n(ranked, positives: Collection, n: int | None = None) -> float:
	"""
	Fraction of the top-n scored pairs that are held-out links; n defaults to |positives|
	"""
	positives = {(min(int(u), int(v)), max(int(u), int(v))) for u, v in positives}
	n = len(positives) if n is None else int(n)
	if n > len(ranked):
		raise ValidationError(f"Cannot take the top {n} of {len(ranked)} ranked pairs")
	if n <= 0:
		raise ValidationError("Precision needs n >= 1")
	pairs = np.array([(min(p.u, p.v), max(p.u, p.v)) for p in ranked], dtype=np.int64).reshape(-1, 2)
	scores = np.array([p.score for p in ranked], dtype=np.float64)
	top = ranking_order(pairs, scores)[:n]
	hits = sum(1 for u, v in pairs[top] if (int(u), int(v)) in positives)
	return hits / n


def split_metrics(scores: np.ndarray, labels: np.ndarray) -> SplitMetrics:
	"""
	All metrics for one split. scores and labels follow the split's (u, v) candidate order.
	"""
	scores = np.asarray(scores, dtype=np.float64)
	labels = np.asarray(labels, dtype=bool)
	pos = scores[labels]
	neg = scores[~labels]
	p1 = scored_fraction(pos)
	p2 = scored_fraction(neg)
	auc_min, auc_max = auc_bounds(p1, p2)
	n = len(pos)
	hits = int(top_n_hits(scores[np.newaxis], labels, n)[0])
	return SplitMetrics(
		auc=roc_auc(pos, neg),
		auc_min=auc_min,
		auc_max=auc_max,
		p1=p1,
		p2=p2,
		precision=hits / n,
		n=n,
	)

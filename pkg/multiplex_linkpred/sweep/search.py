"""
Coefficient sweep over the simplex grid.

Each split is scored once per grid point from its stored triad matrices. Pairs whose triad
matrix is all zero score 0 for every eta, so they are folded into AUC and precision as a
single tied block and only the remaining pairs are re-scored per point. Points that weight
a layer without edges cannot be scored and carry NaN metrics.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from multiplex_linkpred import hooks
from multiplex_linkpred.evaluation.metrics import (
	mann_whitney_counts,
	mann_whitney_counts_by_negatives,
	top_n_hits,
)
from multiplex_linkpred.evaluation.splits import EvalSplit
from multiplex_linkpred.exceptions import IndexMismatchError, ValidationError
from multiplex_linkpred.multiplex.triads import TriadIndex
from multiplex_linkpred.scoring.multiplex import (
	CoefficientVector,
	coefficient_matrices,
	layer_weights,
	weighted_triads,
)
from multiplex_linkpred.sweep.grid import SimplexGrid
from multiplex_linkpred.utils import chunked, logger, parallel_map

log = logger("sweep")

OBJECTIVES = ("auc", "precision")
_FIELDS = ("auc", "precision", "p1", "p2", "auc_min", "auc_max")


def check_objective(objective: str) -> str:
	if objective not in OBJECTIVES:
		raise ValidationError(f"Objective must be one of {', '.join(OBJECTIVES)}, got {objective!r}")
	return objective


@dataclass(frozen=True, eq=False)
class SweepResult:
	grid: SimplexGrid
	auc: np.ndarray
	precision: np.ndarray
	p1: np.ndarray
	p2: np.ndarray
	auc_min: np.ndarray
	auc_max: np.ndarray
	n_splits: int
	objective: str = "auc"

	def best_index(self, objective: str | None = None) -> int:
		"""
		First grid point (enumeration order) reaching the maximum; NaN points are skipped
		"""
		values = getattr(self, check_objective(objective or self.objective))
		if len(values) == 0:
			raise ValidationError("Sweep result has no grid points")
		if np.isnan(values).all():
			raise ValidationError("Every grid point weights a layer without edges")
		return int(np.nanargmax(values))

	@property
	def best_by_auc(self) -> CoefficientVector:
		return self.grid.point(self.best_index("auc"))

	@property
	def best_by_precision(self) -> CoefficientVector:
		return self.grid.point(self.best_index("precision"))

	@property
	def best(self) -> CoefficientVector:
		return self.grid.point(self.best_index())

	def metrics_at(self, i: int) -> dict[str, float]:
		return {name: float(getattr(self, name)[i]) for name in _FIELDS}


class _SplitScorer:
	"""
	Grid-point metrics for one split, given its triad index
	"""

	def __init__(self, index: TriadIndex, split: EvalSplit):
		pairs, labels = split.candidates()
		rows = index.rows_for(pairs)
		flat = index.matrices[rows].reshape(len(rows), -1)
		nonzero = (flat != 0).any(axis=1)
		self.labels = labels
		self.zero_matrix = ~nonzero
		self.reduced = np.flatnonzero(nonzero)
		self.flat = flat[self.reduced]
		self.red_labels = labels[self.reduced]
		self.n_pos = int(labels.sum())
		self.n_neg = len(labels) - self.n_pos
		if self.n_neg == 0:
			raise ValidationError("Split has no negative candidates to rank against")
		self.pos_red = int(self.red_labels.sum())
		self.neg_red = len(self.reduced) - self.pos_red
		self.zero_pos = self.n_pos - self.pos_red
		self.zero_neg = self.n_neg - self.neg_red
		self.avg_degrees = index.layer_avg_degrees
		self.empty_layers = self.avg_degrees <= 0

	def score(self, points: np.ndarray) -> dict[str, np.ndarray]:
		"""
		Metrics per point; points with a positive coefficient on a layer without edges are NaN
		"""
		feasible = ~(points[:, self.empty_layers] != 0).any(axis=1)
		if feasible.all():
			return self._score(points)
		metrics = {name: np.full(len(points), np.nan) for name in _FIELDS}
		if feasible.any():
			for name, values in self._score(points[feasible]).items():
				metrics[name][feasible] = values
		return metrics

	def _score(self, points: np.ndarray) -> dict[str, np.ndarray]:
		weights = layer_weights(points, self.avg_degrees)
		scores = weighted_triads(coefficient_matrices(weights), self.flat)
		pos = scores[:, self.red_labels]
		neg = scores[:, ~self.red_labels]

		wins = np.zeros(len(points), dtype=np.float64)
		ties = np.zeros(len(points), dtype=np.float64)
		# sort whichever side is smaller, search the other
		if self.pos_red <= self.neg_red:
			pos_sorted = np.sort(pos, axis=1)
			for i in range(len(points)):
				wins[i], ties[i] = mann_whitney_counts_by_negatives(pos_sorted[i], neg[i])
		else:
			neg_sorted = np.sort(neg, axis=1)
			for i in range(len(points)):
				wins[i], ties[i] = mann_whitney_counts(pos[i], neg_sorted[i])
		pos_zero = (pos == 0).sum(axis=1)
		neg_zero = (neg == 0).sum(axis=1)
		wins += (self.pos_red - pos_zero) * self.zero_neg
		ties += pos_zero * self.zero_neg + self.zero_pos * (neg_zero + self.zero_neg)
		auc = (wins + 0.5 * ties) / (self.n_pos * self.n_neg)

		p1 = (self.pos_red - pos_zero) / self.n_pos
		p2 = (self.neg_red - neg_zero) / self.n_neg
		auc_min = 0.5 * (1.0 + p1) * (1.0 - p2)
		auc_max = auc_min + p1 * p2

		return {
			"auc": auc,
			"precision": self._hits(scores) / self.n_pos,
			"p1": p1,
			"p2": p2,
			"auc_min": auc_min,
			"auc_max": auc_max,
		}

	def _hits(self, scores: np.ndarray) -> np.ndarray:
		n = self.n_pos
		scored = (scores > 0).sum(axis=1)
		hits = np.zeros(len(scores), dtype=np.int64)
		enough = scored >= n
		if enough.any():
			hits[enough] = top_n_hits(scores[enough], self.red_labels, n)
		# top n reaches into the zero-score block, ordered by (u, v) across all candidates
		for i in np.flatnonzero(~enough):
			row = scores[i]
			hits[i] = int((self.red_labels & (row > 0)).sum())
			zero = self.zero_matrix.copy()
			zero[self.reduced[row == 0]] = True
			fill = np.flatnonzero(zero)[: n - int(scored[i])]
			hits[i] += int(self.labels[fill].sum())
		return hits


def chunk_points(n_pairs: int) -> int:
	"""
	Grid points per block, so that a block's (points, pairs) score matrix stays under hooks.sweep_chunk_cells
	"""
	return max(1, min(hooks.sweep_chunk_size, hooks.sweep_chunk_cells // max(n_pairs, 1)))


class GridAccumulator:
	"""
	Running sums of grid-point metrics over splits, fed one split at a time
	"""

	def __init__(self, grid: SimplexGrid, threads: int = 1):
		self.grid = grid
		self.threads = threads
		self.n_splits = 0
		self._sums = {name: np.zeros(len(grid), dtype=np.float64) for name in _FIELDS}

	def add(self, index: TriadIndex, split: EvalSplit):
		if index.n_layers != self.grid.dimension:
			raise IndexMismatchError(f"Index has {index.n_layers} layers, grid has {self.grid.dimension}")
		scorer = _SplitScorer(index, split)
		points = self.grid.points
		blocks = chunked(len(points), chunk_points(len(scorer.reduced)))
		parts = parallel_map(lambda block: scorer.score(points[block]), blocks, self.threads)
		for name in _FIELDS:
			if parts:
				self._sums[name] += np.concatenate([part[name] for part in parts])
		self.n_splits += 1
		log.debug("Swept split %d (%d scored pairs)", self.n_splits, len(scorer.reduced))

	def result(self, objective: str = "auc") -> SweepResult:
		if self.n_splits == 0:
			raise ValidationError("Sweep needs at least one split")
		means = {name: total / self.n_splits for name, total in self._sums.items()}
		return SweepResult(grid=self.grid, n_splits=self.n_splits, objective=check_objective(objective), **means)


def sweep(indexes, splits, grid: SimplexGrid, objective: str = "auc", threads: int = 1) -> SweepResult:
	"""
	Mean AUC and precision per grid point over the splits.

	indexes is either one TriadIndex shared by every split or one index per split
	(built on that split's training network); both may be lazy iterables.
	"""
	check_objective(objective)
	accumulator = GridAccumulator(grid, threads=threads)
	if isinstance(indexes, TriadIndex):
		pairs = zip(itertools.repeat(indexes), splits)
	else:
		pairs = zip(indexes, splits, strict=True)
	try:
		for index, split in pairs:
			accumulator.add(index, split)
	except ValueError as e:
		if "zip()" in str(e):
			raise IndexMismatchError("Number of triad indexes does not match number of splits")
		raise
	return accumulator.result(objective)

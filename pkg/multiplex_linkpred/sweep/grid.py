from dataclasses import dataclass
from math import comb

import numpy as np

from multiplex_linkpred import hooks
from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.scoring.multiplex import CoefficientVector

STEP_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SimplexGrid:
	dimension: int
	step: float
	counts: np.ndarray

	@property
	def divisions(self) -> int:
		return int(round(1.0 / self.step))

	@property
	def points(self) -> np.ndarray:
		return self.counts / self.divisions

	def __len__(self):
		return len(self.counts)

	def point(self, i: int) -> CoefficientVector:
		return CoefficientVector(tuple(self.points[i]))

	def corners(self) -> np.ndarray:
		"""
		Rows of the one-hot points, in layer order
		"""
		k = self.divisions
		return np.array([int(np.flatnonzero(self.counts[:, a] == k)[0]) for a in range(self.dimension)])

	def index_of(self, eta) -> int:
		target = np.rint(np.asarray(eta, dtype=np.float64) * self.divisions).astype(np.int64)
		hits = np.flatnonzero((self.counts == target).all(axis=1))
		if len(hits) == 0:
			raise ValidationError(f"{eta} is not a point of the grid")
		return int(hits[0])


def _compositions(total: int, parts: int):
	"""
	Nonnegative integer vectors of length parts summing to total, lexicographically descending
	"""
	if parts == 1:
		yield (total,)
		return
	for first in range(total, -1, -1):
		for rest in _compositions(total - first, parts - 1):
			yield (first, *rest)


def simplex_grid(n_layers: int, step: float) -> SimplexGrid:
	"""
	Every nonnegative vector with entries on the step lattice summing to 1
	"""
	if n_layers < 1:
		raise ValidationError(f"Grid dimension must be at least 1, got {n_layers}")
	if not 0.0 < step <= 1.0:
		raise ValidationError(f"Grid step must lie in (0, 1], got {step}")
	k = int(round(1.0 / step))
	if abs(1.0 / step - k) > STEP_TOL:
		raise ValidationError(f"1/step must be an integer, got step={step}")
	counts = np.array(list(_compositions(k, n_layers)), dtype=np.int64)
	return SimplexGrid(dimension=n_layers, step=1.0 / k, counts=counts)


def grid_size(n_layers: int, divisions: int) -> int:
	return comb(divisions + n_layers - 1, n_layers - 1)


def default_step(n_layers: int) -> float:
	return hooks.sweep_steps.get(n_layers, hooks.default_sweep_step)


def barycentric(points: np.ndarray) -> np.ndarray:
	"""
	2-D triangle coordinates of 3-simplex points: corner 1 at (0, 0), 2 at (1, 0), 3 at (1/2, sqrt(3)/2)
	"""
	points = np.atleast_2d(np.asarray(points, dtype=np.float64))
	if points.shape[1] != 3:
		raise ValidationError(f"Barycentric coordinates need 3 layers, got {points.shape[1]}")
	x = points[:, 1] + 0.5 * points[:, 2]
	y = (np.sqrt(3.0) / 2.0) * points[:, 2]
	return np.column_stack((x, y))

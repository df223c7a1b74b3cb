"""
Multiplex Adamic-Adar.

    MAA(u, v) = sum_{alpha, beta} eta_a * eta_b / sqrt(<k>_a <k>_b) * s[alpha][beta](u, v)

summed over ordered layer pairs, so cross terms count once per orientation. With eta
one-hot on layer x this is AA on x divided by <k>_x.
"""

from dataclasses import dataclass

import numpy as np

from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.multiplex.triads import TriadIndex, TriadMatrix

SIMPLEX_TOL = 1e-9


@dataclass(frozen=True)
class CoefficientVector:
	eta: tuple[float, ...]

	def __post_init__(self):
		eta = tuple(float(x) for x in self.eta)
		object.__setattr__(self, "eta", eta)
		if not eta:
			raise ValidationError("Coefficient vector is empty")
		if any(not np.isfinite(x) or x < -SIMPLEX_TOL or x > 1 + SIMPLEX_TOL for x in eta):
			raise ValidationError(f"Coefficients must lie in [0, 1], got {eta}")
		if abs(sum(eta) - 1.0) > SIMPLEX_TOL:
			raise ValidationError(f"Coefficients must sum to 1, got {sum(eta):.12g}")

	@classmethod
	def one_hot(cls, n_layers: int, layer: int) -> "CoefficientVector":
		eta = [0.0] * n_layers
		eta[layer] = 1.0
		return cls(tuple(eta))

	@classmethod
	def parse(cls, text: str) -> "CoefficientVector":
		"""
		"0.3/0.4/0.3" or "0.3,0.4,0.3"
		"""
		parts = text.replace(",", "/").split("/")
		try:
			return cls(tuple(float(p) for p in parts if p.strip()))
		except ValueError:
			raise ValidationError(f"Cannot parse coefficients {text!r}")

	def __len__(self):
		return len(self.eta)

	def __str__(self):
		return "/".join(f"{x:g}" for x in self.eta)

	def as_array(self) -> np.ndarray:
		return np.array(self.eta, dtype=np.float64)


def layer_weights(eta, avg_degrees) -> np.ndarray:
	"""
	eta_a / sqrt(<k>_a), no simplex check; layers with eta_a = 0 get weight 0
	"""
	eta = np.asarray(eta, dtype=np.float64)
	avg_degrees = np.asarray(avg_degrees, dtype=np.float64)
	if eta.shape[-1] != avg_degrees.shape[0]:
		raise ValidationError(f"{eta.shape[-1]} coefficients for {avg_degrees.shape[0]} layers")
	active = eta != 0
	empty = np.broadcast_to(avg_degrees <= 0, eta.shape)
	if (active & empty).any():
		raise ValidationError("Positive coefficient on a layer without edges")
	weights = np.zeros_like(eta)
	safe = np.where(avg_degrees > 0, avg_degrees, 1.0)
	weights[active] = (eta / np.sqrt(safe))[active]
	return weights


def coefficient_matrices(weights: np.ndarray) -> np.ndarray:
	"""
	Flattened outer products w w^T, one row per weight vector
	"""
	weights = np.atleast_2d(weights)
	return np.einsum("ma,mb->mab", weights, weights).reshape(len(weights), -1)


def weighted_triads(coeffs: np.ndarray, flat: np.ndarray) -> np.ndarray:
	"""
	(M, L*L) coefficients against (P, L*L) flattened triad matrices, giving (M, P).

	Terms are added one layer pair at a time, so a score does not depend on the batch it is in.
	"""
	scores = np.zeros((len(coeffs), len(flat)), dtype=np.float64)
	for k in range(flat.shape[1]):
		scores += coeffs[:, k, np.newaxis] * flat[np.newaxis, :, k]
	return scores


def maa_from_weights(matrices: np.ndarray, weights: np.ndarray) -> np.ndarray:
	"""
	Bilinear form over stored triad matrices. weights (L,) gives (P,), weights (M, L) gives (M, P)
	"""
	flat = matrices.reshape(len(matrices), -1)
	scores = weighted_triads(coefficient_matrices(weights), flat)
	if np.ndim(weights) == 1:
		return scores[0]
	return scores


def _coefficients(eta, n_layers) -> CoefficientVector:
	if not isinstance(eta, CoefficientVector):
		eta = CoefficientVector(tuple(eta))
	if len(eta) != n_layers:
		raise ValidationError(f"{len(eta)} coefficients for {n_layers} layers")
	return eta


def maa_score(tm: TriadMatrix, eta, avg_degrees) -> float:
	eta = _coefficients(eta, len(avg_degrees))
	weights = layer_weights(eta.as_array(), avg_degrees)
	return float(maa_from_weights(tm.s[np.newaxis], weights)[0])


def maa_scores(index: TriadIndex, eta, pairs=None) -> np.ndarray:
	"""
	MAA for the given pairs (default: every pair of the index, in index order)
	"""
	eta = _coefficients(eta, index.n_layers)
	weights = layer_weights(eta.as_array(), index.layer_avg_degrees)
	if pairs is None:
		matrices = index.matrices
	else:
		matrices = index.matrices[index.rows_for(pairs)]
	if len(matrices) == 0:
		return np.zeros(0, dtype=np.float64)
	return maa_from_weights(matrices, weights)

"""
Pair kernels shared by the similarity scorers and the triad index.

Every neighbourhood score here reduces to sum_w L[u, w] * R[v, w] for two row-weighted
adjacency matrices L and R, evaluated row-wise for a batch of pairs.
"""

import numpy as np
from scipy import sparse

from multiplex_linkpred.multiplex.network import Layer
from multiplex_linkpred.utils import chunked


def inverse_log_degrees(degrees: np.ndarray) -> np.ndarray:
	"""
	1 / ln k per node; 0 where k < 2 (ln 1 = 0 has no finite weight)
	"""
	degrees = np.asarray(degrees, dtype=np.float64)
	weights = np.zeros_like(degrees)
	mask = degrees >= 2
	weights[mask] = 1.0 / np.log(degrees[mask])
	return weights


def weighted_adjacency(layer: Layer, weights: np.ndarray) -> sparse.csr_matrix:
	"""
	A @ diag(weights): column w of the adjacency scaled by weights[w]
	"""
	return sparse.csr_matrix(layer.adjacency @ sparse.diags(weights, format="csr"))


def pair_products(left: sparse.csr_matrix, right: sparse.csr_matrix, pairs: np.ndarray, chunk_size: int = 50_000) -> np.ndarray:
	"""
	sum_w left[u, w] * right[v, w] for every (u, v) row of pairs
	"""
	out = np.zeros(len(pairs), dtype=np.float64)
	for block in chunked(len(pairs), chunk_size):
		src = pairs[block, 0]
		dst = pairs[block, 1]
		out[block] = np.asarray(left[src].multiply(right[dst]).sum(axis=1)).ravel()
	return out

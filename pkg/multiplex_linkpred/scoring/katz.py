"""
Katz index over walks of length >= 2.

Truncated mode sums beta^l * (A^l)[u, v] for l = 2..max_len by repeated sparse-dense
products. Exact mode solves the resolvent (I - beta A)^-1 and subtracts the l = 0 and
l = 1 terms, which requires beta < 1 / lambda_max.
"""

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from multiplex_linkpred import hooks
from multiplex_linkpred.exceptions import DivergenceError, ValidationError
from multiplex_linkpred.multiplex.network import Layer
from multiplex_linkpred.utils import as_pair_array, chunked

# dense eigen-solver below this size
_DENSE_LIMIT = 2000
_ROW_BLOCK = 1024


def spectral_radius(layer: Layer) -> float:
	if layer.edge_count == 0:
		return 0.0
	if layer.n_nodes <= _DENSE_LIMIT:
		return float(np.linalg.eigvalsh(layer.adjacency.toarray())[-1])
	value = sparse_linalg.eigsh(layer.adjacency, k=1, which="LA", return_eigenvectors=False)
	return float(value[0])


def _check_params(beta, max_len, exact):
	if beta <= 0:
		raise ValidationError(f"Katz beta must be positive, got {beta}")
	if not exact and max_len < 2:
		raise ValidationError(f"Katz max_len must be at least 2, got {max_len}")


def _exact_table(layer: Layer, beta: float) -> np.ndarray:
	radius = spectral_radius(layer)
	if radius > 0 and beta >= 1.0 / radius:
		raise DivergenceError(f"Katz series diverges: beta={beta} >= 1/lambda_max={1.0 / radius:.6g}")
	adjacency = layer.adjacency.toarray()
	identity = np.eye(layer.n_nodes)
	table = np.linalg.solve(identity - beta * adjacency, identity) - identity - beta * adjacency
	np.fill_diagonal(table, 0.0)
	return table


def _truncated_rows(adjacency: sparse.csr_matrix, sources: np.ndarray, beta: float, max_len: int) -> np.ndarray:
	"""
	Katz rows for the given source nodes; A is symmetric so row walks are A @ rows.T
	"""
	walks = adjacency[sources].toarray()
	total = np.zeros_like(walks)
	for length in range(2, max_len + 1):
		walks = np.asarray(adjacency @ walks.T).T
		total += beta**length * walks
	return total


def katz_scores(
	layer: Layer,
	beta: float = hooks.katz_defaults["beta"],
	max_len: int = hooks.katz_defaults["max_len"],
	exact: bool = False,
) -> np.ndarray:
	"""
	Dense N x N table of Katz scores, zero on the diagonal
	"""
	_check_params(beta, max_len, exact)
	if exact:
		return _exact_table(layer, beta)
	table = np.zeros((layer.n_nodes, layer.n_nodes), dtype=np.float64)
	for block in chunked(layer.n_nodes, _ROW_BLOCK):
		sources = np.arange(block.start, block.stop)
		table[block] = _truncated_rows(layer.adjacency, sources, beta, max_len)
	np.fill_diagonal(table, 0.0)
	return table


def katz_pair_scores(
	layer: Layer,
	pairs,
	beta: float = hooks.katz_defaults["beta"],
	max_len: int = hooks.katz_defaults["max_len"],
	exact: bool = False,
) -> np.ndarray:
	"""
	Katz scores for candidate pairs only, computed from their distinct source rows
	"""
	_check_params(beta, max_len, exact)
	pairs = as_pair_array(pairs)
	if len(pairs) == 0:
		return np.zeros(0, dtype=np.float64)
	if (pairs[:, 0] == pairs[:, 1]).any():
		raise ValidationError("Scored pairs must have two distinct nodes")
	if exact:
		return _exact_table(layer, beta)[pairs[:, 0], pairs[:, 1]]
	sources, inverse = np.unique(pairs[:, 0], return_inverse=True)
	out = np.zeros(len(pairs), dtype=np.float64)
	for block in chunked(len(sources), _ROW_BLOCK):
		rows = _truncated_rows(layer.adjacency, sources[block], beta, max_len)
		mask = (inverse >= block.start) & (inverse < block.stop)
		out[mask] = rows[inverse[mask] - block.start, pairs[mask, 1]]
	return out

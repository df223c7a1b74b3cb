"""
Single-layer neighbourhood scorers: Adamic-Adar, Common Neighbors, Jaccard,
Preferential Attachment, and the uniform random null model.

Neighbour sets are taken verbatim: Gamma(u) contains v when the edge exists, which only
matters for Jaccard (the union then includes u and v themselves).
"""

import numpy as np

from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.multiplex.kernels import inverse_log_degrees, pair_products, weighted_adjacency
from multiplex_linkpred.multiplex.network import Layer
from multiplex_linkpred.utils import as_pair_array


def _pairs(layer: Layer, pairs) -> np.ndarray:
	pairs = as_pair_array(pairs)
	if len(pairs) == 0:
		return pairs
	if (pairs[:, 0] == pairs[:, 1]).any():
		raise ValidationError("Scored pairs must have two distinct nodes")
	if pairs.min() < 0 or pairs.max() >= layer.n_nodes:
		raise ValidationError(f"Node id out of range [0, {layer.n_nodes})")
	return pairs


def _single(fn, layer, u, v) -> float:
	return float(fn(layer, np.array([[u, v]], dtype=np.int64))[0])


def aa_scores(layer: Layer, pairs) -> np.ndarray:
	pairs = _pairs(layer, pairs)
	weighted = weighted_adjacency(layer, inverse_log_degrees(layer.degrees))
	return pair_products(weighted, layer.adjacency, pairs)


def cn_scores(layer: Layer, pairs) -> np.ndarray:
	pairs = _pairs(layer, pairs)
	return pair_products(layer.adjacency, layer.adjacency, pairs)


def jc_scores(layer: Layer, pairs) -> np.ndarray:
	pairs = _pairs(layer, pairs)
	common = pair_products(layer.adjacency, layer.adjacency, pairs)
	union = layer.degrees[pairs[:, 0]] + layer.degrees[pairs[:, 1]] - common
	scores = np.zeros(len(pairs), dtype=np.float64)
	nonzero = union > 0
	scores[nonzero] = common[nonzero] / union[nonzero]
	return scores


def pa_scores(layer: Layer, pairs) -> np.ndarray:
	pairs = _pairs(layer, pairs)
	return (layer.degrees[pairs[:, 0]] * layer.degrees[pairs[:, 1]]).astype(np.float64)


def random_scores(layer: Layer, pairs, rng: np.random.Generator | None = None) -> np.ndarray:
	pairs = _pairs(layer, pairs)
	rng = rng if rng is not None else np.random.default_rng()
	return rng.random(len(pairs))


def aa_score(layer: Layer, u: int, v: int) -> float:
	"""
	Sum of 1 / ln k_w over common neighbours w
	"""
	return _single(aa_scores, layer, u, v)


def cn_score(layer: Layer, u: int, v: int) -> float:
	return _single(cn_scores, layer, u, v)


def jc_score(layer: Layer, u: int, v: int) -> float:
	return _single(jc_scores, layer, u, v)


def pa_score(layer: Layer, u: int, v: int) -> float:
	return _single(pa_scores, layer, u, v)

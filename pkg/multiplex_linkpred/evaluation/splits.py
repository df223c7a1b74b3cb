"""
Evaluation splits: held-out positives plus candidate negatives for one target layer.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.multiplex.network import MultiplexNetwork, aggregate, build_layer
from multiplex_linkpred.utils import pair_keys, sort_pairs

RANDOM = "random"
CROSSLAYER = "crosslayer"


@dataclass(frozen=True, eq=False)
class EvalSplit:
	train: MultiplexNetwork
	target_layer: int
	positives: np.ndarray
	negatives: np.ndarray
	seed: int
	mode: str = RANDOM

	def __post_init__(self):
		if len(self.positives) == 0:
			raise ValidationError("A split needs at least one held-out link")
		n_nodes = self.train.n_nodes
		pos_keys = pair_keys(self.positives, n_nodes)
		neg_keys = pair_keys(self.negatives, n_nodes)
		if np.isin(pos_keys, neg_keys).any():
			raise ValidationError("Positives and negatives overlap")
		target = self.train.layers[self.target_layer]
		if target.has_edges(self.positives).any() or target.has_edges(self.negatives).any():
			raise ValidationError("Split candidates must be non-edges of the training target layer")

	@property
	def target_name(self) -> str:
		return self.train.layer_names[self.target_layer]

	@cached_property
	def _candidates(self) -> tuple[np.ndarray, np.ndarray]:
		pairs = np.concatenate((self.positives, self.negatives), axis=0)
		labels = np.concatenate(
			(np.ones(len(self.positives), dtype=bool), np.zeros(len(self.negatives), dtype=bool))
		)
		order = np.lexsort((pairs[:, 1], pairs[:, 0]))
		return pairs[order], labels[order]

	def candidates(self) -> tuple[np.ndarray, np.ndarray]:
		"""
		All candidate pairs in (u, v) order, with True marking held-out links
		"""
		return self._candidates


def holdout_size(fraction: float, n_edges: int) -> int:
	return math.ceil(fraction * n_edges - 1e-9)


def _non_edges(universe: np.ndarray, forbidden_keys: np.ndarray, n_nodes: int) -> np.ndarray:
	"""
	Unordered pairs inside universe whose key is not forbidden, in (u, v) order
	"""
	universe = np.sort(universe)
	iu, ju = np.triu_indices(len(universe), k=1)
	pairs = np.column_stack((universe[iu], universe[ju])).astype(np.int64)
	keep = ~np.isin(pair_keys(pairs, n_nodes), forbidden_keys)
	return pairs[keep]


def candidate_pairs(net: MultiplexNetwork, x) -> np.ndarray:
	"""
	Non-edges of layer x among the nodes active in it, in (u, v) order
	"""
	layer = net.layer(x)
	universe = np.flatnonzero(layer.degrees > 0)
	return _non_edges(universe, pair_keys(layer.edges(), net.n_nodes), net.n_nodes)


def cap_pairs(pairs: np.ndarray, neg_cap: int | None, rng: np.random.Generator) -> np.ndarray:
	if neg_cap is None or len(pairs) <= neg_cap:
		return pairs
	chosen = np.sort(rng.choice(len(pairs), size=int(neg_cap), replace=False))
	return pairs[chosen]


def split_holdout(
	net: MultiplexNetwork, x, fraction: float, seed: int, neg_cap: int | None = 2_000_000
) -> EvalSplit:
	"""
	Remove ceil(fraction * E_x) random links of layer x as positives.

	Negatives are all other unordered pairs among nodes active in the original layer x,
	down-sampled to neg_cap with the same generator.
	"""
	if not 0.0 < fraction < 1.0:
		raise ValidationError(f"Holdout fraction must lie in (0, 1), got {fraction}")
	x = net.layer_id(x)
	layer = net.layers[x]
	edges = layer.edges()
	if len(edges) < 2:
		raise ValidationError(f"Layer {layer.name} needs at least 2 links for a holdout split")
	rng = np.random.default_rng(seed)
	k = holdout_size(fraction, len(edges))
	if k >= len(edges):
		raise ValidationError(f"Holdout of {fraction} would remove every link of layer {layer.name}")
	held = np.zeros(len(edges), dtype=bool)
	held[rng.choice(len(edges), size=k, replace=False)] = True
	positives = edges[held]
	train_layer = build_layer(layer.name, net.n_nodes, edges[~held])
	negatives = cap_pairs(candidate_pairs(net, x), neg_cap, rng)
	return EvalSplit(
		train=net.replace_layer(x, train_layer),
		target_layer=x,
		positives=positives,
		negatives=negatives,
		seed=int(seed),
		mode=RANDOM,
	)


def cross_layer_testset(net: MultiplexNetwork, x, seed: int = 0, neg_cap: int | None = 2_000_000) -> EvalSplit:
	"""
	Positives are links present in another layer but absent from layer x; the network is kept whole.
	"""
	if net.n_layers < 2:
		raise ValidationError("Cross-layer test sets need at least 2 layers")
	x = net.layer_id(x)
	others = [i for i in range(net.n_layers) if i != x]
	other_edges = aggregate(net, others).edges()
	target_keys = pair_keys(net.layers[x].edges(), net.n_nodes)
	positives = other_edges[~np.isin(pair_keys(other_edges, net.n_nodes), target_keys)]
	if len(positives) == 0:
		raise ValidationError(f"Layer {net.layer_names[x]} has no non-overlapping links in other layers")
	union = aggregate(net)
	universe = np.flatnonzero(union.degrees > 0)
	negatives = _non_edges(universe, pair_keys(union.edges(), net.n_nodes), net.n_nodes)
	negatives = cap_pairs(negatives, neg_cap, np.random.default_rng(seed))
	return EvalSplit(
		train=net,
		target_layer=x,
		positives=sort_pairs(positives),
		negatives=negatives,
		seed=int(seed),
		mode=CROSSLAYER,
	)

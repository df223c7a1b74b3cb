"""
Immutable multiplex graph: L undirected layers over one shared node index [0, N).

Each layer keeps a symmetric 0/1 CSR adjacency matrix with sorted column indices,
so neighbors(u) is a sorted slice and pair kernels can work row-wise.
"""

import hashlib
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import sparse

from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.utils import as_pair_array, throw


@dataclass(frozen=True, eq=False)
class Layer:
	name: str
	adjacency: sparse.csr_matrix

	@cached_property
	def n_nodes(self) -> int:
		return self.adjacency.shape[0]

	@cached_property
	def degrees(self) -> np.ndarray:
		return np.diff(self.adjacency.indptr).astype(np.int64)

	@cached_property
	def edge_count(self) -> int:
		return int(self.degrees.sum()) // 2

	@cached_property
	def active_nodes(self) -> int:
		return int(np.count_nonzero(self.degrees))

	@cached_property
	def avg_degree(self) -> float:
		"""
		<k> over nodes with at least one edge in this layer; 0 for an empty layer
		"""
		if self.active_nodes == 0:
			return 0.0
		return 2.0 * self.edge_count / self.active_nodes

	def neighbors(self, u: int) -> np.ndarray:
		self._check_node(u)
		start, stop = self.adjacency.indptr[u], self.adjacency.indptr[u + 1]
		return self.adjacency.indices[start:stop]

	def degree(self, u: int) -> int:
		self._check_node(u)
		return int(self.degrees[u])

	def edges(self) -> np.ndarray:
		"""
		Each undirected edge once, as (u, v) with u < v, sorted
		"""
		upper = sparse.triu(self.adjacency, k=1, format="csr")
		rows = np.repeat(np.arange(self.n_nodes, dtype=np.int64), np.diff(upper.indptr))
		return np.column_stack((rows, upper.indices.astype(np.int64)))

	def has_edges(self, pairs) -> np.ndarray:
		pairs = as_pair_array(pairs)
		if len(pairs) == 0:
			return np.zeros(0, dtype=bool)
		return np.asarray(self.adjacency[pairs[:, 0], pairs[:, 1]]).ravel() > 0

	def _check_node(self, u):
		if not 0 <= int(u) < self.n_nodes:
			throw(f"Node id {u} out of range [0, {self.n_nodes})")


def build_layer(name: str, n_nodes: int, edges) -> Layer:
	"""
	Layer from (u, v) rows: symmetrised, self-loops dropped, duplicates merged
	"""
	edges = as_pair_array(edges)
	if len(edges) and (edges.min() < 0 or edges.max() >= n_nodes):
		throw(f"Edge endpoint out of range [0, {n_nodes}) in layer {name}")
	edges = edges[edges[:, 0] != edges[:, 1]]
	rows = np.concatenate((edges[:, 0], edges[:, 1]))
	cols = np.concatenate((edges[:, 1], edges[:, 0]))
	adjacency = sparse.csr_matrix(
		(np.ones(len(rows), dtype=np.float64), (rows, cols)), shape=(n_nodes, n_nodes)
	)
	adjacency.sum_duplicates()
	adjacency.data[:] = 1.0
	adjacency.sort_indices()
	return Layer(name=name, adjacency=adjacency)


@dataclass(frozen=True, eq=False)
class MultiplexNetwork:
	layers: tuple[Layer, ...]
	node_labels: tuple[str, ...]
	layer_labels: tuple[str, ...] = field(default=())

	def __post_init__(self):
		if not self.layers:
			throw("A multiplex network needs at least one layer")
		sizes = {layer.n_nodes for layer in self.layers}
		if sizes != {len(self.node_labels)}:
			throw("All layers must share the node index of the network")
		if not self.layer_labels:
			object.__setattr__(self, "layer_labels", tuple(layer.name for layer in self.layers))
		if len(set(self.layer_names)) != len(self.layer_names):
			throw(f"Layer names must be unique, got {self.layer_names}")

	@property
	def n_nodes(self) -> int:
		return len(self.node_labels)

	@property
	def n_layers(self) -> int:
		return len(self.layers)

	@property
	def layer_names(self) -> tuple[str, ...]:
		return tuple(layer.name for layer in self.layers)

	@cached_property
	def node_index(self) -> dict[str, int]:
		return {label: i for i, label in enumerate(self.node_labels)}

	def layer_id(self, selector) -> int:
		"""
		Resolve a layer by index, name or raw file label
		"""
		if isinstance(selector, (int, np.integer)):
			if not 0 <= int(selector) < self.n_layers:
				throw(f"Layer id {selector} out of range [0, {self.n_layers})")
			return int(selector)
		selector = str(selector)
		if selector in self.layer_names:
			return self.layer_names.index(selector)
		if selector in self.layer_labels:
			return self.layer_labels.index(selector)
		if selector.isdigit() and int(selector) < self.n_layers:
			return int(selector)
		throw(f"Unknown layer {selector!r}; available: {', '.join(self.layer_names)}")

	def layer(self, selector) -> Layer:
		return self.layers[self.layer_id(selector)]

	def degree(self, u: int, alpha) -> int:
		return self.layer(alpha).degree(u)

	def avg_degree(self, alpha) -> float:
		return self.layer(alpha).avg_degree

	def avg_degrees(self) -> np.ndarray:
		return np.array([layer.avg_degree for layer in self.layers], dtype=np.float64)

	def neighbors(self, u: int, alpha) -> np.ndarray:
		return self.layer(alpha).neighbors(u)

	def edges(self, alpha) -> np.ndarray:
		return self.layer(alpha).edges()

	def select_layers(self, selection: Sequence) -> "MultiplexNetwork":
		ids = [self.layer_id(s) for s in selection]
		if not ids:
			throw("Layer selection is empty")
		if len(set(ids)) != len(ids):
			throw(f"Duplicate layers in selection {list(selection)}")
		return MultiplexNetwork(
			layers=tuple(self.layers[i] for i in ids),
			node_labels=self.node_labels,
			layer_labels=tuple(self.layer_labels[i] for i in ids),
		)

	def replace_layer(self, alpha, layer: Layer) -> "MultiplexNetwork":
		index = self.layer_id(alpha)
		layers = list(self.layers)
		layers[index] = layer
		return MultiplexNetwork(layers=tuple(layers), node_labels=self.node_labels, layer_labels=self.layer_labels)

	def fingerprint(self) -> str:
		digest = hashlib.sha256()
		digest.update(np.int64(self.n_nodes).tobytes())
		for layer in self.layers:
			digest.update(layer.name.encode("utf-8"))
			digest.update(layer.adjacency.indptr.astype(np.int64).tobytes())
			digest.update(layer.adjacency.indices.astype(np.int64).tobytes())
		return digest.hexdigest()


def aggregate(net: MultiplexNetwork, layers: Sequence | None = None) -> Layer:
	"""
	Union of the selected layers' edges as a single layer
	"""
	if layers is None:
		ids = list(range(net.n_layers))
	else:
		ids = [net.layer_id(s) for s in layers]
	if not ids:
		raise ValidationError("Cannot aggregate an empty layer subset")
	union = net.layers[ids[0]].adjacency.copy()
	for i in ids[1:]:
		union = union + net.layers[i].adjacency
	union = sparse.csr_matrix(union)
	union.data[:] = 1.0
	union.sort_indices()
	return Layer(name="aggregate", adjacency=union)

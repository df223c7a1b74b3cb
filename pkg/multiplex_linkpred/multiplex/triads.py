"""
Multiplex triadic closures.

For a pair (u, v) and layers (alpha, beta), T_ab(u, v) is the set of third nodes w with
w in Gamma_alpha(u) and w in Gamma_beta(v). The triad matrix of the pair holds

    s[alpha][beta] = sum over w in T_ab(u, v) of 1 / sqrt(ln k_w^alpha * ln k_w^beta)

with terms where either degree is below 2 skipped. A TriadIndex stores these L x L
matrices for a fixed candidate set so that coefficient sweeps only redo the bilinear form.
"""

import hashlib
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from multiplex_linkpred import hooks
from multiplex_linkpred.exceptions import IndexMismatchError, ValidationError
from multiplex_linkpred.multiplex.kernels import inverse_log_degrees, pair_products, weighted_adjacency
from multiplex_linkpred.multiplex.network import MultiplexNetwork
from multiplex_linkpred.utils import as_pair_array, chunked, logger, pair_keys, parallel_map, sort_pairs

log = logger("triads")


@dataclass(frozen=True, eq=False)
class TriadMatrix:
	pair: tuple[int, int]
	s: np.ndarray

	def transpose(self) -> "TriadMatrix":
		return TriadMatrix(pair=(self.pair[1], self.pair[0]), s=self.s.T.copy())


@dataclass(frozen=True, eq=False)
class TriadIndex:
	n_nodes: int
	pairs: np.ndarray
	matrices: np.ndarray
	layer_avg_degrees: np.ndarray

	@property
	def n_layers(self) -> int:
		return len(self.layer_avg_degrees)

	def __len__(self):
		return len(self.pairs)

	@cached_property
	def _keys(self) -> np.ndarray:
		return pair_keys(self.pairs, self.n_nodes)

	def rows_for(self, pairs) -> np.ndarray:
		"""
		Row of each (u, v) in the index, orientation ignored
		"""
		pairs = as_pair_array(pairs)
		if len(pairs) == 0:
			return np.zeros(0, dtype=np.int64)
		ordered = np.sort(pairs, axis=1)
		keys = pair_keys(ordered, self.n_nodes)
		if len(self._keys) == 0:
			raise IndexMismatchError(f"Triad index is empty; {len(keys)} pair(s) missing")
		rows = np.minimum(np.searchsorted(self._keys, keys), len(self._keys) - 1)
		hit = self._keys[rows] == keys
		if not hit.all():
			u, v = ordered[np.flatnonzero(~hit)[0]]
			raise IndexMismatchError(
				f"Triad index has no entry for pair ({u}, {v}); {int((~hit).sum())} pair(s) missing"
			)
		return rows

	def __contains__(self, pair) -> bool:
		try:
			self.rows_for([pair])
		except IndexMismatchError:
			return False
		return True

	def __getitem__(self, pair) -> TriadMatrix:
		u, v = int(pair[0]), int(pair[1])
		row = int(self.rows_for([(u, v)])[0])
		tm = TriadMatrix(pair=(int(self.pairs[row, 0]), int(self.pairs[row, 1])), s=self.matrices[row])
		if u > v:
			return tm.transpose()
		return tm

	def digest(self) -> str:
		return pairs_digest(self.pairs)


def triad_members(net: MultiplexNetwork, u: int, v: int, alpha, beta) -> frozenset[int]:
	"""
	Third nodes w with w in Gamma_alpha(u) and w in Gamma_beta(v)
	"""
	if u == v:
		raise ValidationError("Triad members need two distinct nodes")
	common = np.intersect1d(net.neighbors(u, alpha), net.neighbors(v, beta), assume_unique=True)
	return frozenset(int(w) for w in common if w != u and w != v)


class _TriadKernels:
	"""
	Row-weighted adjacencies per layer; diagonal blocks use 1/ln k, off-diagonal sqrt of it
	"""

	def __init__(self, net: MultiplexNetwork):
		self.net = net
		self.full = []
		self.half = []
		for layer in net.layers:
			weights = inverse_log_degrees(layer.degrees)
			self.full.append(weighted_adjacency(layer, weights))
			self.half.append(weighted_adjacency(layer, np.sqrt(weights)))

	def matrices(self, pairs: np.ndarray) -> np.ndarray:
		n_layers = self.net.n_layers
		out = np.zeros((len(pairs), n_layers, n_layers), dtype=np.float64)
		for a in range(n_layers):
			out[:, a, a] = pair_products(self.full[a], self.net.layers[a].adjacency, pairs)
			for b in range(n_layers):
				if a != b:
					out[:, a, b] = pair_products(self.half[a], self.half[b], pairs)
		return out


def triad_matrix(net: MultiplexNetwork, u: int, v: int) -> TriadMatrix:
	if u == v:
		raise ValidationError("Triad matrix needs two distinct nodes")
	for node in (u, v):
		if not 0 <= int(node) < net.n_nodes:
			raise ValidationError(f"Node id {node} out of range [0, {net.n_nodes})")
	s = _TriadKernels(net).matrices(np.array([[u, v]], dtype=np.int64))[0]
	return TriadMatrix(pair=(int(u), int(v)), s=s)


def normalize_pairs(pairs, n_nodes: int) -> np.ndarray:
	"""
	Pairs as sorted (u < v) rows; rejects self-pairs, out-of-range ids and duplicates
	"""
	pairs = as_pair_array(pairs)
	if len(pairs) == 0:
		return pairs
	if (pairs[:, 0] == pairs[:, 1]).any():
		raise ValidationError("Candidate pairs must have two distinct nodes")
	if pairs.min() < 0 or pairs.max() >= n_nodes:
		raise ValidationError(f"Candidate pair node id out of range [0, {n_nodes})")
	ordered = sort_pairs(np.sort(pairs, axis=1))
	keys = pair_keys(ordered, n_nodes)
	if (np.diff(keys) == 0).any():
		raise ValidationError("Candidate pairs contain duplicates")
	return ordered


def build_triad_index(net: MultiplexNetwork, pairs, threads: int = 1) -> TriadIndex:
	"""
	One triad matrix per candidate pair, stored in (u, v) order
	"""
	ordered = normalize_pairs(pairs, net.n_nodes)
	kernels = _TriadKernels(net)
	blocks = chunked(len(ordered), hooks.triad_chunk_size)
	parts = parallel_map(lambda block: kernels.matrices(ordered[block]), blocks, threads)
	if parts:
		matrices = np.concatenate(parts, axis=0)
	else:
		matrices = np.zeros((0, net.n_layers, net.n_layers), dtype=np.float64)
	log.debug("Built triad index for %d pairs over %d layers", len(ordered), net.n_layers)
	return TriadIndex(
		n_nodes=net.n_nodes,
		pairs=ordered,
		matrices=matrices,
		layer_avg_degrees=net.avg_degrees(),
	)


def pairs_digest(pairs: np.ndarray) -> str:
	return hashlib.sha256(np.ascontiguousarray(pairs, dtype=np.int64).tobytes()).hexdigest()


def save_index(index: TriadIndex, path):
	np.savez_compressed(
		path,
		format_version=np.int64(hooks.triad_index_format_version),
		n_nodes=np.int64(index.n_nodes),
		pairs=index.pairs,
		matrices=index.matrices,
		layer_avg_degrees=index.layer_avg_degrees,
	)


def load_index(path) -> TriadIndex | None:
	"""
	Read a cached index; None when the file was written by another format version
	"""
	with np.load(path) as data:
		if int(data["format_version"]) != hooks.triad_index_format_version:
			return None
		return TriadIndex(
			n_nodes=int(data["n_nodes"]),
			pairs=data["pairs"],
			matrices=data["matrices"],
			layer_avg_degrees=data["layer_avg_degrees"],
		)


def load_or_build_index(net: MultiplexNetwork, pairs, cache_dir=None, threads: int = 1) -> TriadIndex:
	"""
	Triad index for (net, pairs), read from cache_dir when present and rebuilt otherwise
	"""
	if cache_dir is None:
		return build_triad_index(net, pairs, threads=threads)
	ordered = normalize_pairs(pairs, net.n_nodes)
	cache_dir = Path(cache_dir)
	cache_dir.mkdir(parents=True, exist_ok=True)
	key = hashlib.sha256((net.fingerprint() + pairs_digest(ordered)).encode("ascii")).hexdigest()[:32]
	path = cache_dir / f"triads-{key}.npz"
	if path.exists():
		try:
			index = load_index(path)
		except (OSError, KeyError, ValueError) as e:
			log.warning("Ignoring unreadable triad cache %s: %s", path, e)
			index = None
		if index is not None:
			log.debug("Triad index cache hit %s", path.name)
			return index
	index = build_triad_index(net, ordered, threads=threads)
	save_index(index, path)
	return index


def write_index_csv(index: TriadIndex, stream):
	stream.write(f"# triad-index v{hooks.triad_index_format_version} layers={index.n_layers}\n")
	stream.write("u,v,alpha,beta,s\n")
	for (u, v), s in zip(index.pairs, index.matrices):
		for a in range(index.n_layers):
			for b in range(index.n_layers):
				stream.write(f"{u},{v},{a},{b},{float(s[a, b])!r}\n")

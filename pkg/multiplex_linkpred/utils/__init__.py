import importlib
import logging
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from multiplex_linkpred.exceptions import ValidationError

_ROOT_LOGGER = "multiplex_linkpred"


def logger(module=None):
	"""
	Logger under the package tree, e.g. logger("loader") -> multiplex_linkpred.loader
	"""
	if not module:
		return logging.getLogger(_ROOT_LOGGER)
	return logging.getLogger(f"{_ROOT_LOGGER}.{module}")


def log_error(message, title=None):
	"""
	Log a failure with a short title, the way handlers report before re-raising
	"""
	if title:
		logger().error("%s: %s", title, message)
	else:
		logger().error("%s", message)


def throw(message, exc=ValidationError):
	raise exc(message)


def get_attr(method_path):
	"""
	Resolve a dotted path like "pkg.module.function"
	"""
	module_name, _, attr = method_path.rpartition(".")
	if not module_name:
		throw(f"Not a dotted path: {method_path}")
	module = importlib.import_module(module_name)
	try:
		return getattr(module, attr)
	except AttributeError:
		throw(f"{module_name} has no attribute {attr}")


def spawn_seeds(seed, n):
	"""
	Independent integer seeds for n repetitions, derived from one root seed
	"""
	children = np.random.SeedSequence(int(seed)).spawn(int(n))
	return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def chunked(n_items, chunk_size):
	"""
	Slices covering range(n_items) in blocks of chunk_size
	"""
	chunk_size = max(int(chunk_size), 1)
	return [slice(start, min(start + chunk_size, n_items)) for start in range(0, n_items, chunk_size)]


def parallel_map(fn: Callable, items: Iterable, threads: int = 1) -> list:
	"""
	Ordered map over items; threads <= 1 runs inline
	"""
	items = list(items)
	if threads is None or threads <= 1 or len(items) <= 1:
		return [fn(item) for item in items]
	with ThreadPoolExecutor(max_workers=threads) as executor:
		return list(executor.map(fn, items))


def as_pair_array(pairs: Sequence | np.ndarray) -> np.ndarray:
	"""
	Coerce node pairs into an (n, 2) int64 array
	"""
	arr = np.asarray(pairs, dtype=np.int64)
	if arr.size == 0:
		return np.empty((0, 2), dtype=np.int64)
	if arr.ndim != 2 or arr.shape[1] != 2:
		throw(f"Expected node pairs of shape (n, 2), got {arr.shape}")
	return arr


def pair_keys(pairs: np.ndarray, n_nodes: int) -> np.ndarray:
	"""
	Scalar key u * N + v for each (u, v) row
	"""
	return pairs[:, 0] * np.int64(n_nodes) + pairs[:, 1]


def sort_pairs(pairs: np.ndarray) -> np.ndarray:
	"""
	Rows ordered lexicographically by (u, v)
	"""
	if len(pairs) == 0:
		return pairs
	order = np.lexsort((pairs[:, 1], pairs[:, 0]))
	return pairs[order]

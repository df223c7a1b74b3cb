from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from multiplex_linkpred.exceptions import ParseError, ValidationError
from multiplex_linkpred.multiplex.network import MultiplexNetwork, build_layer
from multiplex_linkpred.utils import logger

log = logger("loader")

# public CNS release: file, label, (src column, dst column)
CNS_LAYERS = (
	("calls.csv", "calls", (1, 2)),
	("fb_friends.csv", "facebook", (0, 1)),
	("sms.csv", "sms", (1, 2)),
)


@dataclass(frozen=True)
class EdgeListFormat:
	"""
	Edge-list options: comment prefix, optional layer subset and human layer names
	"""

	comment: str = "#"
	layers: tuple[str, ...] | None = None
	layer_names: Mapping[str, str] = field(default_factory=dict)
	encoding: str = "utf-8"


def _open_lines(source):
	"""
	(line iterable, owned) for a path, text stream or byte stream; caller streams are never wrapped
	"""
	if isinstance(source, (str, Path)):
		return open(source, "rb"), True
	return source, False


def _numbered_lines(lines, encoding: str):
	"""
	Yield (line_no, text), decoding byte lines one at a time
	"""
	for line_no, line in enumerate(lines, start=1):
		if isinstance(line, bytes):
			try:
				line = line.decode(encoding)
			except UnicodeDecodeError:
				raise ParseError(f"invalid {encoding} text", line_no)
		yield line_no, line


def _records(lines: Iterable[tuple[int, str]], comment: str):
	"""
	Yield (line_no, layer, src, dst) from numbered `layer src dst [weight]` lines
	"""
	for line_no, line in lines:
		text = line.strip()
		if not text or text.startswith(comment):
			continue
		tokens = text.split()
		if len(tokens) not in (3, 4):
			raise ParseError(f"expected 'layer src dst [weight]', got {len(tokens)} tokens", line_no)
		if len(tokens) == 4:
			try:
				float(tokens[3])
			except ValueError:
				raise ParseError(f"weight {tokens[3]!r} is not numeric", line_no)
		yield line_no, tokens[0], tokens[1], tokens[2]


def assemble_multiplex(records: Iterable[tuple[str, str, str]], fmt: EdgeListFormat | None = None) -> MultiplexNetwork:
	"""
	Build the network from (layer, src, dst) label triples.

	Node and layer ids follow first appearance; with a layer subset only records of the
	selected layers assign node ids.
	"""
	fmt = fmt or EdgeListFormat()
	names = dict(fmt.layer_names)
	wanted = None
	if fmt.layers is not None:
		wanted = set(fmt.layers)
		if not wanted:
			raise ValidationError("Layer selection is empty")

	node_index: dict[str, int] = {}
	layer_edges: dict[str, list[tuple[int, int]]] = {}
	seen_layers: set[str] = set()
	n_records = 0
	for layer_label, src, dst in records:
		n_records += 1
		seen_layers.add(layer_label)
		if wanted is not None and layer_label not in wanted and names.get(layer_label) not in wanted:
			continue
		u = node_index.setdefault(src, len(node_index))
		v = node_index.setdefault(dst, len(node_index))
		layer_edges.setdefault(layer_label, []).append((u, v))

	if n_records == 0:
		raise ParseError("no edge records found")
	if wanted is not None:
		known = seen_layers | {names.get(label) for label in seen_layers}
		missing = sorted(wanted - known)
		if missing:
			raise ValidationError(f"Unknown layers in selection: {', '.join(missing)}")
	if not layer_edges:
		raise ParseError("no edge records in the selected layers")

	n_nodes = len(node_index)
	layers = []
	for label, edges in layer_edges.items():
		layer = build_layer(names.get(label, label), n_nodes, edges)
		loops = sum(1 for u, v in edges if u == v)
		if loops:
			log.warning("Layer %s: dropped %d self-loop record(s)", layer.name, loops)
		if layer.edge_count == 0:
			log.warning("Layer %s has no edges", layer.name)
		layers.append(layer)

	return MultiplexNetwork(
		layers=tuple(layers),
		node_labels=tuple(node_index),
		layer_labels=tuple(layer_edges),
	)


def load_multiplex(source, fmt: EdgeListFormat | None = None) -> MultiplexNetwork:
	"""
	Load a multiplex from `layer src dst [weight]` records (path, text or byte stream).
	Weights are parsed and discarded; links are symmetrised.
	"""
	fmt = fmt or EdgeListFormat()
	stream, owned = _open_lines(source)
	try:
		lines = _numbered_lines(stream, fmt.encoding)
		records = ((layer, src, dst) for _, layer, src, dst in _records(lines, fmt.comment))
		return assemble_multiplex(records, fmt)
	finally:
		if owned:
			stream.close()


def load_layer_names(source, encoding="utf-8") -> dict[str, str]:
	"""
	Sidecar file with `layerLabel humanName` per line
	"""
	stream, owned = _open_lines(source)
	names = {}
	try:
		for line_no, line in _numbered_lines(stream, encoding):
			text = line.strip()
			if not text or text.startswith("#"):
				continue
			label, _, name = text.partition(" ")
			if not name.strip():
				raise ParseError("expected 'layerLabel humanName'", line_no)
			names[label] = name.strip()
	finally:
		if owned:
			stream.close()
	return names


def dump_multiplex(net: MultiplexNetwork, stream):
	"""
	Write every undirected edge once as `layerLabel src dst`
	"""
	for label, layer in zip(net.layer_labels, net.layers):
		for u, v in layer.edges():
			stream.write(f"{label} {net.node_labels[u]} {net.node_labels[v]}\n")


def load_cns(directory, layers: tuple[str, ...] | None = None) -> MultiplexNetwork:
	"""
	Copenhagen Networks Study release: calls, Facebook friendships and SMS as layers
	"""
	directory = Path(directory)
	records = []
	for file_name, label, columns in CNS_LAYERS:
		if layers is not None and label not in layers:
			continue
		path = directory / file_name
		if not path.exists():
			raise ValidationError(f"Missing CNS file {path}")
		pairs = np.loadtxt(path, delimiter=",", skiprows=1, usecols=columns, dtype=str, ndmin=2)
		if len(pairs) == 0:
			log.warning("CNS file %s has no rows", path)
		records.extend((label, src.strip(), dst.strip()) for src, dst in pairs)
	return assemble_multiplex(records, EdgeListFormat(layers=layers))

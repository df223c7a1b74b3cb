"""
Catalogue of the public multiplex datasets used for benchmarking, restricted to their
three largest layers, with the expected per-layer node and link counts.

Datasets are not shipped; fetch them from their public repositories and load with
`load_multiplex` (edge lists plus a layer-name sidecar) or `load_cns`.
"""

from dataclasses import dataclass

from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.multiplex.network import MultiplexNetwork


@dataclass(frozen=True)
class LayerShape:
	name: str
	nodes: int
	links: int


@dataclass(frozen=True)
class DatasetInfo:
	key: str
	title: str
	layers: tuple[LayerShape, ...]

	@property
	def layer_names(self) -> tuple[str, ...]:
		return tuple(layer.name for layer in self.layers)


DATASETS = {
	info.key: info
	for info in (
		DatasetInfo(
			"CNS",
			"Copenhagen Networks Study",
			(LayerShape("calls", 536, 621), LayerShape("facebook", 800, 6429), LayerShape("sms", 568, 697)),
		),
		DatasetInfo(
			"CEG",
			"C. Elegans genetic",
			(
				LayerShape("direct interaction", 3126, 5472),
				LayerShape("physical association", 239, 270),
				LayerShape("additive genetic interaction", 1046, 2115),
			),
		),
		DatasetInfo(
			"CEN",
			"C. Elegans neural",
			(
				LayerShape("electric", 253, 517),
				LayerShape("chemical monadic", 260, 888),
				LayerShape("chemical polyadic", 278, 1703),
			),
		),
		DatasetInfo(
			"CSA",
			"CS-Aarhus",
			(LayerShape("facebook", 60, 193), LayerShape("leisure", 32, 124), LayerShape("lunch", 60, 194)),
		),
		DatasetInfo(
			"CKM",
			"CKM Physicians",
			(LayerShape("advice", 215, 449), LayerShape("discussion", 231, 498), LayerShape("friendship", 228, 423)),
		),
		DatasetInfo(
			"EUA",
			"EUair",
			(LayerShape("airline1", 106, 244), LayerShape("airline2", 128, 601), LayerShape("airline3", 99, 307)),
		),
		DatasetInfo(
			"LAZ",
			"Lazega",
			(LayerShape("co-work", 71, 717), LayerShape("friendship", 69, 399), LayerShape("advice", 71, 726)),
		),
		DatasetInfo(
			"VIC",
			"Vickers",
			(LayerShape("get on", 29, 240), LayerShape("best friends", 29, 126), LayerShape("work", 29, 152)),
		),
	)
}


def get_dataset(key: str) -> DatasetInfo:
	try:
		return DATASETS[key.upper()]
	except KeyError:
		raise ValidationError(f"Unknown dataset {key!r}; known: {', '.join(DATASETS)}")


def check_shape(net: MultiplexNetwork, key: str) -> list[str]:
	"""
	Mismatches between a loaded network and the catalogued layer shapes, in layer order
	"""
	info = get_dataset(key)
	problems = []
	if net.n_layers != len(info.layers):
		problems.append(f"expected {len(info.layers)} layers, found {net.n_layers}")
	for expected, layer in zip(info.layers, net.layers):
		if layer.active_nodes != expected.nodes:
			problems.append(f"{layer.name}: {layer.active_nodes} nodes, expected {expected.nodes} ({expected.name})")
		if layer.edge_count != expected.links:
			problems.append(f"{layer.name}: {layer.edge_count} links, expected {expected.links} ({expected.name})")
	return problems

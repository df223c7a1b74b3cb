from dataclasses import asdict, dataclass, field

import numpy as np

from multiplex_linkpred import hooks
from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.multiplex.network import Layer, MultiplexNetwork, aggregate
from multiplex_linkpred.multiplex.triads import TriadIndex
from multiplex_linkpred.scoring.multiplex import CoefficientVector, maa_scores
from multiplex_linkpred.utils import as_pair_array, get_attr

MAA = "MAA"
AGGREGATE = "aggregate"
TARGET = "target"


@dataclass(frozen=True)
class ScoredPair:
	u: int
	v: int
	score: float


@dataclass(frozen=True)
class ScorerSpec:
	"""
	Method name plus parameters. Text form: NAME[@layer][:key=value,...]

	Examples: "AA", "AA@calls", "Katz@aggregate:beta=0.01,max_len=4", "MAA:eta=0.3/0.4/0.3"
	"""

	name: str
	layer: str = AGGREGATE
	eta: CoefficientVector | None = None
	beta: float = hooks.katz_defaults["beta"]
	max_len: int = hooks.katz_defaults["max_len"]
	exact: bool = False

	def __post_init__(self):
		if self.name not in method_names():
			raise ValidationError(f"Unknown method {self.name!r}; choose from {', '.join(method_names())}")
		if self.eta is not None and not isinstance(self.eta, CoefficientVector):
			object.__setattr__(self, "eta", CoefficientVector(tuple(self.eta)))
		if self.eta is not None and self.name != MAA:
			raise ValidationError(f"eta only applies to MAA, not {self.name}")

	@classmethod
	def parse(cls, text: str) -> "ScorerSpec":
		head, _, params = text.strip().partition(":")
		name, _, layer = head.partition("@")
		kwargs = {}
		if layer:
			kwargs["layer"] = layer
		for item in filter(None, (p.strip() for p in params.split(","))):
			key, sep, value = item.partition("=")
			if not sep:
				raise ValidationError(f"Expected key=value in method {text!r}, got {item!r}")
			kwargs[key.strip()] = value.strip()
		return cls.from_dict({"name": _canonical_name(name), **kwargs})

	@classmethod
	def from_dict(cls, data: dict) -> "ScorerSpec":
		data = dict(data)
		known = {"name", "layer", "eta", "beta", "max_len", "exact"}
		unknown = set(data) - known
		if unknown:
			raise ValidationError(f"Unknown method parameters: {', '.join(sorted(unknown))}")
		try:
			if "eta" in data and data["eta"] is not None:
				eta = data["eta"]
				data["eta"] = CoefficientVector.parse(eta) if isinstance(eta, str) else CoefficientVector(tuple(eta))
			if "beta" in data:
				data["beta"] = float(data["beta"])
			if "max_len" in data:
				data["max_len"] = int(data["max_len"])
			if "exact" in data:
				data["exact"] = str(data["exact"]).lower() in ("1", "true", "yes")
			if "layer" in data:
				data["layer"] = str(data["layer"])
		except (TypeError, ValueError) as e:
			raise ValidationError(f"Bad method parameter: {e}")
		return cls(**data)

	def to_dict(self) -> dict:
		data = asdict(self)
		data["eta"] = list(self.eta.eta) if self.eta is not None else None
		return data

	def params_label(self, eta: CoefficientVector | None = None) -> str:
		"""
		Parameter summary for report rows
		"""
		if self.name == MAA:
			eta = eta or self.eta
			return f"eta={eta}" if eta is not None else "eta=tuned"
		parts = [f"layer={self.layer}"]
		if self.name == "Katz":
			parts.append(f"beta={self.beta:g}")
			parts.append("exact" if self.exact else f"max_len={self.max_len}")
		return ",".join(parts)

	def __str__(self):
		if self.name == MAA:
			return f"{MAA}:eta={self.eta}" if self.eta is not None else MAA
		text = self.name if self.layer == AGGREGATE else f"{self.name}@{self.layer}"
		if self.name == "Katz":
			text += f":beta={self.beta:g},max_len={self.max_len}" + (",exact=true" if self.exact else "")
		return text


def method_names() -> tuple[str, ...]:
	return (*hooks.scorer_methods, MAA)


def _canonical_name(name: str) -> str:
	lookup = {m.lower(): m for m in method_names()}
	return lookup.get(name.strip().lower(), name.strip())


def resolve_layer(net: MultiplexNetwork, target, selector: str) -> Layer:
	"""
	Layer a baseline is evaluated on: the aggregate, the target layer, or a named layer
	"""
	if selector == AGGREGATE:
		return aggregate(net)
	if selector == TARGET:
		return net.layer(target)
	return net.layer(selector)


def score_pairs(
	spec: ScorerSpec,
	net: MultiplexNetwork,
	target,
	pairs,
	index: TriadIndex | None = None,
	rng: np.random.Generator | None = None,
	eta: CoefficientVector | None = None,
) -> np.ndarray:
	"""
	One score per candidate pair, in input order
	"""
	pairs = as_pair_array(pairs)
	if spec.name == MAA:
		eta = eta or spec.eta
		if eta is None:
			raise ValidationError("MAA needs coefficients (eta) to score pairs")
		if index is None:
			raise ValidationError("MAA needs a triad index covering the candidate pairs")
		return maa_scores(index, eta, pairs)
	layer = resolve_layer(net, target, spec.layer)
	scorer = get_attr(hooks.scorer_methods[spec.name])
	params = {}
	for key in hooks.scorer_params.get(spec.name, ()):
		params[key] = rng if key == "rng" else getattr(spec, key)
	return scorer(layer, pairs, **params)


def score_all(
	spec: ScorerSpec,
	net: MultiplexNetwork,
	target,
	candidates,
	index: TriadIndex | None = None,
	rng: np.random.Generator | None = None,
) -> list[ScoredPair]:
	pairs = as_pair_array(candidates)
	scores = score_pairs(spec, net, target, pairs, index=index, rng=rng)
	return [ScoredPair(int(u), int(v), float(s)) for (u, v), s in zip(pairs, scores)]

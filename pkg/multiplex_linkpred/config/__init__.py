"""
Run configuration: every CLI flag as one serialisable record, loadable from YAML.
"""

from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import yaml

from multiplex_linkpred import hooks
from multiplex_linkpred.evaluation.harness import Protocol
from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.scoring.multiplex import CoefficientVector
from multiplex_linkpred.scoring.spec import MAA, ScorerSpec

ALL_LAYERS = "all"
LOADERS = ("edges", "cns")
DEFAULT_METHODS = ("AA", "CN", "JC", "PA", "Katz", "MAA")

_defaults = hooks.default_protocol


@dataclass(frozen=True)
class RunConfig:
	dataset: str | None = None
	loader: str = "edges"
	layer_names: str | None = None
	layers: tuple[str, ...] = ()
	target_layers: tuple[str, ...] = ()
	methods: tuple[str, ...] = DEFAULT_METHODS
	eta: str | None = None
	step: float | None = None
	fraction: float = _defaults["fraction"]
	reps: int = _defaults["repetitions"]
	seed: int = _defaults["seed"]
	neg_cap: int | None = _defaults["neg_cap"]
	mode: str = _defaults["mode"]
	objective: str = _defaults["objective"]
	validation_fraction: float | None = _defaults["validation_fraction"]
	threads: int = _defaults["threads"]
	coordinates: str | None = None
	expect: str | None = None
	out: str | None = None
	cache_dir: str | None = None
	extra: dict = field(default_factory=dict, compare=False, repr=False)

	def __post_init__(self):
		for name in ("layers", "target_layers", "methods"):
			value = getattr(self, name)
			if isinstance(value, str):
				value = (value,)
			object.__setattr__(self, name, tuple(str(v) for v in value or ()))
		if self.loader not in LOADERS:
			raise ValidationError(f"Loader must be one of {', '.join(LOADERS)}, got {self.loader!r}")
		if self.extra:
			raise ValidationError(f"Unknown config keys: {', '.join(sorted(self.extra))}")

	@classmethod
	def from_dict(cls, data: dict) -> "RunConfig":
		known = {f.name for f in fields(cls)} - {"extra"}
		unknown = {k: v for k, v in data.items() if k not in known}
		return cls(**{k: v for k, v in data.items() if k in known}, extra=unknown)

	def to_dict(self) -> dict:
		data = asdict(self)
		data.pop("extra")
		for name in ("layers", "target_layers", "methods"):
			data[name] = list(data[name])
		return data

	def merge(self, overrides: dict) -> "RunConfig":
		"""
		New config with overrides applied on top (config-file values win over flags)
		"""
		return RunConfig.from_dict({**self.to_dict(), **overrides})

	def scorer_specs(self) -> list[ScorerSpec]:
		"""
		Parsed methods; a bare MAA takes the configured eta, or stays untuned when there is none
		"""
		if not self.methods:
			raise ValidationError("No methods selected")
		specs = [ScorerSpec.parse(text) for text in self.methods]
		if self.eta is not None:
			eta = CoefficientVector.parse(self.eta)
			specs = [replace(s, eta=eta) if s.name == MAA and s.eta is None else s for s in specs]
		return specs

	def resolve_targets(self, layer_names: tuple[str, ...]) -> list[str]:
		if not self.target_layers or ALL_LAYERS in self.target_layers:
			return list(layer_names)
		return list(self.target_layers)

	def protocol(self) -> Protocol:
		return Protocol(
			mode=self.mode,
			fraction=self.fraction,
			repetitions=self.reps,
			seed=self.seed,
			neg_cap=self.neg_cap,
			validation_fraction=self.validation_fraction,
			objective=self.objective,
			step=self.step,
			threads=self.threads,
		)


def load_config(path) -> dict:
	"""
	Raw key/value overrides from a YAML run-config file
	"""
	path = Path(path)
	try:
		with path.open(encoding="utf-8") as f:
			data = yaml.safe_load(f)
	except OSError as e:
		raise ValidationError(f"Cannot read config {path}: {e}")
	except yaml.YAMLError as e:
		raise ValidationError(f"Cannot parse config {path}: {e}")
	if data is None:
		return {}
	if not isinstance(data, dict):
		raise ValidationError(f"Config {path} must be a mapping, got {type(data).__name__}")
	data = {str(k).replace("-", "_"): v for k, v in data.items()}
	# validates keys and values before anything runs
	RunConfig.from_dict(data)
	return data


def dump_config(config: RunConfig, stream):
	yaml.safe_dump(config.to_dict(), stream, sort_keys=False, default_flow_style=False)

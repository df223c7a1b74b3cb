"""
Repeated-holdout evaluation of scorers on one target layer.

Every repetition draws one split from its own seed; all methods are scored on that same
split. MAA without fixed coefficients is tuned over the simplex grid, either on the
evaluation splits themselves (in-sample) or on a tuning holdout carved from each
training network.
"""

import csv
from dataclasses import asdict, dataclass, field

import numpy as np
from tqdm import tqdm

from multiplex_linkpred import hooks
from multiplex_linkpred.evaluation.metrics import SplitMetrics, split_metrics
from multiplex_linkpred.evaluation.splits import CROSSLAYER, RANDOM, EvalSplit, cross_layer_testset, split_holdout
from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.multiplex.network import MultiplexNetwork
from multiplex_linkpred.multiplex.triads import load_or_build_index
from multiplex_linkpred.scoring.multiplex import CoefficientVector, maa_scores
from multiplex_linkpred.scoring.spec import MAA, ScorerSpec, score_pairs
from multiplex_linkpred.sweep.grid import SimplexGrid, default_step, simplex_grid
from multiplex_linkpred.sweep.search import GridAccumulator, SweepResult, check_objective
from multiplex_linkpred.utils import log_error, logger, spawn_seeds

log = logger("evaluation")

# stream id mixed into the repetition seed for scorers that draw random numbers
SCORER_STREAM = 1
IN_SAMPLE = "in-sample"
VALIDATION = "validation"

_defaults = hooks.default_protocol


@dataclass(frozen=True)
class Protocol:
	mode: str = _defaults["mode"]
	fraction: float = _defaults["fraction"]
	repetitions: int = _defaults["repetitions"]
	seed: int = _defaults["seed"]
	neg_cap: int | None = _defaults["neg_cap"]
	validation_fraction: float | None = _defaults["validation_fraction"]
	objective: str = _defaults["objective"]
	step: float | None = None
	threads: int = _defaults["threads"]

	def __post_init__(self):
		if self.mode not in (RANDOM, CROSSLAYER):
			raise ValidationError(f"Mode must be {RANDOM} or {CROSSLAYER}, got {self.mode!r}")
		if self.repetitions < 1:
			raise ValidationError(f"Repetitions must be at least 1, got {self.repetitions}")
		if not 0.0 < self.fraction < 1.0:
			raise ValidationError(f"Holdout fraction must lie in (0, 1), got {self.fraction}")
		if self.validation_fraction is not None and not 0.0 < self.validation_fraction < 1.0:
			raise ValidationError(f"Validation fraction must lie in (0, 1), got {self.validation_fraction}")
		if self.neg_cap is not None and self.neg_cap < 1:
			raise ValidationError(f"Negative cap must be positive, got {self.neg_cap}")
		check_objective(self.objective)

	def grid(self, n_layers: int) -> SimplexGrid:
		return simplex_grid(n_layers, self.step or default_step(n_layers))

	@property
	def tuning(self) -> str:
		return IN_SAMPLE if self.validation_fraction is None else VALIDATION


@dataclass(frozen=True)
class MetricsReport:
	"""
	Mean metrics of one method over all repetitions on one target layer
	"""

	dataset: str
	target_layer: str
	method: str
	params: str
	auc: float
	auc_min: float
	auc_max: float
	p1: float
	p2: float
	precision: float
	n: int
	repetitions: int
	seed: int
	eta: CoefficientVector | None = field(default=None, compare=False)

	def as_row(self) -> dict:
		row = asdict(self)
		return {column: row[column] for column in hooks.evaluation_columns}


def make_split(net: MultiplexNetwork, x, protocol: Protocol, seed: int) -> EvalSplit:
	if protocol.mode == CROSSLAYER:
		return cross_layer_testset(net, x, seed=seed, neg_cap=protocol.neg_cap)
	return split_holdout(net, x, protocol.fraction, seed, neg_cap=protocol.neg_cap)


def scorer_rng(seed: int) -> np.random.Generator:
	return np.random.default_rng([int(seed), SCORER_STREAM])


def tuning_split(split: EvalSplit, protocol: Protocol) -> EvalSplit:
	"""
	Holdout of the training target layer, used only to pick coefficients
	"""
	inner_seed = spawn_seeds(split.seed, 1)[0]
	return split_holdout(split.train, split.target_layer, protocol.validation_fraction, inner_seed, protocol.neg_cap)


def split_index(split: EvalSplit, cache_dir=None, threads: int = 1):
	pairs, _ = split.candidates()
	return load_or_build_index(split.train, pairs, cache_dir=cache_dir, threads=threads)


def evaluate_split(
	spec: ScorerSpec,
	split: EvalSplit,
	index=None,
	eta: CoefficientVector | None = None,
) -> SplitMetrics:
	"""
	Metrics of one scorer on one split; MAA needs an index and coefficients
	"""
	pairs, labels = split.candidates()
	if spec.name == MAA:
		eta = eta or spec.eta
		if eta is None:
			raise ValidationError("MAA needs coefficients to score a split; tune them with a sweep")
		if index is None:
			index = split_index(split)
		scores = maa_scores(index, eta, pairs)
	else:
		scores = score_pairs(spec, split.train, split.target_layer, pairs, rng=scorer_rng(split.seed))
	return split_metrics(scores, labels)


def _mean_report(spec, metrics: list[SplitMetrics], eta, dataset, target, protocol, params=None) -> MetricsReport:
	means = {name: float(np.mean([getattr(m, name) for m in metrics])) for name in SplitMetrics.__dataclass_fields__}
	return MetricsReport(
		dataset=dataset,
		target_layer=target,
		method=spec.name,
		params=params or spec.params_label(eta),
		auc=means["auc"],
		auc_min=means["auc_min"],
		auc_max=means["auc_max"],
		p1=means["p1"],
		p2=means["p2"],
		precision=means["precision"],
		n=int(round(means["n"])),
		repetitions=protocol.repetitions,
		seed=protocol.seed,
		eta=eta,
	)


def _repetitions(protocol: Protocol, label: str, progress: bool):
	seeds = spawn_seeds(protocol.seed, protocol.repetitions)
	return tqdm(seeds, desc=label, unit="rep", disable=not progress, leave=False)


def evaluate_many(
	specs: list[ScorerSpec],
	net: MultiplexNetwork,
	x,
	protocol: Protocol | None = None,
	dataset: str = "",
	cache_dir=None,
	progress: bool = False,
) -> list[MetricsReport]:
	"""
	One report per spec, all specs scored on the same splits
	"""
	protocol = protocol or Protocol()
	x = net.layer_id(x)
	target = net.layer_names[x]
	specs = list(specs)
	fixed = [i for i, spec in enumerate(specs) if not (spec.name == MAA and spec.eta is None)]
	tuned = [i for i, spec in enumerate(specs) if spec.name == MAA and spec.eta is None]
	wants_index = any(spec.name == MAA for spec in specs)

	grid = protocol.grid(net.n_layers) if tuned else None
	outer = GridAccumulator(grid, threads=protocol.threads) if tuned else None
	inner = GridAccumulator(grid, threads=protocol.threads) if tuned and protocol.validation_fraction else None

	per_spec = {i: [] for i in fixed}
	n_values = []
	for seed in _repetitions(protocol, f"{dataset or 'evaluate'}:{target}", progress):
		try:
			split = make_split(net, x, protocol, seed)
			n_values.append(len(split.positives))
			index = split_index(split, cache_dir, protocol.threads) if wants_index else None
			for i in fixed:
				per_spec[i].append(evaluate_split(specs[i], split, index=index))
			if outer is not None:
				outer.add(index, split)
			if inner is not None:
				tune = tuning_split(split, protocol)
				inner.add(split_index(tune, cache_dir, protocol.threads), tune)
		except Exception as e:
			log_error(f"Repetition with seed {seed} failed on layer {target}: {e}", title="Evaluation Error")
			raise

	reports = {i: _mean_report(specs[i], per_spec[i], specs[i].eta, dataset, target, protocol) for i in fixed}
	if tuned:
		selector = (inner or outer).result(protocol.objective)
		best = selector.best_index()
		eta = grid.point(best)
		chosen = outer.result(protocol.objective).metrics_at(best)
		log.info("Tuned MAA on %s (%s): eta=%s", target, protocol.tuning, eta)
		report = MetricsReport(
			dataset=dataset,
			target_layer=target,
			method=MAA,
			params=f"{specs[tuned[0]].params_label(eta)},tuned={protocol.tuning}",
			n=int(round(float(np.mean(n_values)))),
			repetitions=protocol.repetitions,
			seed=protocol.seed,
			eta=eta,
			**chosen,
		)
		for i in tuned:
			reports[i] = report
	return [reports[i] for i in range(len(specs))]


def evaluate(
	spec: ScorerSpec, net: MultiplexNetwork, x, protocol: Protocol | None = None, dataset: str = "", cache_dir=None
) -> MetricsReport:
	return evaluate_many([spec], net, x, protocol, dataset=dataset, cache_dir=cache_dir)[0]


def sweep_layer(
	net: MultiplexNetwork, x, protocol: Protocol | None = None, cache_dir=None, progress: bool = False
) -> SweepResult:
	"""
	Grid metrics over the protocol's repetitions for target layer x
	"""
	protocol = protocol or Protocol()
	x = net.layer_id(x)
	accumulator = GridAccumulator(protocol.grid(net.n_layers), threads=protocol.threads)
	for seed in _repetitions(protocol, f"sweep:{net.layer_names[x]}", progress):
		try:
			split = make_split(net, x, protocol, seed)
			if protocol.validation_fraction:
				split = tuning_split(split, protocol)
			accumulator.add(split_index(split, cache_dir, protocol.threads), split)
		except Exception as e:
			log_error(f"Sweep repetition with seed {seed} failed on layer {net.layer_names[x]}: {e}", title="Sweep Error")
			raise
	return accumulator.result(protocol.objective)


def write_reports(reports: list[MetricsReport], stream):
	writer = csv.DictWriter(stream, fieldnames=hooks.evaluation_columns, lineterminator="\n")
	writer.writeheader()
	for report in reports:
		writer.writerow(report.as_row())

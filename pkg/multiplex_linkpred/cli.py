"""
maa: validate datasets, evaluate scorers, sweep MAA coefficients and dump triad indexes.

Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
"""

import logging
import re
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

import numpy as np
import typer

from multiplex_linkpred import __version__
from multiplex_linkpred.config import RunConfig, load_config
from multiplex_linkpred.evaluation.harness import evaluate_many, sweep_layer, write_reports
from multiplex_linkpred.evaluation.splits import candidate_pairs, cap_pairs
from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.multiplex.datasets import check_shape
from multiplex_linkpred.multiplex.loader import EdgeListFormat, load_cns, load_layer_names, load_multiplex
from multiplex_linkpred.multiplex.network import MultiplexNetwork
from multiplex_linkpred.multiplex.triads import load_or_build_index, write_index_csv
from multiplex_linkpred.sweep.export import BARYCENTRIC, RAW, export_grid, write_summary
from multiplex_linkpred.utils import log_error, logger

log = logger("cli")

app = typer.Typer(add_completion=False, no_args_is_help=True, help="Multiplex Adamic-Adar link prediction.")

EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _setup_logging(verbose: bool):
	logging.basicConfig(
		level=logging.DEBUG if verbose else logging.WARNING,
		format="%(levelname)s %(name)s: %(message)s",
		stream=sys.stderr,
		force=True,
	)


@contextmanager
def _guard(title: str):
	"""
	Map failures to exit codes; only runtime failures are logged as errors
	"""
	try:
		yield
	except typer.Exit:
		raise
	except ValidationError as e:
		typer.echo(f"Error: {e}", err=True)
		raise typer.Exit(EXIT_USAGE)
	except Exception as e:
		log_error(f"{type(e).__name__}: {e}", title=title)
		raise typer.Exit(EXIT_RUNTIME)


def _split_values(values: Optional[List[str]]) -> tuple[str, ...]:
	"""
	Repeated flags and comma-separated lists both accepted
	"""
	out = []
	for value in values or ():
		out.extend(item.strip() for item in value.split(",") if item.strip())
	return tuple(out)


def _build_config(config_path: Optional[Path], **flags) -> RunConfig:
	flags = {k: v for k, v in flags.items() if v is not None}
	# methods keep their own commas, e.g. Katz:beta=0.01,max_len=4
	for name in ("layers", "target_layers", "methods"):
		if name in flags:
			flags[name] = list(flags[name]) if name == "methods" else _split_values(flags[name])
			if not flags[name]:
				del flags[name]
	config = RunConfig.from_dict(flags)
	if config_path is not None:
		config = config.merge(load_config(config_path))
	return config


def load_network(config: RunConfig) -> MultiplexNetwork:
	if not config.dataset:
		raise ValidationError("--dataset is required")
	path = Path(config.dataset)
	if not path.exists():
		raise ValidationError(f"Dataset {path} does not exist")
	layers = config.layers or None
	if config.loader == "cns":
		return load_cns(path, layers=layers)
	names = load_layer_names(config.layer_names) if config.layer_names else {}
	return load_multiplex(path, EdgeListFormat(layers=layers, layer_names=names))


def _slug(name: str) -> str:
	return re.sub(r"[^A-Za-z0-9_.-]+", "_", name).strip("_") or "layer"


def _out_dir(config: RunConfig) -> Path:
	if not config.out:
		raise ValidationError("--out directory is required")
	out = Path(config.out)
	out.mkdir(parents=True, exist_ok=True)
	return out


def version_callback(value: bool):
	if value:
		typer.echo(__version__)
		raise typer.Exit()


@app.callback()
def main(
	version: bool = typer.Option(False, "--version", callback=version_callback, is_eager=True, help="Show version."),
):
	pass


@app.command("validate")
def cmd_validate(
	dataset: Optional[str] = typer.Option(None, "--dataset", help="Edge-list file, or CNS directory with --loader cns."),
	loader: Optional[str] = typer.Option(None, "--loader", help="edges or cns."),
	layer_names: Optional[str] = typer.Option(None, "--layer-names", help="Sidecar file: layerLabel humanName."),
	layers: Optional[List[str]] = typer.Option(None, "--layers", help="Layer labels or names to keep."),
	expect: Optional[str] = typer.Option(None, "--expect", help="Catalogued dataset key to compare against."),
	config_path: Optional[Path] = typer.Option(None, "--config", help="YAML run config; overrides flags."),
	verbose: bool = typer.Option(False, "--verbose"),
):
	"""
	Parse a dataset and print per-layer node and link counts.
	"""
	_setup_logging(verbose)
	with _guard("Validate Error"):
		config = _build_config(
			config_path, dataset=dataset, loader=loader, layer_names=layer_names, layers=layers, expect=expect
		)
		net = load_network(config)
		typer.echo(f"{net.n_nodes} nodes, {net.n_layers} layers")
		typer.echo("layer\tnodes\tlinks")
		for layer in net.layers:
			typer.echo(f"{layer.name}\t{layer.active_nodes}\t{layer.edge_count}")
		if config.expect:
			problems = check_shape(net, config.expect)
			for problem in problems:
				typer.echo(f"mismatch: {problem}", err=True)
			if problems:
				raise ValidationError(f"{len(problems)} mismatch(es) against {config.expect}")


@app.command("evaluate")
def cmd_evaluate(
	dataset: Optional[str] = typer.Option(None, "--dataset"),
	loader: Optional[str] = typer.Option(None, "--loader"),
	layer_names: Optional[str] = typer.Option(None, "--layer-names"),
	layers: Optional[List[str]] = typer.Option(None, "--layers"),
	target_layers: Optional[List[str]] = typer.Option(None, "--target-layer", help="Repeatable; 'all' for every layer."),
	methods: Optional[List[str]] = typer.Option(None, "--method", help="Repeatable, e.g. AA, Katz:beta=0.01, MAA."),
	eta: Optional[str] = typer.Option(None, "--eta", help="Fixed MAA coefficients a/b/c; tuned when omitted."),
	step: Optional[float] = typer.Option(None, "--step", help="Grid step for MAA tuning."),
	fraction: Optional[float] = typer.Option(None, "--fraction"),
	reps: Optional[int] = typer.Option(None, "--reps"),
	seed: Optional[int] = typer.Option(None, "--seed"),
	neg_cap: Optional[int] = typer.Option(None, "--neg-cap", help="Cap on sampled negative pairs per split."),
	mode: Optional[str] = typer.Option(None, "--mode", help="random or crosslayer."),
	objective: Optional[str] = typer.Option(None, "--objective", help="auc or precision."),
	validation_fraction: Optional[float] = typer.Option(None, "--validation-fraction"),
	threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads for triad indexes and grid blocks."),
	out: Optional[str] = typer.Option(None, "--out", help="CSV file; standard output when omitted."),
	cache_dir: Optional[str] = typer.Option(None, "--cache-dir"),
	config_path: Optional[Path] = typer.Option(None, "--config"),
	verbose: bool = typer.Option(False, "--verbose"),
):
	"""
	One CSV row per method per target layer.
	"""
	_setup_logging(verbose)
	with _guard("Evaluation Error"):
		config = _build_config(
			config_path,
			dataset=dataset,
			loader=loader,
			layer_names=layer_names,
			layers=layers,
			target_layers=target_layers,
			methods=methods,
			eta=eta,
			step=step,
			fraction=fraction,
			reps=reps,
			seed=seed,
			neg_cap=neg_cap,
			mode=mode,
			objective=objective,
			validation_fraction=validation_fraction,
			threads=threads,
			out=out,
			cache_dir=cache_dir,
		)
		specs = config.scorer_specs()
		protocol = config.protocol()
		net = load_network(config)
		name = Path(config.dataset).stem
		reports = []
		for target in config.resolve_targets(net.layer_names):
			reports.extend(
				evaluate_many(specs, net, target, protocol, dataset=name, cache_dir=config.cache_dir, progress=True)
			)
		if config.out:
			Path(config.out).parent.mkdir(parents=True, exist_ok=True)
			with open(config.out, "w", encoding="utf-8", newline="") as f:
				write_reports(reports, f)
		else:
			write_reports(reports, sys.stdout)


@app.command("sweep")
def cmd_sweep(
	dataset: Optional[str] = typer.Option(None, "--dataset"),
	loader: Optional[str] = typer.Option(None, "--loader"),
	layer_names: Optional[str] = typer.Option(None, "--layer-names"),
	layers: Optional[List[str]] = typer.Option(None, "--layers"),
	target_layers: Optional[List[str]] = typer.Option(None, "--target-layer"),
	step: Optional[float] = typer.Option(None, "--step"),
	fraction: Optional[float] = typer.Option(None, "--fraction"),
	reps: Optional[int] = typer.Option(None, "--reps"),
	seed: Optional[int] = typer.Option(None, "--seed"),
	neg_cap: Optional[int] = typer.Option(None, "--neg-cap", help="Cap on sampled negative pairs per split."),
	mode: Optional[str] = typer.Option(None, "--mode"),
	objective: Optional[str] = typer.Option(None, "--objective"),
	validation_fraction: Optional[float] = typer.Option(None, "--validation-fraction"),
	coordinates: Optional[str] = typer.Option(None, "--coordinates", help="barycentric (3 layers) or raw."),
	threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads for triad indexes and grid blocks."),
	out: Optional[str] = typer.Option(None, "--out", help="Output directory."),
	cache_dir: Optional[str] = typer.Option(None, "--cache-dir"),
	config_path: Optional[Path] = typer.Option(None, "--config"),
	verbose: bool = typer.Option(False, "--verbose"),
):
	"""
	Grid CSV and best-coefficient JSON per target layer.
	"""
	_setup_logging(verbose)
	with _guard("Sweep Error"):
		config = _build_config(
			config_path,
			dataset=dataset,
			loader=loader,
			layer_names=layer_names,
			layers=layers,
			target_layers=target_layers,
			step=step,
			fraction=fraction,
			reps=reps,
			seed=seed,
			neg_cap=neg_cap,
			mode=mode,
			objective=objective,
			validation_fraction=validation_fraction,
			coordinates=coordinates,
			threads=threads,
			out=out,
			cache_dir=cache_dir,
		)
		protocol = config.protocol()
		out_dir = _out_dir(config)
		net = load_network(config)
		coords = config.coordinates or (BARYCENTRIC if net.n_layers == 3 else RAW)
		name = Path(config.dataset).stem
		for target in config.resolve_targets(net.layer_names):
			result = sweep_layer(net, target, protocol, cache_dir=config.cache_dir, progress=True)
			stem = f"sweep-{_slug(net.layer(target).name)}"
			with open(out_dir / f"{stem}.csv", "w", encoding="utf-8", newline="") as f:
				export_grid(result, f, coordinates=coords)
			with open(out_dir / f"{stem}.json", "w", encoding="utf-8") as f:
				write_summary(
					result,
					f,
					dataset=name,
					target_layer=net.layer(target).name,
					layers=list(net.layer_names),
					seed=protocol.seed,
					tuning=protocol.tuning,
				)
			log.info("Best eta for %s: %s", target, result.best)


@app.command("index")
def cmd_index(
	dataset: Optional[str] = typer.Option(None, "--dataset"),
	loader: Optional[str] = typer.Option(None, "--loader"),
	layer_names: Optional[str] = typer.Option(None, "--layer-names"),
	layers: Optional[List[str]] = typer.Option(None, "--layers"),
	target_layers: Optional[List[str]] = typer.Option(None, "--target-layer"),
	seed: Optional[int] = typer.Option(None, "--seed"),
	neg_cap: Optional[int] = typer.Option(None, "--neg-cap", help="Cap on sampled negative pairs per split."),
	threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads for triad indexes and grid blocks."),
	out: Optional[str] = typer.Option(None, "--out", help="Output directory."),
	cache_dir: Optional[str] = typer.Option(None, "--cache-dir"),
	config_path: Optional[Path] = typer.Option(None, "--config"),
	verbose: bool = typer.Option(False, "--verbose"),
):
	"""
	Triad matrices for every candidate pair of each target layer, as versioned CSV.
	"""
	_setup_logging(verbose)
	with _guard("Index Error"):
		config = _build_config(
			config_path,
			dataset=dataset,
			loader=loader,
			layer_names=layer_names,
			layers=layers,
			target_layers=target_layers,
			seed=seed,
			neg_cap=neg_cap,
			threads=threads,
			out=out,
			cache_dir=cache_dir,
		)
		out_dir = _out_dir(config)
		net = load_network(config)
		for target in config.resolve_targets(net.layer_names):
			pairs = cap_pairs(candidate_pairs(net, target), config.neg_cap, np.random.default_rng(config.seed))
			index = load_or_build_index(net, pairs, cache_dir=config.cache_dir, threads=config.threads)
			with open(out_dir / f"triads-{_slug(net.layer(target).name)}.csv", "w", encoding="utf-8") as f:
				write_index_csv(index, f)

import csv
import json

from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.sweep.grid import barycentric
from multiplex_linkpred.sweep.search import SweepResult

BARYCENTRIC = "barycentric"
RAW = "raw"


def grid_header(n_layers: int, coordinates: str = BARYCENTRIC) -> list[str]:
	header = [f"eta_{a + 1}" for a in range(n_layers)]
	if coordinates == BARYCENTRIC:
		header += ["x", "y"]
	return header + ["auc", "precision"]


def export_grid(result: SweepResult, stream, coordinates: str = BARYCENTRIC):
	"""
	One CSV row per grid point, in enumeration order
	"""
	if coordinates not in (BARYCENTRIC, RAW):
		raise ValidationError(f"Coordinates must be {BARYCENTRIC} or {RAW}, got {coordinates!r}")
	n_layers = result.grid.dimension
	if coordinates == BARYCENTRIC and n_layers != 3:
		raise ValidationError(f"Barycentric export needs 3 layers, got {n_layers}; use raw coordinates")

	writer = csv.writer(stream, lineterminator="\n")
	writer.writerow(grid_header(n_layers, coordinates))
	points = result.grid.points
	if len(points) == 0:
		return
	xy = barycentric(points) if coordinates == BARYCENTRIC else None
	for i, eta in enumerate(points):
		row = [_fmt(x) for x in eta]
		if xy is not None:
			row += [_fmt(xy[i, 0]), _fmt(xy[i, 1])]
		row += [_fmt(result.auc[i]), _fmt(result.precision[i])]
		writer.writerow(row)


def summary(result: SweepResult, **extra) -> dict:
	i_auc = result.best_index("auc")
	i_prec = result.best_index("precision")
	data = {
		"best_by_auc": list(result.best_by_auc.eta),
		"best_by_precision": list(result.best_by_precision.eta),
		"metrics_at_best_auc": result.metrics_at(i_auc),
		"metrics_at_best_precision": result.metrics_at(i_prec),
		"objective": result.objective,
		"step": result.grid.step,
		"n_layers": result.grid.dimension,
		"n_points": len(result.grid),
		"n_splits": result.n_splits,
	}
	data.update(extra)
	return data


def write_summary(result: SweepResult, stream, **extra):
	json.dump(summary(result, **extra), stream, sort_keys=True, indent=2)
	stream.write("\n")


def _fmt(value) -> str:
	return repr(float(value))

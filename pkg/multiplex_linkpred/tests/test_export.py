import csv
import io
import json

import numpy as np
import pytest

from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.sweep.export import RAW, export_grid, grid_header, summary, write_summary
from multiplex_linkpred.sweep.grid import SimplexGrid, simplex_grid
from multiplex_linkpred.sweep.search import SweepResult


def make_result(grid, seed=0):
	rng = np.random.default_rng(seed)
	values = [rng.random(len(grid)) for _ in range(6)]
	return SweepResult(grid, *values, n_splits=2)


def rows(text):
	return list(csv.reader(io.StringIO(text)))


class TestExportGrid:
	def test_barycentric_rows(self):
		result = make_result(simplex_grid(3, 0.5))
		stream = io.StringIO()
		export_grid(result, stream)
		table = rows(stream.getvalue())
		assert table[0] == ["eta_1", "eta_2", "eta_3", "x", "y", "auc", "precision"]
		assert len(table) == 1 + 6
		assert [float(v) for v in table[1][:5]] == [1.0, 0.0, 0.0, 0.0, 0.0]
		assert float(table[1][5]) == result.auc[0]
		assert float(table[-1][6]) == result.precision[-1]

	def test_centroid(self):
		result = make_result(simplex_grid(3, 1 / 3))
		stream = io.StringIO()
		export_grid(result, stream)
		centroid = [row for row in rows(stream.getvalue())[1:] if float(row[0]) == pytest.approx(1 / 3)]
		centroid = [row for row in centroid if float(row[1]) == pytest.approx(1 / 3)][0]
		assert float(centroid[3]) == pytest.approx(0.5, abs=1e-12)
		assert float(centroid[4]) == pytest.approx(np.sqrt(3) / 6, abs=1e-12)

	def test_raw_coordinates(self):
		result = make_result(simplex_grid(4, 0.5))
		stream = io.StringIO()
		export_grid(result, stream, coordinates=RAW)
		table = rows(stream.getvalue())
		assert table[0] == grid_header(4, RAW) == ["eta_1", "eta_2", "eta_3", "eta_4", "auc", "precision"]
		assert len(table) == 1 + 10

	def test_barycentric_needs_three_layers(self):
		with pytest.raises(ValidationError):
			export_grid(make_result(simplex_grid(2, 0.5)), io.StringIO())
		with pytest.raises(ValidationError):
			export_grid(make_result(simplex_grid(3, 0.5)), io.StringIO(), coordinates="polar")

	def test_empty_grid_is_header_only(self):
		grid = SimplexGrid(dimension=3, step=0.5, counts=np.empty((0, 3), dtype=np.int64))
		empty = np.empty(0)
		result = SweepResult(grid, empty, empty, empty, empty, empty, empty, n_splits=0)
		stream = io.StringIO()
		export_grid(result, stream)
		assert stream.getvalue() == "eta_1,eta_2,eta_3,x,y,auc,precision\n"


class TestSummary:
	def test_fields(self):
		grid = simplex_grid(3, 0.5)
		result = make_result(grid, seed=3)
		data = summary(result, dataset="toy")
		assert data["best_by_auc"] == list(grid.point(int(np.argmax(result.auc))).eta)
		assert data["best_by_precision"] == list(grid.point(int(np.argmax(result.precision))).eta)
		assert data["metrics_at_best_auc"]["auc"] == result.auc.max()
		assert (data["n_points"], data["n_layers"], data["n_splits"], data["step"]) == (6, 3, 2, 0.5)
		assert data["dataset"] == "toy"

	def test_json_is_stable(self):
		result = make_result(simplex_grid(3, 0.25), seed=4)
		first, second = io.StringIO(), io.StringIO()
		write_summary(result, first, target_layer="calls")
		write_summary(result, second, target_layer="calls")
		assert first.getvalue() == second.getvalue()
		assert first.getvalue().endswith("}\n")
		assert json.loads(first.getvalue())["target_layer"] == "calls"

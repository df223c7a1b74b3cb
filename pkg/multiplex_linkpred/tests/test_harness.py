import io
import logging

import numpy as np
import pytest

from multiplex_linkpred import hooks
from multiplex_linkpred.evaluation.harness import (
	IN_SAMPLE,
	MetricsReport,
	Protocol,
	evaluate,
	evaluate_many,
	evaluate_split,
	make_split,
	sweep_layer,
	write_reports,
)
from multiplex_linkpred.evaluation.metrics import split_metrics
from multiplex_linkpred.evaluation.splits import split_holdout
from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.multiplex.network import aggregate
from multiplex_linkpred.scoring.spec import ScorerSpec
from multiplex_linkpred.scoring.similarity import aa_scores
from multiplex_linkpred.tests.factories import correlated_multiplex, multiplex_from_edges, random_multiplex
from multiplex_linkpred.utils import spawn_seeds

BASELINES = ["AA", "CN", "JC", "PA", "Katz", "AA@target", "Random"]


def specs(*names):
	return [ScorerSpec.parse(name) for name in names]


@pytest.fixture(scope="module")
def net():
	return correlated_multiplex(11)


class TestProtocol:
	def test_defaults(self):
		protocol = Protocol()
		assert (protocol.fraction, protocol.repetitions, protocol.neg_cap) == (0.2, 100, 2_000_000)
		assert protocol.tuning == IN_SAMPLE
		assert len(protocol.grid(3)) == 5151

	@pytest.mark.parametrize(
		"kwargs",
		[
			{"mode": "temporal"},
			{"repetitions": 0},
			{"fraction": 1.0},
			{"validation_fraction": 0.0},
			{"neg_cap": 0},
			{"objective": "recall"},
		],
	)
	def test_rejects(self, kwargs):
		with pytest.raises(ValidationError):
			Protocol(**kwargs)


class TestEvaluate:
	def test_single_repetition_matches_direct_metrics(self, net):
		protocol = Protocol(repetitions=1, seed=3)
		report = evaluate(ScorerSpec.parse("AA"), net, 0, protocol, dataset="toy")
		split = make_split(net, 0, protocol, spawn_seeds(3, 1)[0])
		pairs, labels = split.candidates()
		expected = split_metrics(aa_scores(aggregate(split.train), pairs), labels)
		assert report.auc == expected.auc
		assert report.precision == expected.precision
		assert (report.p1, report.p2) == (expected.p1, expected.p2)
		assert report.n == len(split.positives)
		assert (report.dataset, report.target_layer, report.method) == ("toy", "L1", "AA")

	def test_deterministic(self, net):
		protocol = Protocol(repetitions=3, seed=5, step=0.25)
		first = evaluate_many(specs(*BASELINES, "MAA"), net, 1, protocol)
		second = evaluate_many(specs(*BASELINES, "MAA"), net, 1, protocol)
		assert first == second
		assert [r.eta for r in first] == [r.eta for r in second]

	def test_auc_within_mean_bounds(self, net):
		protocol = Protocol(repetitions=4, seed=1, step=0.25)
		for x in range(net.n_layers):
			for report in evaluate_many(specs(*BASELINES, "MAA", "MAA:eta=0.2/0.5/0.3"), net, x, protocol):
				assert report.auc_min - 1e-9 <= report.auc <= report.auc_max + 1e-9, report.method

	def test_random_scorer_is_chance(self):
		net = correlated_multiplex(2, n_nodes=100)
		report = evaluate(ScorerSpec.parse("Random"), net, 0, Protocol(repetitions=20, seed=7))
		assert report.auc == pytest.approx(0.5, abs=0.05)

	def test_tuned_maa_beats_every_corner(self, net):
		protocol = Protocol(repetitions=3, seed=2, step=0.25)
		corners = ["MAA:eta=1/0/0", "MAA:eta=0/1/0", "MAA:eta=0/0/1"]
		tuned, *fixed = evaluate_many(specs("MAA", *corners), net, 0, protocol)
		assert tuned.params.endswith("tuned=in-sample")
		for report in fixed:
			assert tuned.auc >= report.auc - 1e-12

	def test_tuned_report_matches_fixed_eta(self, net):
		protocol = Protocol(repetitions=2, seed=4, step=0.25, validation_fraction=0.25)
		tuned = evaluate(ScorerSpec.parse("MAA"), net, 2, protocol)
		assert tuned.params.endswith("tuned=validation")
		fixed = evaluate(ScorerSpec.parse(f"MAA:eta={tuned.eta}"), net, 2, protocol)
		assert tuned.auc == pytest.approx(fixed.auc, abs=1e-12)
		assert tuned.precision == pytest.approx(fixed.precision, abs=1e-12)

	def test_tuned_maa_with_layer_without_edges(self):
		base = correlated_multiplex(3, n_layers=2)
		net = multiplex_from_edges(base.n_nodes, [base.edges(0), base.edges(1), []])
		report = evaluate(ScorerSpec.parse("MAA"), net, 0, Protocol(repetitions=2, seed=1, step=0.25))
		assert report.eta.eta[2] == 0
		assert 0.0 <= report.auc <= 1.0

	def test_cross_layer_mode(self, net):
		protocol = Protocol(mode="crosslayer", repetitions=2, seed=0)
		report = evaluate(ScorerSpec.parse("CN"), net, 0, protocol)
		split = make_split(net, 0, protocol, 0)
		assert report.n == len(split.positives)

	def test_failure_is_logged(self, caplog):
		net = multiplex_from_edges(3, [[(0, 1)], [(1, 2)]])
		with caplog.at_level(logging.ERROR, logger="multiplex_linkpred"):
			with pytest.raises(ValidationError):
				evaluate(ScorerSpec.parse("AA"), net, 0, Protocol(repetitions=1))
		assert "Evaluation Error" in caplog.text


class TestBoundsContainment:
	SPECS = ("AA", "CN", "JC", "PA", "Katz", "AA@target", "MAA:eta=0.2/0.3/0.5", "MAA:eta=1/0/0")

	@pytest.mark.parametrize("block", range(10))
	def test_auc_within_measured_bounds(self, block):
		for seed in range(50 * block, 50 * block + 50):
			rng = np.random.default_rng(seed)
			net = random_multiplex(seed, n_nodes=int(rng.integers(20, 36)), n_layers=3, density=float(rng.uniform(0.08, 0.25)))
			split = split_holdout(net, seed % 3, float(rng.uniform(0.1, 0.4)), seed=seed)
			spec = ScorerSpec.parse(self.SPECS[seed % len(self.SPECS)])
			m = evaluate_split(spec, split)
			assert m.auc_max == pytest.approx(m.auc_min + m.p1 * m.p2, abs=1e-12)
			assert m.auc_min - 1e-12 <= m.auc <= m.auc_max + 1e-12, (seed, spec.name)


class TestSweepLayer:
	def test_repetitions_and_corners(self, net):
		protocol = Protocol(repetitions=2, seed=0, step=0.2)
		result = sweep_layer(net, "L2", protocol)
		assert result.n_splits == 2
		assert len(result.auc) == 21
		assert np.all(result.auc[result.best_index()] >= result.auc[result.grid.corners()])

	def test_validation_sweep_differs_from_in_sample(self, net):
		in_sample = sweep_layer(net, 0, Protocol(repetitions=1, seed=0, step=0.5))
		validation = sweep_layer(net, 0, Protocol(repetitions=1, seed=0, step=0.5, validation_fraction=0.3))
		assert not np.array_equal(in_sample.auc, validation.auc)


class TestReports:
	def test_csv_columns(self):
		report = MetricsReport("cns", "calls", "AA", "layer=aggregate", 0.7, 0.6, 0.8, 0.5, 0.4, 0.1, 10, 3, 0)
		stream = io.StringIO()
		write_reports([report, report], stream)
		lines = stream.getvalue().splitlines()
		assert lines[0] == ",".join(hooks.evaluation_columns)
		assert lines[1] == "cns,calls,AA,layer=aggregate,0.7,0.6,0.8,0.5,0.4,0.1,10,3,0"
		assert len(lines) == 3

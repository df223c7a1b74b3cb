import io

import pytest
import yaml

from multiplex_linkpred.config import RunConfig, dump_config, load_config
from multiplex_linkpred.exceptions import ValidationError
from multiplex_linkpred.scoring.multiplex import CoefficientVector


class TestRunConfig:
	def test_defaults(self):
		config = RunConfig()
		assert config.methods == ("AA", "CN", "JC", "PA", "Katz", "MAA")
		protocol = config.protocol()
		assert (protocol.fraction, protocol.repetitions, protocol.seed) == (0.2, 100, 0)

	def test_unknown_key(self):
		with pytest.raises(ValidationError):
			RunConfig.from_dict({"dataset": "x.edges", "repetitions": 5})

	def test_bad_loader(self):
		with pytest.raises(ValidationError):
			RunConfig(loader="gml")

	def test_lists_become_tuples(self):
		config = RunConfig.from_dict({"layers": ["1", "2"], "methods": "AA"})
		assert config.layers == ("1", "2")
		assert config.methods == ("AA",)

	def test_merge_prefers_overrides(self):
		flags = RunConfig(dataset="a.edges", reps=10, seed=1)
		merged = flags.merge({"reps": 3, "target_layers": ["calls"]})
		assert (merged.dataset, merged.reps, merged.seed) == ("a.edges", 3, 1)
		assert merged.target_layers == ("calls",)

	def test_eta_applies_to_bare_maa(self):
		config = RunConfig(methods=("AA", "MAA", "MAA:eta=1/0/0"), eta="0.2/0.3/0.5")
		specs = config.scorer_specs()
		assert specs[0].eta is None
		assert specs[1].eta == CoefficientVector((0.2, 0.3, 0.5))
		assert specs[2].eta == CoefficientVector((1.0, 0.0, 0.0))

	def test_no_methods(self):
		with pytest.raises(ValidationError):
			RunConfig(methods=()).scorer_specs()

	def test_resolve_targets(self):
		names = ("calls", "facebook", "sms")
		assert RunConfig().resolve_targets(names) == list(names)
		assert RunConfig(target_layers=("all",)).resolve_targets(names) == list(names)
		assert RunConfig(target_layers=("sms",)).resolve_targets(names) == ["sms"]

	def test_bad_protocol_values(self):
		with pytest.raises(ValidationError):
			RunConfig(mode="temporal").protocol()


class TestConfigFile:
	def test_load(self, tmp_path):
		path = tmp_path / "run.yaml"
		path.write_text("dataset: data/cs-aarhus.edges\nneg-cap: 1000\nmethods: [AA, 'Katz:beta=0.01,max_len=4']\n")
		data = load_config(path)
		assert data == {
			"dataset": "data/cs-aarhus.edges",
			"neg_cap": 1000,
			"methods": ["AA", "Katz:beta=0.01,max_len=4"],
		}
		assert RunConfig().merge(data).scorer_specs()[1].max_len == 4

	def test_empty_file(self, tmp_path):
		path = tmp_path / "run.yaml"
		path.write_text("")
		assert load_config(path) == {}

	@pytest.mark.parametrize("text", ["- a\n- b\n", "reps: [1\n", "colour: red\n"])
	def test_invalid(self, tmp_path, text):
		path = tmp_path / "run.yaml"
		path.write_text(text)
		with pytest.raises(ValidationError):
			load_config(path)

	def test_missing_file(self, tmp_path):
		with pytest.raises(ValidationError):
			load_config(tmp_path / "nope.yaml")

	def test_dump_reloads(self, tmp_path):
		config = RunConfig(dataset="x.edges", layers=("1", "2"), reps=7, eta="0.5/0.5")
		stream = io.StringIO()
		dump_config(config, stream)
		path = tmp_path / "run.yaml"
		path.write_text(stream.getvalue())
		assert RunConfig.from_dict(load_config(path)) == config
		assert yaml.safe_load(stream.getvalue())["layers"] == ["1", "2"]

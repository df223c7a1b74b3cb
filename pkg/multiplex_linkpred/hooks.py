app_name = "multiplex_linkpred"
app_title = "Multiplex Link Prediction"
app_publisher = "shivam"
app_description = "Multiplex Adamic-Adar link prediction with baselines, tie-aware evaluation and coefficient sweeps"
app_email = "shivam@gmail.com"
app_license = "mit"

# Scorers
# -------
# Baseline scorers resolved by method name.
# Each entry takes (layer, pairs, **params) and returns one score per pair.
# MAA is not listed here: it is scored from a triad index, see scoring.spec.score_pairs

scorer_methods = {
	"AA": "multiplex_linkpred.scoring.similarity.aa_scores",
	"CN": "multiplex_linkpred.scoring.similarity.cn_scores",
	"JC": "multiplex_linkpred.scoring.similarity.jc_scores",
	"PA": "multiplex_linkpred.scoring.similarity.pa_scores",
	"Katz": "multiplex_linkpred.scoring.katz.katz_pair_scores",
	"Random": "multiplex_linkpred.scoring.similarity.random_scores",
}

# extra keyword parameters passed through to the scorer
scorer_params = {
	"Katz": ("beta", "max_len", "exact"),
	"Random": ("rng",),
}

katz_defaults = {
	"beta": 0.005,
	"max_len": 5,
}

# Evaluation
# ----------

default_protocol = {
	"mode": "random",
	"fraction": 0.2,
	"repetitions": 100,
	"seed": 0,
	"neg_cap": 2_000_000,
	"validation_fraction": None,
	"objective": "auc",
	"threads": 1,
}

evaluation_columns = (
	"dataset",
	"target_layer",
	"method",
	"params",
	"auc",
	"auc_min",
	"auc_max",
	"p1",
	"p2",
	"precision",
	"n",
	"repetitions",
	"seed",
)

# Coefficient sweep
# -----------------
# grid step by number of layers

sweep_steps = {
	1: 0.01,
	2: 0.01,
	3: 0.01,
	4: 0.05,
	5: 0.05,
}
default_sweep_step = 0.1

# grid points scored per block, lowered for large candidate sets
sweep_chunk_size = 256
# upper bound on one block's (points x scored pairs) score matrix, 64 MB of float64
sweep_chunk_cells = 8_000_000

# Triad index
# -----------

triad_index_format_version = 1
triad_chunk_size = 50_000

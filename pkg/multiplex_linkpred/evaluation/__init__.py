from multiplex_linkpred.evaluation.metrics import (
	SplitMetrics,
	auc_bounds,
	precision_at_n,
	roc_auc,
	split_metrics,
)
from multiplex_linkpred.evaluation.splits import EvalSplit, cross_layer_testset, split_holdout

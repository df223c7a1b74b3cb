from multiplex_linkpred.scoring.katz import katz_pair_scores, katz_scores, spectral_radius
from multiplex_linkpred.scoring.multiplex import CoefficientVector, maa_score, maa_scores
from multiplex_linkpred.scoring.similarity import aa_score, cn_score, jc_score, pa_score
from multiplex_linkpred.scoring.spec import ScoredPair, ScorerSpec, score_all, score_pairs

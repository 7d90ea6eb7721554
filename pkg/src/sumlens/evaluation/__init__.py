from sumlens.evaluation.baselines import lead_baseline, random_baseline
from sumlens.evaluation.corpus import RankRow, concept_coverage, loglog_slope, zipf_table
from sumlens.evaluation.rouge import (
    METRICS,
    RougeScores,
    best_over_references,
    rouge_n,
    rouge_su,
    rouge_w,
    score_all,
)
from sumlens.evaluation.stats import WilcoxonResult, wilcoxon_signed_rank

__all__ = [
    "METRICS",
    "RankRow",
    "RougeScores",
    "WilcoxonResult",
    "best_over_references",
    "concept_coverage",
    "lead_baseline",
    "loglog_slope",
    "random_baseline",
    "rouge_n",
    "rouge_su",
    "rouge_w",
    "score_all",
    "wilcoxon_signed_rank",
    "zipf_table",
]

from .results import GroupSummary, PovertyResult, ScoreVector
from .scoring import check_cutoff, identify, score, weighted_scores
from .measures import measure, measure_groups
from .decomposition import decompose_indicators, decompose_subgroups
from .crosstab import attach_household_status, attributed_headcounts, crosstab, membership
from .sweep import DEFAULT_CUTOFFS, check_cutoffs, dominates, sweep
from .oracle import oracle_contributions, oracle_measure, oracle_scores
from .published import PaperCheck, check_paper

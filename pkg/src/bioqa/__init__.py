"""Extractive biomedical question answering: candidate scoring, MMR
sentence selection, tiling, and ROUGE-L / exact-answer evaluation."""

from .corpus import DatasetSplit, ExactAnswer, Question, candidate_pool, load_dataset, split_dataset
from .features import FeatureKind, IdfTable, ScoredCandidate, parse_feature, score_pool
from .metrics import AccuracyPair, QuestionScore, RougeL, aggregate_accuracy, exact_match, lcs_length, rouge_l
from .selection import Selection, SelectionConfig, greedy_select, mmr_select
from .stats import PairedSample, WilcoxonResult, mean_diff, significance_table, wilcoxon_signed_rank
from .textproc import Sentence, split_sentences, tokenize
from .tiler import AnswerText, tile

__version__ = "0.1.0"

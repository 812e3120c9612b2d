"""Author contribution statements to per-paper credit metrics."""
from authorcredit.analysis import RankPatternClassifier, classify_pattern, metric_curve, rank_profile
from authorcredit.canon import Category, ContributionCanonicalizer, SynonymTable, canonicalize
from authorcredit.ingest import ArticleRecord, ExclusionReason, RawStatement, parse_corpus
from authorcredit.matcher import AcronymResolver, generate_acronym, tanimoto_similarity
from authorcredit.metrics import (
    EffectiveAuthors,
    WeightedStar,
    accessibility,
    contribution_shares,
    effective_authors,
    paper_metrics,
    symmetry,
)
from authorcredit.pipeline import corpus_metrics, credit_corpus

__version__ = "0.1.0"

__all__ = [
    "AcronymResolver",
    "ArticleRecord",
    "Category",
    "ContributionCanonicalizer",
    "EffectiveAuthors",
    "ExclusionReason",
    "RankPatternClassifier",
    "RawStatement",
    "SynonymTable",
    "WeightedStar",
    "accessibility",
    "canonicalize",
    "classify_pattern",
    "contribution_shares",
    "corpus_metrics",
    "credit_corpus",
    "effective_authors",
    "generate_acronym",
    "metric_curve",
    "paper_metrics",
    "parse_corpus",
    "rank_profile",
    "symmetry",
    "tanimoto_similarity",
]

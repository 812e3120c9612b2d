"""Folding free-text contribution phrases into six canonical categories."""

import enum
from collections import Counter
from importlib import resources
from pathlib import Path

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._text import normalize_phrase
from .exceptions import EmptyCorpusError


class Category(str, enum.Enum):
    ANALYZED_DATA = "AnalyzedData"
    COLLECTED_DATA = "CollectedData"
    CONCEIVED_EXPERIMENTS = "ConceivedExperiments"
    PERFORMED_EXPERIMENTS = "PerformedExperiments"
    WROTE_PAPER = "WrotePaper"
    REVISED_MANUSCRIPT = "RevisedManuscript"

    def __str__(self):
        return self.value

    @property
    def short_name(self):
        return _SHORT_NAMES[self]


_SHORT_NAMES = {
    Category.ANALYZED_DATA: "analyzed",
    Category.COLLECTED_DATA: "collected",
    Category.CONCEIVED_EXPERIMENTS: "conceived",
    Category.PERFORMED_EXPERIMENTS: "performed",
    Category.WROTE_PAPER: "wrote",
    Category.REVISED_MANUSCRIPT: "revised",
}

#: Categories kept in analyses unless revisions are explicitly requested.
ANALYSIS_CATEGORIES = tuple(c for c in Category if c is not Category.REVISED_MANUSCRIPT)


def retained_categories(include_revised=False):
    return tuple(Category) if include_revised else ANALYSIS_CATEGORIES


class SynonymTable:
    """Immutable mapping from normalized phrase to :class:`Category`.

    Loaded from a tab-separated file (``phrase<TAB>category``, ``#`` comments).
    """

    def __init__(self, mapping, version=None):
        self._map = {normalize_phrase(k): Category(v) for k, v in mapping.items()}
        self.version = version

    @classmethod
    def load(cls, path=None):
        if path is None:
            text = resources.files(__package__).joinpath("data/synonyms.tsv").read_text("utf-8")
        else:
            text = Path(path).read_text("utf-8")
        return cls.from_text(text)

    @classmethod
    def from_text(cls, text):
        mapping, version = {}, None
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            if line.startswith("#"):
                if version is None and "version" in line:
                    version = line.rsplit("version", 1)[1].strip()
                continue
            phrase, sep, category = line.rpartition("\t")
            if not sep or not phrase.strip():
                raise ValueError(f"synonym line {lineno}: expected 'phrase<TAB>category'")
            try:
                cat = Category(category.strip())
            except ValueError:
                raise ValueError(f"synonym line {lineno}: unknown category {category.strip()!r}") from None
            key = normalize_phrase(phrase)
            if key in mapping and mapping[key] is not cat:
                raise ValueError(f"synonym line {lineno}: {key!r} mapped twice")
            mapping[key] = cat
        return cls(mapping, version)

    def get(self, phrase):
        return self._map.get(normalize_phrase(phrase))

    def __contains__(self, phrase):
        return normalize_phrase(phrase) in self._map

    def __len__(self):
        return len(self._map)

    def items(self):
        return self._map.items()


_default_table = None


def default_table():
    global _default_table
    if _default_table is None:
        _default_table = SynonymTable.load()
    return _default_table


class UnmappedLog:
    """Counts phrases that had no entry in the synonym table."""

    def __init__(self):
        self.counts = Counter()

    def record(self, phrase):
        self.counts[normalize_phrase(phrase)] += 1

    def rows(self):
        return sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))


def canonicalize(text, table=None, unmapped=None):
    """Return the :class:`Category` for ``text`` or ``None`` when unmapped.

    Matching is an exact lookup on the normalized phrase; there is no fuzzy
    fallback. Pass an :class:`UnmappedLog` to collect misses.
    """
    if not text or not text.strip():
        raise ValueError("phrase must be non-empty")
    table = default_table() if table is None else table
    cat = table.get(text)
    if cat is None and unmapped is not None:
        unmapped.record(text)
    return cat


def category_frequencies(corpus, categories=tuple(Category)):
    """Fraction of author occurrences credited with each category.

    Every author of every article counts as one occurrence, so an author who
    appears in two articles is counted twice. Articles must expose
    ``n_authors`` and ``credits`` (one set of categories per rank).
    """
    total = 0
    hits = Counter()
    for article in corpus:
        total += article.n_authors
        for cats in article.credits:
            hits.update(set(cats))
    if total == 0:
        raise EmptyCorpusError("category frequencies need a non-empty corpus")
    return {cat: hits[cat] / total for cat in categories}


class ContributionCanonicalizer(BaseEstimator, TransformerMixin):
    """Transformer mapping phrases to categories (``None`` when unmapped).

    Parameters
    ----------
    synonyms : path-like or None
        Synonym file; the bundled table is used when ``None``.
    include_revised : bool, default=False
        If False, phrases mapping to ``RevisedManuscript`` come out as ``None``.
    """

    def __init__(self, synonyms=None, include_revised=False):
        self.synonyms = synonyms
        self.include_revised = include_revised

    def fit(self, X=None, y=None):
        self.table_ = default_table() if self.synonyms is None else SynonymTable.load(self.synonyms)
        self.categories_ = retained_categories(self.include_revised)
        self.unmapped_ = UnmappedLog()
        return self

    def transform(self, X):
        check_is_fitted(self, "table_")
        out = []
        for phrase in X:
            cat = canonicalize(phrase, self.table_, self.unmapped_)
            out.append(cat if cat in self.categories_ else None)
        return out

"""Acronym generation and acronym -> author-rank resolution.

Each author gets an acronym made of the capital letters of their name.
Statement tokens are matched exactly first; tokens without an exact match
fall back to the Tanimoto coefficient over character sets (or bigram sets),
keeping the best candidate at or above a threshold.
"""

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._text import normalize_acronym, strip_diacritics
from .exceptions import UnresolvableAcronymsError

SIMILARITY_MODES = ("charset", "bigram")
DEFAULT_THRESHOLD = 0.5


def generate_acronym(name):
    """Concatenate the capital letters of ``name`` in order.

    Lower-case particles ("da", "van") contribute nothing. A name with no
    capitals at all has its word initials capitalized first.

    >>> generate_acronym("Laura da F. Castro")
    'LFC'
    """
    if not name or not name.strip():
        raise ValueError("name must be non-empty")
    plain = strip_diacritics(name)
    letters = "".join(ch for ch in plain if "A" <= ch <= "Z")
    if not letters:
        titled = " ".join(w[:1].upper() + w[1:] for w in plain.split())
        letters = "".join(ch for ch in titled if "A" <= ch <= "Z")
    if not letters:
        raise ValueError(f"cannot derive an acronym from {name!r}")
    return letters


def _features(acronym, mode):
    if mode == "charset":
        return set(acronym)
    if mode == "bigram":
        if len(acronym) == 1:
            return {acronym}
        return {acronym[i : i + 2] for i in range(len(acronym) - 1)}
    raise ValueError(f"unknown similarity mode {mode!r}; expected one of {SIMILARITY_MODES}")


def tanimoto_similarity(a, b, mode="charset"):
    """Tanimoto (Jaccard) coefficient ``|A & B| / |A | B|`` of two acronyms.

    ``A`` and ``B`` are the sets of characters (``mode="charset"``) or of
    adjacent character pairs (``mode="bigram"``).
    """
    if not a or not b:
        raise ValueError("tanimoto_similarity needs two non-empty acronyms")
    fa, fb = _features(a, mode), _features(b, mode)
    return len(fa & fb) / len(fa | fb)


@dataclass(frozen=True)
class AcronymIndex:
    generated_acronyms: tuple
    ranks_by_acronym: dict

    @classmethod
    def from_authors(cls, authors):
        generated = tuple(generate_acronym(a) for a in authors)
        index = {}
        for rank, acr in enumerate(generated, start=1):
            index.setdefault(acr, set()).add(rank)
        return cls(generated, {k: frozenset(v) for k, v in index.items()})

    @property
    def n_authors(self):
        return len(self.generated_acronyms)


@dataclass(frozen=True)
class TokenMatch:
    token: str
    rank: int
    score: float


@dataclass(frozen=True)
class DroppedToken:
    token: str
    best_candidate: str
    score: float


@dataclass(frozen=True)
class ResolvedStatement:
    text: str
    matches: tuple
    dropped: tuple = field(default=())

    @property
    def author_ranks(self):
        return frozenset(m.rank for m in self.matches)

    @property
    def resolution_quality(self):
        return {m.token: m.score for m in self.matches}


def match_token(token, index, threshold=DEFAULT_THRESHOLD, mode="charset", exclude=()):
    """Return ``(rank, score, best_candidate)`` for one normalized token.

    ``rank`` is ``None`` when the best score falls below ``threshold``.
    Ranks in ``exclude`` are skipped by the fuzzy step unless every rank is
    excluded. Ties (including several authors sharing an exact acronym) go
    to the lowest rank.
    """
    exact = index.ranks_by_acronym.get(token)
    if exact:
        rank = min(exact)
        return rank, 1.0, index.generated_acronyms[rank - 1]
    ranks = range(1, index.n_authors + 1)
    if exclude and len(set(exclude)) < index.n_authors:
        ranks = [r for r in ranks if r not in exclude]
    best_rank, best_score = None, -1.0
    for rank in ranks:
        score = tanimoto_similarity(token, index.generated_acronyms[rank - 1], mode)
        if score > best_score:
            best_rank, best_score = rank, score
    best_acr = index.generated_acronyms[best_rank - 1]
    if best_score >= threshold:
        return best_rank, best_score, best_acr
    return None, best_score, best_acr


def _assign(tokens, index, threshold, mode):
    """Jointly resolve the tokens of one statement.

    Exact matches are fixed first. Remaining tokens are assigned best-first:
    the pending token with the highest available score (earliest token on
    ties) takes its best unclaimed rank, since the acronyms listed in one
    statement name distinct authors.
    """
    result = [None] * len(tokens)
    claimed = set()
    pending = []
    for i, token in enumerate(tokens):
        exact = index.ranks_by_acronym.get(token)
        if exact:
            rank = min(exact)
            result[i] = (rank, 1.0, index.generated_acronyms[rank - 1])
            claimed.add(rank)
        else:
            pending.append(i)
    while pending:
        best_i, best = None, None
        for i in pending:
            cand = match_token(tokens[i], index, threshold, mode, exclude=claimed)
            if best is None or cand[1] > best[1]:
                best_i, best = i, cand
        result[best_i] = best
        pending.remove(best_i)
        if best[0] is not None:
            claimed.add(best[0])
    return result


def resolve_statement(statement, index, threshold=DEFAULT_THRESHOLD, mode="charset"):
    """Map every acronym token of ``statement`` to an author rank.

    Tokens below ``threshold`` are dropped and kept in ``dropped``; if no token
    survives, :class:`UnresolvableAcronymsError` is raised.
    """
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must lie in (0, 1], got {threshold}")
    tokens = [normalize_acronym(raw) for raw in statement.acronyms]
    valid = [t for t in tokens if t]
    assigned = iter(_assign(valid, index, threshold, mode))
    matches, dropped = [], []
    for raw, token in zip(statement.acronyms, tokens):
        if not token:
            dropped.append(DroppedToken(raw, "", 0.0))
            continue
        rank, score, best = next(assigned)
        if rank is None:
            dropped.append(DroppedToken(token, best, score))
        else:
            matches.append(TokenMatch(token, rank, score))
    if not matches:
        raise UnresolvableAcronymsError(
            f"no acronym of {statement.text!r} matches an author", dropped
        )
    return ResolvedStatement(statement.text, tuple(matches), tuple(dropped))


class AcronymResolver(BaseEstimator):
    """Estimator wrapper: ``fit`` on a byline, ``predict`` ranks for tokens.

    Parameters
    ----------
    threshold : float, default=0.5
        Minimum Tanimoto coefficient for a fuzzy match.
    similarity : {"charset", "bigram"}, default="charset"
        Feature set the coefficient is computed over.

    Attributes
    ----------
    index_ : AcronymIndex
    generated_acronyms_ : tuple of str
    """

    def __init__(self, threshold=DEFAULT_THRESHOLD, similarity="charset"):
        self.threshold = threshold
        self.similarity = similarity

    def _validate_params(self):
        if not 0 < self.threshold <= 1:
            raise ValueError(f"threshold must lie in (0, 1], got {self.threshold}")
        if self.similarity not in SIMILARITY_MODES:
            raise ValueError(f"similarity must be one of {SIMILARITY_MODES}")

    def fit(self, authors, y=None):
        self._validate_params()
        authors = list(authors)
        if not authors:
            raise ValueError("cannot fit on an empty author list")
        self.index_ = AcronymIndex.from_authors(authors)
        self.generated_acronyms_ = self.index_.generated_acronyms
        self.n_authors_ = len(authors)
        return self

    def predict(self, tokens):
        """1-based ranks for the tokens of one statement; 0 marks a dropped token."""
        ranks, _ = self._match(tokens)
        return ranks

    def predict_score(self, tokens):
        return self._match(tokens)[1]

    def _match(self, tokens):
        check_is_fitted(self, "index_")
        normalized = [normalize_acronym(t) for t in tokens]
        valid = [t for t in normalized if t]
        assigned = iter(_assign(valid, self.index_, self.threshold, self.similarity))
        ranks = np.zeros(len(tokens), dtype=int)
        scores = np.zeros(len(tokens), dtype=float)
        for i, token in enumerate(normalized):
            if not token:
                continue
            rank, score, _ = next(assigned)
            ranks[i] = rank or 0
            scores[i] = score
        return ranks, scores

    def resolve(self, statement):
        check_is_fitted(self, "index_")
        return resolve_statement(statement, self.index_, self.threshold, self.similarity)

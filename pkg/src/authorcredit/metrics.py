"""Entropy-based credit metrics on the author x contribution matrix.

For one article, let ``B`` be the binary author x category matrix and ``w``
the per-category weights. Author ``a`` receives the share

    c_a = sum_j w_j B_aj / sum_i sum_j w_j B_ij

and the article gets

    H = -sum_a c_a ln c_a        (0 ln 0 := 0)
    N = exp(H)                   effective number of authors
    sigma = N / n_authors        symmetry of contributions, in (0, 1]

The same exponential-entropy construction applied to one-step random-walk
transition probabilities out of a node gives its accessibility.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import (
    NORMALIZATION_TOL,
    check_binary_matrix,
    check_probability_vector,
    check_weights,
)
from .canon import retained_categories
from .exceptions import EmptyContributionError


@dataclass(frozen=True, eq=False)
class ContributionMatrix:
    """Binary author x category matrix; rows follow byline rank order."""

    matrix: np.ndarray
    weights: np.ndarray = None
    categories: tuple = ()

    def __post_init__(self):
        B = check_binary_matrix(self.matrix, require_nonzero=False)
        if not B.any():
            raise EmptyContributionError("contribution matrix has no credited contribution")
        object.__setattr__(self, "matrix", B)
        object.__setattr__(self, "weights", check_weights(self.weights, B.shape[1]))
        if self.categories and len(self.categories) != B.shape[1]:
            raise ValueError("one category label per column expected")
        object.__setattr__(self, "categories", tuple(self.categories))

    @property
    def n_authors(self):
        return self.matrix.shape[0]

    @property
    def n_categories(self):
        return self.matrix.shape[1]

    def column(self, category):
        return self.matrix[:, self.categories.index(category)]


@dataclass(frozen=True)
class PaperMetrics:
    id: str
    n_authors: int
    shares: tuple
    entropy: float
    effective_authors: float
    symmetry: float


@dataclass(frozen=True, eq=False)
class WeightedStar:
    """A node and the weights of the edges to its neighbours."""

    center: str
    weights: tuple
    probabilities: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        if w.size == 0:
            raise ValueError("a star needs at least one neighbour")
        if not np.all(np.isfinite(w)) or (w <= 0).any():
            raise ValueError("edge weights must be finite and positive")
        object.__setattr__(self, "weights", tuple(w.tolist()))
        object.__setattr__(self, "probabilities", w / math.fsum(w.tolist()))

    @property
    def degree(self):
        return len(self.weights)


def build_matrix(article, include_revised=False, weights=None):
    """Build the :class:`ContributionMatrix` of a processed article.

    ``article.credits`` holds one collection of categories per rank. Columns
    are the retained categories in canonical order; ``RevisedManuscript``
    only appears with ``include_revised``.
    """
    categories = retained_categories(include_revised)
    B = np.zeros((article.n_authors, len(categories)), dtype=np.int8)
    for row, cats in enumerate(article.credits):
        for j, cat in enumerate(categories):
            if cat in cats:
                B[row, j] = 1
    if not B.any():
        raise EmptyContributionError(
            f"article {getattr(article, 'id', '?')!r} has no retained contribution"
        )
    return ContributionMatrix(B, weights, categories)


def contribution_shares(B, weights=None):
    """Per-author shares of the weighted contribution mass (sums to one)."""
    if isinstance(B, ContributionMatrix):
        cm = B if weights is None else ContributionMatrix(B.matrix, weights, B.categories)
    else:
        cm = ContributionMatrix(B, weights)
    per_author = cm.matrix @ cm.weights
    total = math.fsum(per_author.tolist())
    if total <= 0:
        raise ZeroDivisionError("weighted contribution mass is zero")
    return per_author / total


def effective_authors(shares):
    """Return ``(H, N)``: entropy in nats and its exponential.

    Uses compensated summation; zero shares contribute nothing.
    """
    c = check_probability_vector(shares)
    H = math.fsum(-x * math.log(x) for x in c.tolist() if x > 0) + 0.0
    return H, math.exp(H)


def symmetry(effective, n_authors):
    """Effective over actual author count, clipped to 1 against rounding."""
    if n_authors < 1:
        raise ValueError("n_authors must be at least 1")
    slack = NORMALIZATION_TOL * n_authors
    if not 1 - NORMALIZATION_TOL <= effective <= n_authors + slack:
        raise ValueError(f"effective number {effective} outside [1, {n_authors}]")
    return min(effective / n_authors, 1.0)


def paper_metrics(B, weights=None, article_id=""):
    c = contribution_shares(B, weights)
    H, N = effective_authors(c)
    n = len(c)
    return PaperMetrics(article_id, n, tuple(c.tolist()), H, N, symmetry(N, n))


def accessibility(star):
    """Exponential of the entropy of the transition probabilities out of a node.

    ``star`` is a :class:`WeightedStar` or an already normalized, strictly
    positive probability vector.
    """
    if isinstance(star, WeightedStar):
        p = star.probabilities
    else:
        p = check_probability_vector(star, strictly_positive=True)
    return math.exp(math.fsum(-x * math.log(x) for x in p.tolist()))


class EffectiveAuthors(BaseEstimator, TransformerMixin):
    """Transform a sequence of contribution matrices into per-paper metrics.

    Output columns are ``n_authors``, ``entropy``, ``effective_authors`` and
    ``symmetry``. Matrices may differ in shape, so ``X`` is any sequence of
    2-D 0/1 arrays (or :class:`ContributionMatrix`).

    Parameters
    ----------
    weights : array-like or None
        Per-category weights; ``None`` means unit weights.
    """

    _feature_names = ("n_authors", "entropy", "effective_authors", "symmetry")

    def __init__(self, weights=None):
        self.weights = weights

    def fit(self, X=None, y=None):
        if self.weights is not None:
            check_weights(self.weights, len(np.ravel(self.weights)))
        self.n_features_out_ = len(self._feature_names)
        return self

    def transform(self, X):
        rows = []
        for B in X:
            m = paper_metrics(B, self.weights)
            rows.append((m.n_authors, m.entropy, m.effective_authors, m.symmetry))
        return np.asarray(rows, dtype=float).reshape(-1, len(self._feature_names))

    def get_feature_names_out(self, input_features=None):
        return np.asarray(self._feature_names, dtype=object)

"""Corpus-level aggregates: histograms, metric curves, rank profiles, patterns.

Pattern labels describe the shape of a per-rank vector ``v`` (rank 1 first)
under a per-step tolerance ``tol = epsilon * max(v)``:

A
    non-increasing over all ranks and ``v[first] > v[last]``.
B
    non-decreasing from the first to the second-to-last rank,
    ``v[second-to-last] > v[first]`` and the last rank in between,
    ``v[first] <= v[last] <= v[second-to-last]``.
C
    an interior minimum ``m`` with ``v`` non-increasing up to ``m`` and
    non-decreasing after it, both endpoints strictly above ``v[m]``.

A and B are mutually exclusive and take precedence over C. Vectors shorter
than four ranks are ``Unclassified``.
"""

import csv
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from ._validation import check_rank_vector
from .canon import retained_categories
from .exceptions import EmptyCorpusError

PATTERN_LABELS = ("A", "B", "C", "Unclassified")
DEFAULT_EPSILON = 0.05
MIN_PATTERN_LENGTH = 4
DEFAULT_COHORT_CAP = 30


@dataclass(frozen=True)
class CurvePoint:
    n_authors: int
    mean: float
    min: float
    max: float
    count: int
    pooled: bool = False
    reference: float = None

    @property
    def label(self):
        return f"{self.n_authors}+" if self.pooled else str(self.n_authors)


@dataclass(frozen=True, eq=False)
class RankProfile:
    """Cohort-averaged contributions per rank.

    ``total[r]`` is the mean number of categories credited at rank ``r + 1``;
    ``share[r]`` the mean per-paper fraction of contributions at that rank;
    ``by_category[c][r]`` the fraction of papers where rank ``r + 1`` holds
    category ``c``.
    """

    n_authors: int
    n_papers: int
    total: np.ndarray
    share: np.ndarray
    by_category: dict


@dataclass(frozen=True)
class PatternClass:
    label: str
    score: float
    scores: dict = field(default_factory=dict)


def author_count_histogram(corpus):
    """Number of papers per author count, keys ascending."""
    counts = Counter(a.n_authors for a in corpus)
    return dict(sorted(counts.items()))


def _metric_value(m, metric):
    if metric == "N":
        return m.effective_authors
    if metric == "sigma":
        return m.symmetry
    raise ValueError(f"unknown metric {metric!r}; expected 'N' or 'sigma'")


def metric_curve(metrics, metric="sigma", cap=DEFAULT_COHORT_CAP):
    """One :class:`CurvePoint` per observed author count.

    Papers with more than ``cap`` authors are pooled into a final point
    labelled ``cap + 1``. For ``metric="N"`` each point carries the
    ``N = n_authors`` reference value (the mean author count when pooled).
    """
    groups = defaultdict(list)
    sizes = defaultdict(list)
    for m in metrics:
        key = m.n_authors if cap is None or m.n_authors <= cap else cap + 1
        groups[key].append(_metric_value(m, metric))
        sizes[key].append(m.n_authors)
    points = []
    for key in sorted(groups):
        values = groups[key]
        pooled = cap is not None and key > cap
        reference = None
        if metric == "N":
            reference = math.fsum(sizes[key]) / len(sizes[key]) if pooled else float(key)
        mean = math.fsum(values) / len(values)
        lo, hi = min(values), max(values)
        points.append(CurvePoint(key, min(max(mean, lo), hi), lo, hi, len(values), pooled, reference))
    return points


def rank_profile(corpus, n_authors, include_revised=False):
    cohort = [a for a in corpus if a.n_authors == n_authors]
    if not cohort:
        raise EmptyCorpusError(f"no paper with {n_authors} authors")
    categories = retained_categories(include_revised)
    counts = np.zeros((len(cohort), n_authors))
    indicators = {c: np.zeros((len(cohort), n_authors)) for c in categories}
    for i, article in enumerate(cohort):
        for r, cats in enumerate(article.credits):
            for c in categories:
                if c in cats:
                    counts[i, r] += 1
                    indicators[c][i, r] = 1
    row_totals = counts.sum(axis=1, keepdims=True)
    fractions = np.divide(counts, row_totals, out=np.zeros_like(counts), where=row_totals > 0)
    return RankProfile(
        n_authors,
        len(cohort),
        counts.mean(axis=0),
        fractions.mean(axis=0),
        {c: ind.mean(axis=0) for c, ind in indicators.items()},
    )


def _step_checks(v, tol, decreasing):
    d = np.diff(v)
    return (d <= tol) if decreasing else (d >= -tol)


def _score_a(v, tol):
    checks = list(_step_checks(v, tol, True)) + [v[0] > v[-1]]
    return sum(checks) / len(checks)


def _score_b(v, tol):
    head = v[:-1]
    checks = list(_step_checks(head, tol, False)) + [
        head[-1] > head[0],
        v[0] <= v[-1],
        v[-1] <= v[-2],
    ]
    return sum(checks) / len(checks)


def _score_c(v, tol):
    best = 0.0
    for m in range(1, len(v) - 1):
        checks = list(_step_checks(v[: m + 1], tol, True)) + list(_step_checks(v[m:], tol, False))
        checks += [v[0] > v[m], v[-1] > v[m]]
        best = max(best, sum(checks) / len(checks))
    return best


def classify_pattern(v, epsilon=DEFAULT_EPSILON):
    """Label a per-rank vector as pattern A, B, C or Unclassified.

    Each label's score is the fraction of its defining conditions that hold;
    a label is assigned only when its score is 1. ``Unclassified`` results
    report the best losing score.
    """
    arr = check_rank_vector(v)
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    if arr.size < MIN_PATTERN_LENGTH or arr.max() == 0:
        return PatternClass("Unclassified", 0.0, {})
    tol = epsilon * arr.max()
    scores = {"A": _score_a(arr, tol), "B": _score_b(arr, tol), "C": _score_c(arr, tol)}
    for label in ("A", "B", "C"):
        if scores[label] == 1.0:
            return PatternClass(label, 1.0, scores)
    return PatternClass("Unclassified", max(scores.values()), scores)


class RankPatternClassifier(BaseEstimator, ClassifierMixin):
    """Rule-based classifier of per-rank vectors into patterns A/B/C.

    There is nothing to learn; ``fit`` only validates parameters so the
    classifier can sit in a pipeline or be scored with ``score``.

    Parameters
    ----------
    epsilon : float, default=0.05
        Per-step tolerance as a fraction of the vector maximum.
    """

    def __init__(self, epsilon=DEFAULT_EPSILON):
        self.epsilon = epsilon

    def fit(self, X=None, y=None):
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")
        self.classes_ = np.asarray(PATTERN_LABELS, dtype=object)
        return self

    def predict(self, X):
        return np.asarray([classify_pattern(v, self.epsilon).label for v in X], dtype=object)

    def decision_scores(self, X):
        """Per-label scores, shape ``(n_samples, 3)`` for A, B, C."""
        out = []
        for v in X:
            s = classify_pattern(v, self.epsilon).scores
            out.append([s.get(k, 0.0) for k in "ABC"])
        return np.asarray(out, dtype=float)


# ---------------------------------------------------------------- writers

def _fmt(x):
    return format(float(x), ".10g")


def write_histogram_csv(hist, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["n_A", "count"])
    for n, count in hist.items():
        writer.writerow([n, count])


def write_curve_csv(points, fh):
    with_reference = any(p.reference is not None for p in points)
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["n_A", "mean", "min", "max", "count"] + (["reference"] if with_reference else []))
    for p in points:
        row = [p.label, _fmt(p.mean), _fmt(p.min), _fmt(p.max), p.count]
        if with_reference:
            row.append(_fmt(p.reference))
        writer.writerow(row)


def write_profile_csv(profile, fh):
    cats = list(profile.by_category)
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["rank", "total", "share"] + [c.short_name for c in cats])
    for r in range(profile.n_authors):
        writer.writerow(
            [r + 1, _fmt(profile.total[r]), _fmt(profile.share[r])]
            + [_fmt(profile.by_category[c][r]) for c in cats]
        )


def pattern_rows(profiles, epsilon=DEFAULT_EPSILON):
    """``(n_A, category, label, score)`` rows for every cohort and category."""
    rows = []
    for profile in profiles:
        series = [("total", profile.total)]
        series += [(c.short_name, profile.by_category[c]) for c in profile.by_category]
        for name, vec in series:
            pc = classify_pattern(vec, epsilon)
            rows.append((profile.n_authors, name, pc.label, pc.score))
    return rows


def write_patterns_csv(rows, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["n_A", "category", "label", "score"])
    for n, name, label, score in rows:
        writer.writerow([n, name, label, _fmt(score)])


def write_frequencies_csv(freqs, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["category", "fraction"])
    for cat, frac in freqs.items():
        writer.writerow([cat.value, _fmt(frac)])


def plot_curve_svg(points, path, metric):
    """Write a scatter of mean/min/max per author count (needs matplotlib)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "authorcredit"
    x = [p.n_authors for p in points]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.vlines(x, [p.min for p in points], [p.max for p in points], color="0.7")
    ax.plot(x, [p.mean for p in points], "o", color="tab:blue", label="mean")
    if metric == "N":
        ax.plot(x, [p.reference for p in points], ":", color="tab:red", label="N = n_A")
        ax.set_ylabel("effective number of authors")
    else:
        ax.plot(x, [p.mean for p in points], ":", color="tab:red")
        ax.set_ylabel("symmetry")
    ax.set_xlabel("number of authors")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)

"""Seeded synthetic corpora and planted rank-pattern vectors.

Every draw comes from one ``numpy.random.Generator`` built from the seed, so a
given ``(seed, parameters)`` pair always yields the same bytes.

Contribution regimes (probability that the author at rank ``r`` of an
``n``-author paper holds a category, with ``t = (r - 1) / (n - 1)``):

``uniform``
    every author holds every category.
``random``
    independent coin flips with probability 0.5.
``rank_biased``
    first author 0.95, last author 0.75, middle authors
    ``0.65 * 0.8 ** (r - 2)``; contributions concentrate on few ranks as the
    byline grows.
``pattern``
    performed experiments follows pattern A (``0.9 - 0.6 t``), collected
    data pattern B (rising from 0.2 to 0.8 at the second-to-last rank, last
    rank 0.5), and the remaining categories pattern C
    (``0.3 + 0.6 (2t - 1) ** 2``).
"""

from dataclasses import dataclass

import numpy as np

from .canon import ANALYSIS_CATEGORIES, Category
from .ingest import ArticleRecord, RawStatement
from .matcher import generate_acronym

REGIMES = ("uniform", "random", "rank_biased", "pattern")
AUTHOR_DISTRIBUTIONS = ("uniform", "balanced", "poisson")

FIRST_NAMES = (
    "Ana", "Bruno", "Carla", "Dario", "Eduardo", "Fernanda", "Gabriel", "Helena",
    "Igor", "Joana", "Karl", "Lucia", "Marcos", "Nadia", "Otto", "Paula", "Quentin",
    "Rafael", "Sofia", "Tomas", "Ursula", "Victor", "Wanda", "Xavier", "Yara",
    "Zoe", "Amélie", "Björn", "Chloé", "Dmitri", "Élise", "Félix", "Grégoire",
    "Hiroshi", "Ingrid", "Jürgen", "Kenji", "Leila", "Mei", "Nikolai", "Olga",
    "Pedro", "Ravi", "Sven", "Tatiana", "Uma", "Vera", "Wei", "Yusuf", "Zhen",
)
SURNAMES = (
    "Almeida", "Barros", "Cunha", "Duarte", "Esteves", "Ferreira", "Gomes", "Hoffmann",
    "Ishikawa", "Jensen", "Kowalski", "Lima", "Moreira", "Nakamura", "Oliveira",
    "Pereira", "Quintana", "Rocha", "Sampaio", "Teixeira", "Uchida", "Vieira", "Weber",
    "Xu", "Yamamoto", "Zanetti", "Antunes", "Bauer", "Chen", "Dubois", "Eriksson",
    "Fischer", "García", "Hansen", "Ivanova", "Jovanović", "Klein", "López", "Müller",
    "Novak", "Olsen", "Petrov", "Rossi", "Schmidt", "Tanaka", "Usman", "Varga",
    "Wagner", "Yilmaz", "Zhang",
)
PARTICLES = ("da", "de", "van", "von", "dos")

#: Phrases emitted for each category (sampled uniformly).
PHRASES = {
    Category.ANALYZED_DATA: ("Analyzed the data", "Statistical analysis", "Interpreted the results"),
    Category.COLLECTED_DATA: (
        "Collected the data",
        "Contributed reagents/materials/analysis tools",
    ),
    Category.CONCEIVED_EXPERIMENTS: (
        "Conceived and designed the experiments",
        "Designed the study",
        "Conceived the experiments",
    ),
    Category.PERFORMED_EXPERIMENTS: ("Performed the experiments",),
    Category.WROTE_PAPER: ("Wrote the paper", "Wrote the manuscript"),
    Category.REVISED_MANUSCRIPT: ("Revised the manuscript",),
}

#: Category -> planted pattern in the ``pattern`` regime.
PLANTED_PATTERNS = {
    Category.PERFORMED_EXPERIMENTS: "A",
    Category.COLLECTED_DATA: "B",
    Category.ANALYZED_DATA: "C",
    Category.CONCEIVED_EXPERIMENTS: "C",
    Category.WROTE_PAPER: "C",
}


@dataclass(frozen=True)
class SyntheticArticle:
    """A generated record plus, per statement, the true rank of each token."""

    record: ArticleRecord
    true_ranks: tuple


def pattern_shape(label, n):
    """Noise-free per-rank values in (0, 1] for pattern ``label`` and ``n`` ranks."""
    if n < 2:
        return np.full(n, 0.9)
    t = np.arange(n) / (n - 1)
    if label == "A":
        return 0.9 - 0.6 * t
    if label == "B":
        if n == 2:
            return np.array([0.2, 0.8])
        v = 0.2 + 0.6 * np.arange(n) / (n - 2)
        v[-1] = 0.5
        return v
    if label == "C":
        return 0.3 + 0.6 * (2 * t - 1) ** 2
    raise ValueError(f"unknown pattern {label!r}")


def planted_pattern_vector(label, n, rng, noise=0.05, scale=1.0):
    """Pattern shape with independent multiplicative noise in ``[1 - noise, 1 + noise]``."""
    base = scale * pattern_shape(label, n)
    return base * rng.uniform(1 - noise, 1 + noise, size=n)


def _rank_probabilities(regime, n):
    cats = ANALYSIS_CATEGORIES
    if regime == "uniform":
        return np.ones((n, len(cats)))
    if regime == "random":
        return np.full((n, len(cats)), 0.5)
    if regime == "rank_biased":
        p = np.array([0.65 * 0.8 ** (r - 1) for r in range(n)])
        p[0] = 0.95
        if n > 1:
            p[-1] = 0.75
        return np.repeat(p[:, None], len(cats), axis=1)
    if regime == "pattern":
        return np.column_stack([pattern_shape(PLANTED_PATTERNS[c], n) for c in cats])
    raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")


def _draw_name(rng):
    first = FIRST_NAMES[rng.integers(len(FIRST_NAMES))]
    last = SURNAMES[rng.integers(len(SURNAMES))]
    parts = [first]
    if rng.random() < 0.6:
        parts.append(chr(ord("A") + int(rng.integers(26))) + ".")
    if rng.random() < 0.1:
        parts.append(PARTICLES[rng.integers(len(PARTICLES))])
    parts.append(last)
    return " ".join(parts)


def _draw_byline(rng, n):
    names, acronyms = [], set()
    while len(names) < n:
        name = _draw_name(rng)
        acr = generate_acronym(name)
        if name in names or acr in acronyms:
            continue
        names.append(name)
        acronyms.add(acr)
    return names


def _author_counts(rng, n_papers, lo, hi, distribution):
    if distribution == "uniform":
        return rng.integers(lo, hi + 1, size=n_papers)
    if distribution == "balanced":
        return np.array([lo + i % (hi - lo + 1) for i in range(n_papers)])
    if distribution == "poisson":
        return np.clip(lo + rng.poisson(4.0, size=n_papers), lo, hi)
    raise ValueError(f"unknown author distribution {distribution!r}")


def _drop_letter(acr, rng):
    if len(acr) < 2:
        return acr
    i = int(rng.integers(len(acr)))
    return acr[:i] + acr[i + 1 :]


def generate_articles(
    n_papers,
    regime="rank_biased",
    seed=0,
    min_authors=1,
    max_authors=10,
    authors_dist="uniform",
    drop_letter_rate=0.0,
    id_prefix="synth",
):
    """Generate ``n_papers`` :class:`SyntheticArticle` objects.

    ``drop_letter_rate`` is the probability that an author's acronym, as
    written in the statements of one paper, loses one random letter.
    """
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")
    if not 1 <= min_authors <= max_authors:
        raise ValueError("need 1 <= min_authors <= max_authors")
    rng = np.random.default_rng(seed)
    sizes = _author_counts(rng, n_papers, min_authors, max_authors, authors_dist)
    width = len(str(max(n_papers, 1)))
    out = []
    for i, n in enumerate(sizes.tolist()):
        authors = _draw_byline(rng, n)
        written = []
        for name in authors:
            acr = generate_acronym(name)
            if drop_letter_rate and rng.random() < drop_letter_rate:
                acr = _drop_letter(acr, rng)
            written.append(acr)
        probs = _rank_probabilities(regime, n)
        held = rng.random(probs.shape) < probs
        if not held.any():
            held[0, int(rng.integers(held.shape[1]))] = True
        statements, truth = [], []
        for j, cat in enumerate(ANALYSIS_CATEGORIES):
            ranks = [r + 1 for r in range(n) if held[r, j]]
            if not ranks:
                continue
            phrases = PHRASES[cat]
            text = phrases[int(rng.integers(len(phrases)))]
            statements.append(RawStatement(text, [written[r - 1] for r in ranks]))
            truth.append(tuple(ranks))
        year = int(rng.integers(2006, 2015))
        record = ArticleRecord(f"{id_prefix}-{i:0{width}d}", year, authors, statements)
        out.append(SyntheticArticle(record, tuple(truth)))
    return out


def generate_corpus(n_papers, regime="rank_biased", seed=0, **kwargs):
    """Like :func:`generate_articles` but returns only the records."""
    return [a.record for a in generate_articles(n_papers, regime, seed, **kwargs)]

"""Record -> credited article: acronym resolution followed by canonicalization."""

import csv
from dataclasses import dataclass, field

from .canon import UnmappedLog, canonicalize, default_table, retained_categories
from .exceptions import UnresolvableAcronymsError
from .ingest import ExclusionReason, ExclusionReport
from .matcher import DEFAULT_THRESHOLD, AcronymIndex, resolve_statement
from .metrics import build_matrix, paper_metrics


@dataclass(frozen=True)
class CreditedArticle:
    """An article whose statements are resolved to ranks and categories.

    ``credits[r - 1]`` is the frozenset of categories credited to rank ``r``.
    """

    id: str
    year: int
    authors: tuple
    credits: tuple

    @property
    def n_authors(self):
        return len(self.authors)


@dataclass
class ProcessResult:
    articles: list = field(default_factory=list)
    report: ExclusionReport = field(default_factory=ExclusionReport)
    unresolved: list = field(default_factory=list)
    unmapped: UnmappedLog = field(default_factory=UnmappedLog)

    def write_unresolved_csv(self, fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "token", "best_candidate", "score"])
        for row in self.unresolved:
            writer.writerow([row[0], row[1], row[2], f"{row[3]:.6f}"])

    def write_unmapped_csv(self, fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["phrase", "count"])
        writer.writerows(self.unmapped.rows())


def credit_article(
    record,
    table=None,
    threshold=DEFAULT_THRESHOLD,
    similarity="charset",
    include_revised=False,
    result=None,
):
    """Resolve and canonicalize one :class:`~authorcredit.ingest.ArticleRecord`.

    Returns the :class:`CreditedArticle`, or ``None`` after recording an
    exclusion in ``result.report``.
    """
    result = ProcessResult() if result is None else result
    table = default_table() if table is None else table
    index = AcronymIndex.from_authors(record.authors)
    credits = [set() for _ in record.authors]
    resolved_any = False
    for statement in record.statements:
        try:
            resolved = resolve_statement(statement, index, threshold, similarity)
        except UnresolvableAcronymsError as exc:
            for d in exc.dropped:
                result.unresolved.append((record.id, d.token, d.best_candidate, d.score))
            continue
        resolved_any = True
        for d in resolved.dropped:
            result.unresolved.append((record.id, d.token, d.best_candidate, d.score))
        category = canonicalize(resolved.text, table, result.unmapped)
        if category is None:
            continue
        for rank in resolved.author_ranks:
            credits[rank - 1].add(category)
    if not resolved_any:
        result.report.add(record.id, ExclusionReason.UNRESOLVABLE_ACRONYMS)
        return None
    kept = retained_categories(include_revised)
    if not any(c & set(kept) for c in credits):
        result.report.add(record.id, ExclusionReason.NO_CONTRIBUTION_INFO, "no retained category")
        return None
    return CreditedArticle(
        record.id, record.year, tuple(record.authors), tuple(frozenset(c) for c in credits)
    )


def credit_corpus(records, table=None, threshold=DEFAULT_THRESHOLD, similarity="charset",
                  include_revised=False):
    result = ProcessResult()
    for record in records:
        article = credit_article(record, table, threshold, similarity, include_revised, result)
        if article is not None:
            result.articles.append(article)
    return result


def corpus_metrics(articles, include_revised=False, weights=None):
    """Per-article :class:`~authorcredit.metrics.PaperMetrics`, in input order."""
    return [
        paper_metrics(build_matrix(a, include_revised, weights), article_id=a.id)
        for a in articles
    ]

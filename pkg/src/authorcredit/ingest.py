"""Corpus ingestion: JSONL / raw readers, record validation and exclusion rules.

Two input formats are understood.

``jsonl``
    One article per line::

        {"id": "...", "year": 2012, "authors": ["A. B. Smith", ...],
         "contributions": [{"text": "Wrote the paper", "acronyms": ["ABS"]}]}

``raw``
    Articles separated by blank lines. Header lines start with ``@``
    (``@id``, ``@year`` and one ``@author`` per byline entry, in rank order);
    every other line is a ``Phrase: ACR ACR.`` contribution statement::

        @id 10.1371/journal.pone.0000001
        @year 2012
        @author Daniel R. Almeida
        @author Laura da F. Castro
        Analyzed the data: DRA LFC.
        Wrote the paper: DRA.

Records that break a rule are never raised; they land in an
:class:`ExclusionReport` with exactly one reason code.
"""

import csv
import enum
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from ._text import normalize_acronym, strip_diacritics
from .exceptions import MalformedStatementError

MAX_ACRONYM_LENGTH = 10

DEFAULT_INSTITUTION_KEYWORDS = (
    "University",
    "Universidade",
    "Institute",
    "Instituto",
    "Department",
    "Hospital",
    "Center",
    "Centre",
    "Laboratory",
    "Group",
    "Consortium",
    "Network",
    "Team",
)

# tokens that join acronym lists in the wild ("EAC and DRA")
_CONNECTORS = frozenset({"and", "&"})


class ExclusionReason(str, enum.Enum):
    INSTITUTIONAL_AUTHOR = "InstitutionalAuthor"
    NO_CONTRIBUTION_INFO = "NoContributionInfo"
    UNRESOLVABLE_ACRONYMS = "UnresolvableAcronyms"
    MALFORMED_RECORD = "MalformedRecord"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RawStatement:
    text: str
    acronyms: tuple

    def __post_init__(self):
        object.__setattr__(self, "acronyms", tuple(self.acronyms))


@dataclass(frozen=True)
class ArticleRecord:
    """One article: ordered byline plus its raw contribution statements.

    The rank of an author is its 1-based position in ``authors``.
    """

    id: str
    year: int
    authors: tuple
    statements: tuple

    def __post_init__(self):
        object.__setattr__(self, "authors", tuple(self.authors))
        object.__setattr__(self, "statements", tuple(self.statements))

    @property
    def n_authors(self):
        return len(self.authors)

    def to_json(self):
        return {
            "id": self.id,
            "year": self.year,
            "authors": list(self.authors),
            "contributions": [
                {"text": s.text, "acronyms": list(s.acronyms)} for s in self.statements
            ],
        }


@dataclass
class ExclusionReport:
    excluded_ids: list = field(default_factory=list)
    reasons: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def add(self, article_id, reason, detail=""):
        if article_id in self.reasons:
            raise ValueError(f"{article_id!r} already excluded")
        self.excluded_ids.append(article_id)
        self.reasons[article_id] = ExclusionReason(reason)
        if detail:
            self.details[article_id] = detail

    def extend(self, other):
        for article_id in other.excluded_ids:
            self.add(article_id, other.reasons[article_id], other.details.get(article_id, ""))
        return self

    def counts(self):
        """Number of excluded articles per reason, in enum declaration order."""
        c = Counter(self.reasons.values())
        return {reason: c[reason] for reason in ExclusionReason if c[reason]}

    def __len__(self):
        return len(self.excluded_ids)

    def __contains__(self, article_id):
        return article_id in self.reasons

    def to_csv(self, fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "reason"])
        for article_id in self.excluded_ids:
            writer.writerow([article_id, self.reasons[article_id].value])


def is_institutional_name(name, keywords=DEFAULT_INSTITUTION_KEYWORDS):
    """True if ``name`` contains one of ``keywords`` as a whole word (any case)."""
    if not name or not name.strip():
        raise ValueError("name must be non-empty")
    pattern = _keyword_pattern(tuple(keywords))
    return pattern.search(strip_diacritics(name)) is not None


_pattern_cache = {}


def _keyword_pattern(keywords):
    try:
        return _pattern_cache[keywords]
    except KeyError:
        alternatives = "|".join(re.escape(strip_diacritics(k)) for k in keywords)
        pat = re.compile(rf"\b(?:{alternatives})\b", re.IGNORECASE)
        _pattern_cache[keywords] = pat
        return pat


def _split_top_level_colons(line):
    """Positions of ``:`` outside any parentheses or brackets."""
    depth = 0
    positions = []
    for i, ch in enumerate(line):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth = max(depth - 1, 0)
        elif ch == ":" and depth == 0:
            positions.append(i)
    return positions


def normalize_tokens(tokens):
    """Normalize raw acronym tokens, dropping connectors and empty results."""
    out = []
    for tok in tokens:
        if tok.strip().lower().strip(".,;") in _CONNECTORS:
            continue
        norm = normalize_acronym(tok)
        if not norm:
            continue
        if len(norm) > MAX_ACRONYM_LENGTH:
            raise MalformedStatementError(f"acronym {tok!r} longer than {MAX_ACRONYM_LENGTH} letters")
        out.append(norm)
    return out


def parse_raw_statement(line):
    """Split a ``"Phrase: ACR1 ACR2."`` line into a :class:`RawStatement`.

    >>> parse_raw_statement("Analyzed the data: EAC DRA.")
    RawStatement(text='Analyzed the data', acronyms=('EAC', 'DRA'))
    """
    colons = _split_top_level_colons(line)
    if len(colons) != 1:
        raise MalformedStatementError(
            f"expected exactly one top-level ':' in {line!r}, found {len(colons)}"
        )
    left, right = line[: colons[0]], line[colons[0] + 1 :]
    text = left.strip()
    if not text:
        raise MalformedStatementError(f"empty contribution phrase in {line!r}")
    acronyms = normalize_tokens(tok.strip(".") for tok in right.split())
    if not acronyms:
        raise MalformedStatementError(f"no acronyms in {line!r}")
    return RawStatement(text, acronyms)


def render_statement(statement):
    """Inverse of :func:`parse_raw_statement` for valid statements."""
    return f"{statement.text}: {' '.join(statement.acronyms)}."


class _Malformed(Exception):
    pass


def _check_statement_obj(obj):
    if not isinstance(obj, dict):
        raise _Malformed("contribution is not an object")
    text = obj.get("text")
    acronyms = obj.get("acronyms")
    if not isinstance(text, str) or not text.strip():
        raise _Malformed("contribution text missing or empty")
    if not isinstance(acronyms, list) or not all(isinstance(a, str) for a in acronyms):
        raise _Malformed("contribution acronyms must be a list of strings")
    try:
        tokens = normalize_tokens(acronyms)
    except MalformedStatementError as exc:
        raise _Malformed(str(exc)) from None
    if not tokens:
        raise _Malformed(f"contribution {text.strip()!r} references no acronym")
    return RawStatement(text.strip(), tokens)


def _check_header(article_id, year, authors):
    if not isinstance(article_id, str) or not article_id.strip():
        raise _Malformed("id must be a non-empty string")
    if isinstance(year, bool) or not isinstance(year, int):
        raise _Malformed("year must be an integer")
    if not isinstance(authors, list) or not authors:
        raise _Malformed("authors must be a non-empty list")
    if not all(isinstance(a, str) and a.strip() for a in authors):
        raise _Malformed("author names must be non-empty strings")
    names = [a.strip() for a in authors]
    if len(set(names)) != len(names):
        raise _Malformed("duplicate author names")
    return article_id.strip(), names


class _Collector:
    """Applies duplicate-id and exclusion rules in input order."""

    def __init__(self, keywords):
        self.keywords = tuple(keywords)
        self.records = []
        self.report = ExclusionReport()
        self._seen = set()

    def malformed(self, key, detail):
        if key in self.report:
            key = f"{key}#{len(self.report)}"
        self.report.add(key, ExclusionReason.MALFORMED_RECORD, detail)

    def accept(self, article_id, year, authors, statements):
        if article_id in self._seen:
            self.malformed(article_id, "duplicate id")
            return
        self._seen.add(article_id)
        institutional = [a for a in authors if is_institutional_name(a, self.keywords)]
        if institutional:
            self.report.add(article_id, ExclusionReason.INSTITUTIONAL_AUTHOR, institutional[0])
        elif not statements:
            self.report.add(article_id, ExclusionReason.NO_CONTRIBUTION_INFO)
        else:
            self.records.append(ArticleRecord(article_id, year, authors, statements))


def _parse_jsonl(lines, collector):
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        key = f"line:{lineno}"
        try:
            obj = json.loads(raw)
        except ValueError as exc:
            collector.malformed(key, f"invalid JSON: {exc}")
            continue
        if not isinstance(obj, dict):
            collector.malformed(key, "line is not a JSON object")
            continue
        if isinstance(obj.get("id"), str) and obj["id"].strip():
            key = obj["id"].strip()
        try:
            article_id, authors = _check_header(obj.get("id"), obj.get("year"), obj.get("authors"))
            contributions = obj.get("contributions")
            if contributions is None:
                contributions = []
            if not isinstance(contributions, list):
                raise _Malformed("contributions must be a list")
            statements = [_check_statement_obj(c) for c in contributions]
        except _Malformed as exc:
            collector.malformed(key, str(exc))
            continue
        collector.accept(article_id, obj["year"], authors, statements)


def _raw_blocks(lines):
    block, start = [], None
    for lineno, raw in enumerate(lines, start=1):
        if raw.strip():
            if start is None:
                start = lineno
            block.append(raw.strip())
        elif block:
            yield start, block
            block, start = [], None
    if block:
        yield start, block


def _parse_raw(lines, collector):
    for start, block in _raw_blocks(lines):
        key = f"line:{start}"
        header = {"id": None, "year": None, "authors": []}
        statements = []
        try:
            for line in block:
                if line.startswith("@"):
                    tag, _, value = line[1:].partition(" ")
                    value = value.strip()
                    if tag == "id":
                        header["id"] = value
                        key = value or key
                    elif tag == "year":
                        try:
                            header["year"] = int(value)
                        except ValueError:
                            raise _Malformed(f"bad year {value!r}") from None
                    elif tag == "author":
                        header["authors"].append(value)
                    else:
                        raise _Malformed(f"unknown header tag @{tag}")
                else:
                    try:
                        statements.append(parse_raw_statement(line))
                    except MalformedStatementError as exc:
                        raise _Malformed(str(exc)) from None
            article_id, authors = _check_header(header["id"], header["year"], header["authors"])
        except _Malformed as exc:
            collector.malformed(key, str(exc))
            continue
        collector.accept(article_id, header["year"], authors, statements)


FORMATS = ("jsonl", "raw")


def parse_lines(lines, format="jsonl", institution_keywords=DEFAULT_INSTITUTION_KEYWORDS):
    """Parse an iterable of text lines; see :func:`parse_corpus`."""
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    collector = _Collector(institution_keywords)
    if format == "jsonl":
        _parse_jsonl(lines, collector)
    else:
        _parse_raw(lines, collector)
    return collector.records, collector.report


def parse_corpus(path, format="jsonl", institution_keywords=DEFAULT_INSTITUTION_KEYWORDS):
    """Read a corpus file and return ``(records, exclusion_report)``.

    Records keep file order. I/O failures propagate as :class:`OSError`;
    anything wrong inside the file only produces exclusions. Lines that are
    not valid UTF-8 are decoded with replacement characters and then fail
    validation like any other bad line.
    """
    data = Path(path).read_bytes()
    text = data.decode("utf-8", errors="replace")
    if text.startswith("\ufeff"):
        text = text[1:]
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return parse_lines([ln.rstrip("\r") for ln in lines], format, institution_keywords)


def write_jsonl(records, fh):
    for record in records:
        fh.write(json.dumps(record.to_json(), ensure_ascii=False, separators=(", ", ": ")))
        fh.write("\n")

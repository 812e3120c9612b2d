"""Command-line entry point: ``authorcredit {validate,metrics,analyze,synth,report}``.

Exit codes: 0 ok, 1 usage, 2 I/O, 3 empty corpus. Every failure prints a
single ``authorcredit: error[<kind>]: <message>`` line on stderr.
"""

import argparse
import csv
import dataclasses
import json
import logging
import sys
from importlib import resources
from pathlib import Path

from . import analysis, canon, ingest, matcher, synth
from .pipeline import corpus_metrics, credit_corpus

log = logging.getLogger("authorcredit")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_EMPTY = 0, 1, 2, 3

# Values reported for the original PLoS ONE corpus; used only by ``report``.
REFERENCE_VALUES_FILE = "data/reference_values.json"


class CLIError(Exception):
    def __init__(self, kind, message, code):
        super().__init__(message)
        self.kind = kind
        self.code = code


@dataclasses.dataclass
class RunConfig:
    input: str = None
    format: str = "jsonl"
    threshold: float = matcher.DEFAULT_THRESHOLD
    similarity: str = "charset"
    synonyms: str = None
    include_revised: bool = False
    epsilon: float = analysis.DEFAULT_EPSILON
    out: str = "out"
    seed: int = 0
    svg: bool = False
    max_rank: int = 10
    cohort_cap: int = analysis.DEFAULT_COHORT_CAP
    weights: list = None
    institution_keywords: list = dataclasses.field(
        default_factory=lambda: list(ingest.DEFAULT_INSTITUTION_KEYWORDS)
    )

    def resolve_paths(self):
        if self.input is not None:
            self.input = str(Path(self.input).expanduser().resolve())
        if self.synonyms is not None:
            self.synonyms = str(Path(self.synonyms).expanduser().resolve())
        self.out = str(Path(self.out).expanduser().resolve())
        return self


def sample_corpus_path():
    """Path of the bundled 50-article synthetic sample corpus."""
    return str(resources.files(__package__).joinpath("data/sample_corpus.jsonl"))


def _fail(kind, message, code):
    raise CLIError(kind, message, code)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _fail("usage", message, EXIT_USAGE)


def _add_common(p, with_output=True):
    p.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", help="corpus file")
    src.add_argument("--sample", action="store_true", help="use the bundled sample corpus")
    p.add_argument("--format", choices=ingest.FORMATS)
    p.add_argument("--threshold", type=float, help="minimum Tanimoto score for fuzzy matches")
    p.add_argument("--similarity", choices=matcher.SIMILARITY_MODES)
    p.add_argument("--synonyms", help="synonym table (phrase<TAB>category)")
    p.add_argument("--include-revised", action="store_true", default=None,
                   help="keep RevisedManuscript in matrices and profiles")
    p.add_argument("--epsilon", type=float, help="pattern tolerance as fraction of the maximum")
    p.add_argument("--max-rank", type=int, help="share columns in metrics.csv")
    p.add_argument("--cohort-cap", type=int, help="author counts above this are pooled")
    if with_output:
        p.add_argument("--out", help="output directory")
    p.add_argument("--svg", action="store_true", default=None, help="also write SVG curve plots")


def build_parser():
    parser = _Parser(prog="authorcredit", description="Credit metrics from author contribution statements.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="parse a corpus and summarize exclusions")
    _add_common(p)
    p = sub.add_parser("metrics", help="write per-paper credit metrics")
    _add_common(p)
    p = sub.add_parser("analyze", help="write histograms, curves, rank profiles and patterns")
    _add_common(p)
    p = sub.add_parser("report", help="analyze and compare against published reference values")
    _add_common(p)

    p = sub.add_parser("synth", help="write a seeded synthetic JSONL corpus")
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--n-papers", type=int, default=100)
    p.add_argument("--regime", default="rank_biased",
                   help=f"one of {', '.join(synth.REGIMES)}")
    p.add_argument("--min-authors", type=int, default=1)
    p.add_argument("--max-authors", type=int, default=10)
    p.add_argument("--authors-dist", default="uniform",
                   help=f"one of {', '.join(synth.AUTHOR_DISTRIBUTIONS)}")
    p.add_argument("--drop-letter-rate", type=float, default=0.0)
    p.add_argument("--out", help="output file (default: stdout)")
    return parser


def load_config(args):
    cfg = RunConfig()
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text("utf-8"))
        except OSError as exc:
            _fail("io", f"cannot read config {args.config}: {exc.strerror}", EXIT_IO)
        except ValueError as exc:
            _fail("usage", f"invalid config {args.config}: {exc}", EXIT_USAGE)
        known = {f.name for f in dataclasses.fields(RunConfig)}
        unknown = sorted(set(data) - known)
        if unknown:
            _fail("usage", f"unknown config keys: {', '.join(unknown)}", EXIT_USAGE)
        cfg = dataclasses.replace(cfg, **data)
    for name in ("input", "format", "threshold", "similarity", "synonyms", "include_revised",
                 "epsilon", "seed", "svg", "max_rank", "cohort_cap"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    if args.command != "synth" and getattr(args, "out", None) is not None:
        cfg.out = args.out
    if getattr(args, "sample", False):
        cfg.input, cfg.format = sample_corpus_path(), "jsonl"
    if cfg.format not in ingest.FORMATS:
        _fail("usage", f"unknown format {cfg.format!r}", EXIT_USAGE)
    if cfg.similarity not in matcher.SIMILARITY_MODES:
        _fail("usage", f"unknown similarity {cfg.similarity!r}", EXIT_USAGE)
    if not 0 < cfg.threshold <= 1:
        _fail("usage", "threshold must lie in (0, 1]", EXIT_USAGE)
    if cfg.epsilon < 0:
        _fail("usage", "epsilon must be non-negative", EXIT_USAGE)
    return cfg.resolve_paths()


# ---------------------------------------------------------------- stages

def _parse(cfg):
    if cfg.input is None:
        _fail("usage", "no input: pass --input or --sample", EXIT_USAGE)
    try:
        return ingest.parse_corpus(cfg.input, cfg.format, cfg.institution_keywords)
    except OSError as exc:
        _fail("io", f"cannot read {cfg.input}: {exc.strerror}", EXIT_IO)


def _out_dir(cfg):
    path = Path(cfg.out)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        _fail("io", f"cannot create {path}: {exc.strerror}", EXIT_IO)
    return path


def _write(path, writer, *args):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer(*args, fh)
    except OSError as exc:
        _fail("io", f"cannot write {path}: {exc.strerror}", EXIT_IO)


def summarize_exclusions(n_valid, report):
    counts = report.counts()
    line = f"{n_valid} valid, {len(report)} excluded"
    if len(counts) == 1:
        line += f" ({next(iter(counts)).value})"
    elif counts:
        line += " (" + ", ".join(f"{r.value}: {n}" for r, n in counts.items()) + ")"
    return line


def cmd_validate(cfg, write_exclusions=False):
    records, report = _parse(cfg)
    print(summarize_exclusions(len(records), report))
    for reason, n in report.counts().items():
        log.info("%s: %d", reason.value, n)
    if write_exclusions:
        _write(_out_dir(cfg) / "exclusions.csv", report.to_csv)
    if not records:
        _fail("empty-corpus", "no valid record", EXIT_EMPTY)
    return EXIT_OK


def _load_table(cfg):
    if cfg.synonyms is None:
        return canon.default_table()
    try:
        return canon.SynonymTable.load(cfg.synonyms)
    except OSError as exc:
        _fail("io", f"cannot read {cfg.synonyms}: {exc.strerror}", EXIT_IO)
    except ValueError as exc:
        _fail("usage", str(exc), EXIT_USAGE)


def _run_pipeline(cfg):
    records, report = _parse(cfg)
    result = credit_corpus(
        records, _load_table(cfg), cfg.threshold, cfg.similarity, cfg.include_revised
    )
    report = ingest.ExclusionReport().extend(report).extend(result.report)
    out = _out_dir(cfg)
    _write(out / "exclusions.csv", report.to_csv)
    _write(out / "unresolved.csv", result.write_unresolved_csv)
    _write(out / "unmapped.csv", result.write_unmapped_csv)
    if not result.articles:
        _fail("empty-corpus", summarize_exclusions(0, report), EXIT_EMPTY)
    articles = sorted(result.articles, key=lambda a: a.id)
    metrics = corpus_metrics(articles, cfg.include_revised, cfg.weights)
    _write(out / "metrics.csv", write_metrics_csv, metrics, cfg.max_rank)
    log.info("%s", summarize_exclusions(len(articles), report))
    return articles, metrics, out


def write_metrics_csv(metrics, max_rank, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["id", "n_A", "H", "N", "sigma"] + [f"c_{r}" for r in range(1, max_rank + 1)])
    for m in sorted(metrics, key=lambda m: m.id):
        shares = [analysis._fmt(x) for x in m.shares[:max_rank]]
        shares += [""] * (max_rank - len(shares))
        writer.writerow(
            [m.id, m.n_authors, analysis._fmt(m.entropy), analysis._fmt(m.effective_authors),
             analysis._fmt(m.symmetry)] + shares
        )


def cmd_metrics(cfg):
    _, metrics, out = _run_pipeline(cfg)
    print(f"{len(metrics)} papers -> {out / 'metrics.csv'}")
    return EXIT_OK


def _analyze(cfg):
    articles, metrics, out = _run_pipeline(cfg)
    hist = analysis.author_count_histogram(articles)
    _write(out / "histogram.csv", analysis.write_histogram_csv, hist)
    curves = {}
    for metric in ("N", "sigma"):
        points = analysis.metric_curve(metrics, metric, cfg.cohort_cap)
        curves[metric] = points
        _write(out / f"curve_{metric}.csv", analysis.write_curve_csv, points)
        if cfg.svg:
            try:
                analysis.plot_curve_svg(points, out / f"curve_{metric}.svg", metric)
            except ImportError:
                _fail("usage", "--svg needs matplotlib (pip install authorcredit[plot])", EXIT_USAGE)
    profiles = [
        analysis.rank_profile(articles, n, cfg.include_revised)
        for n in hist
        if n <= cfg.cohort_cap
    ]
    for profile in profiles:
        _write(out / f"profile_{profile.n_authors}.csv", analysis.write_profile_csv, profile)
    rows = analysis.pattern_rows(profiles, cfg.epsilon)
    _write(out / "patterns.csv", analysis.write_patterns_csv, rows)
    freqs = canon.category_frequencies(articles)
    _write(out / "category_frequencies.csv", analysis.write_frequencies_csv, freqs)
    return articles, metrics, curves, profiles, freqs, out


def cmd_analyze(cfg):
    articles, _, _, profiles, _, out = _analyze(cfg)
    print(f"{len(articles)} papers, {len(profiles)} cohorts -> {out}")
    return EXIT_OK


def reference_values():
    text = resources.files(__package__).joinpath(REFERENCE_VALUES_FILE).read_text("utf-8")
    return json.loads(text)


def report_rows(articles, metrics, curves, profiles, freqs):
    """``(quantity, observed, reference)`` rows; observed is blank when absent."""
    ref = reference_values()
    rows = []
    for cat in canon.Category:
        rows.append((f"fraction:{cat.value}", freqs.get(cat), ref["category_fractions"][cat.value]))
    by_n = {p.n_authors: p for p in profiles}
    two = by_n.get(2)
    rows.append(("two_author_share:rank1", two.share[0] if two else None, ref["two_author_share"][0]))
    rows.append(("two_author_share:rank2", two.share[1] if two else None, ref["two_author_share"][1]))
    n_points = {p.n_authors: p for p in curves["N"] if not p.pooled}
    p22 = n_points.get(22)
    rows.append(("N_mean:n_A=22", p22.mean if p22 else None, ref["n22_mean_effective"]))
    rows.append(("N_min:n_A=22", p22.min if p22 else None, ref["n22_min_effective"]))
    hist = analysis.author_count_histogram(articles)
    mode = max(hist, key=lambda n: (hist[n], -n))
    lo, hi = ref["histogram_mode_range"]
    rows.append(("histogram_mode_in_range", float(lo <= mode <= hi), 1.0))
    sig = [p.mean for p in curves["sigma"] if not p.pooled and 1 <= p.n_authors <= 10]
    decreasing = all(b < a for a, b in zip(sig, sig[1:])) if len(sig) > 1 else None
    rows.append(("sigma_decreasing_1_to_10", None if decreasing is None else float(decreasing), 1.0))
    return rows


def write_report_csv(rows, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["quantity", "observed", "reference"])
    for name, observed, reference in rows:
        writer.writerow([name, "" if observed is None else analysis._fmt(observed),
                         analysis._fmt(reference)])


def cmd_report(cfg):
    articles, metrics, curves, profiles, freqs, out = _analyze(cfg)
    rows = report_rows(articles, metrics, curves, profiles, freqs)
    _write(out / "report.csv", write_report_csv, rows)
    width = max(len(r[0]) for r in rows)
    for name, observed, reference in rows:
        obs = "-" if observed is None else f"{observed:.4f}"
        print(f"{name:<{width}}  observed={obs:>8}  reference={reference:.4f}")
    return EXIT_OK


def cmd_synth(args):
    cfg = load_config(args)
    seed = cfg.seed
    if args.regime not in synth.REGIMES:
        _fail("usage", f"unknown regime {args.regime!r}; expected one of {synth.REGIMES}", EXIT_USAGE)
    if args.authors_dist not in synth.AUTHOR_DISTRIBUTIONS:
        _fail("usage", f"unknown author distribution {args.authors_dist!r}", EXIT_USAGE)
    try:
        records = synth.generate_corpus(
            args.n_papers, args.regime, seed,
            min_authors=args.min_authors, max_authors=args.max_authors,
            authors_dist=args.authors_dist, drop_letter_rate=args.drop_letter_rate,
        )
    except ValueError as exc:
        _fail("usage", str(exc), EXIT_USAGE)
    if args.out in (None, "-"):
        ingest.write_jsonl(records, sys.stdout)
    else:
        _write(args.out, ingest.write_jsonl, records)
    return EXIT_OK


COMMANDS = {
    "metrics": cmd_metrics,
    "analyze": cmd_analyze,
    "report": cmd_report,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
        )
        if args.command == "synth":
            return cmd_synth(args)
        if args.command == "validate":
            return cmd_validate(load_config(args), write_exclusions=args.out is not None)
        return COMMANDS[args.command](load_config(args))
    except CLIError as exc:
        print(f"authorcredit: error[{exc.kind}]: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

import csv
import json

import pytest

from authorcredit import cli
from authorcredit.ingest import parse_corpus, write_jsonl
from authorcredit.synth import PLANTED_PATTERNS
from helpers import article


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


class TestValidate:
    def test_bundled_sample(self, capsys):
        code, out, _ = run(["validate", "--sample"], capsys)
        assert code == 0
        assert out.strip() == "50 valid, 0 excluded"

    def test_injected_institutions(self, tmp_path, capsys):
        records, _ = parse_corpus(cli.sample_corpus_path())
        rows = [r.to_json() for r in records]
        for i, name in zip((3, 17, 41), ("Institute of Physics", "The ALICE Consortium", "Hospital das Clínicas")):
            rows[i]["authors"][-1] = name
        path = tmp_path / "injected.jsonl"
        path.write_text("".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")
        code, out, _ = run(["validate", "--input", str(path), "--out", str(tmp_path / "o")], capsys)
        assert code == 0
        assert out.strip() == "47 valid, 3 excluded (InstitutionalAuthor)"
        excl = read_csv(tmp_path / "o" / "exclusions.csv")
        assert [r["reason"] for r in excl] == ["InstitutionalAuthor"] * 3

    def test_mixed_reasons_summary(self, write_jsonl, capsys):
        path = write_jsonl([article("a", ["Ana Sousa"], []), "junk",
                            article("b", ["Ana Sousa"], [("Wrote", ["AS"])])])
        code, out, _ = run(["validate", "--input", str(path)], capsys)
        assert code == 0
        assert out.strip() == "1 valid, 2 excluded (NoContributionInfo: 1, MalformedRecord: 1)"

    def test_empty_file(self, tmp_path, capsys):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        code, out, err = run(["validate", "--input", str(path)], capsys)
        assert code == 3
        assert out.strip() == "0 valid, 0 excluded"
        assert err.strip() == "authorcredit: error[empty-corpus]: no valid record"

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run(["validate", "--input", str(tmp_path / "nope.jsonl")], capsys)
        assert code == 2
        assert err.startswith("authorcredit: error[io]:")
        assert len(err.strip().splitlines()) == 1


class TestUsage:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["frobnicate"],
            ["metrics", "--threshold", "abc"],
            ["metrics", "--similarity", "phonetic", "--sample"],
            ["metrics", "--sample", "--threshold", "0"],
            ["metrics"],
            ["synth", "--regime", "chaotic"],
            ["synth", "--authors-dist", "zipf"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        code, _, err = run(argv, capsys)
        assert code == 1
        assert err.startswith("authorcredit: error[usage]:")
        assert len(err.strip().splitlines()) == 1

    def test_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"max_rank": 2, "out": str(tmp_path / "o")}))
        code, _, _ = run(["metrics", "--sample", "--config", str(cfg)], capsys)
        assert code == 0
        header = (tmp_path / "o" / "metrics.csv").read_text().splitlines()[0]
        assert header == "id,n_A,H,N,sigma,c_1,c_2"

    def test_flags_override_config(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"max_rank": 2}))
        code, _, _ = run(["metrics", "--sample", "--config", str(cfg), "--max-rank", "3",
                          "--out", str(tmp_path / "o")], capsys)
        assert code == 0
        assert (tmp_path / "o" / "metrics.csv").read_text().startswith("id,n_A,H,N,sigma,c_1,c_2,c_3\n")

    def test_bad_config_key(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"colour": "blue"}))
        code, _, err = run(["metrics", "--sample", "--config", str(cfg)], capsys)
        assert code == 1 and "colour" in err

    def test_institution_keywords_from_config(self, write_jsonl, tmp_path, capsys):
        path = write_jsonl([article("a", ["Acme Collaboration"], [("Wrote", ["AC"])])])
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"institution_keywords": ["Collaboration"]}))
        code, out, _ = run(["validate", "--input", str(path), "--config", str(cfg)], capsys)
        assert code == 3
        assert out.strip() == "0 valid, 1 excluded (InstitutionalAuthor)"


class TestMetrics:
    def test_hand_computed_fixture(self, write_jsonl, tmp_path, capsys):
        path = write_jsonl([
            article("b", ["Ana Sousa", "Bruno Carvalho"], [
                ("Analyzed the data", ["AS", "BC"]),
                ("Collected the data", ["AS"]),
                ("Wrote the paper", ["AS"]),
            ]),
            article("a", ["Daniel R. Almeida", "Fabio N. Santos", "Laura da F. Castro"], [
                ("Analyzed the data", ["DRA"]),
                ("Wrote the paper", ["DRA", "FNS"]),
                ("Performed the experiments", ["LFC"]),
            ]),
            article("c", ["Ana Sousa"], [("Wrote the paper", ["AS"])]),
        ])
        out_dir = tmp_path / "o"
        code, _, _ = run(["metrics", "--input", str(path), "--out", str(out_dir), "--max-rank", "3"], capsys)
        assert code == 0
        rows = read_csv(out_dir / "metrics.csv")
        assert [r["id"] for r in rows] == ["a", "b", "c"]
        a, b, c = rows
        assert float(a["N"]) == pytest.approx(2.828427, abs=1e-6)
        assert (a["c_1"], a["c_2"], a["c_3"]) == ("0.5", "0.25", "0.25")
        assert float(b["N"]) == pytest.approx(1.754765, abs=1e-6)
        assert float(b["sigma"]) == pytest.approx(0.877383, abs=1e-6)
        assert b["c_3"] == ""
        assert (c["N"], c["sigma"], c["H"]) == ("1", "1", "0")

    def test_unresolvable_corpus(self, write_jsonl, tmp_path, capsys):
        path = write_jsonl([article("a", ["Ana Sousa"], [("Wrote", ["QQQ"])])])
        code, _, err = run(["metrics", "--input", str(path), "--out", str(tmp_path / "o")], capsys)
        assert code == 3
        assert "UnresolvableAcronyms" in err
        assert read_csv(tmp_path / "o" / "exclusions.csv") == [{"id": "a", "reason": "UnresolvableAcronyms"}]

    def test_raw_format(self, tmp_path, capsys):
        path = tmp_path / "c.txt"
        path.write_text("@id p1\n@year 2012\n@author Ana Sousa\n@author Bruno Carvalho\n"
                        "Analyzed the data: AS BC.\n", encoding="utf-8")
        code, _, _ = run(["metrics", "--input", str(path), "--format", "raw", "--out", str(tmp_path / "o")], capsys)
        assert code == 0
        assert read_csv(tmp_path / "o" / "metrics.csv")[0]["sigma"] == "1"

    def test_side_logs(self, write_jsonl, tmp_path, capsys):
        path = write_jsonl([article("a", ["Ana Sousa", "Bruno Carvalho"], [
            ("Wrote the paper", ["AS", "QQ"]), ("Juggled torches", ["BC"])
        ])])
        code, _, _ = run(["metrics", "--input", str(path), "--out", str(tmp_path / "o")], capsys)
        assert code == 0
        assert read_csv(tmp_path / "o" / "unmapped.csv") == [{"phrase": "juggled torches", "count": "1"}]
        (row,) = read_csv(tmp_path / "o" / "unresolved.csv")
        assert (row["id"], row["token"]) == ("a", "QQ")


class TestAnalyze:
    def test_outputs(self, tmp_path, capsys):
        out_dir = tmp_path / "o"
        code, _, _ = run(["analyze", "--sample", "--out", str(out_dir)], capsys)
        assert code == 0
        names = {p.name for p in out_dir.iterdir()}
        assert {"histogram.csv", "curve_N.csv", "curve_sigma.csv", "patterns.csv",
                "category_frequencies.csv", "metrics.csv", "exclusions.csv"} <= names
        hist = read_csv(out_dir / "histogram.csv")
        assert sum(int(r["count"]) for r in hist) == 50
        for r in hist:
            assert f"profile_{r['n_A']}.csv" in names
        assert list(read_csv(out_dir / "curve_N.csv")[0]) == ["n_A", "mean", "min", "max", "count", "reference"]
        assert list(read_csv(out_dir / "curve_sigma.csv")[0]) == ["n_A", "mean", "min", "max", "count"]
        short = [r for r in read_csv(out_dir / "patterns.csv") if int(r["n_A"]) < 4]
        assert short and all(r["label"] == "Unclassified" for r in short)

    def test_uniform_corpus(self, tmp_path, capsys):
        corpus = tmp_path / "u.jsonl"
        assert run(["synth", "--seed", "1", "--n-papers", "60", "--regime", "uniform",
                    "--out", str(corpus)], capsys)[0] == 0
        assert run(["analyze", "--input", str(corpus), "--out", str(tmp_path / "o")], capsys)[0] == 0
        rows = read_csv(tmp_path / "o" / "curve_sigma.csv")
        assert rows and all(float(r["mean"]) == 1.0 for r in rows)

    def test_planted_patterns_recovered(self, tmp_path, capsys):
        corpus = tmp_path / "p.jsonl"
        run(["synth", "--seed", "11", "--n-papers", "2000", "--regime", "pattern", "--min-authors", "4",
             "--max-authors", "8", "--authors-dist", "balanced", "--out", str(corpus)], capsys)
        assert run(["analyze", "--input", str(corpus), "--out", str(tmp_path / "o")], capsys)[0] == 0
        planted = {c.short_name: label for c, label in PLANTED_PATTERNS.items()}
        rows = [r for r in read_csv(tmp_path / "o" / "patterns.csv") if r["category"] in planted]
        assert len(rows) == 5 * 5
        assert all(r["label"] == planted[r["category"]] for r in rows)

    def test_svg(self, tmp_path, capsys):
        pytest.importorskip("matplotlib")
        code, _, _ = run(["analyze", "--sample", "--svg", "--out", str(tmp_path / "o")], capsys)
        assert code == 0
        assert (tmp_path / "o" / "curve_N.svg").read_text().lstrip().startswith("<?xml")


class TestSynth:
    def test_stdout_deterministic(self, capsys):
        a = run(["synth", "--seed", "42", "--n-papers", "100", "--regime", "uniform"], capsys)[1]
        b = run(["synth", "--seed", "42", "--n-papers", "100", "--regime", "uniform"], capsys)[1]
        assert a == b and len(a.splitlines()) == 100

    def test_file_bytes_identical(self, tmp_path, capsys):
        for name in ("a.jsonl", "b.jsonl"):
            run(["synth", "--seed", "42", "--n-papers", "100", "--regime", "uniform",
                 "--out", str(tmp_path / name)], capsys)
        assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()


class TestReport:
    def test_report_rows(self, tmp_path, capsys):
        code, out, _ = run(["report", "--sample", "--out", str(tmp_path / "o")], capsys)
        assert code == 0
        rows = {r["quantity"]: r for r in read_csv(tmp_path / "o" / "report.csv")}
        assert rows["fraction:AnalyzedData"]["reference"] == "0.4997"
        assert rows["two_author_share:rank1"]["reference"] == "0.6"
        assert rows["N_min:n_A=22"]["observed"] == ""
        assert "fraction:WrotePaper" in out


def test_sample_corpus_regenerates_byte_identical(tmp_path, capsys):
    path = tmp_path / "s.jsonl"
    run(["synth", "--seed", "2016", "--n-papers", "50", "--regime", "rank_biased", "--min-authors", "1",
         "--max-authors", "12", "--authors-dist", "poisson", "--out", str(path)], capsys)
    with open(cli.sample_corpus_path(), "rb") as fh:
        assert path.read_bytes() == fh.read()

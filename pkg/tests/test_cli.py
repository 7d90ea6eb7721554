import csv
import io
import json
import subprocess
import sys

import pytest

from sumlens.cli import main

from synth import make_text, write_corpus, write_lexicon


@pytest.fixture
def lexicon(tmp_path):
    return write_lexicon(tmp_path / "lex.tsv")


@pytest.fixture
def doc100(tmp_path):
    p = tmp_path / "doc100.txt"
    p.write_text(make_text(11, n_sentences=100, max_per_sentence=4), encoding="utf-8")
    return str(p)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestSummarize:
    def test_size_report_and_determinism(self, capsys, tmp_path, lexicon, doc100):
        report = tmp_path / "report.json"
        code, first, _ = run(capsys, "summarize", "--input", doc100, "--lexicon", lexicon, "--strategy", "all", "--report", report)
        assert code == 0
        data = json.loads(report.read_text())
        assert data["target_count"] == 30
        assert len(first.strip().split("\n")) == len(data["selected"]) == min(30, len(data["sentences"]))
        assert data["config"]["strategy"] == "all"
        _, second, _ = run(capsys, "summarize", "--input", doc100, "--lexicon", lexicon, "--strategy", "all")
        assert first == second

    def test_output_file(self, capsys, tmp_path, lexicon, doc100):
        out = tmp_path / "s.txt"
        code, stdout, _ = run(capsys, "summarize", "--input", doc100, "--lexicon", lexicon, "--output", out)
        assert code == 0 and stdout == "" and out.read_text().strip()

    def test_empty_feature_set_is_reported(self, capsys, lexicon, doc100):
        code, out, err = run(capsys, "summarize", "--input", doc100, "--lexicon", lexicon, "--strategy", "itemset", "--phi", "1.0")
        assert code != 0 and out == ""
        assert json.loads(err)["error"] == "EmptyFeatureSet"

    def test_fallback(self, capsys, tmp_path, lexicon, doc100):
        report = tmp_path / "r.json"
        code, out, _ = run(
            capsys, "summarize", "--input", doc100, "--lexicon", lexicon, "--phi", "1.0", "--fallback-all", "--report", report
        )
        assert code == 0 and out.strip()
        assert any("fell back" in w for w in json.loads(report.read_text())["warnings"])

    def test_missing_input(self, capsys, tmp_path):
        code, _, err = run(capsys, "summarize", "--input", tmp_path / "nope.txt")
        assert code == 2 and "error" in json.loads(err)

    def test_bad_parameter(self, capsys, doc100):
        code, _, err = run(capsys, "summarize", "--input", doc100, "--compression-rate", "1.5")
        assert code == 2 and json.loads(err)["error"] == "ParameterError"


class TestConfig:
    def test_file_env_and_flag_precedence(self, capsys, tmp_path, monkeypatch, lexicon, doc100):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"strategy": "generic", "compression_rate": 0.1, "lexicon_path": lexicon}))
        report = tmp_path / "r.json"
        run(capsys, "summarize", "--input", doc100, "--config", cfg, "--report", report)
        assert json.loads(report.read_text())["config"]["strategy"] == "generic"
        assert json.loads(report.read_text())["target_count"] == 10

        monkeypatch.setenv("SUMLENS_CONFIG", str(cfg))
        run(capsys, "summarize", "--input", doc100, "--strategy", "all", "--report", report)
        data = json.loads(report.read_text())
        assert data["config"]["strategy"] == "all" and data["target_count"] == 10

    def test_unknown_key(self, capsys, tmp_path, doc100):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"colour": "blue"}))
        code, _, err = run(capsys, "summarize", "--input", doc100, "--config", cfg)
        assert code == 2 and "colour" in err


class TestBaseline:
    def test_lead_and_random(self, capsys, doc100):
        code, out, _ = run(capsys, "baseline", "--input", doc100, "--kind", "lead")
        assert code == 0 and len(out.strip().split("\n")) == 30
        _, r1, _ = run(capsys, "baseline", "--input", doc100, "--kind", "random", "--seed", "4")
        _, r2, _ = run(capsys, "baseline", "--input", doc100, "--kind", "random", "--seed", "4")
        assert r1 == r2 and len(r1.strip().split("\n")) == 30


class TestBatch:
    def test_rows_and_means(self, capsys, tmp_path, lexicon):
        corpus = write_corpus(tmp_path / "corpus", 3, n_sentences=30)
        code, out, _ = run(capsys, "batch", "--corpus", corpus, "--lexicon", lexicon, "--strategy", "all")
        assert code == 0
        table = rows(out)
        assert list(table[0]) == ["doc_id", "system", "metric", "recall", "precision", "f1"]
        per_doc = [r for r in table if r["doc_id"] != "__mean__"]
        means = [r for r in table if r["doc_id"] == "__mean__"]
        assert len(per_doc) == 12 and len(means) == 4
        assert {r["system"] for r in table} == {"bayes-all"}
        r1 = [float(r["f1"]) for r in per_doc if r["metric"] == "r1"]
        mean_r1 = next(float(r["f1"]) for r in means if r["metric"] == "r1")
        assert mean_r1 == pytest.approx(sum(r1) / 3, abs=1e-6)

    def test_metric_subset_and_summaries(self, capsys, tmp_path, lexicon):
        corpus = write_corpus(tmp_path / "corpus", 2, n_sentences=20)
        out_dir = tmp_path / "summaries"
        code, out, _ = run(
            capsys, "batch", "--corpus", corpus, "--lexicon", lexicon, "--strategy", "all",
            "--metrics", "r2", "--summaries", out_dir,
        )
        assert code == 0
        assert {r["metric"] for r in rows(out)} == {"r2"}
        assert sorted(p.name for p in out_dir.iterdir()) == ["doc000.txt", "doc001.txt"]

    def test_missing_abstract_warns(self, capsys, tmp_path, lexicon):
        corpus = tmp_path / "corpus"
        write_corpus(corpus, 2, n_sentences=20)
        (corpus / "bare.txt").write_text(make_text(99, n_sentences=20), encoding="utf-8")
        code, out, _ = run(capsys, "batch", "--corpus", corpus, "--lexicon", lexicon, "--strategy", "all")
        assert code == 0
        skipped = [r for r in rows(out) if r["metric"].startswith("skipped")]
        assert skipped == [
            {"doc_id": "bare", "system": "bayes-all", "metric": "skipped:no_abstract", "recall": "", "precision": "", "f1": ""}
        ]

    def test_empty_corpus(self, capsys, tmp_path):
        (tmp_path / "empty").mkdir()
        code, _, err = run(capsys, "batch", "--corpus", tmp_path / "empty")
        assert code == 2 and json.loads(err)["error"] == "ParameterError"

    def test_parallel_matches_serial(self, capsys, tmp_path, lexicon):
        corpus = write_corpus(tmp_path / "corpus", 4, n_sentences=20)
        _, serial, _ = run(capsys, "batch", "--corpus", corpus, "--lexicon", lexicon, "--strategy", "all")
        _, parallel, _ = run(capsys, "batch", "--corpus", corpus, "--lexicon", lexicon, "--strategy", "all", "--jobs", "2")
        assert serial == parallel

    def test_lead_system(self, capsys, tmp_path):
        corpus = write_corpus(tmp_path / "corpus", 2, n_sentences=20)
        _, out, _ = run(capsys, "batch", "--corpus", corpus, "--system", "lead")
        assert {r["system"] for r in rows(out)} == {"lead"}


def _results(path, scores):
    lines = ["doc_id,system,metric,recall,precision,f1"]
    lines += [f"d{i},x,r2,{s:.6f},{s:.6f},{s:.6f}" for i, s in enumerate(scores)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestCompare:
    scores = [0.11, 0.25, 0.31, 0.18, 0.42, 0.27, 0.35, 0.2, 0.15, 0.39]

    def test_self_is_degenerate(self, capsys, tmp_path):
        a = _results(tmp_path / "a.csv", self.scores)
        code, out, _ = run(capsys, "compare", a, a)
        report = json.loads(out)
        assert code == 0 and report["degenerate"] and report["p_value"] == 1.0

    def test_shifted_is_significant(self, capsys, tmp_path):
        a = _results(tmp_path / "a.csv", [s + 0.05 for s in self.scores])
        b = _results(tmp_path / "b.csv", self.scores)
        _, out, _ = run(capsys, "compare", a, b, "--metric", "r2")
        report = json.loads(out)
        assert report["significant"] and report["direction"] == "A" and report["documents"] == 10

    def test_disjoint_ids(self, capsys, tmp_path):
        a = _results(tmp_path / "a.csv", self.scores)
        b = tmp_path / "b.csv"
        b.write_text(a.read_text().replace(",x,", ",y,").replace("\nd", "\ne"), encoding="utf-8")
        code, _, err = run(capsys, "compare", a, b)
        assert code == 2 and json.loads(err)["error"] == "ParameterError"


class TestDistributionAndMine:
    def test_distribution(self, capsys, tmp_path, lexicon):
        corpus = write_corpus(tmp_path / "corpus", 3, n_sentences=30)
        code, out, _ = run(capsys, "distribution", "--corpus", corpus, "--lexicon", lexicon)
        table = rows(out)
        assert code == 0 and [int(r["rank"]) for r in table] == list(range(1, len(table) + 1))
        counts = [int(r["occurrence_count"]) for r in table]
        assert counts == sorted(counts, reverse=True)
        _, abstracts, _ = run(capsys, "distribution", "--corpus", corpus, "--lexicon", lexicon, "--source", "abstracts")
        assert sum(int(r["occurrence_count"]) for r in rows(abstracts)) == 12

    def test_mine(self, capsys, lexicon, doc100):
        code, out, _ = run(capsys, "mine", "--input", doc100, "--lexicon", lexicon, "--phi", "0.1")
        table = rows(out)
        assert code == 0 and table
        assert all(float(r["support"]) >= 0.1 for r in table)
        assert all("C006" not in r["items"] for r in table)  # generic type is filtered


def test_console_script(doc100):
    proc = subprocess.run(
        [sys.executable, "-m", "sumlens.cli", "baseline", "--input", doc100], capture_output=True, text=True, check=True
    )
    assert len(proc.stdout.strip().split("\n")) == 30

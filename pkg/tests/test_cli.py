from __future__ import annotations

import json

import pytest

from gdkg.cli import main
from gdkg.kg import load


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def built(tmp_path, fixtures_dir, capsys):
    graph_path = tmp_path / "graph.json"
    report_path = tmp_path / "report.json"
    code, out, err = run(
        capsys, "build",
        "--corpus", fixtures_dir / "corpus_20.jsonl",
        "--genes", fixtures_dir / "lexicon_genes.csv",
        "--diseases", fixtures_dir / "lexicon_diseases.csv",
        "--gazetteer",
        "--out", graph_path,
        "--report", report_path,
    )
    assert code == 0, err
    return graph_path, report_path


class TestBuild:
    def test_report_counts_match_hand_walkthrough(self, built, fixtures_dir):
        _, report_path = built
        report = json.loads(report_path.read_text())
        expected = json.loads((fixtures_dir / "expected_report.json").read_text())
        for key, value in expected.items():
            assert report[key] == value, key

    def test_graph_matches_expected_triples(self, built, expected_triples):
        graph_path, _ = built
        graph = load(graph_path)
        got = [
            (t.head.name, t.relation, t.tail.name, frozenset(t.sentences))
            for t in graph.triples()
        ]
        assert got == expected_triples

    def test_drop_log_written_empty(self, built):
        graph_path, _ = built
        drop_log = graph_path.with_name("graph.drops.tsv")
        assert drop_log.read_text() == "pubmed_id\tsentence_index\tkind\tsurface\n"

    def test_build_is_byte_deterministic(self, tmp_path, fixtures_dir, capsys):
        outs = []
        for n in (1, 2):
            graph_path = tmp_path / f"g{n}.json"
            report_path = tmp_path / f"r{n}.json"
            code, _, _ = run(
                capsys, "build",
                "--corpus", fixtures_dir / "corpus_20.jsonl",
                "--genes", fixtures_dir / "lexicon_genes.csv",
                "--diseases", fixtures_dir / "lexicon_diseases.csv",
                "--gazetteer", "--out", graph_path, "--report", report_path,
            )
            assert code == 0
            outs.append((graph_path.read_bytes(), report_path.read_bytes()))
        assert outs[0][0] == outs[1][0]
        # reports embed their own --out-derived drop-log path, which differs
        r1 = json.loads(outs[0][1])
        r2 = json.loads(outs[1][1])
        r1.pop("drop_log"), r2.pop("drop_log")
        assert r1 == r2

    def test_empty_corpus_errors(self, tmp_path, fixtures_dir, capsys):
        empty = tmp_path / "empty.jsonl"
        empty.write_text("")
        code, _, err = run(
            capsys, "build",
            "--corpus", empty,
            "--genes", fixtures_dir / "lexicon_genes.csv",
            "--diseases", fixtures_dir / "lexicon_diseases.csv",
            "--gazetteer", "--out", tmp_path / "g.json",
        )
        assert code == 1
        assert "no records" in err
        assert not (tmp_path / "g.json").exists()

    def test_failed_build_leaves_no_graph_file(self, tmp_path, fixtures_dir, capsys):
        bad_lexicon = tmp_path / "bad.csv"
        bad_lexicon.write_text("master_term,synonym\nA1,shared\nB2,shared\n")
        out = tmp_path / "g.json"
        code, _, err = run(
            capsys, "build",
            "--corpus", fixtures_dir / "corpus_20.jsonl",
            "--genes", bad_lexicon,
            "--diseases", fixtures_dir / "lexicon_diseases.csv",
            "--gazetteer", "--out", out,
        )
        assert code == 1
        assert not out.exists()

    def test_both_ner_sources_rejected(self, tmp_path, fixtures_dir, capsys):
        code, _, err = run(
            capsys, "build",
            "--corpus", fixtures_dir / "corpus_20.jsonl",
            "--genes", fixtures_dir / "lexicon_genes.csv",
            "--diseases", fixtures_dir / "lexicon_diseases.csv",
            "--out", tmp_path / "g.json",
        )
        assert code == 1
        assert "NER source" in err

    def test_missing_corpus_is_io_error(self, tmp_path, fixtures_dir, capsys):
        code, _, err = run(
            capsys, "build",
            "--corpus", tmp_path / "absent.jsonl",
            "--genes", fixtures_dir / "lexicon_genes.csv",
            "--diseases", fixtures_dir / "lexicon_diseases.csv",
            "--gazetteer", "--out", tmp_path / "g.json",
        )
        assert code == 3

    def test_config_file_with_flag_override(self, tmp_path, fixtures_dir, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({
            "corpus": str(fixtures_dir / "corpus_20.jsonl"),
            "genes": str(fixtures_dir / "lexicon_genes.csv"),
            "diseases": str(fixtures_dir / "lexicon_diseases.csv"),
            "gazetteer": True,
            "threshold": 0.9,
        }))
        out = tmp_path / "g.json"
        report = tmp_path / "r.json"
        code, _, _ = run(
            capsys, "build", "--config", config, "--out", out,
            "--report", report, "--threshold", "0.85",
        )
        assert code == 0
        assert json.loads(report.read_text())["inputs"]["threshold"] == 0.85

    def test_dump_stages(self, tmp_path, fixtures_dir, capsys):
        dump = tmp_path / "stages"
        code, _, _ = run(
            capsys, "build",
            "--corpus", fixtures_dir / "corpus_20.jsonl",
            "--genes", fixtures_dir / "lexicon_genes.csv",
            "--diseases", fixtures_dir / "lexicon_diseases.csv",
            "--gazetteer", "--out", tmp_path / "g.json",
            "--dump-stages", dump,
        )
        assert code == 0
        sentences = [json.loads(l) for l in (dump / "sentences.jsonl").read_text().splitlines()]
        mentions = [json.loads(l) for l in (dump / "mentions.jsonl").read_text().splitlines()]
        normalized = [json.loads(l) for l in (dump / "normalized.jsonl").read_text().splitlines()]
        assert len(sentences) == 41
        assert len(mentions) == 48
        assert len(normalized) == 48


class TestAnnotationsPath:
    def test_annotation_file_equals_gazetteer_run(self, tmp_path, fixtures_dir, capsys):
        # derive an annotation file from the gazetteer, then rebuild from it
        from gdkg.ingest import load_corpus, segment_corpus
        from gdkg.lexnorm import load_lexicon
        from gdkg.ner import GazetteerTagger

        records = load_corpus(fixtures_dir / "corpus_20.jsonl", "jsonl")
        _, segments = segment_corpus(records)
        tagger = GazetteerTagger(
            load_lexicon(fixtures_dir / "lexicon_genes.csv", "gene"),
            load_lexicon(fixtures_dir / "lexicon_diseases.csv", "disease"),
        )
        ann_path = tmp_path / "annotations.jsonl"
        with open(ann_path, "w", encoding="utf-8") as fh:
            for seg in segments:
                tagged = tagger.tag(seg)
                fh.write(json.dumps({
                    "pubmed_id": seg.pubmed_id,
                    "sentence_index": seg.sentence_index,
                    "tokens": [t.text for t in tagged],
                    "labels": [t.label for t in tagged],
                }) + "\n")

        g1, g2 = tmp_path / "g1.json", tmp_path / "g2.json"
        base = [
            "--corpus", fixtures_dir / "corpus_20.jsonl",
            "--genes", fixtures_dir / "lexicon_genes.csv",
            "--diseases", fixtures_dir / "lexicon_diseases.csv",
        ]
        code, _, _ = run(capsys, "build", *base, "--gazetteer", "--out", g1)
        assert code == 0
        code, _, _ = run(capsys, "build", *base, "--annotations", ann_path, "--out", g2)
        assert code == 0
        assert g1.read_bytes() == g2.read_bytes()

    def test_split_normalization_through_annotations(self, tmp_path, fixtures_dir, capsys):
        # the B,I,I labeling of a conjunction becomes two masters via split
        corpus = tmp_path / "c.jsonl"
        corpus.write_text(json.dumps({"pubmed_id": "42", "abstract": "BRCA1 and BRCA2."}) + "\n")
        ann = tmp_path / "a.jsonl"
        ann.write_text(json.dumps({
            "pubmed_id": "42", "sentence_index": 0,
            "tokens": ["BRCA1", "and", "BRCA2", "."],
            "labels": ["B-GENE", "I-GENE", "I-GENE", "O"],
        }) + "\n")
        out = tmp_path / "g.json"
        code, _, _ = run(
            capsys, "build", "--corpus", corpus,
            "--genes", fixtures_dir / "lexicon_genes.csv",
            "--diseases", fixtures_dir / "lexicon_diseases.csv",
            "--annotations", ann, "--out", out,
        )
        assert code == 0
        graph = load(out)
        assert sorted(t.tail.name for t in graph.triples()) == ["BRCA1", "BRCA2"]


class TestExport:
    def test_cypher_identical_across_runs(self, built, tmp_path, capsys):
        graph_path, _ = built
        a, b = tmp_path / "a.cypher", tmp_path / "b.cypher"
        assert run(capsys, "export", graph_path, "--format", "cypher", "--out", a)[0] == 0
        assert run(capsys, "export", graph_path, "--format", "cypher", "--out", b)[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_format_usage_error(self, built, tmp_path, capsys):
        graph_path, _ = built
        code, _, err = run(
            capsys, "export", graph_path, "--format", "xml", "--out", tmp_path / "x"
        )
        assert code == 1

    def test_csv_writes_directory(self, built, tmp_path, capsys):
        graph_path, _ = built
        out_dir = tmp_path / "csvout"
        code, _, _ = run(capsys, "export", graph_path, "--format", "csv", "--out", out_dir)
        assert code == 0
        assert (out_dir / "nodes.csv").exists()
        assert (out_dir / "edges.csv").exists()

    def test_empty_graph_header_only(self, tmp_path, capsys):
        from gdkg.kg import KnowledgeGraph, save

        graph_path = tmp_path / "empty.json"
        save(KnowledgeGraph(), graph_path)
        out = tmp_path / "empty.nt"
        code, _, _ = run(capsys, "export", graph_path, "--format", "ntriples", "--out", out)
        assert code == 0
        assert out.read_text() == ""


class TestQueryCommand:
    def test_stats(self, built, capsys, fixtures_dir):
        graph_path, _ = built
        code, out, _ = run(capsys, "stats", graph_path)
        assert code == 0
        expected = json.loads((fixtures_dir / "expected_report.json").read_text())["graph"]
        assert json.loads(out) == expected

    def test_article_star_shape(self, built, capsys):
        graph_path, _ = built
        code, out, _ = run(capsys, "query", graph_path, "--article", "9024708")
        assert code == 0
        payload = json.loads(out)
        assert [n["name"] for n in payload["groups"]["Gene"]] == ["BRCA1", "BRCA2"]
        assert [n["name"] for n in payload["groups"]["Disease"]] == ["Breast (Malignant)"]

    def test_absent_disease_exit_2(self, built, capsys):
        graph_path, _ = built
        code, _, err = run(capsys, "query", graph_path, "--disease", "absent")
        assert code == 2
        assert "absent" in err

    def test_cooccurrence_with_filter(self, built, capsys):
        graph_path, _ = built
        code, out, _ = run(
            capsys, "query", graph_path, "--cooccurrence", "sentence", "--gene", "MLH1"
        )
        assert code == 0
        rows = json.loads(out)["rows"]
        assert [(r["gene"], r["disease"], r["support"]) for r in rows] == [
            ("MLH1", "Colon (Malignant)", 2)
        ]

    def test_neighborhood_depth_validation_exit_1(self, built, capsys):
        graph_path, _ = built
        code, _, _ = run(capsys, "query", graph_path, "--neighborhood", "BRCA1", "--depth", "7")
        assert code == 1

    def test_no_selector_exit_1(self, built, capsys):
        graph_path, _ = built
        code, _, _ = run(capsys, "query", graph_path)
        assert code == 1

    def test_missing_graph_file_exit_3(self, tmp_path, capsys):
        code, _, _ = run(capsys, "stats", tmp_path / "absent.json")
        assert code == 3

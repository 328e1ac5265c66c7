from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # makes `oracles` importable

from gdkg import lexnorm
from gdkg.pipeline import BuildResult, PipelineConfig, run_build

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def gene_lexicon() -> lexnorm.Lexicon:
    return lexnorm.load_lexicon(FIXTURES / "lexicon_genes.csv", "gene")


@pytest.fixture(scope="session")
def disease_lexicon() -> lexnorm.Lexicon:
    return lexnorm.load_lexicon(FIXTURES / "lexicon_diseases.csv", "disease")


@pytest.fixture(scope="session")
def golden_config() -> PipelineConfig:
    return PipelineConfig(
        corpus_path=str(FIXTURES / "corpus_20.jsonl"),
        genes_path=str(FIXTURES / "lexicon_genes.csv"),
        diseases_path=str(FIXTURES / "lexicon_diseases.csv"),
        gazetteer=True,
    )


@pytest.fixture(scope="session")
def golden_build(golden_config) -> BuildResult:
    return run_build(golden_config)


@pytest.fixture(scope="session")
def golden_graph(golden_build):
    return golden_build.graph


def load_expected_triples() -> list[tuple[str, str, str, frozenset]]:
    """The hand-computed golden triple listing, as raw tuples."""
    rows = []
    lines = (FIXTURES / "expected_triples.tsv").read_text(encoding="utf-8").splitlines()
    for line in lines[1:]:
        pubmed_id, relation, master, sentences = line.split("\t")
        rows.append((pubmed_id, relation, master, frozenset(int(s) for s in sentences.split())))
    return rows


@pytest.fixture(scope="session")
def expected_triples() -> list[tuple[str, str, str, frozenset]]:
    return load_expected_triples()

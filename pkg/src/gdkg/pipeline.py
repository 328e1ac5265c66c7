"""End-to-end build: corpus -> sentences/segments -> mentions -> graph.

The NER source is either an annotation file (external model output) or the
built-in gazetteer; everything downstream is identical. Dropped mentions
(no lexicon match) are returned alongside the graph so callers can log
them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import ingest, kg, lexnorm, ner
from .errors import ValidationError


@dataclass
class PipelineConfig:
    corpus_path: str
    genes_path: str
    diseases_path: str
    corpus_format: str = "jsonl"
    annotations_path: Optional[str] = None
    gazetteer: bool = False
    max_segment_chars: int = ingest.DEFAULT_MAX_SEGMENT_CHARS
    threshold: float = lexnorm.DEFAULT_THRESHOLD
    abbrev_path: Optional[str] = None

    def validate(self) -> None:
        if bool(self.annotations_path) == self.gazetteer:
            raise ValidationError(
                "exactly one NER source required: --annotations PATH or --gazetteer"
            )
        if not 0.0 <= self.threshold <= 1.0:
            raise ValidationError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.max_segment_chars < ingest.MIN_SEGMENT_CHARS:
            raise ValidationError(
                f"max segment chars must be >= {ingest.MIN_SEGMENT_CHARS}, "
                f"got {self.max_segment_chars}"
            )


@dataclass
class DroppedMention:
    pubmed_id: str
    sentence_index: int
    kind: str
    surface: str


@dataclass
class BuildResult:
    graph: kg.KnowledgeGraph
    records: list[ingest.AbstractRecord]
    sentences: list[ingest.Sentence]
    segments: list[ingest.Segment]
    mentions: list[ner.EntityMention]
    normalized: list[lexnorm.NormalizedEntity]
    dropped: list[DroppedMention] = field(default_factory=list)

    def report(self) -> dict:
        def by_kind(items) -> dict:
            counts = {"gene": 0, "disease": 0}
            for item in items:
                counts[item.kind] += 1
            return counts

        return {
            "abstracts": len(self.records),
            "sentences": len(self.sentences),
            "segments": len(self.segments),
            "mentions": by_kind(self.mentions),
            "normalized": by_kind(self.normalized),
            "dropped": by_kind(self.dropped),
            "graph": self.graph.stats().to_dict(),
        }


def run_build(config: PipelineConfig) -> BuildResult:
    config.validate()
    records = ingest.load_corpus(config.corpus_path, config.corpus_format)
    if not records:
        raise ValidationError(f"corpus {config.corpus_path}: no records")

    abbrevs = (
        ingest.load_abbreviations(config.abbrev_path)
        if config.abbrev_path
        else ingest.DEFAULT_ABBREVIATIONS
    )
    sentences, segments = ingest.segment_corpus(
        records, abbrevs=abbrevs, max_chars=config.max_segment_chars
    )

    genes = lexnorm.load_lexicon(config.genes_path, "gene")
    diseases = lexnorm.load_lexicon(config.diseases_path, "disease")

    mentions: list[ner.EntityMention] = []
    if config.gazetteer:
        tagger = ner.GazetteerTagger(genes, diseases)
        for seg in segments:
            mentions.extend(
                ner.decode_bio(
                    tagger.tag(seg),
                    pubmed_id=seg.pubmed_id,
                    sentence_index=seg.sentence_index,
                )
            )
    else:
        annotations = ner.load_annotations(config.annotations_path, sentences=sentences)
        for record in annotations:
            mentions.extend(
                ner.decode_bio(
                    record.tokens,
                    pubmed_id=record.pubmed_id,
                    sentence_index=record.sentence_index,
                )
            )

    lexicon_for = {"gene": genes, "disease": diseases}
    normalized: list[lexnorm.NormalizedEntity] = []
    dropped: list[DroppedMention] = []
    per_article: dict[str, list[lexnorm.NormalizedEntity]] = {r.pubmed_id: [] for r in records}
    for mention in mentions:
        entity = lexnorm.normalize(mention, lexicon_for[mention.kind], config.threshold)
        if entity is None:
            dropped.append(
                DroppedMention(
                    pubmed_id=mention.pubmed_id,
                    sentence_index=mention.sentence_index,
                    kind=mention.kind,
                    surface=mention.surface,
                )
            )
        else:
            normalized.append(entity)
            per_article[mention.pubmed_id].append(entity)

    triples: list[kg.Triple] = []
    for record in records:
        triples.extend(kg.build_triples(record.pubmed_id, per_article[record.pubmed_id]))
    graph = kg.assemble_graph(triples)

    return BuildResult(
        graph=graph,
        records=records,
        sentences=sentences,
        segments=segments,
        mentions=mentions,
        normalized=normalized,
        dropped=dropped,
    )


def write_drop_log(dropped: list[DroppedMention], path: str | Path) -> None:
    lines = ["pubmed_id\tsentence_index\tkind\tsurface"]
    for d in dropped:
        lines.append(f"{d.pubmed_id}\t{d.sentence_index}\t{d.kind}\t{d.surface}")
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")

"""Gene-disease literature knowledge graph toolkit."""

from .errors import NotFoundError, ValidationError
from .ingest import AbstractRecord, Segment, Sentence, load_corpus, segment, split_sentences
from .kg import KnowledgeGraph, Node, Triple, assemble_graph, build_triples
from .lexnorm import Lexicon, NormalizedEntity, lexical_key, load_lexicon, normalize
from .ner import EntityMention, LabeledToken, decode_bio, gazetteer_ner, load_annotations
from .pipeline import PipelineConfig, run_build

__all__ = [
    "AbstractRecord",
    "EntityMention",
    "KnowledgeGraph",
    "LabeledToken",
    "Lexicon",
    "Node",
    "NormalizedEntity",
    "NotFoundError",
    "PipelineConfig",
    "Segment",
    "Sentence",
    "Triple",
    "ValidationError",
    "assemble_graph",
    "build_triples",
    "decode_bio",
    "gazetteer_ner",
    "lexical_key",
    "load_annotations",
    "load_corpus",
    "load_lexicon",
    "normalize",
    "run_build",
    "segment",
    "split_sentences",
]

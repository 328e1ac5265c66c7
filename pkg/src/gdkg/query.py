"""Read-only queries over a loaded graph.

Every operation returns a QueryResult whose contents all exist in the
graph; nothing here mutates it. Name lookups are exact on display names
with a case-insensitive fallback.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import NotFoundError, ValidationError
from .kg import (
    LABEL_DISEASE,
    LABEL_GENE,
    LABEL_PUBMED,
    KnowledgeGraph,
    Node,
    REL_DISEASES_IN,
    REL_GENES_IN,
    Triple,
)

MAX_NEIGHBORHOOD_DEPTH = 3
COOCCURRENCE_LEVELS = ("article", "sentence")


@dataclass(frozen=True)
class CooccurrenceRow:
    gene: str
    disease: str
    support: int
    articles: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "gene": self.gene,
            "disease": self.disease,
            "support": self.support,
            "articles": list(self.articles),
        }


@dataclass
class QueryResult:
    centers: list[Node] = field(default_factory=list)
    groups: dict[str, list[Node]] = field(default_factory=dict)
    triples: list[Triple] = field(default_factory=list)
    rows: list[CooccurrenceRow] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "centers": [n.to_dict() for n in self.centers],
            "groups": {label: [n.to_dict() for n in ns] for label, ns in self.groups.items()},
            "triples": [t.to_dict() for t in self.triples],
            "rows": [r.to_dict() for r in self.rows],
        }


def _node_sort(nodes) -> list[Node]:
    return sorted(nodes, key=lambda n: (n.label, n.name))


def _find_one(graph: KnowledgeGraph, name: str, label: str) -> Node:
    matches = [n for n in graph.nodes_by_name(name) if n.label == label]
    if not matches:
        raise NotFoundError(f"no {label} named {name!r}")
    return matches[0]


def articles_and_genes_for_disease(graph: KnowledgeGraph, disease_name: str) -> QueryResult:
    """Articles mentioning the disease, plus every gene those articles mention."""
    disease = _find_one(graph, disease_name, LABEL_DISEASE)
    disease_triples = graph.triples_in(disease.id)
    articles = {t.head.id: t.head for t in disease_triples}
    genes: dict[str, Node] = {}
    gene_triples: list[Triple] = []
    for article_id in sorted(articles):
        for t in graph.triples_out(article_id):
            if t.relation == REL_GENES_IN:
                genes[t.tail.id] = t.tail
                gene_triples.append(t)
    return QueryResult(
        centers=[disease],
        groups={
            LABEL_PUBMED: _node_sort(articles.values()),
            LABEL_GENE: _node_sort(genes.values()),
        },
        triples=sorted(disease_triples + gene_triples, key=lambda t: (t.head.name, t.relation, t.tail.name)),
    )


def articles_and_diseases_for_gene(graph: KnowledgeGraph, gene_name: str) -> QueryResult:
    """Articles mentioning the gene, plus every disease those articles mention."""
    gene = _find_one(graph, gene_name, LABEL_GENE)
    gene_triples = graph.triples_in(gene.id)
    articles = {t.head.id: t.head for t in gene_triples}
    diseases: dict[str, Node] = {}
    disease_triples: list[Triple] = []
    for article_id in sorted(articles):
        for t in graph.triples_out(article_id):
            if t.relation == REL_DISEASES_IN:
                diseases[t.tail.id] = t.tail
                disease_triples.append(t)
    return QueryResult(
        centers=[gene],
        groups={
            LABEL_PUBMED: _node_sort(articles.values()),
            LABEL_DISEASE: _node_sort(diseases.values()),
        },
        triples=sorted(gene_triples + disease_triples, key=lambda t: (t.head.name, t.relation, t.tail.name)),
    )


def entities_for_article(graph: KnowledgeGraph, pubmed_id: str) -> QueryResult:
    """Genes and diseases linked from one article, grouped by label."""
    article = _find_one(graph, pubmed_id, LABEL_PUBMED)
    out = graph.triples_out(article.id)
    return QueryResult(
        centers=[article],
        groups={
            LABEL_GENE: _node_sort(t.tail for t in out if t.relation == REL_GENES_IN),
            LABEL_DISEASE: _node_sort(t.tail for t in out if t.relation == REL_DISEASES_IN),
        },
        triples=out,
    )


def cooccurrence(
    graph: KnowledgeGraph,
    level: str = "article",
    gene: Optional[str] = None,
    disease: Optional[str] = None,
    limit: Optional[int] = None,
) -> QueryResult:
    """(gene, disease) pairs sharing articles, or sentences within articles.

    Article level counts any shared article; sentence level requires the
    two provenance sets to intersect inside the same article. Rows sort by
    (support desc, gene, disease).
    """
    if level not in COOCCURRENCE_LEVELS:
        raise ValidationError(f"unknown co-occurrence level {level!r}")
    if limit is not None and limit < 1:
        raise ValidationError(f"limit must be positive, got {limit}")
    gene_filter = _find_one(graph, gene, LABEL_GENE).name if gene else None
    disease_filter = _find_one(graph, disease, LABEL_DISEASE).name if disease else None

    supporters: dict[tuple[str, str], set[str]] = {}
    for node in graph.nodes():
        if node.label != LABEL_PUBMED:
            continue
        out = graph.triples_out(node.id)
        gene_prov = [(t.tail.name, t.sentences) for t in out if t.relation == REL_GENES_IN]
        disease_prov = [(t.tail.name, t.sentences) for t in out if t.relation == REL_DISEASES_IN]
        for gname, gsent in gene_prov:
            if gene_filter and gname != gene_filter:
                continue
            for dname, dsent in disease_prov:
                if disease_filter and dname != disease_filter:
                    continue
                if level == "sentence" and not (gsent & dsent):
                    continue
                supporters.setdefault((gname, dname), set()).add(node.name)

    rows = [
        CooccurrenceRow(
            gene=gname,
            disease=dname,
            support=len(articles),
            articles=tuple(sorted(articles)),
        )
        for (gname, dname), articles in supporters.items()
    ]
    rows.sort(key=lambda r: (-r.support, r.gene, r.disease))
    if limit is not None:
        rows = rows[:limit]
    return QueryResult(rows=rows)


def neighborhood(graph: KnowledgeGraph, node_name: str, depth: int = 1) -> QueryResult:
    """Breadth-first expansion ignoring direction, with all induced triples."""
    if not 1 <= depth <= MAX_NEIGHBORHOOD_DEPTH:
        raise ValidationError(f"depth must be in 1..{MAX_NEIGHBORHOOD_DEPTH}, got {depth}")
    centers = graph.nodes_by_name(node_name)
    if not centers:
        raise NotFoundError(f"no node named {node_name!r}")

    visited = {n.id: n for n in centers}
    frontier = [n.id for n in centers]
    for _ in range(depth):
        nxt = []
        for nid in frontier:
            for t in graph.triples_out(nid):
                if t.tail.id not in visited:
                    visited[t.tail.id] = t.tail
                    nxt.append(t.tail.id)
            for t in graph.triples_in(nid):
                if t.head.id not in visited:
                    visited[t.head.id] = t.head
                    nxt.append(t.head.id)
        frontier = nxt

    center_ids = {n.id for n in centers}
    induced = [
        t
        for t in graph.triples()
        if t.head.id in visited and t.tail.id in visited
    ]
    groups: dict[str, list[Node]] = {}
    for node in _node_sort(n for n in visited.values() if n.id not in center_ids):
        groups.setdefault(node.label, []).append(node)
    return QueryResult(centers=_node_sort(centers), groups=groups, triples=induced)


def search_nodes(graph: KnowledgeGraph, q: str, limit: Optional[int] = None) -> QueryResult:
    """Case-insensitive prefix match over node display names."""
    if not q:
        raise ValidationError("search query must be non-empty")
    if limit is not None and limit < 1:
        raise ValidationError(f"limit must be positive, got {limit}")
    prefix = q.lower()
    matches = _node_sort(n for n in graph.nodes() if n.name.lower().startswith(prefix))
    if limit is not None:
        matches = matches[:limit]
    groups: dict[str, list[Node]] = {}
    for node in matches:
        groups.setdefault(node.label, []).append(node)
    return QueryResult(centers=matches, groups=groups)

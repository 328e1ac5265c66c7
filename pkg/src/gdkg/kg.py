"""Triple graph: construction, deduplication, persistence, export.

Heads are always PubMedID nodes; tails are Gene or Disease nodes reached
via GENES_IN / DISEASES_IN. Each triple carries provenance: the sentence
indexes (within that article) where the tail's mentions occurred. All
serialized forms are deterministically sorted: nodes by (label, name),
triples by (head name, relation, tail name).
"""

from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional
from urllib.parse import quote, unquote

from .errors import ValidationError
from .lexnorm import NormalizedEntity, lexical_key

LABEL_PUBMED = "PubMedID"
LABEL_GENE = "Gene"
LABEL_DISEASE = "Disease"
LABELS = (LABEL_PUBMED, LABEL_GENE, LABEL_DISEASE)

REL_GENES_IN = "GENES_IN"
REL_DISEASES_IN = "DISEASES_IN"
RELATIONS = (REL_GENES_IN, REL_DISEASES_IN)

_RELATION_FOR_KIND = {"gene": REL_GENES_IN, "disease": REL_DISEASES_IN}
_LABEL_FOR_KIND = {"gene": LABEL_GENE, "disease": LABEL_DISEASE}
_ID_PREFIX = {LABEL_PUBMED: "pmid", LABEL_GENE: "gene", LABEL_DISEASE: "disease"}
_LABEL_FOR_PREFIX = {v: k for k, v in _ID_PREFIX.items()}

SAVE_FORMAT_VERSION = 1
EXPORT_FORMATS = ("cypher", "ntriples", "graphml", "csv")


def node_id(label: str, name: str) -> str:
    return f"{_ID_PREFIX[label]}:{lexical_key(name)}"


@dataclass(frozen=True)
class Node:
    id: str
    label: str
    name: str

    def to_dict(self) -> dict:
        return {"id": self.id, "label": self.label, "name": self.name}


@dataclass(frozen=True)
class Triple:
    head: Node
    relation: str
    tail: Node
    sentences: frozenset[int]

    def to_dict(self) -> dict:
        return {
            "head": self.head.to_dict(),
            "relation": self.relation,
            "tail": self.tail.to_dict(),
            "sentences": sorted(self.sentences),
        }


@dataclass(frozen=True)
class GraphStats:
    triples: int
    entities: int
    pubmed_ids: int
    genes: int
    diseases: int

    def to_dict(self) -> dict:
        return {
            "triples": self.triples,
            "entities": self.entities,
            "pubmed_ids": self.pubmed_ids,
            "genes": self.genes,
            "diseases": self.diseases,
        }


class KnowledgeGraph:
    """Deduplicated triple set with typed nodes and two-way adjacency."""

    def __init__(self) -> None:
        self._nodes: dict[str, Node] = {}
        self._edges: dict[tuple[str, str, str], set[int]] = {}
        self._out: dict[str, set[tuple[str, str, str]]] = {}
        self._in: dict[str, set[tuple[str, str, str]]] = {}
        self._by_name: dict[str, list[str]] = {}
        self._by_name_ci: dict[str, list[str]] = {}

    def ensure_node(self, label: str, name: str) -> Node:
        if label not in LABELS:
            raise ValidationError(f"unknown node label {label!r}")
        nid = node_id(label, name)
        existing = self._nodes.get(nid)
        if existing is not None:
            if existing.name != name or existing.label != label:
                raise ValidationError(
                    f"node id collision: {nid!r} already names {existing.name!r}"
                )
            return existing
        node = Node(id=nid, label=label, name=name)
        self._nodes[nid] = node
        self._by_name.setdefault(name, []).append(nid)
        self._by_name_ci.setdefault(name.lower(), []).append(nid)
        return node

    def add_triple(
        self, head_name: str, relation: str, tail_name: str, sentences: Iterable[int]
    ) -> None:
        if relation not in RELATIONS:
            raise ValidationError(f"unknown relation {relation!r}")
        sentences = set(sentences)
        if not sentences:
            raise ValidationError("triple provenance must be non-empty")
        tail_label = LABEL_GENE if relation == REL_GENES_IN else LABEL_DISEASE
        head = self.ensure_node(LABEL_PUBMED, head_name)
        tail = self.ensure_node(tail_label, tail_name)
        key = (head.id, relation, tail.id)
        if key in self._edges:
            self._edges[key] |= sentences
        else:
            self._edges[key] = sentences
            self._out.setdefault(head.id, set()).add(key)
            self._in.setdefault(tail.id, set()).add(key)

    def merge_triples(self, triples: Iterable[Triple]) -> None:
        for t in triples:
            self.add_triple(t.head.name, t.relation, t.tail.name, t.sentences)

    # -- lookups ---------------------------------------------------------

    def node_by_id(self, nid: str) -> Optional[Node]:
        return self._nodes.get(nid)

    def nodes_by_name(self, name: str) -> list[Node]:
        """Exact display-name match with a case-insensitive fallback."""
        ids = self._by_name.get(name)
        if not ids:
            ids = self._by_name_ci.get(name.lower(), [])
        return sorted((self._nodes[i] for i in ids), key=lambda n: (n.label, n.name))

    def _triple_of(self, key: tuple[str, str, str]) -> Triple:
        hid, rel, tid = key
        return Triple(
            head=self._nodes[hid],
            relation=rel,
            tail=self._nodes[tid],
            sentences=frozenset(self._edges[key]),
        )

    def triples_out(self, nid: str) -> list[Triple]:
        return sorted(
            (self._triple_of(k) for k in self._out.get(nid, ())),
            key=_triple_sort_key,
        )

    def triples_in(self, nid: str) -> list[Triple]:
        return sorted(
            (self._triple_of(k) for k in self._in.get(nid, ())),
            key=_triple_sort_key,
        )

    def nodes(self) -> list[Node]:
        return sorted(self._nodes.values(), key=lambda n: (n.label, n.name))

    def triples(self) -> list[Triple]:
        return sorted((self._triple_of(k) for k in self._edges), key=_triple_sort_key)

    def triple_count(self) -> int:
        return len(self._edges)

    def stats(self) -> GraphStats:
        counts = {label: 0 for label in LABELS}
        for node in self._nodes.values():
            counts[node.label] += 1
        return GraphStats(
            triples=len(self._edges),
            entities=len(self._nodes),
            pubmed_ids=counts[LABEL_PUBMED],
            genes=counts[LABEL_GENE],
            diseases=counts[LABEL_DISEASE],
        )


def _triple_sort_key(t: Triple) -> tuple[str, str, str]:
    return (t.head.name, t.relation, t.tail.name)


def build_triples(pubmed_id: str, normalized: Iterable[NormalizedEntity]) -> list[Triple]:
    """One triple per distinct (master, kind) in an article.

    Provenance is the union of sentence indexes over all contributing
    mentions; repeated mentions of the same master collapse.
    """
    provenance: dict[tuple[str, str], set[int]] = {}
    for ent in normalized:
        if ent.source.pubmed_id != pubmed_id:
            raise ValidationError(
                f"normalized entity belongs to {ent.source.pubmed_id}, not {pubmed_id}"
            )
        for master in ent.masters:
            provenance.setdefault((ent.kind, master), set()).add(
                ent.source.sentence_index
            )

    head = Node(id=node_id(LABEL_PUBMED, pubmed_id), label=LABEL_PUBMED, name=pubmed_id)
    triples = []
    for (kind, master), sentences in provenance.items():
        label = _LABEL_FOR_KIND[kind]
        tail = Node(id=node_id(label, master), label=label, name=master)
        triples.append(
            Triple(
                head=head,
                relation=_RELATION_FOR_KIND[kind],
                tail=tail,
                sentences=frozenset(sentences),
            )
        )
    return sorted(triples, key=_triple_sort_key)


def assemble_graph(triples: Iterable[Triple]) -> KnowledgeGraph:
    graph = KnowledgeGraph()
    graph.merge_triples(triples)
    return graph


# -- native persistence ----------------------------------------------------


def graph_to_document(graph: KnowledgeGraph) -> dict:
    return {
        "version": SAVE_FORMAT_VERSION,
        "nodes": [n.to_dict() for n in graph.nodes()],
        "triples": [
            {
                "head": t.head.id,
                "relation": t.relation,
                "tail": t.tail.id,
                "sentences": sorted(t.sentences),
            }
            for t in graph.triples()
        ],
    }


def save(graph: KnowledgeGraph, path: str | Path) -> None:
    text = json.dumps(graph_to_document(graph), ensure_ascii=False, indent=2) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def load(path: str | Path) -> KnowledgeGraph:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"graph file {path}: corrupt JSON ({exc.msg})") from exc
    return graph_from_document(doc, source=str(path))


def graph_from_document(doc: object, source: str = "<document>") -> KnowledgeGraph:
    if not isinstance(doc, dict):
        raise ValidationError(f"{source}: graph document must be an object")
    version = doc.get("version")
    if version != SAVE_FORMAT_VERSION:
        raise ValidationError(
            f"{source}: unsupported graph version {version!r} "
            f"(expected {SAVE_FORMAT_VERSION})"
        )
    try:
        nodes = {n["id"]: Node(id=n["id"], label=n["label"], name=n["name"]) for n in doc["nodes"]}
        graph = KnowledgeGraph()
        for node in nodes.values():
            if node.label not in LABELS:
                raise ValidationError(f"{source}: unknown label {node.label!r}")
            graph.ensure_node(node.label, node.name)
        for t in doc["triples"]:
            head = nodes[t["head"]]
            tail = nodes[t["tail"]]
            graph.add_triple(head.name, t["relation"], tail.name, t["sentences"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"{source}: malformed graph document ({exc!r})") from exc
    return graph


# -- exports ---------------------------------------------------------------


def export(graph: KnowledgeGraph, fmt: str) -> dict[str, str]:
    """Render the graph in one of cypher|ntriples|graphml|csv.

    Returns {filename: content}; csv produces two documents, the others one.
    """
    if fmt == "cypher":
        return {"graph.cypher": export_cypher(graph)}
    if fmt == "ntriples":
        return {"graph.nt": export_ntriples(graph)}
    if fmt == "graphml":
        return {"graph.graphml": export_graphml(graph)}
    if fmt == "csv":
        nodes_csv, edges_csv = export_csv(graph)
        return {"nodes.csv": nodes_csv, "edges.csv": edges_csv}
    raise ValidationError(f"unknown export format {fmt!r} (expected one of {EXPORT_FORMATS})")


def _cypher_escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"')


def _cypher_unescape(value: str) -> str:
    return re.sub(r"\\(.)", r"\1", value)


def export_cypher(graph: KnowledgeGraph) -> str:
    """One MERGE per node, then one MERGE per relationship, one per line.

    Edge lines anchor both endpoints with MATCH before the MERGE so reruns
    never duplicate nodes.
    """
    lines = []
    for n in graph.nodes():
        lines.append(
            f'MERGE (:{n.label} {{id: "{_cypher_escape(n.id)}", '
            f'name: "{_cypher_escape(n.name)}"}});'
        )
    for t in graph.triples():
        sentences = ", ".join(str(s) for s in sorted(t.sentences))
        lines.append(
            f'MATCH (h:{t.head.label} {{id: "{_cypher_escape(t.head.id)}"}}) '
            f'MATCH (t:{t.tail.label} {{id: "{_cypher_escape(t.tail.id)}"}}) '
            f"MERGE (h)-[:{t.relation} {{sentences: [{sentences}]}}]->(t);"
        )
    return "".join(line + "\n" for line in lines)


_QUOTED = r'"((?:[^"\\]|\\.)*)"'
_CYPHER_NODE = re.compile(
    rf"^MERGE \(:(PubMedID|Gene|Disease) \{{id: {_QUOTED}, name: {_QUOTED}\}}\);$"
)
_CYPHER_EDGE = re.compile(
    rf"^MATCH \(h:(PubMedID) \{{id: {_QUOTED}\}}\) "
    rf"MATCH \(t:(Gene|Disease) \{{id: {_QUOTED}\}}\) "
    rf"MERGE \(h\)-\[:(GENES_IN|DISEASES_IN) \{{sentences: \[(\d+(?:, \d+)*)\]\}}\]->\(t\);$"
)


def parse_cypher_export(text: str) -> KnowledgeGraph:
    """Parse our own cypher emission grammar back into a graph.

    Exists so exports can be validated without a Neo4j instance; rejects
    any line that does not match the emission grammar exactly.
    """
    nodes: dict[str, Node] = {}
    graph = KnowledgeGraph()
    for lineno, line in enumerate(text.splitlines(), start=1):
        m = _CYPHER_NODE.match(line)
        if m:
            label, nid, name = m.group(1), _cypher_unescape(m.group(2)), _cypher_unescape(m.group(3))
            node = graph.ensure_node(label, name)
            if node.id != nid:
                raise ValidationError(f"cypher line {lineno}: id {nid!r} does not match {node.id!r}")
            nodes[nid] = node
            continue
        m = _CYPHER_EDGE.match(line)
        if m:
            head_id = _cypher_unescape(m.group(2))
            tail_id = _cypher_unescape(m.group(4))
            relation = m.group(5)
            sentences = [int(s) for s in m.group(6).split(", ")]
            if head_id not in nodes or tail_id not in nodes:
                raise ValidationError(f"cypher line {lineno}: edge references unknown node")
            graph.add_triple(nodes[head_id].name, relation, nodes[tail_id].name, sentences)
            continue
        raise ValidationError(f"cypher line {lineno}: does not match emission grammar: {line!r}")
    return graph


_URI_BASE = "urn:x-gdkg"


def _node_uri(node: Node) -> str:
    return f"{_URI_BASE}:{_ID_PREFIX[node.label]}:{quote(node.name, safe='')}"


_NT_LINE = re.compile(r"^<([^>]*)> <([^>]*)> <([^>]*)> \.$")
_NT_NODE_URI = re.compile(rf"^{_URI_BASE}:(pmid|gene|disease):(.*)$")


def export_ntriples(graph: KnowledgeGraph) -> str:
    """One line per triple; node URIs carry the percent-encoded display name."""
    lines = []
    for t in graph.triples():
        lines.append(
            f"<{_node_uri(t.head)}> <{_URI_BASE}:rel:{t.relation}> <{_node_uri(t.tail)}> ."
        )
    return "".join(line + "\n" for line in lines)


def parse_ntriples(text: str) -> KnowledgeGraph:
    """Rebuild a graph from our N-Triples projection (provenance is absent).

    Imported triples get a placeholder provenance of {0} since the
    projection intentionally drops sentence indexes.
    """
    graph = KnowledgeGraph()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        m = _NT_LINE.match(line)
        if m is None:
            raise ValidationError(f"ntriples line {lineno}: malformed: {line!r}")
        head_uri, rel_uri, tail_uri = m.groups()
        if not rel_uri.startswith(f"{_URI_BASE}:rel:"):
            raise ValidationError(f"ntriples line {lineno}: unknown relation URI {rel_uri!r}")
        relation = rel_uri.rsplit(":", 1)[1]
        head = _parse_node_uri(head_uri, lineno)
        tail = _parse_node_uri(tail_uri, lineno)
        if head[0] != LABEL_PUBMED:
            raise ValidationError(f"ntriples line {lineno}: head must be a PubMedID node")
        graph.add_triple(head[1], relation, tail[1], {0})
    return graph


def _parse_node_uri(uri: str, lineno: int) -> tuple[str, str]:
    m = _NT_NODE_URI.match(uri)
    if m is None:
        raise ValidationError(f"ntriples line {lineno}: unknown node URI {uri!r}")
    return _LABEL_FOR_PREFIX[m.group(1)], unquote(m.group(2))


_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def export_graphml(graph: KnowledgeGraph) -> str:
    ET.register_namespace("", _GRAPHML_NS)
    root = ET.Element(f"{{{_GRAPHML_NS}}}graphml")
    for key_id, target, name in (
        ("d_label", "node", "label"),
        ("d_name", "node", "name"),
        ("d_relation", "edge", "relation"),
        ("d_sentences", "edge", "sentences"),
    ):
        key = ET.SubElement(root, f"{{{_GRAPHML_NS}}}key")
        key.set("id", key_id)
        key.set("for", target)
        key.set("attr.name", name)
        key.set("attr.type", "string")
    g = ET.SubElement(root, f"{{{_GRAPHML_NS}}}graph")
    g.set("id", "G")
    g.set("edgedefault", "directed")
    for n in graph.nodes():
        el = ET.SubElement(g, f"{{{_GRAPHML_NS}}}node", id=n.id)
        ET.SubElement(el, f"{{{_GRAPHML_NS}}}data", key="d_label").text = n.label
        ET.SubElement(el, f"{{{_GRAPHML_NS}}}data", key="d_name").text = n.name
    for i, t in enumerate(graph.triples()):
        el = ET.SubElement(g, f"{{{_GRAPHML_NS}}}edge", id=f"e{i}", source=t.head.id, target=t.tail.id)
        ET.SubElement(el, f"{{{_GRAPHML_NS}}}data", key="d_relation").text = t.relation
        ET.SubElement(el, f"{{{_GRAPHML_NS}}}data", key="d_sentences").text = " ".join(
            str(s) for s in sorted(t.sentences)
        )
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


def export_csv(graph: KnowledgeGraph) -> tuple[str, str]:
    import csv
    import io

    nodes_buf = io.StringIO()
    writer = csv.writer(nodes_buf, lineterminator="\n")
    writer.writerow(["id", "label", "name"])
    for n in graph.nodes():
        writer.writerow([n.id, n.label, n.name])

    edges_buf = io.StringIO()
    writer = csv.writer(edges_buf, lineterminator="\n")
    writer.writerow(["head_id", "relation", "tail_id", "sentences"])
    for t in graph.triples():
        writer.writerow(
            [t.head.id, t.relation, t.tail.id, " ".join(str(s) for s in sorted(t.sentences))]
        )
    return nodes_buf.getvalue(), edges_buf.getvalue()

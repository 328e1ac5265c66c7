"""Command-line interface: build, export, query, serve, stats.

Exit codes: 0 success, 1 validation/usage, 2 not found, 3 I/O.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import kg, query, server
from .errors import NotFoundError, ValidationError
from .ingest import DEFAULT_MAX_SEGMENT_CHARS
from .lexnorm import DEFAULT_THRESHOLD
from .pipeline import BuildResult, PipelineConfig, run_build, write_drop_log

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NOT_FOUND = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for not-found here.
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise ValidationError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="gdkg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="run the full pipeline and persist a graph")
    p.add_argument("--config", help="JSON file with flat key/value defaults; flags override")
    p.add_argument("--corpus", help="corpus file (jsonl or csv)")
    p.add_argument("--corpus-format", choices=["jsonl", "csv"], default=None)
    p.add_argument("--genes", help="gene lexicon CSV (master_term,synonym)")
    p.add_argument("--diseases", help="disease lexicon CSV (master_term,synonym)")
    p.add_argument("--annotations", help="BIO annotation JSONL from an external model")
    p.add_argument("--gazetteer", action="store_true", default=None,
                   help="use the built-in dictionary NER instead of --annotations")
    p.add_argument("--max-chars", type=int, default=None,
                   help=f"segment budget in characters (default {DEFAULT_MAX_SEGMENT_CHARS})")
    p.add_argument("--threshold", type=float, default=None,
                   help=f"approximate-match similarity threshold (default {DEFAULT_THRESHOLD})")
    p.add_argument("--abbrev", help="abbreviation list (one per line, # comments)")
    p.add_argument("--out", help="graph output path (JSON)")
    p.add_argument("--report", help="write the machine-readable run report here")
    p.add_argument("--dump-stages", metavar="DIR",
                   help="also dump sentences/mentions/normalized entities as JSONL")

    p = sub.add_parser("export", help="render a saved graph in another format")
    p.add_argument("graph", help="graph file written by build")
    p.add_argument("--format", required=True, choices=list(kg.EXPORT_FORMATS))
    p.add_argument("--out", required=True,
                   help="output path (a directory for --format csv)")

    p = sub.add_parser("query", help="run one query and print JSON")
    p.add_argument("graph")
    p.add_argument("--disease", help="articles + genes for a disease")
    p.add_argument("--gene", help="articles + diseases for a gene")
    p.add_argument("--article", help="genes + diseases in one article")
    p.add_argument("--cooccurrence", choices=list(query.COOCCURRENCE_LEVELS),
                   help="co-occurring (gene, disease) pairs at this level; "
                        "--gene/--disease become filters")
    p.add_argument("--neighborhood", metavar="NAME", help="breadth-first expansion of a node")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--limit", type=int, default=None)

    p = sub.add_parser("serve", help="serve the read-only HTTP API")
    p.add_argument("graph")
    p.add_argument("--addr", default="127.0.0.1:8080", help="host:port to bind")

    p = sub.add_parser("stats", help="print node/triple counts")
    p.add_argument("graph")

    return parser


def _merge_config(args: argparse.Namespace) -> PipelineConfig:
    file_values: dict = {}
    if args.config:
        try:
            file_values = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config {args.config}: invalid JSON ({exc.msg})") from exc
        if not isinstance(file_values, dict):
            raise ValidationError(f"config {args.config}: must be a flat JSON object")

    def pick(flag: str, default=None):
        value = getattr(args, flag.replace("-", "_"))
        if value is not None:
            return value
        return file_values.get(flag, default)

    corpus = pick("corpus")
    genes = pick("genes")
    diseases = pick("diseases")
    out = pick("out")
    for name, value in (("--corpus", corpus), ("--genes", genes),
                        ("--diseases", diseases), ("--out", out)):
        if not value:
            raise ValidationError(f"build requires {name}")

    config = PipelineConfig(
        corpus_path=corpus,
        genes_path=genes,
        diseases_path=diseases,
        corpus_format=pick("corpus-format", "jsonl"),
        annotations_path=pick("annotations"),
        gazetteer=bool(pick("gazetteer", False)),
        max_segment_chars=int(pick("max-chars", DEFAULT_MAX_SEGMENT_CHARS)),
        threshold=float(pick("threshold", DEFAULT_THRESHOLD)),
        abbrev_path=pick("abbrev"),
    )
    args.out = out
    args.report_path = pick("report")
    args.dump_dir = pick("dump-stages")
    return config


def _dump_stages(result: BuildResult, dump_dir: str) -> None:
    out = Path(dump_dir)
    out.mkdir(parents=True, exist_ok=True)

    def dump(name: str, rows) -> None:
        with open(out / name, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row, ensure_ascii=False) + "\n")

    dump("sentences.jsonl", (
        {"pubmed_id": s.pubmed_id, "sentence_index": s.sentence_index,
         "text": s.text, "char_span": list(s.char_span)}
        for s in result.sentences
    ))
    dump("mentions.jsonl", (
        {"pubmed_id": m.pubmed_id, "sentence_index": m.sentence_index,
         "kind": m.kind, "surface": m.surface, "token_span": list(m.token_span)}
        for m in result.mentions
    ))
    dump("normalized.jsonl", (
        {"pubmed_id": e.source.pubmed_id, "sentence_index": e.source.sentence_index,
         "kind": e.kind, "surface": e.source.surface, "method": e.method,
         "masters": sorted(e.masters)}
        for e in result.normalized
    ))


def _print_report_table(report: dict) -> None:
    graph = report["graph"]
    rows = [
        ("abstracts", report["abstracts"]),
        ("sentences", report["sentences"]),
        ("segments", report["segments"]),
        ("gene mentions", report["mentions"]["gene"]),
        ("disease mentions", report["mentions"]["disease"]),
        ("normalized (gene)", report["normalized"]["gene"]),
        ("normalized (disease)", report["normalized"]["disease"]),
        ("dropped (gene)", report["dropped"]["gene"]),
        ("dropped (disease)", report["dropped"]["disease"]),
        ("nodes", graph["entities"]),
        ("  pubmed ids", graph["pubmed_ids"]),
        ("  genes", graph["genes"]),
        ("  diseases", graph["diseases"]),
        ("triples", graph["triples"]),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")


def _cmd_build(args: argparse.Namespace) -> int:
    config = _merge_config(args)
    result = run_build(config)

    out_path = Path(args.out)
    drop_log = out_path.with_name(out_path.stem + ".drops.tsv")
    report = {
        "inputs": {
            "corpus": config.corpus_path,
            "corpus_format": config.corpus_format,
            "genes": config.genes_path,
            "diseases": config.diseases_path,
            "ner_source": "gazetteer" if config.gazetteer else config.annotations_path,
            "max_segment_chars": config.max_segment_chars,
            "threshold": config.threshold,
        },
        **result.report(),
        "drop_log": str(drop_log),
    }

    kg.save(result.graph, out_path)
    write_drop_log(result.dropped, drop_log)
    if args.report_path:
        Path(args.report_path).write_text(
            json.dumps(report, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
    if args.dump_dir:
        _dump_stages(result, args.dump_dir)

    _print_report_table(report)
    print(f"graph written to {out_path}")
    return EXIT_OK


def _cmd_export(args: argparse.Namespace) -> int:
    graph = kg.load(args.graph)
    documents = kg.export(graph, args.format)
    out = Path(args.out)
    if args.format == "csv":
        out.mkdir(parents=True, exist_ok=True)
        for name, content in documents.items():
            (out / name).write_text(content, encoding="utf-8")
            print(f"wrote {out / name}")
    else:
        (content,) = documents.values()
        out.write_text(content, encoding="utf-8")
        print(f"wrote {out}")
    return EXIT_OK


def _cmd_query(args: argparse.Namespace) -> int:
    graph = kg.load(args.graph)
    if args.cooccurrence:
        result = query.cooccurrence(
            graph, level=args.cooccurrence,
            gene=args.gene, disease=args.disease, limit=args.limit,
        )
    elif args.neighborhood:
        result = query.neighborhood(graph, args.neighborhood, depth=args.depth)
    elif args.article:
        result = query.entities_for_article(graph, args.article)
    elif args.disease:
        result = query.articles_and_genes_for_disease(graph, args.disease)
    elif args.gene:
        result = query.articles_and_diseases_for_gene(graph, args.gene)
    else:
        raise ValidationError(
            "query needs one of --disease, --gene, --article, --cooccurrence, --neighborhood"
        )
    print(json.dumps(result.to_dict(), ensure_ascii=False, indent=2))
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    graph = kg.load(args.graph)
    host, _, port_text = args.addr.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValidationError(f"--addr must be host:port, got {args.addr!r}")
    httpd = server.serve(graph, host=host, port=int(port_text))
    print(f"serving on http://{host}:{httpd.server_address[1]}")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    graph = kg.load(args.graph)
    print(json.dumps(graph.stats().to_dict(), indent=2))
    return EXIT_OK


_COMMANDS = {
    "build": _cmd_build,
    "export": _cmd_export,
    "query": _cmd_query,
    "serve": _cmd_serve,
    "stats": _cmd_stats,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NotFoundError as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

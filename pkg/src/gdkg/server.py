"""Read-only HTTP/JSON API over a loaded graph.

Thin delegation to the query module: every endpoint body is exactly the
library-level result's dictionary form. The graph is immutable while
served, so the threading server can answer concurrent readers safely.
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, unquote, urlsplit

from . import query
from .errors import NotFoundError, ValidationError
from .kg import KnowledgeGraph


class GraphHTTPServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], graph: KnowledgeGraph):
        super().__init__(address, _Handler)
        self.graph = graph


class _Handler(BaseHTTPRequestHandler):
    server: GraphHTTPServer
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt: str, *args) -> None:  # quiet by default
        pass

    def do_GET(self) -> None:
        try:
            payload = self._route()
            self._send(200, payload)
        except NotFoundError as exc:
            self._send(404, {"error": str(exc)})
        except ValidationError as exc:
            self._send(400, {"error": str(exc)})

    def _route(self) -> dict:
        url = urlsplit(self.path)
        parts = [unquote(p) for p in url.path.split("/") if p]
        params = parse_qs(url.query)
        graph = self.server.graph

        if parts == ["stats"]:
            return graph.stats().to_dict()
        if len(parts) == 3 and parts[0] == "diseases" and parts[2] == "articles":
            return query.articles_and_genes_for_disease(graph, parts[1]).to_dict()
        if len(parts) == 3 and parts[0] == "genes" and parts[2] == "articles":
            return query.articles_and_diseases_for_gene(graph, parts[1]).to_dict()
        if len(parts) == 2 and parts[0] == "articles":
            return query.entities_for_article(graph, parts[1]).to_dict()
        if parts == ["cooccurrence"]:
            return query.cooccurrence(
                graph,
                level=self._one(params, "level", "article"),
                gene=self._one(params, "gene", None),
                disease=self._one(params, "disease", None),
                limit=self._int(params, "limit"),
            ).to_dict()
        if len(parts) == 3 and parts[0] == "nodes" and parts[2] == "neighborhood":
            depth = self._int(params, "depth")
            return query.neighborhood(
                graph, parts[1], depth=1 if depth is None else depth
            ).to_dict()
        if parts == ["search"]:
            return query.search_nodes(
                graph,
                self._one(params, "q", ""),
                limit=self._int(params, "limit"),
            ).to_dict()
        raise NotFoundError(f"unknown route {url.path!r}")

    @staticmethod
    def _one(params: dict, key: str, default):
        values = params.get(key)
        return values[0] if values else default

    def _int(self, params: dict, key: str) -> Optional[int]:
        raw = self._one(params, key, None)
        if raw is None:
            return None
        try:
            return int(raw)
        except ValueError:
            raise ValidationError(f"{key} must be an integer, got {raw!r}") from None

    def _send(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)


def serve(graph: KnowledgeGraph, host: str = "127.0.0.1", port: int = 8080) -> GraphHTTPServer:
    """Bind and return the server; caller drives serve_forever/shutdown."""
    return GraphHTTPServer((host, port), graph)

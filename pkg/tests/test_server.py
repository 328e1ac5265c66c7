from __future__ import annotations

import json
import threading
import urllib.error
import urllib.request
from urllib.parse import quote

import pytest

from gdkg import query
from gdkg.server import serve


@pytest.fixture(scope="module")
def base_url(golden_graph):
    httpd = serve(golden_graph, host="127.0.0.1", port=0)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{httpd.server_address[1]}"
    httpd.shutdown()
    httpd.server_close()


def get(base_url, path):
    try:
        with urllib.request.urlopen(base_url + path, timeout=5) as resp:
            return resp.status, json.loads(resp.read().decode("utf-8"))
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read().decode("utf-8"))


class TestEndpoints:
    def test_stats(self, base_url, golden_graph):
        status, body = get(base_url, "/stats")
        assert status == 200
        assert body == golden_graph.stats().to_dict()

    def test_disease_articles(self, base_url, golden_graph):
        path = "/diseases/" + quote("Teeth (Benign)", safe="") + "/articles"
        status, body = get(base_url, path)
        assert status == 200
        assert body == query.articles_and_genes_for_disease(
            golden_graph, "Teeth (Benign)"
        ).to_dict()

    def test_gene_articles(self, base_url, golden_graph):
        status, body = get(base_url, "/genes/BRCA2/articles")
        assert status == 200
        assert body == query.articles_and_diseases_for_gene(golden_graph, "BRCA2").to_dict()

    def test_article(self, base_url, golden_graph):
        status, body = get(base_url, "/articles/9024708")
        assert status == 200
        assert body == query.entities_for_article(golden_graph, "9024708").to_dict()

    def test_article_absent_404(self, base_url):
        status, body = get(base_url, "/articles/0000000")
        assert status == 404
        assert "error" in body

    def test_cooccurrence_levels(self, base_url, golden_graph):
        for level in ("article", "sentence"):
            status, body = get(base_url, f"/cooccurrence?level={level}")
            assert status == 200
            assert body == query.cooccurrence(golden_graph, level).to_dict()

    def test_cooccurrence_filters(self, base_url, golden_graph):
        status, body = get(base_url, "/cooccurrence?level=article&gene=MLH1")
        assert status == 200
        assert body == query.cooccurrence(golden_graph, "article", gene="MLH1").to_dict()

    def test_cooccurrence_bad_level_400(self, base_url):
        status, body = get(base_url, "/cooccurrence?level=bogus")
        assert status == 400

    def test_neighborhood(self, base_url, golden_graph):
        path = "/nodes/" + quote("Teeth (Benign)", safe="") + "/neighborhood?depth=2"
        status, body = get(base_url, path)
        assert status == 200
        assert body == query.neighborhood(golden_graph, "Teeth (Benign)", depth=2).to_dict()

    def test_neighborhood_depth_bounds_400(self, base_url):
        status, _ = get(base_url, "/nodes/BRCA1/neighborhood?depth=0")
        assert status == 400
        status, _ = get(base_url, "/nodes/BRCA1/neighborhood?depth=9")
        assert status == 400

    def test_search(self, base_url, golden_graph):
        status, body = get(base_url, "/search?q=Teeth")
        assert status == 200
        assert body == query.search_nodes(golden_graph, "Teeth").to_dict()

    def test_search_empty_q_400(self, base_url):
        status, _ = get(base_url, "/search")
        assert status == 400

    def test_unknown_route_404(self, base_url):
        status, body = get(base_url, "/nope")
        assert status == 404
        assert "error" in body

    def test_limit_not_integer_400(self, base_url):
        status, _ = get(base_url, "/search?q=B&limit=abc")
        assert status == 400


class TestConcurrentReads:
    def test_parallel_requests_consistent(self, base_url, golden_graph):
        want = golden_graph.stats().to_dict()
        results = []
        errors = []

        def hit():
            try:
                results.append(get(base_url, "/stats"))
            except Exception as exc:  # pragma: no cover - diagnostic
                errors.append(exc)

        threads = [threading.Thread(target=hit) for _ in range(16)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        assert all(status == 200 and body == want for status, body in results)

    def test_queries_leave_graph_untouched(self, base_url, golden_graph):
        before = golden_graph.stats()
        for path in ("/stats", "/articles/9024708", "/cooccurrence?level=sentence"):
            get(base_url, path)
        assert golden_graph.stats() == before

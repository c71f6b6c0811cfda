"""HTTP API contract tests against the sample store.

The ``client`` fixture wraps the FastAPI app in a TestClient, so these
exercise routing, status codes, headers, and payload shapes end to end
without a network socket.
"""

import pytest

from cogkit import ids, query

FRAME_QUERY = "SELECT ?f\n?f rdf:type cognet:Frame\n"

BUY_BOOK_FER = ids.fer_id(
    "Commerce_buy",
    [(ids.element_id("Commerce_buy", "Goods"), ids.taxonomy_id("book"))],
    "buy book",
)
BOOKSTORE_FER = ids.fer_id(
    "Motion",
    [(ids.element_id("Motion", "Goal"), ids.taxonomy_id("bookstore"))],
    "go to bookstore",
)
EMILE_BUY_FI = ids.fi_id(
    ("wikidata", "Q_Emile", "http://example.org/vocab/bought", "Q_Hamlet")
)
HAMLET_CLUSTER = sorted(
    [ids.entity_id("wikidata", "Q_Hamlet"), ids.entity_id("dbpedia", "Hamlet_(book)")]
)


class TestSearchEndpoint:
    def test_lexical_unit_match_ranks_first(self, client):
        response = client.get("/api/search", params={"q": "buy"})
        assert response.status_code == 200
        assert response.headers["X-API-Version"] == "1"
        payload = response.json()
        assert payload["query"] == "buy"
        top = payload["hits"][0]
        assert top["node"] == "sf:Commerce_buy"
        assert top["matchType"] == "lexicalUnit"
        assert top["score"] == 0.9
        assert payload["hits"][1]["matchType"] == "fuzzyLabel"

    def test_limit_parameter(self, client):
        payload = client.get("/api/search", params={"q": "buy", "limit": 1}).json()
        assert len(payload["hits"]) == 1

    def test_min_similarity_parameter(self, client):
        loose = client.get("/api/search", params={"q": "bookstor"}).json()
        assert BOOKSTORE_FER in {hit["node"] for hit in loose["hits"]}
        strict = client.get("/api/search", params={"q": "bookstor", "minSim": 1.0}).json()
        assert strict["hits"] == []

    def test_blank_query_is_400(self, client):
        response = client.get("/api/search", params={"q": "   "})
        assert response.status_code == 400
        assert response.headers["X-API-Version"] == "1"
        assert response.json()["error"]["code"] == "empty_query"


class TestNodeEndpoint:
    def test_frame_detail(self, client):
        response = client.get("/api/node/sf:Commerce_buy")
        assert response.status_code == 200
        payload = response.json()
        assert payload["id"] == "sf:Commerce_buy"
        assert payload["kind"] == "sf"
        assert payload["name"] == "Commerce_buy"
        assert {e["name"] for e in payload["elements"]} == {
            "Buyer",
            "Goods",
            "Seller",
            "Money",
            "Place",
        }
        assert {"lemma": "buy", "pos": "v"} in payload["lexicalUnits"]
        incoming = payload["neighbors"]["concretizes"]
        assert all(entry["direction"] == "in" for entry in incoming)
        assert BUY_BOOK_FER in {entry["peer"]["id"] for entry in incoming}

    def test_element_detail(self, client):
        element = ids.element_id("Commerce_buy", "Goods")
        payload = client.get(f"/api/node/{element}").json()
        assert payload["kind"] == "fe"
        assert payload["name"] == "Goods"
        assert payload["coreness"] == "core"
        assert payload["frame"] == {
            "id": "sf:Commerce_buy",
            "kind": "sf",
            "label": "Commerce_buy",
        }

    def test_taxonomy_detail(self, client):
        payload = client.get("/api/node/tx:hamlet").json()
        assert payload["kind"] == "tx"
        assert payload["key"] == "hamlet"
        assert payload["gloss"] == "a community of people smaller than a village"
        assert {"lemma": "hamlet", "rank": 1} in payload["lemmas"]
        for stub in payload["hypernyms"]:
            assert set(stub) == {"id", "kind", "label"}
            assert stub["kind"] == "tx"

    def test_fer_detail(self, client):
        payload = client.get(f"/api/node/{BUY_BOOK_FER}").json()
        assert payload["kind"] == "fer"
        assert payload["surfaceForm"] == "buy book"
        assert payload["provenance"] == "automatic"
        assert payload["frame"]["id"] == "sf:Commerce_buy"
        assert payload["restrictions"] == [
            {
                "element": {
                    "id": ids.element_id("Commerce_buy", "Goods"),
                    "name": "Goods",
                },
                "type": {"id": "tx:book", "kind": "tx", "label": "book"},
            }
        ]
        prereqs = payload["neighbors"]["hasPrerequisite"]
        assert {
            "direction": "out",
            "peer": {"id": BOOKSTORE_FER, "kind": "fer", "label": "go to bookstore"},
        } in prereqs

    def test_entity_detail_after_merge(self, client):
        survivor, retired = HAMLET_CLUSTER
        payload = client.get(f"/api/node/{survivor}").json()
        assert payload["kind"] == "en"
        assert payload["label"] == "Hamlet"
        assert {"id": "tx:book", "kind": "tx", "label": "book"} in payload["types"]
        refs = {(ref["source"], ref["id"]) for ref in payload["sourceRefs"]}
        assert refs == {("wikidata", "Q_Hamlet"), ("dbpedia", "Hamlet_(book)")}
        sameas = payload["neighbors"]["sameAs"]
        assert {entry["peer"]["id"] for entry in sameas} == {retired}

    def test_instance_detail(self, client):
        payload = client.get(f"/api/node/{EMILE_BUY_FI}").json()
        assert payload["kind"] == "fi"
        assert payload["frame"]["id"] == "sf:Commerce_buy"
        assert payload["provenance"] == {
            "source": "wikidata",
            "subject": "Q_Emile",
            "predicate": "http://example.org/vocab/bought",
            "object": "Q_Hamlet",
        }
        bindings = {b["element"]["name"]: b["value"] for b in payload["bindings"]}
        assert bindings["Buyer"] == {
            "kind": "en",
            "id": ids.entity_id("wikidata", "Q_Emile"),
            "label": "Emile",
        }
        assert bindings["Goods"]["id"] == HAMLET_CLUSTER[0]
        targets = {entry["peer"]["id"] for entry in payload["neighbors"]["concretizes"]}
        assert {"sf:Commerce_buy", BUY_BOOK_FER} <= targets

    @pytest.mark.parametrize("node_id", ["sf:Nope", "en:feedfeedfeedfeed", "garbage"])
    def test_unknown_id_is_404(self, client, node_id):
        response = client.get(f"/api/node/{node_id}")
        assert response.status_code == 404
        assert response.headers["X-API-Version"] == "1"
        assert response.json()["error"]["code"] == "unknown_id"


class TestFramesEndpoint:
    def test_catalog_matches_query_module(self, client, sample_store):
        response = client.get("/api/frames")
        assert response.status_code == 200
        expected = [row.to_json() for row in query.explore_catalog(sample_store)]
        assert response.json() == {"frames": expected}
        assert len(expected) == 7


class TestQueryEndpoint:
    def test_pattern_query_body(self, client):
        response = client.post("/api/query", content=FRAME_QUERY.encode("utf-8"))
        assert response.status_code == 200
        payload = response.json()
        assert payload["variables"] == ["f"]
        assert len(payload["rows"]) == 7
        assert all(row[0]["kind"] == "node" for row in payload["rows"])

    def test_join_through_concretizes(self, client):
        text = (
            "SELECT ?who\n"
            "?who cognet:rel/concretizes ?fer\n"
            "?fer cognet:rel/concretizes sf:Commerce_buy\n"
        )
        response = client.post("/api/query", content=text.encode("utf-8"))
        assert response.status_code == 200
        assert EMILE_BUY_FI in {row[0]["id"] for row in response.json()["rows"]}

    @pytest.mark.parametrize(
        "body",
        [
            "SELECT ?f\n?f rdf:type\n",
            "SELECT ?z\n?f rdf:type cognet:Frame\n",
            "no select line\n",
        ],
    )
    def test_bad_pattern_is_400(self, client, body):
        response = client.post("/api/query", content=body.encode("utf-8"))
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "bad_pattern"


class TestStatsEndpoint:
    def test_stats_payload(self, client, sample_store):
        response = client.get("/api/stats")
        assert response.status_code == 200
        assert response.json() == sample_store.stats()
        assert response.json()["triples"] == 544

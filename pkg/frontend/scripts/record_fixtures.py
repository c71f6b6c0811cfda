"""Regenerate the recorded API responses under tests/fixtures/.

Builds the sample corpus in-process, runs the HTTP app against it with a
test client, and saves one JSON file per endpoint the explorer renders.
Run from the frontend directory:

    python3 scripts/record_fixtures.py
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from cogkit import api, ids, pipeline

FRONTEND_DIR = Path(__file__).resolve().parent.parent
SAMPLE_DIR = FRONTEND_DIR.parent / "sample"
FIXTURE_DIR = FRONTEND_DIR / "tests" / "fixtures"

GOODS = ids.element_id("Commerce_buy", "Goods")
BUY_BOOK_FER = ids.fer_id("Commerce_buy", [(GOODS, ids.taxonomy_id("book"))], "buy book")
EMILE_FI = ids.fi_id(("wikidata", "Q_Emile", "http://example.org/vocab/bought", "Q_Hamlet"))
HAMLET_ENTITY = min(
    ids.entity_id("wikidata", "Q_Hamlet"), ids.entity_id("dbpedia", "Hamlet_(book)")
)


def build_client() -> TestClient:
    manifest = pipeline.load_manifest(SAMPLE_DIR / "manifest.json")
    manifest.annotation_output_path = str(
        Path(tempfile.mkdtemp()) / "needs_annotation.tsv"
    )
    store, _ = pipeline.run_build(manifest)
    return TestClient(api.make_app(store))


def main() -> None:
    client = build_client()
    recordings = {
        "search_buy.json": ("GET", "/api/search", {"q": "buy"}),
        "search_no_hits.json": ("GET", "/api/search", {"q": "zzqqxx"}),
        "frames.json": ("GET", "/api/frames", None),
        "node_frame.json": ("GET", "/api/node/sf:Commerce_buy", None),
        "node_element.json": ("GET", f"/api/node/{GOODS}", None),
        "node_taxonomy.json": ("GET", "/api/node/tx:hamlet", None),
        "node_fer.json": ("GET", f"/api/node/{BUY_BOOK_FER}", None),
        "node_entity.json": ("GET", f"/api/node/{HAMLET_ENTITY}", None),
        "node_instance.json": ("GET", f"/api/node/{EMILE_FI}", None),
    }
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    for name, (method, path, params) in recordings.items():
        response = client.request(method, path, params=params)
        response.raise_for_status()
        target = FIXTURE_DIR / name
        target.write_text(json.dumps(response.json(), indent=2) + "\n", encoding="utf-8")
        print(f"wrote {target.relative_to(FRONTEND_DIR)}")


if __name__ == "__main__":
    main()

"""HTTP API over a frozen store.

Read-only JSON endpoints under /api: keyword search, node detail with
grouped neighbors, the frame catalog, conjunctive pattern queries (query
text as the request body), and store statistics.  Every node id appearing
in a response can be dereferenced at /api/node/{id}.  Responses carry an
X-API-Version header so clients can detect contract changes.
"""

from __future__ import annotations

import logging

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from . import ids, query
from .errors import (
    BindError,
    CogkitError,
    EmptyQuery,
    MissingNodeError,
    PatternSyntaxError,
    UnboundProjection,
)
from .model import Entity, Fer, Frame, FrameElement, FrameInstance, Literal, TaxonomyType
from .store import Store

logger = logging.getLogger(__name__)

API_VERSION = "1"


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message}})


def node_label(store: Store, node_id: str) -> str:
    """The short human-readable string shown for a node in listings."""
    node = store.get_node(node_id)
    if isinstance(node, Frame):
        return node.name
    if isinstance(node, FrameElement):
        return node.name
    if isinstance(node, TaxonomyType):
        return node.key
    if isinstance(node, Fer):
        return node.surface_form
    if isinstance(node, Entity):
        return node.canonical_label
    return store.frames[node.frame].name


def _node_stub(store: Store, node_id: str) -> dict:
    return {"id": node_id, "kind": ids.kind_of(node_id), "label": node_label(store, node_id)}


def _neighbors(store: Store, node_id: str) -> dict:
    grouped: dict[str, list[dict]] = {}
    for edge, direction in store.neighbors(node_id):
        peer = edge.dst if direction == "out" else edge.src
        grouped.setdefault(edge.relation, []).append(
            {"direction": direction, "peer": _node_stub(store, peer)}
        )
    return grouped


def _binding_value(store: Store, value) -> dict:
    if isinstance(value, Literal):
        return {"kind": "literal", "lexical": value.lexical, "datatype": value.datatype}
    return _node_stub(store, value)


def node_detail(store: Store, node_id: str) -> dict:
    """Kind-specific JSON for one node, including its grouped neighbors."""
    node = store.get_node(node_id)
    out: dict = {"id": node_id, "kind": ids.kind_of(node_id)}
    if isinstance(node, Frame):
        out.update(
            name=node.name,
            definition=node.definition,
            language=node.language,
            elements=[
                {"id": e.id, "name": e.name, "coreness": e.coreness} for e in node.elements
            ],
            lexicalUnits=[{"lemma": lemma, "pos": pos} for lemma, pos in node.lexical_units],
            sourceRefs=[{"source": s, "id": i} for s, i in node.source_refs],
        )
    elif isinstance(node, FrameElement):
        out.update(
            name=node.name,
            coreness=node.coreness,
            frame=_node_stub(store, node.frame),
        )
    elif isinstance(node, TaxonomyType):
        out.update(
            key=node.key,
            gloss=node.gloss,
            lemmas=[{"lemma": lemma, "rank": rank} for lemma, rank in node.lemmas],
            hypernyms=[_node_stub(store, parent) for parent in node.hypernyms],
        )
    elif isinstance(node, Fer):
        elements = {e.id: e for e in store.frames[node.frame].elements}
        out.update(
            surfaceForm=node.surface_form,
            language=node.language,
            provenance=node.provenance,
            frame=_node_stub(store, node.frame),
            restrictions=[
                {
                    "element": {"id": element, "name": elements[element].name},
                    "type": _node_stub(store, tax),
                }
                for element, tax in sorted(node.restrictions)
            ],
        )
    elif isinstance(node, Entity):
        out.update(
            label=node.canonical_label,
            altLabels=list(node.alt_labels),
            types=[_node_stub(store, t) for t in sorted(node.types)],
            sourceRefs=[{"source": s, "id": i} for s, i in node.source_refs],
        )
    elif isinstance(node, FrameInstance):
        elements = {e.id: e for e in store.frames[node.frame].elements}
        source, subject, predicate, obj = node.provenance
        out.update(
            frame=_node_stub(store, node.frame),
            bindings=[
                {
                    "element": {"id": element, "name": elements[element].name},
                    "value": _binding_value(store, value),
                }
                for element, value in sorted(node.bindings.items())
            ],
            provenance={
                "source": source,
                "subject": subject,
                "predicate": predicate,
                "object": obj,
            },
        )
    out["neighbors"] = _neighbors(store, node_id)
    return out


def make_app(store: Store, default_min_similarity: float = 0.5) -> FastAPI:
    app = FastAPI(title="cogkit", docs_url=None, redoc_url=None)

    @app.middleware("http")
    async def stamp_version(request: Request, call_next):
        response: Response = await call_next(request)
        response.headers["X-API-Version"] = API_VERSION
        return response

    @app.get("/api/search")
    def api_search(q: str = "", limit: int = 20, minSim: "float | None" = None):
        threshold = default_min_similarity if minSim is None else minSim
        try:
            return query.search_payload(store, q, limit=limit, min_similarity=threshold)
        except EmptyQuery as exc:
            return _error(400, exc.code, str(exc))

    @app.get("/api/node/{node_id:path}")
    def api_node(node_id: str):
        try:
            return node_detail(store, node_id)
        except MissingNodeError:
            return _error(404, "unknown_id", f"no such node: {node_id}")

    @app.get("/api/frames")
    def api_frames():
        return {"frames": [row.to_json() for row in query.explore_catalog(store)]}

    @app.post("/api/query")
    async def api_query(request: Request):
        body = (await request.body()).decode("utf-8", errors="replace")
        try:
            parsed = query.parse_pattern_query(body)
            rows = query.evaluate_pattern(store, parsed)
        except (PatternSyntaxError, UnboundProjection) as exc:
            return _error(400, "bad_pattern", str(exc))
        return query.rows_to_json(parsed, rows)

    @app.get("/api/stats")
    def api_stats():
        return store.stats()

    @app.exception_handler(CogkitError)
    async def engine_error(request: Request, exc: CogkitError):  # pragma: no cover
        logger.exception("unhandled engine error")
        return _error(500, exc.code, str(exc))

    return app


def serve(store: Store, host: str, port: int, default_min_similarity: float = 0.5) -> None:
    """Run the API under uvicorn.  Raises BindError when the address is taken
    or not bindable."""
    import uvicorn

    app = make_app(store, default_min_similarity=default_min_similarity)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    except OSError as exc:
        raise BindError(f"cannot bind {host}:{port}: {exc}") from exc

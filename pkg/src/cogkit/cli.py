"""Command line interface.

Every subcommand prints one JSON document to stdout.  Exit codes: 0 on
success, 1 for data and validation errors (the document is then an
``{"error": {"code", "message"}}`` object), 2 for usage errors including
malformed queries.

Stage subcommands (ingest-*, import-annotations, merge-entities, link,
freeze) run their stage on a fresh in-memory store built from the
prerequisite files given as options, and print that stage's report.  The
persistent workflow is ``build``, which replays a manifest and exports the
frozen store as N-Triples; the query subcommands load such an export, given
with ``--store`` (default ``./store.nt``).

``serve`` honours the COGKIT_BIND environment variable over ``--bind``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import fer_pipeline, linker, pipeline, query, rdf_io, schema_ingest, world_ingest
from .errors import (
    CogkitError,
    EmptyQuery,
    ParseError,
    PatternSyntaxError,
    UnboundProjection,
    ValidationFailed,
)
from .store import Store

logger = logging.getLogger(__name__)

DEFAULT_STORE = "store.nt"
DEFAULT_BIND = "127.0.0.1:8080"

_USAGE_ERRORS = (EmptyQuery, PatternSyntaxError, UnboundProjection)


# --- store assembly helpers -----------------------------------------------------


def _stage_store(args) -> Store:
    """Fresh store from whichever prerequisite stage files the command got."""
    store = Store()
    if getattr(args, "schema", None):
        schema_ingest.ingest_frames(store, args.schema)
    if getattr(args, "taxonomy", None):
        schema_ingest.ingest_taxonomy(store, args.taxonomy)
    if getattr(args, "assertions", None):
        fer_pipeline.ingest_assertions(store, args.assertions, language=args.language)
    if getattr(args, "annotations", None):
        fer_pipeline.import_annotations(store, args.annotations, language=args.language)
    rules = None
    if getattr(args, "rules", None):
        rules = world_ingest.load_rules(store, args.rules)
    if getattr(args, "world", None):
        if rules is None:
            raise ParseError("--world requires --rules", 0, args.world)
        world_ingest.ingest_world(store, rules, args.world)
    if getattr(args, "sameas", None):
        world_ingest.merge_entities(store, args.sameas)
    args._rules = rules
    return store


def _query_store(args) -> Store:
    if getattr(args, "manifest", None):
        store, _ = pipeline.run_build(pipeline.load_manifest(args.manifest))
        return store
    return rdf_io.import_ntriples(args.store)


# --- subcommand handlers --------------------------------------------------------


def _cmd_ingest_frames(args) -> dict:
    return schema_ingest.ingest_frames(Store(), args.file).to_json()


def _cmd_ingest_taxonomy(args) -> dict:
    return schema_ingest.ingest_taxonomy(Store(), args.file).to_json()


def _cmd_ingest_assertions(args) -> dict:
    store = _stage_store(args)
    report = fer_pipeline.ingest_assertions(
        store,
        args.file,
        needs_annotation_path=args.needs_annotation,
        language=args.language,
    )
    return report.to_json()


def _cmd_import_annotations(args) -> dict:
    store = _stage_store(args)
    return fer_pipeline.import_annotations(store, args.file, language=args.language).to_json()


def _cmd_ingest_world(args) -> dict:
    store = _stage_store(args)
    return world_ingest.ingest_world(store, args._rules, args.file).to_json()


def _cmd_merge_entities(args) -> dict:
    store = _stage_store(args)
    return world_ingest.merge_entities(store, args.file).to_json()


def _cmd_link(args) -> dict:
    store = _stage_store(args)
    return linker.link_all(store).to_json()


def _cmd_freeze(args) -> dict:
    store = _stage_store(args)
    link_report = linker.link_all(store)
    validation = store.freeze()
    return {
        "link": link_report.to_json(),
        "validation": validation.to_json(),
        "stats": store.stats(),
    }


def _cmd_build(args) -> dict:
    manifest = pipeline.load_manifest(args.manifest)
    store, reports = pipeline.run_build(manifest)
    stats = rdf_io.export_ntriples(store, args.output)
    reports["export"] = {"path": args.output, **stats.to_json()}
    return reports


def _cmd_export_rdf(args) -> dict:
    if args.manifest:
        store, _ = pipeline.run_build(pipeline.load_manifest(args.manifest))
    else:
        store = rdf_io.import_ntriples(args.store)
    stats = rdf_io.export_ntriples(store, args.output)
    return {"path": args.output, **stats.to_json()}


def _cmd_import_rdf(args) -> dict:
    store = rdf_io.import_ntriples(args.file)
    return store.stats()


def _cmd_search(args) -> dict:
    store = _query_store(args)
    return query.search_payload(
        store, args.query, limit=args.limit, min_similarity=args.min_similarity
    )


def _read_pattern_text(args) -> str:
    if args.query is not None:
        return args.query
    if args.file is not None:
        with open(args.file, "r", encoding="utf-8") as handle:
            return handle.read()
    return sys.stdin.read()


def _cmd_pattern(args) -> dict:
    store = _query_store(args)
    parsed = query.parse_pattern_query(_read_pattern_text(args))
    rows = query.evaluate_pattern(store, parsed, limit=args.limit)
    return query.rows_to_json(parsed, rows)


def _cmd_catalog(args) -> dict:
    store = _query_store(args)
    return {"frames": [row.to_json() for row in query.explore_catalog(store)]}


def _cmd_stats(args) -> dict:
    return _query_store(args).stats()


def _cmd_serve(args) -> None:
    from . import api

    store = _query_store(args)
    bind = os.environ.get("COGKIT_BIND") or args.bind
    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise ParseError(f"bad bind address {bind!r}, expected host:port", 0, "<bind>")
    api.serve(store, host, int(port_text), default_min_similarity=args.min_similarity)
    return None


# --- parser ----------------------------------------------------------------------


def _add_language(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--language", default="en", help="language tag for created records")


def _add_stage_inputs(parser: argparse.ArgumentParser) -> None:
    """The full stage-file option set used by link and freeze."""
    parser.add_argument("--schema", required=True, help="frame and lexicon definitions (TSV)")
    parser.add_argument("--taxonomy", required=True, help="taxonomy types and hypernym links (TSV)")
    parser.add_argument("--assertions", help="commonsense assertions (TSV)")
    parser.add_argument("--annotations", help="curated restricted frames (TSV)")
    parser.add_argument("--rules", help="predicate mapping rules (TSV)")
    parser.add_argument("--world", help="world facts (TSV)")
    parser.add_argument("--sameas", help="entity equivalence pairs (TSV)")


def _add_store_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--store", default=DEFAULT_STORE, help="N-Triples export to load (default ./store.nt)"
    )
    group.add_argument("--manifest", help="build manifest to replay instead of loading a store")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cogkit",
        description="Frame-semantic knowledge base: ingestion, linking, query, and serving.",
    )
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("ingest-frames", help="load a frame schema file, print its report")
    sub.add_argument("file")
    sub.set_defaults(handler=_cmd_ingest_frames)

    sub = commands.add_parser("ingest-taxonomy", help="load a taxonomy file, print its report")
    sub.add_argument("file")
    sub.set_defaults(handler=_cmd_ingest_taxonomy)

    sub = commands.add_parser(
        "ingest-assertions", help="parse commonsense assertions into restricted frames"
    )
    sub.add_argument("file")
    sub.add_argument("--schema", required=True)
    sub.add_argument("--taxonomy", required=True)
    sub.add_argument(
        "--needs-annotation",
        dest="needs_annotation",
        help="write rejected assertions to this TSV",
    )
    _add_language(sub)
    sub.set_defaults(handler=_cmd_ingest_assertions, assertions=None, annotations=None)

    sub = commands.add_parser("import-annotations", help="load curated restricted frames")
    sub.add_argument("file")
    sub.add_argument("--schema", required=True)
    sub.add_argument("--taxonomy", required=True)
    sub.add_argument("--assertions", help="assertions to ingest first, so overrides take effect")
    _add_language(sub)
    sub.set_defaults(handler=_cmd_import_annotations, annotations=None)

    sub = commands.add_parser("ingest-world", help="map world facts to frame instances")
    sub.add_argument("file")
    sub.add_argument("--schema", required=True)
    sub.add_argument("--rules", required=True)
    sub.add_argument("--taxonomy")
    _add_language(sub)
    sub.set_defaults(
        handler=_cmd_ingest_world, assertions=None, annotations=None, world=None, sameas=None
    )

    sub = commands.add_parser("merge-entities", help="apply entity equivalences to world facts")
    sub.add_argument("file")
    sub.add_argument("--schema", required=True)
    sub.add_argument("--rules", required=True)
    sub.add_argument("--world", required=True)
    sub.add_argument("--taxonomy")
    _add_language(sub)
    sub.set_defaults(handler=_cmd_merge_entities, assertions=None, annotations=None, sameas=None)

    sub = commands.add_parser("link", help="add concretizes edges across the three levels")
    _add_stage_inputs(sub)
    _add_language(sub)
    sub.set_defaults(handler=_cmd_link)

    sub = commands.add_parser("freeze", help="link, validate, and report final statistics")
    _add_stage_inputs(sub)
    _add_language(sub)
    sub.set_defaults(handler=_cmd_freeze)

    sub = commands.add_parser("build", help="run a manifest end to end and export the store")
    sub.add_argument("--manifest", required=True)
    sub.add_argument("--output", default=DEFAULT_STORE, help="N-Triples output path")
    sub.set_defaults(handler=_cmd_build)

    sub = commands.add_parser("export-rdf", help="serialize a store as deterministic N-Triples")
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--store", default=DEFAULT_STORE)
    group.add_argument("--manifest")
    sub.add_argument("--output", required=True)
    sub.set_defaults(handler=_cmd_export_rdf)

    sub = commands.add_parser("import-rdf", help="load an N-Triples export, print store stats")
    sub.add_argument("file")
    sub.set_defaults(handler=_cmd_import_rdf)

    sub = commands.add_parser("search", help="keyword search over frames, surfaces, and labels")
    sub.add_argument("query")
    _add_store_source(sub)
    sub.add_argument("--limit", type=int, default=20)
    sub.add_argument(
        "--min-similarity", dest="min_similarity", type=float, default=0.5,
        help="fuzzy match threshold between 0 and 1",
    )
    sub.set_defaults(handler=_cmd_search)

    sub = commands.add_parser("pattern", help="run a conjunctive triple-pattern query")
    _add_store_source(sub)
    sub.add_argument("--query", help="inline query text")
    sub.add_argument("--file", help="file with the query text")
    sub.add_argument("--limit", type=int, default=None)
    sub.set_defaults(handler=_cmd_pattern)

    sub = commands.add_parser("catalog", help="frames with their concretization counts")
    _add_store_source(sub)
    sub.set_defaults(handler=_cmd_catalog)

    sub = commands.add_parser("stats", help="node and edge counts")
    _add_store_source(sub)
    sub.set_defaults(handler=_cmd_stats)

    sub = commands.add_parser("serve", help="serve the HTTP API")
    _add_store_source(sub)
    sub.add_argument("--bind", default=DEFAULT_BIND, help="host:port (COGKIT_BIND wins)")
    sub.add_argument(
        "--min-similarity", dest="min_similarity", type=float, default=0.5,
        help="default fuzzy threshold for /api/search",
    )
    sub.set_defaults(handler=_cmd_serve)

    return parser


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2, ensure_ascii=False, sort_keys=False)
    sys.stdout.write("\n")


def main(argv: "list[str] | None" = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        payload = args.handler(args)
    except _USAGE_ERRORS as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}})
        return 2
    except ValidationFailed as exc:
        _emit(
            {
                "error": {"code": exc.code, "message": str(exc)},
                "violations": exc.report.to_json()["violations"],
            }
        )
        return 1
    except CogkitError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}})
        return 1
    if payload is not None:
        _emit(payload)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Manifest-driven builds.

A manifest is a JSON file listing input stages in canonical order plus a
small option block.  ``run_build`` replays the stages into a fresh store,
collects every per-stage report, writes the consolidated needs-annotation
file, links, freezes, and hands back the frozen store.

Stage paths are resolved relative to the manifest file so a corpus is
self-contained; output paths (the annotation queue, any export target) are
taken relative to the working directory like every other CLI output.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field

from . import fer_pipeline, linker, schema_ingest, world_ingest
from .errors import ParseError
from .store import Store

logger = logging.getLogger(__name__)

STAGES = ("frames", "taxonomy", "assertions", "annotations", "rules", "world", "sameas")

_OPTION_KEYS = ("minSimilarity", "annotationOutputPath", "language")


@dataclass
class Manifest:
    path: str
    stages: list[tuple[str, str]] = field(default_factory=list)
    min_similarity: float = 0.5
    annotation_output_path: str = "needs_annotation.tsv"
    language: str = "en"


def load_manifest(path: "str | os.PathLike") -> Manifest:
    """Parse and validate a build manifest."""
    path = os.fspath(path)

    def fail(why: str) -> ParseError:
        return ParseError(why, 0, path)

    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}", exc.lineno, path) from None

    if not isinstance(raw, dict):
        raise fail("manifest must be a JSON object")
    unknown = set(raw) - {"stages", "options"}
    if unknown:
        raise fail(f"unknown manifest keys: {sorted(unknown)}")

    stage_items = raw.get("stages")
    if not isinstance(stage_items, list) or not stage_items:
        raise fail("manifest needs a non-empty 'stages' list")

    base = os.path.dirname(os.path.abspath(path))
    manifest = Manifest(path=path)
    last_rank = 0
    for position, item in enumerate(stage_items, start=1):
        if not isinstance(item, dict) or set(item) != {"stage", "path"}:
            raise fail(f"stage {position} must be an object with 'stage' and 'path'")
        stage, stage_path = item["stage"], item["path"]
        if stage not in STAGES:
            raise fail(f"stage {position}: unknown stage {stage!r}")
        if not isinstance(stage_path, str) or not stage_path:
            raise fail(f"stage {position}: path must be a non-empty string")
        rank = STAGES.index(stage)
        if rank < last_rank:
            raise fail(
                f"stage {position}: {stage!r} cannot follow {STAGES[last_rank]!r};"
                f" canonical order is {', '.join(STAGES)}"
            )
        last_rank = rank
        if not os.path.isabs(stage_path):
            stage_path = os.path.join(base, stage_path)
        manifest.stages.append((stage, stage_path))

    options = raw.get("options", {})
    if not isinstance(options, dict):
        raise fail("'options' must be an object")
    unknown = set(options) - set(_OPTION_KEYS)
    if unknown:
        raise fail(f"unknown option keys: {sorted(unknown)}")
    if "minSimilarity" in options:
        value = options["minSimilarity"]
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not 0 <= value <= 1:
            raise fail("minSimilarity must be a number between 0 and 1")
        manifest.min_similarity = float(value)
    if "annotationOutputPath" in options:
        value = options["annotationOutputPath"]
        if not isinstance(value, str) or not value:
            raise fail("annotationOutputPath must be a non-empty string")
        manifest.annotation_output_path = value
    if "language" in options:
        value = options["language"]
        if not isinstance(value, str) or not value:
            raise fail("language must be a non-empty string")
        manifest.language = value

    if not any(stage == "frames" for stage, _ in manifest.stages):
        raise fail("manifest needs a 'frames' stage")
    return manifest


def run_build(manifest: Manifest) -> tuple[Store, dict]:
    """Execute every stage, then link and freeze.

    Returns the frozen store and a report dictionary with one entry per
    stage plus the linking counts, the validation verdict, and final stats.
    Raises ValidationFailed if freeze rejects the graph.
    """
    store = Store()
    stage_reports: list[dict] = []
    rules = world_ingest.RuleSet()
    rules_loaded = False
    rejections: list[fer_pipeline.Rejection] = []
    saw_assertions = False

    for stage, path in manifest.stages:
        logger.info("stage %s: %s", stage, path)
        if stage == "frames":
            report = schema_ingest.ingest_frames(store, path).to_json()
        elif stage == "taxonomy":
            report = schema_ingest.ingest_taxonomy(store, path).to_json()
        elif stage == "assertions":
            saw_assertions = True
            fer_report = fer_pipeline.ingest_assertions(store, path, language=manifest.language)
            rejections.extend(fer_report.rejected)
            report = fer_report.to_json()
        elif stage == "annotations":
            report = fer_pipeline.import_annotations(
                store, path, language=manifest.language
            ).to_json()
        elif stage == "rules":
            loaded = world_ingest.load_rules(store, path)
            for predicate, rule in loaded.by_predicate.items():
                if predicate in rules.by_predicate:
                    message = f"rule for {predicate} overridden by {path}"
                    rules.warnings.append(message)
                    logger.warning("%s", message)
                rules.by_predicate[predicate] = rule
            rules.warnings.extend(loaded.warnings)
            rules_loaded = True
            report = {"rulesLoaded": len(loaded), "warnings": list(loaded.warnings)}
        elif stage == "world":
            if not rules_loaded:
                raise ParseError("world stage needs a rules stage before it", 0, manifest.path)
            report = world_ingest.ingest_world(store, rules, path).to_json()
        elif stage == "sameas":
            report = world_ingest.merge_entities(store, path).to_json()
        else:  # pragma: no cover - load_manifest rejects unknown stages
            raise AssertionError(stage)
        stage_reports.append({"stage": stage, "path": path, "report": report})

    reports: dict = {"stages": stage_reports}
    if saw_assertions:
        fer_pipeline.write_needs_annotation(manifest.annotation_output_path, rejections)
        reports["needsAnnotation"] = {
            "path": manifest.annotation_output_path,
            "count": len(rejections),
        }

    reports["link"] = linker.link_all(store).to_json()
    reports["validation"] = store.freeze().to_json()
    reports["stats"] = store.stats()
    return store, reports

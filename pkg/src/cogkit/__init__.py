"""cogkit: a three-level frame-semantic knowledge base.

Semantic frames sit at the top, frames with element restrictions in the
middle, and grounded frame instances at the bottom; ``concretizes`` edges
tie the levels together.  The package covers the full life cycle: schema
and taxonomy ingestion, commonsense assertion parsing, world-fact
grounding, entity merging, cross-level linking, keyword and pattern
queries, deterministic N-Triples round-trips, a CLI, and an HTTP API.
"""

from .errors import CogkitError
from .fer_pipeline import import_annotations, ingest_assertions, parse_phrase
from .linker import SubsumptionIndex, link_all
from .model import (
    Edge,
    Entity,
    Fer,
    Frame,
    FrameElement,
    FrameInstance,
    Literal,
    TaxonomyType,
)
from .pipeline import Manifest, load_manifest, run_build
from .query import evaluate_pattern, explore_catalog, parse_pattern_query, search
from .rdf_io import export_ntriples, import_ntriples
from .schema_ingest import ingest_frames, ingest_taxonomy
from .store import Store
from .world_ingest import ingest_world, load_rules, merge_entities

__version__ = "0.1.0"

__all__ = [
    "CogkitError",
    "Edge",
    "Entity",
    "Fer",
    "Frame",
    "FrameElement",
    "FrameInstance",
    "Literal",
    "Manifest",
    "Store",
    "SubsumptionIndex",
    "TaxonomyType",
    "__version__",
    "evaluate_pattern",
    "explore_catalog",
    "export_ntriples",
    "import_annotations",
    "import_ntriples",
    "ingest_assertions",
    "ingest_frames",
    "ingest_taxonomy",
    "ingest_world",
    "link_all",
    "load_manifest",
    "load_rules",
    "merge_entities",
    "parse_pattern_query",
    "parse_phrase",
    "run_build",
    "search",
]

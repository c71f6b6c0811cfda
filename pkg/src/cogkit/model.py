"""Record types and the relation registry.

The store keeps six node kinds.  Frames carry their elements and lexical
units inline; elements are additionally addressable as nodes of their own so
edges and query results can point at them.  Bindings and restrictions refer
to other nodes by id only, which keeps records cheap to copy and compare.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ids

CORENESS = ("core", "peripheral", "extrathematic")
POS_TAGS = ("v", "n", "a", "adv")
DATATYPES = ("string", "integer", "decimal", "dateTime")

FER_PROVENANCES = ("automatic", "annotated")

# Relation registry.  Frame-to-frame relations mirror classic frame lexicon
# structure; commonsense relations come from free-form assertion ingestion;
# the two structural relations are produced by the linker and entity merge.
FRAME_RELATIONS = ("inheritsFrom", "uses", "subframeOf", "precedes")
COMMONSENSE_RELATIONS = (
    "hasPrerequisite",
    "causes",
    "motivatedByGoal",
    "usedFor",
    "capableOf",
    "hasSubevent",
    "isA",
)
STRUCTURAL_RELATIONS = ("concretizes", "sameAs")
ALL_RELATIONS = FRAME_RELATIONS + COMMONSENSE_RELATIONS + STRUCTURAL_RELATIONS

_CS_PAIRS = frozenset(
    (a, b) for a in (ids.SF, ids.FER) for b in (ids.SF, ids.FER)
)

# Allowed (from-kind, to-kind) pairs per relation.
ENDPOINT_KINDS: dict[str, frozenset[tuple[str, str]]] = {
    **{rel: frozenset({(ids.SF, ids.SF)}) for rel in FRAME_RELATIONS},
    **{rel: _CS_PAIRS for rel in COMMONSENSE_RELATIONS},
    "concretizes": frozenset({(ids.FER, ids.SF), (ids.FI, ids.FER), (ids.FI, ids.SF)}),
    "sameAs": frozenset({(ids.EN, ids.EN)}),
}


@dataclass(frozen=True)
class Literal:
    """A typed literal value carried by a frame-instance binding."""

    lexical: str
    datatype: str = "string"

    def sort_key(self) -> str:
        return f"{ids.LIT}:{self.datatype}:{self.lexical}"


@dataclass
class FrameElement:
    id: str
    frame: str
    name: str
    coreness: str


@dataclass
class Frame:
    id: str
    name: str
    definition: str = ""
    language: str = "en"
    elements: list[FrameElement] = field(default_factory=list)
    lexical_units: list[tuple[str, str]] = field(default_factory=list)
    source_refs: list[tuple[str, str]] = field(default_factory=list)

    @property
    def elementless(self) -> bool:
        return not self.elements

    def element_by_name(self, name: str) -> FrameElement | None:
        for element in self.elements:
            if element.name == name:
                return element
        return None

    def core_elements(self) -> list[FrameElement]:
        return [e for e in self.elements if e.coreness == "core"]


@dataclass
class TaxonomyType:
    id: str
    key: str
    gloss: str = ""
    lemmas: list[tuple[str, int]] = field(default_factory=list)
    hypernyms: list[str] = field(default_factory=list)


@dataclass
class Fer:
    """A frame whose elements carry taxonomy-type restrictions."""

    id: str
    frame: str
    restrictions: frozenset[tuple[str, str]]  # (element id, taxonomy id)
    surface_form: str
    language: str = "en"
    provenance: str = "automatic"


@dataclass
class Entity:
    id: str
    canonical_label: str
    alt_labels: list[str] = field(default_factory=list)
    types: set[str] = field(default_factory=set)
    source_refs: list[tuple[str, str]] = field(default_factory=list)


@dataclass
class FrameInstance:
    """A grounded frame occurrence reified from one source fact."""

    id: str
    frame: str
    bindings: dict[str, "str | Literal"]  # element id -> entity id or Literal
    provenance: tuple[str, str, str, str]  # (source, subject, predicate, object)


@dataclass(frozen=True)
class Edge:
    relation: str
    src: str
    dst: str
    weight: float = 1.0
    provenance: str = ""

    def key(self) -> tuple[str, str, str]:
        return (self.relation, self.src, self.dst)


Node = Frame | FrameElement | TaxonomyType | Fer | Entity | FrameInstance

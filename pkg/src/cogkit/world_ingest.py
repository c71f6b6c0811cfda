"""World-fact ingestion: foreign KB triples to frame instances.

A mapping rule turns one binary source predicate into a frame plus two
element bindings.  Entities are keyed by (sourceName, subjectId); the same
key always resolves to the same entity node, and sameAs assertions later
collapse keys from different sources via union-find.  A triple whose
predicate has no rule is counted and dropped, never stored.

Entity identity survives merging: the surviving node keeps its original id
(the hash of its first source ref) and absorbs the labels, types, and source
refs of the retired members.  Retired nodes stay in the store so the
survivor's sameAs edges remain resolvable; frame-instance bindings are
re-pointed to the survivor.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from datetime import datetime
from decimal import Decimal, InvalidOperation

from . import ids
from .errors import DatatypeError, ParseError, UnresolvedName
from .model import DATATYPES, Entity, FrameInstance, Literal
from .store import Store
from .tsvio import iter_records

logger = logging.getLogger(__name__)

OBJECT_KIND_ENTITY = "entity"
OBJECT_KIND_LITERAL = "literal"

_INTEGER_RE = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL_RE = re.compile(r"^[+-]?[0-9]+(\.[0-9]+)?$")


@dataclass(frozen=True)
class MappingRule:
    """predicateIri -> frame with subject and object element slots."""

    predicate_iri: str
    frame: str
    subject_element: str
    object_element: str
    object_kind: str  # "entity" | "literal"
    datatype: str = ""  # set when object_kind is "literal"


@dataclass
class RuleSet:
    """Active rules indexed by predicate IRI, last declaration wins."""

    by_predicate: dict[str, MappingRule] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.by_predicate.values())

    def __len__(self) -> int:
        return len(self.by_predicate)

    def get(self, predicate_iri: str) -> MappingRule | None:
        return self.by_predicate.get(predicate_iri)


@dataclass
class WorldIngestReport:
    fis_created: int = 0
    entities_created: int = 0
    entities_reused: int = 0
    skipped_no_rule: int = 0

    def to_json(self) -> dict:
        return {
            "fisCreated": self.fis_created,
            "entitiesCreated": self.entities_created,
            "entitiesReused": self.entities_reused,
            "skippedNoRule": self.skipped_no_rule,
        }


@dataclass
class MergeReport:
    clusters: int = 0
    merged: int = 0
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "clusters": self.clusters,
            "merged": self.merged,
            "warnings": list(self.warnings),
        }


# --- rules --------------------------------------------------------------------


def load_rules(store: Store, source) -> RuleSet:
    """Load mapping rules against an ingested schema.

    Record: ``predicateIri frameName subjectElement objectElement objectKind``
    (tab separated); objectKind is ``entity`` or ``literal:<datatype>``.
    """
    rules = RuleSet()
    for line_no, fields, path in iter_records(source):
        if len(fields) != 5:
            raise ParseError(
                "rule needs predicateIri, frameName, subjectElement, objectElement, objectKind",
                line_no,
                path,
            )
        predicate, frame_name, subj_element, obj_element, kind_text = fields
        record_name = f"{path}:{line_no}"
        frame = store.frames.get(ids.frame_id(frame_name))
        if frame is None:
            raise UnresolvedName(record_name, "frame", frame_name)
        if subj_element == obj_element:
            raise ParseError("subject and object element must differ", line_no, path)
        resolved = []
        for element_name in (subj_element, obj_element):
            element = frame.element_by_name(element_name)
            if element is None:
                raise UnresolvedName(record_name, "element", element_name)
            resolved.append(element.id)
        kind, _, datatype = kind_text.partition(":")
        if kind == OBJECT_KIND_ENTITY and not datatype:
            datatype = ""
        elif kind == OBJECT_KIND_LITERAL and datatype in DATATYPES:
            pass
        else:
            raise ParseError(f"bad objectKind {kind_text!r}", line_no, path)
        if predicate in rules.by_predicate:
            message = f"{record_name}: duplicate rule for {predicate}; last wins"
            rules.warnings.append(message)
            logger.warning(message)
        rules.by_predicate[predicate] = MappingRule(
            predicate_iri=predicate,
            frame=frame.id,
            subject_element=resolved[0],
            object_element=resolved[1],
            object_kind=kind,
            datatype=datatype,
        )
    return rules


# --- literal validation -------------------------------------------------------


def validate_literal(lexical: str, datatype: str, where: str = "") -> Literal:
    """Check a lexical form against its datatype; returns the Literal."""
    ok = True
    if datatype == "integer":
        ok = bool(_INTEGER_RE.match(lexical))
    elif datatype == "decimal":
        ok = bool(_DECIMAL_RE.match(lexical))
        if ok:
            try:
                Decimal(lexical)
            except InvalidOperation:
                ok = False
    elif datatype == "dateTime":
        try:
            datetime.fromisoformat(lexical)
        except ValueError:
            ok = False
    elif datatype != "string":
        raise DatatypeError(f"{where}: unsupported datatype {datatype!r}")
    if not ok:
        raise DatatypeError(f"{where}: {lexical!r} is not a valid {datatype}")
    return Literal(lexical, datatype)


# --- world triples ------------------------------------------------------------


def _resolve_entity(
    store: Store, report: WorldIngestReport, source_name: str, node_id_text: str, label: str
) -> str:
    ref = (source_name, node_id_text)
    existing = store.source_ref_index.get(ref)
    if existing is not None:
        report.entities_reused += 1
        entity = store.entities[existing]
        if label and label != entity.canonical_label and label not in entity.alt_labels:
            updated = Entity(
                id=entity.id,
                canonical_label=entity.canonical_label,
                alt_labels=sorted(set(entity.alt_labels) | {label}),
                types=set(entity.types),
                source_refs=list(entity.source_refs),
            )
            store.put_node(updated)
        return existing
    entity = Entity(
        id=ids.entity_id(source_name, node_id_text),
        canonical_label=label,
        source_refs=[ref],
    )
    report.entities_created += 1
    return store.put_node(entity)


def _attach_type(store: Store, entity_id: str, type_key: str, line_no: int, path: str) -> None:
    tax_id = ids.taxonomy_id(type_key)
    if tax_id not in store.taxonomy:
        raise ParseError(f"unknown taxonomy key {type_key!r}", line_no, path)
    entity = store.entities[entity_id]
    if tax_id not in entity.types:
        updated = Entity(
            id=entity.id,
            canonical_label=entity.canonical_label,
            alt_labels=list(entity.alt_labels),
            types=set(entity.types) | {tax_id},
            source_refs=list(entity.source_refs),
        )
        store.put_node(updated)


def ingest_world(store: Store, rules: RuleSet, source) -> WorldIngestReport:
    """Convert world triples into frame instances.

    Record: ``source subjId subjLabel predicateIri objKind objIdOrLexical
    objLabelOrDatatype [objTaxonomyKey]`` (tab separated, 7 or 8 fields).
    """
    report = WorldIngestReport()
    for line_no, fields, path in iter_records(source, min_fields=7, max_fields=8):
        source_name, subj_id, subj_label, predicate, obj_kind = fields[:5]
        rule = rules.get(predicate)
        if rule is None:
            report.skipped_no_rule += 1
            continue
        if obj_kind not in (OBJECT_KIND_ENTITY, OBJECT_KIND_LITERAL):
            raise ParseError(f"bad object kind {obj_kind!r}", line_no, path)
        if obj_kind != rule.object_kind:
            raise ParseError(
                f"object kind {obj_kind!r} does not match rule for {predicate}", line_no, path
            )
        subj_en = _resolve_entity(store, report, source_name, subj_id, subj_label)
        if rule.object_kind == OBJECT_KIND_LITERAL:
            if len(fields) != 7:
                raise ParseError("literal object takes no taxonomy key", line_no, path)
            lexical, datatype = fields[5], fields[6]
            if datatype != rule.datatype:
                raise DatatypeError(
                    f"{path}:{line_no}: datatype {datatype!r} does not match "
                    f"rule datatype {rule.datatype!r}"
                )
            obj_value: "str | Literal" = validate_literal(lexical, datatype, f"{path}:{line_no}")
            obj_repr = lexical
        else:
            obj_id, obj_label = fields[5], fields[6]
            obj_value = _resolve_entity(store, report, source_name, obj_id, obj_label)
            if len(fields) == 8 and fields[7]:
                _attach_type(store, obj_value, fields[7], line_no, path)
            obj_repr = obj_id
        provenance = (source_name, subj_id, predicate, obj_repr)
        fi = FrameInstance(
            id=ids.fi_id(provenance),
            frame=rule.frame,
            bindings={rule.subject_element: subj_en, rule.object_element: obj_value},
            provenance=provenance,
        )
        store.put_node(fi)
        report.fis_created += 1
    return report


# --- entity merge -------------------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent: dict[str, str] = {}

    def find(self, item: str) -> str:
        root = item
        while self.parent.setdefault(root, root) != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # deterministic: the smaller id becomes the root
            lo, hi = sorted((ra, rb))
            self.parent[hi] = lo


def merge_entities(store: Store, source) -> MergeReport:
    """Collapse sameAs clusters onto their smallest-id member.

    Record: ``sourceA idA sourceB idB``.  A pair naming an unknown entity is
    skipped with a warning.  The operation is idempotent and insensitive to
    line order: the partition and the survivor of each cluster depend only
    on the set of resolvable pairs.
    """
    report = MergeReport()
    uf = _UnionFind()
    for line_no, fields, path in iter_records(source, min_fields=4, max_fields=4):
        source_a, id_a, source_b, id_b = fields
        sides = []
        for ref in ((source_a, id_a), (source_b, id_b)):
            en_id = store.source_ref_index.get(ref)
            if en_id is None:
                message = f"{path}:{line_no}: unknown entity {ref}; pair skipped"
                report.warnings.append(message)
                logger.warning(message)
                break
            sides.append(en_id)
        if len(sides) == 2 and sides[0] != sides[1]:
            uf.union(sides[0], sides[1])

    clusters: dict[str, list[str]] = {}
    for member in uf.parent:
        clusters.setdefault(uf.find(member), []).append(member)

    retire_map: dict[str, str] = {}
    for survivor_id in sorted(clusters):
        members = sorted(clusters[survivor_id])
        if len(members) < 2:
            continue
        report.clusters += 1
        labels: set[str] = set()
        types: set[str] = set()
        refs: set[tuple[str, str]] = set()
        for member_id in members:
            member = store.entities[member_id]
            labels.add(member.canonical_label)
            labels.update(member.alt_labels)
            types.update(member.types)
            refs.update(member.source_refs)
        survivor = store.entities[survivor_id]
        store.put_node(
            Entity(
                id=survivor_id,
                canonical_label=survivor.canonical_label,
                alt_labels=sorted(labels - {survivor.canonical_label}),
                types=types,
                source_refs=sorted(refs),
            )
        )
        for member_id in members:
            if member_id == survivor_id:
                continue
            retire_map[member_id] = survivor_id
            store.retired_entities.add(member_id)
            store.put_edge("sameAs", survivor_id, member_id, provenance="merge")
            report.merged += 1
        for ref in refs:
            store.source_ref_index[ref] = survivor_id

    if retire_map:
        for fi in list(store.instances.values()):
            if any(isinstance(v, str) and v in retire_map for v in fi.bindings.values()):
                rebound = {
                    element: retire_map.get(value, value) if isinstance(value, str) else value
                    for element, value in fi.bindings.items()
                }
                store.put_node(
                    FrameInstance(
                        id=fi.id, frame=fi.frame, bindings=rebound, provenance=fi.provenance
                    )
                )
    return report

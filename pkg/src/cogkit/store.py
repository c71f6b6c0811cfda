"""The knowledge-base store.

A Store has two phases.  While ``building`` it accepts nodes and edges and
keeps the lookup tables ingestion needs (frame names, lexical units,
taxonomy lemmas, entity source refs) incrementally up to date.  ``freeze``
validates the whole graph - taxonomy acyclicity, referential integrity,
elementless-frame anchoring - and, only if nothing is violated, derives the
read-only query artifacts: the triple projection with its SPO/POS/OSP
indexes, the adjacency lists, and the trigram label index.  A failed freeze
raises ValidationFailed and leaves the store mutable.

The triple projection is pure derivation.  Emission rules per node kind:

    Frame          rdf:type, name, language, definition, one lexicalUnit
                   triple per unit ("lemma<TAB>pos"), one sourceRef triple
                   per ref ("source<TAB>id")
    FrameElement   rdf:type, frame, name, coreness, index (declaration order)
    TaxonomyType   rdf:type, gloss, one lemma triple per (lemma, rank)
                   ("lemma<TAB>rank"), one hypernym triple per parent
    Fer            rdf:type, frame, surfaceForm, language, provenance, one
                   restrict/<Frame>/<FE> triple per restriction
    Entity         rdf:type, label, one altLabel / entityType / sourceRef
                   triple per value
    FrameInstance  rdf:type <frame class>, plus exactly one triple per
                   binding whose predicate is the element's own IRI
    Edge           one rel/<relation> triple

Edge weight and provenance stay outside the projection, as does the frame
instance source quadruple, so those fields do not survive an RDF round trip.
Triples are deduplicated and ordered lexicographically by the N-Triples
serialization of (subject, predicate, object), which makes two builds from
identical inputs byte-identical on export.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field

from . import ids, text, vocab
from .errors import (
    EndpointKindError,
    InvariantError,
    MissingNodeError,
    PhaseError,
    ValidationFailed,
)
from .model import (
    ALL_RELATIONS,
    CORENESS,
    DATATYPES,
    ENDPOINT_KINDS,
    FER_PROVENANCES,
    POS_TAGS,
    Edge,
    Entity,
    Fer,
    Frame,
    FrameElement,
    FrameInstance,
    Literal,
    Node,
    TaxonomyType,
)

logger = logging.getLogger(__name__)

BUILDING = "building"
FROZEN = "frozen"

Triple = tuple[str, str, "str | Literal"]


@dataclass
class Violation:
    code: str
    message: str
    subject: str | None = None

    def to_json(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.subject is not None:
            out["subject"] = self.subject
        return out


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
        }


def _object_key(obj: "str | Literal") -> str:
    """Dictionary key for an object term; literals use the reserved lit: prefix."""
    if isinstance(obj, Literal):
        return obj.sort_key()
    return obj


class TrigramIndex:
    """Trigram -> (node, label) postings over FER surface forms and the
    labels of entities that occur in at least one frame-instance binding."""

    def __init__(self) -> None:
        self._postings: dict[str, set[tuple[str, str]]] = defaultdict(set)
        self._entries: set[tuple[str, str]] = set()

    def add(self, node_id: str, label: str) -> None:
        entry = (node_id, label)
        if entry in self._entries:
            return
        self._entries.add(entry)
        for gram in text.trigrams(label):
            self._postings[gram].add(entry)

    def candidates(self, query: str) -> set[tuple[str, str]]:
        found: set[tuple[str, str]] = set()
        for gram in text.trigrams(query):
            found |= self._postings.get(gram, set())
        return found

    def __len__(self) -> int:
        return len(self._entries)


class Store:
    """In-memory node/edge store with a build-then-freeze lifecycle."""

    def __init__(self) -> None:
        self.phase = BUILDING
        self.frames: dict[str, Frame] = {}
        self.elements: dict[str, FrameElement] = {}
        self.taxonomy: dict[str, TaxonomyType] = {}
        self.fers: dict[str, Fer] = {}
        self.entities: dict[str, Entity] = {}
        self.instances: dict[str, FrameInstance] = {}
        self.edges: dict[tuple[str, str, str], Edge] = {}

        # incremental ingestion indexes
        self.frames_by_name: dict[str, str] = {}
        self.lu_index: dict[tuple[str, str], set[str]] = defaultdict(set)
        self.lu_by_lemma: dict[str, set[str]] = defaultdict(set)
        self.tax_lemma_index: dict[str, set[tuple[int, str]]] = defaultdict(set)
        self.source_ref_index: dict[tuple[str, str], str] = {}
        self.fers_by_surface: dict[str, set[str]] = defaultdict(set)
        self.role_tables: dict[str, dict[str, str]] = {}
        self.retired_entities: set[str] = set()

        # freeze-time artifacts
        self._triples: list[Triple] = []
        self._spo: dict[str, dict[str, list]] = {}
        self._pos: dict[str, dict[str, list]] = {}
        self._osp: dict[str, dict[str, list]] = {}
        self._adjacency_out: dict[str, list[Edge]] = {}
        self._adjacency_in: dict[str, list[Edge]] = {}
        self.trigram_index = TrigramIndex()

    # --- phase guards --------------------------------------------------------

    def _require_building(self, op: str) -> None:
        if self.phase != BUILDING:
            raise PhaseError(f"{op} requires a building store (phase={self.phase})")

    def _require_frozen(self, op: str) -> None:
        if self.phase != FROZEN:
            raise PhaseError(f"{op} requires a frozen store (phase={self.phase})")

    # --- node lookup ---------------------------------------------------------

    def _table_for(self, kind: str) -> dict:
        return {
            ids.SF: self.frames,
            ids.FE: self.elements,
            ids.TX: self.taxonomy,
            ids.FER: self.fers,
            ids.EN: self.entities,
            ids.FI: self.instances,
        }[kind]

    def has_node(self, node_id: str) -> bool:
        try:
            kind = ids.kind_of(node_id)
        except ValueError:
            return False
        return node_id in self._table_for(kind)

    def get_node(self, node_id: str) -> Node:
        try:
            kind = ids.kind_of(node_id)
        except ValueError as exc:
            raise MissingNodeError(str(exc)) from None
        node = self._table_for(kind).get(node_id)
        if node is None:
            raise MissingNodeError(f"no such node: {node_id}")
        return node

    # --- mutation ------------------------------------------------------------

    def put_node(self, node: Node) -> str:
        """Insert or replace a node.  Identical content is a no-op; a changed
        record with the same id replaces the old one.  Returns the node id."""
        self._require_building("put_node")
        if isinstance(node, Frame):
            return self._put_frame(node)
        if isinstance(node, TaxonomyType):
            return self._put_taxonomy(node)
        if isinstance(node, Fer):
            return self._put_fer(node)
        if isinstance(node, Entity):
            return self._put_entity(node)
        if isinstance(node, FrameInstance):
            return self._put_instance(node)
        if isinstance(node, FrameElement):
            raise InvariantError("frame elements are stored through their frame")
        raise InvariantError(f"unknown node type: {type(node).__name__}")

    def _put_frame(self, frame: Frame) -> str:
        if not frame.name:
            raise InvariantError("frame name must be non-empty")
        if frame.id != ids.frame_id(frame.name):
            raise InvariantError(f"frame id {frame.id!r} does not match name {frame.name!r}")
        seen = set()
        for element in frame.elements:
            if element.name in seen:
                raise InvariantError(f"duplicate element {element.name!r} in {frame.name}")
            seen.add(element.name)
            if element.coreness not in CORENESS:
                raise InvariantError(f"bad coreness {element.coreness!r}")
            if element.frame != frame.id or element.id != ids.element_id(frame.name, element.name):
                raise InvariantError(f"element {element.name!r} back-reference broken")
        for lemma, pos in frame.lexical_units:
            if pos not in POS_TAGS:
                raise InvariantError(f"bad part of speech {pos!r}")
        old = self.frames.get(frame.id)
        if old == frame:
            return frame.id
        if old is not None:
            for element in old.elements:
                self.elements.pop(element.id, None)
            for lemma, pos in old.lexical_units:
                self.lu_index[(lemma, pos)].discard(old.id)
                if not any(old.id in self.lu_index[(lemma, p)] for p in POS_TAGS):
                    self.lu_by_lemma[lemma].discard(old.id)
        self.frames[frame.id] = frame
        self.frames_by_name[frame.name] = frame.id
        for element in frame.elements:
            self.elements[element.id] = element
        for lemma, pos in frame.lexical_units:
            self.lu_index[(lemma, pos)].add(frame.id)
            self.lu_by_lemma[lemma].add(frame.id)
        return frame.id

    def _put_taxonomy(self, node: TaxonomyType) -> str:
        if node.id != ids.taxonomy_id(node.key):
            raise InvariantError(f"taxonomy id {node.id!r} does not match key {node.key!r}")
        for lemma, rank in node.lemmas:
            if rank < 1:
                raise InvariantError(f"sense rank must be >= 1: {lemma}:{rank}")
        old = self.taxonomy.get(node.id)
        if old == node:
            return node.id
        if old is not None:
            for lemma, rank in old.lemmas:
                self.tax_lemma_index[lemma].discard((rank, old.id))
        self.taxonomy[node.id] = node
        for lemma, rank in node.lemmas:
            self.tax_lemma_index[lemma].add((rank, node.id))
        return node.id

    def _anchor_frame(self, frame_id: str, what: str) -> Frame:
        frame = self.frames.get(frame_id)
        if frame is None:
            raise MissingNodeError(f"{what} references missing frame {frame_id}")
        if frame.elementless:
            raise InvariantError(f"{what} cannot anchor to elementless frame {frame.name}")
        return frame

    def _put_fer(self, fer: Fer) -> str:
        frame = self._anchor_frame(fer.frame, "restricted frame")
        if not fer.restrictions:
            raise InvariantError("restricted frame needs at least one restriction")
        if fer.provenance not in FER_PROVENANCES:
            raise InvariantError(f"bad provenance {fer.provenance!r}")
        element_ids = {e.id for e in frame.elements}
        for element, tax in fer.restrictions:
            if element not in element_ids:
                raise InvariantError(f"restriction element {element} not in {frame.name}")
            if tax not in self.taxonomy:
                raise MissingNodeError(f"restriction type {tax} not in taxonomy")
        expected = ids.fer_id(frame.name, fer.restrictions, fer.surface_form)
        if fer.id != expected:
            raise InvariantError(f"fer id {fer.id!r} does not match content hash")
        old = self.fers.get(fer.id)
        if old == fer:
            return fer.id
        self.fers[fer.id] = fer
        self.fers_by_surface[fer.surface_form].add(fer.id)
        return fer.id

    def remove_fer(self, fer_id: str) -> Fer:
        """Drop a restricted frame (annotation override).  Edges must be
        re-pointed by the caller before freeze."""
        self._require_building("remove_fer")
        fer = self.fers.pop(fer_id, None)
        if fer is None:
            raise MissingNodeError(f"no such restricted frame: {fer_id}")
        self.fers_by_surface[fer.surface_form].discard(fer_id)
        return fer

    def _put_entity(self, entity: Entity) -> str:
        if not entity.source_refs:
            raise InvariantError("entity needs at least one source ref")
        if len(set(entity.source_refs)) != len(entity.source_refs):
            raise InvariantError("duplicate source refs on entity")
        old = self.entities.get(entity.id)
        if old == entity:
            return entity.id
        self.entities[entity.id] = entity
        for ref in entity.source_refs:
            self.source_ref_index.setdefault(ref, entity.id)
        return entity.id

    def _put_instance(self, fi: FrameInstance) -> str:
        frame = self._anchor_frame(fi.frame, "frame instance")
        if not fi.bindings:
            raise InvariantError("frame instance needs at least one binding")
        if len(fi.provenance) != 4:
            raise InvariantError("provenance must be a source quadruple")
        element_ids = {e.id for e in frame.elements}
        for element, value in fi.bindings.items():
            if element not in element_ids:
                raise InvariantError(f"binding element {element} not in {frame.name}")
            if isinstance(value, Literal):
                if value.datatype not in DATATYPES:
                    raise InvariantError(f"bad literal datatype {value.datatype!r}")
            elif not isinstance(value, str) or ids.kind_of(value) != ids.EN:
                raise InvariantError(f"binding value must be entity id or literal: {value!r}")
        old = self.instances.get(fi.id)
        if old == fi:
            return fi.id
        self.instances[fi.id] = fi
        return fi.id

    def put_edge(
        self,
        relation: str,
        src: str,
        dst: str,
        weight: float = 1.0,
        provenance: str = "",
    ) -> bool:
        """Insert an edge.  Returns False when the (relation, src, dst)
        triple already exists."""
        self._require_building("put_edge")
        if relation not in ALL_RELATIONS:
            raise InvariantError(f"unknown relation {relation!r}")
        if not weight > 0:
            raise InvariantError(f"edge weight must be positive: {weight}")
        for endpoint in (src, dst):
            if not self.has_node(endpoint):
                raise MissingNodeError(f"edge endpoint missing: {endpoint}")
        pair = (ids.kind_of(src), ids.kind_of(dst))
        if pair not in ENDPOINT_KINDS[relation]:
            raise EndpointKindError(
                f"{relation} does not allow {pair[0]} -> {pair[1]} edges"
            )
        key = (relation, src, dst)
        if key in self.edges:
            return False
        self.edges[key] = Edge(relation, src, dst, weight, provenance)
        return True

    def repoint_edges(self, old_id: str, new_id: str) -> int:
        """Rewrite every edge endpoint equal to old_id to new_id.  Edges that
        become duplicates collapse.  Returns the number rewritten."""
        self._require_building("repoint_edges")
        moved = 0
        for key in [k for k in self.edges if old_id in (k[1], k[2])]:
            edge = self.edges.pop(key)
            src = new_id if edge.src == old_id else edge.src
            dst = new_id if edge.dst == old_id else edge.dst
            new_key = (edge.relation, src, dst)
            if new_key not in self.edges:
                self.edges[new_key] = Edge(edge.relation, src, dst, edge.weight, edge.provenance)
            moved += 1
        return moved

    # --- validation and freeze -----------------------------------------------

    def _taxonomy_cycles(self) -> list[list[str]]:
        """Return one representative cycle per strongly-connected knot in the
        hypernym graph, found with Kahn's algorithm."""
        out_degree = {tid: len(node.hypernyms) for tid, node in self.taxonomy.items()}
        dependents: dict[str, list[str]] = defaultdict(list)
        for tid, node in self.taxonomy.items():
            for parent in node.hypernyms:
                if parent in self.taxonomy:
                    dependents[parent].append(tid)
        queue = [tid for tid, deg in out_degree.items() if deg == 0]
        while queue:
            current = queue.pop()
            for child in dependents[current]:
                out_degree[child] -= 1
                if out_degree[child] == 0:
                    queue.append(child)
        stuck = sorted(tid for tid, deg in out_degree.items() if deg > 0)
        if not stuck:
            return []
        # walk one concrete cycle for the report
        member = stuck[0]
        seen: list[str] = []
        while member not in seen:
            seen.append(member)
            member = next(p for p in self.taxonomy[member].hypernyms if out_degree.get(p, 0) > 0)
        return [seen[seen.index(member):] + [member]]

    def validate(self) -> ValidationReport:
        report = ValidationReport()

        def bad(code: str, message: str, subject: str | None = None) -> None:
            report.violations.append(Violation(code, message, subject))

        for cycle in self._taxonomy_cycles():
            bad("taxonomy-cycle", "hypernym cycle: " + " -> ".join(cycle), cycle[0])
        for tid, node in self.taxonomy.items():
            for parent in node.hypernyms:
                if parent not in self.taxonomy:
                    bad("dangling-ref", f"{tid} has missing hypernym {parent}", tid)
        for fid, fer in self.fers.items():
            frame = self.frames.get(fer.frame)
            if frame is None:
                bad("dangling-ref", f"{fid} references missing frame {fer.frame}", fid)
                continue
            if frame.elementless:
                bad("elementless-anchor", f"{fid} anchored to elementless {frame.name}", fid)
            element_ids = {e.id for e in frame.elements}
            for element, tax in fer.restrictions:
                if element not in element_ids:
                    bad("dangling-ref", f"{fid} restricts foreign element {element}", fid)
                if tax not in self.taxonomy:
                    bad("dangling-ref", f"{fid} restricts to missing type {tax}", fid)
        for eid, entity in self.entities.items():
            for tax in entity.types:
                if tax not in self.taxonomy:
                    bad("dangling-ref", f"{eid} typed with missing {tax}", eid)
        for iid, fi in self.instances.items():
            frame = self.frames.get(fi.frame)
            if frame is None:
                bad("dangling-ref", f"{iid} references missing frame {fi.frame}", iid)
                continue
            if frame.elementless:
                bad("elementless-anchor", f"{iid} anchored to elementless {frame.name}", iid)
            element_ids = {e.id for e in frame.elements}
            for element, value in fi.bindings.items():
                if element not in element_ids:
                    bad("dangling-ref", f"{iid} binds foreign element {element}", iid)
                if isinstance(value, str) and value not in self.entities:
                    bad("dangling-ref", f"{iid} binds missing entity {value}", iid)
        for (relation, src, dst) in self.edges:
            for endpoint in (src, dst):
                if not self.has_node(endpoint):
                    bad("dangling-ref", f"{relation} edge endpoint missing: {endpoint}")
        return report

    def freeze(self) -> ValidationReport:
        """Validate and switch to the frozen phase.  Raises ValidationFailed
        (leaving the store building) when any violation exists."""
        self._require_building("freeze")
        report = self.validate()
        if not report.ok:
            raise ValidationFailed(report)
        self._build_projection()
        self._build_adjacency()
        self._build_trigram_index()
        self.phase = FROZEN
        return report

    # --- derived artifacts ----------------------------------------------------

    def _emit(self) -> list[Triple]:
        """All projection triples, unordered and possibly duplicated.

        rdf:type objects are class IRIs, except for frame instances whose
        class is the frame itself; those point at the frame node id, which
        serializes to the same IRI a frame class would.
        """
        triples: list[Triple] = []
        for frame in self.frames.values():
            s = frame.id
            triples.append((s, vocab.RDF_TYPE, vocab.CLASS_FRAME))
            triples.append((s, vocab.P_NAME, Literal(frame.name)))
            triples.append((s, vocab.P_LANGUAGE, Literal(frame.language)))
            triples.append((s, vocab.P_DEFINITION, Literal(frame.definition)))
            for lemma, pos in frame.lexical_units:
                triples.append((s, vocab.P_LEXICAL_UNIT, Literal(f"{lemma}\t{pos}")))
            for source, ref in frame.source_refs:
                triples.append((s, vocab.P_SOURCE_REF, Literal(f"{source}\t{ref}")))
            for index, element in enumerate(frame.elements):
                e = element.id
                triples.append((e, vocab.RDF_TYPE, vocab.CLASS_ELEMENT))
                triples.append((e, vocab.P_FRAME, s))
                triples.append((e, vocab.P_NAME, Literal(element.name)))
                triples.append((e, vocab.P_CORENESS, Literal(element.coreness)))
                triples.append((e, vocab.P_INDEX, Literal(str(index), "integer")))
        for node in self.taxonomy.values():
            s = node.id
            triples.append((s, vocab.RDF_TYPE, vocab.CLASS_TAXONOMY))
            triples.append((s, vocab.P_GLOSS, Literal(node.gloss)))
            for lemma, rank in node.lemmas:
                triples.append((s, vocab.P_LEMMA, Literal(f"{lemma}\t{rank}")))
            for parent in node.hypernyms:
                triples.append((s, vocab.P_HYPERNYM, parent))
        for fer in self.fers.values():
            s = fer.id
            frame = self.frames[fer.frame]
            triples.append((s, vocab.RDF_TYPE, vocab.CLASS_FER))
            triples.append((s, vocab.P_FRAME, fer.frame))
            triples.append((s, vocab.P_SURFACE_FORM, Literal(fer.surface_form)))
            triples.append((s, vocab.P_LANGUAGE, Literal(fer.language)))
            triples.append((s, vocab.P_PROVENANCE, Literal(fer.provenance)))
            for element, tax in fer.restrictions:
                element_name = self.elements[element].name
                pred = vocab.restriction_predicate(frame.name, element_name)
                triples.append((s, pred, tax))
        for entity in self.entities.values():
            s = entity.id
            triples.append((s, vocab.RDF_TYPE, vocab.CLASS_ENTITY))
            triples.append((s, vocab.P_LABEL, Literal(entity.canonical_label)))
            for label in entity.alt_labels:
                triples.append((s, vocab.P_ALT_LABEL, Literal(label)))
            for tax in sorted(entity.types):
                triples.append((s, vocab.P_ENTITY_TYPE, tax))
            for source, ref in entity.source_refs:
                triples.append((s, vocab.P_SOURCE_REF, Literal(f"{source}\t{ref}")))
        for fi in self.instances.values():
            s = fi.id
            frame = self.frames[fi.frame]
            triples.append((s, vocab.RDF_TYPE, fi.frame))
            for element, value in fi.bindings.items():
                element_name = self.elements[element].name
                pred = vocab.element_predicate(frame.name, element_name)
                triples.append((s, pred, value))
        for edge in self.edges.values():
            triples.append((edge.src, vocab.relation_iri(edge.relation), edge.dst))
        return triples

    def _build_projection(self) -> None:
        seen: set[tuple[str, str, str]] = set()
        unique: list[Triple] = []
        for triple in self._emit():
            key = (triple[0], triple[1], _object_key(triple[2]))
            if key in seen:
                continue
            seen.add(key)
            unique.append(triple)
        unique.sort(key=vocab.triple_sort_key)
        self._triples = unique
        spo: dict = defaultdict(lambda: defaultdict(list))
        pos: dict = defaultdict(lambda: defaultdict(list))
        osp: dict = defaultdict(lambda: defaultdict(list))
        for triple in unique:
            s, p, o = triple
            okey = _object_key(o)
            spo[s][p].append(triple)
            pos[p][okey].append(triple)
            osp[okey][s].append(triple)
        self._spo = {k: dict(v) for k, v in spo.items()}
        self._pos = {k: dict(v) for k, v in pos.items()}
        self._osp = {k: dict(v) for k, v in osp.items()}

    def _build_adjacency(self) -> None:
        out: dict[str, list[Edge]] = defaultdict(list)
        inc: dict[str, list[Edge]] = defaultdict(list)
        for edge in self.edges.values():
            out[edge.src].append(edge)
            inc[edge.dst].append(edge)
        self._adjacency_out = dict(out)
        self._adjacency_in = dict(inc)

    def _build_trigram_index(self) -> None:
        index = TrigramIndex()
        for fer in self.fers.values():
            index.add(fer.id, fer.surface_form)
        bound: set[str] = set()
        for fi in self.instances.values():
            for value in fi.bindings.values():
                if isinstance(value, str):
                    bound.add(value)
        for eid in bound:
            entity = self.entities[eid]
            index.add(eid, entity.canonical_label)
            for label in entity.alt_labels:
                index.add(eid, label)
        self.trigram_index = index

    # --- frozen reads ----------------------------------------------------------

    def project_triples(self) -> list[Triple]:
        self._require_frozen("project_triples")
        return list(self._triples)

    def match_triples(
        self,
        s: str | None = None,
        p: str | None = None,
        o: "str | Literal | None" = None,
    ) -> list[Triple]:
        """Index-backed lookup with any combination of fixed positions."""
        self._require_frozen("match_triples")
        okey = _object_key(o) if o is not None else None
        if s is not None:
            by_pred = self._spo.get(s, {})
            rows = by_pred.get(p, []) if p is not None else [t for ts in by_pred.values() for t in ts]
            if okey is not None:
                rows = [t for t in rows if _object_key(t[2]) == okey]
            return list(rows)
        if p is not None:
            by_obj = self._pos.get(p, {})
            if okey is not None:
                return list(by_obj.get(okey, []))
            return [t for ts in by_obj.values() for t in ts]
        if okey is not None:
            by_subj = self._osp.get(okey, {})
            return [t for ts in by_subj.values() for t in ts]
        return list(self._triples)

    def count_triples(
        self,
        s: str | None = None,
        p: str | None = None,
        o: "str | Literal | None" = None,
    ) -> int:
        return len(self.match_triples(s, p, o))

    def neighbors(self, node_id: str, relation: str | None = None) -> list[tuple[Edge, str]]:
        """Edges touching a node as (edge, "out"|"in") pairs, ordered by
        (relation, peer id, direction)."""
        self._require_frozen("neighbors")
        if not self.has_node(node_id):
            raise MissingNodeError(f"no such node: {node_id}")
        found: list[tuple[Edge, str]] = []
        for edge in self._adjacency_out.get(node_id, []):
            if relation is None or edge.relation == relation:
                found.append((edge, "out"))
        for edge in self._adjacency_in.get(node_id, []):
            if relation is None or edge.relation == relation:
                found.append((edge, "in"))
        def sort_key(item: tuple[Edge, str]):
            edge, direction = item
            peer = edge.dst if direction == "out" else edge.src
            return (edge.relation, peer, direction)
        found.sort(key=sort_key)
        return found

    def stats(self) -> dict:
        counts = {
            ids.SF: len(self.frames),
            ids.FE: len(self.elements),
            ids.TX: len(self.taxonomy),
            ids.FER: len(self.fers),
            ids.EN: len(self.entities),
            ids.FI: len(self.instances),
        }
        by_relation = {rel: 0 for rel in ALL_RELATIONS}
        for (relation, _, _) in self.edges:
            by_relation[relation] += 1
        out = {
            "phase": self.phase,
            "nodes": counts,
            "edges": by_relation,
            "edgeTotal": len(self.edges),
        }
        if self.phase == FROZEN:
            out["triples"] = len(self._triples)
        return out

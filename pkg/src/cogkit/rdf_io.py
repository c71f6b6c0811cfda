"""Deterministic N-Triples export and its strict inverse.

Export streams the frozen projection, which is already deduplicated and
sorted by serialized form, so identical stores produce byte-identical files
on every platform.  Import accepts exactly that profile: one triple per
line, IRIs in our namespace, literals always datatyped.  It rebuilds typed
records by inverting the documented emission rules and re-freezes, so
import(export(S)) exports byte-identically to S.

Three caveats are inherent to the projection and documented in the store:
edge weight and provenance and the frame-instance source quadruple are not
projected, so imported stores carry defaults for them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from . import ids, vocab
from .errors import ParseError, ReconstructionError, SinkError, VocabularyError
from .model import (
    ALL_RELATIONS,
    Entity,
    Fer,
    Frame,
    FrameElement,
    FrameInstance,
    Literal,
    TaxonomyType,
)
from .store import Store
from .tsvio import open_text

logger = logging.getLogger(__name__)


@dataclass
class ExportStats:
    triple_count: int = 0
    bytes: int = 0

    def to_json(self) -> dict:
        return {"tripleCount": self.triple_count, "bytes": self.bytes}


def _open_sink(sink):
    if hasattr(sink, "write"):
        return sink, False
    import io
    import os

    return io.open(os.fspath(sink), "w", encoding="utf-8", newline=""), True


def export_ntriples(store: Store, sink) -> ExportStats:
    """Write the projection to a path or text file object."""
    stats = ExportStats()
    try:
        handle, should_close = _open_sink(sink)
    except OSError as exc:
        raise SinkError(f"cannot open sink: {exc}") from exc
    try:
        for triple in store.project_triples():
            s, p, o = vocab.triple_sort_key(triple)
            line = f"{s} {p} {o} .\n"
            handle.write(line)
            stats.triple_count += 1
            stats.bytes += len(line.encode("utf-8"))
    except OSError as exc:
        raise SinkError(f"write failed: {exc}") from exc
    finally:
        if should_close:
            handle.close()
    return stats


def export_string(store: Store) -> str:
    from io import StringIO

    buffer = StringIO()
    export_ntriples(store, buffer)
    return buffer.getvalue()


# --- line parsing -------------------------------------------------------------


def _parse_line(line: str, line_no: int, path: str) -> tuple[str, str, "str | Literal"]:
    """One strict-profile triple: <s> <p> (<o> | "lex"^^<dt>) ."""

    def fail(why: str) -> ParseError:
        return ParseError(why, line_no, path)

    def read_iri(pos: int) -> tuple[str, int]:
        if pos >= len(line) or line[pos] != "<":
            raise fail(f"expected '<' at column {pos + 1}")
        end = line.find(">", pos + 1)
        if end < 0:
            raise fail("unterminated IRI")
        return line[pos + 1 : end], end + 1

    subject, pos = read_iri(0)
    if not line.startswith(" ", pos):
        raise fail("expected single space after subject")
    predicate, pos = read_iri(pos + 1)
    if not line.startswith(" ", pos):
        raise fail("expected single space after predicate")
    pos += 1
    obj: "str | Literal"
    if pos < len(line) and line[pos] == "<":
        obj, pos = read_iri(pos)
    elif pos < len(line) and line[pos] == '"':
        scan = pos + 1
        while scan < len(line):
            if line[scan] == "\\":
                scan += 2
                continue
            if line[scan] == '"':
                break
            scan += 1
        if scan >= len(line):
            raise fail("unterminated literal")
        raw = line[pos + 1 : scan]
        pos = scan + 1
        if not line.startswith("^^", pos):
            raise fail("literal must carry ^^<datatype>")
        datatype_iri, pos = read_iri(pos + 2)
        datatype = vocab.IRI_DATATYPES.get(datatype_iri)
        if datatype is None:
            raise fail(f"unknown datatype {datatype_iri}")
        try:
            lexical = vocab.unescape_literal(raw)
        except ValueError as exc:
            raise fail(f"bad literal escape: {exc}") from None
        obj = Literal(lexical, datatype)
    else:
        raise fail("expected IRI or literal object")
    if line[pos:] != " .":
        raise fail("line must end with ' .'")
    return subject, predicate, obj


# --- record reconstruction ------------------------------------------------------


class _NodeDraft:
    """Field accumulator for one subject while triples stream in."""

    __slots__ = ("kind", "type_seen", "fields", "line")

    def __init__(self, kind: str, line: int):
        self.kind = kind
        self.type_seen = False
        self.fields: dict[str, list] = {}
        self.line = line

    def add(self, key: str, value) -> None:
        self.fields.setdefault(key, []).append(value)

    def one(self, key: str, default=None):
        values = self.fields.get(key)
        if not values:
            if default is not None:
                return default
            raise ReconstructionError(f"missing {key} near line {self.line}")
        if len(values) > 1:
            raise ReconstructionError(f"conflicting {key} near line {self.line}")
        return values[0]

    def many(self, key: str) -> list:
        return self.fields.get(key, [])


def _lexical(value, what: str, line_no: int) -> str:
    if not isinstance(value, Literal):
        raise ReconstructionError(f"line {line_no}: {what} must be a literal")
    return value.lexical


def _node_ref(value, what: str, line_no: int) -> str:
    if not isinstance(value, str) or not ids.is_node_id(value):
        raise ReconstructionError(f"line {line_no}: {what} must be a node IRI")
    return value


def _split_pair(lexical: str, what: str) -> tuple[str, str]:
    left, sep, right = lexical.partition("\t")
    if not sep:
        raise ReconstructionError(f"{what} literal must be tab separated: {lexical!r}")
    return left, right


def import_ntriples(source) -> Store:
    """Rebuild a frozen store from our own export format."""
    handle, path, should_close = open_text(source)
    drafts: dict[str, _NodeDraft] = {}
    edges: list[tuple[str, str, str]] = []
    try:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line:
                raise ParseError("blank line", line_no, path)
            subject_iri, predicate, obj = _parse_line(line, line_no, path)
            try:
                subject = vocab.iri_to_node(subject_iri)
            except VocabularyError as exc:
                raise VocabularyError(f"{path}:{line_no}: {exc}") from None
            if isinstance(obj, str):
                try:
                    obj = vocab.iri_to_node(obj)
                except VocabularyError:
                    pass  # class IRIs stay raw; bad refs fail in assembly
            draft = drafts.get(subject)
            if draft is None:
                draft = drafts[subject] = _NodeDraft(ids.kind_of(subject), line_no)

            if predicate == vocab.RDF_TYPE:
                _record_type(draft, subject, obj, line_no, path)
            elif predicate.startswith(vocab.NS + "rel/"):
                relation = vocab.relation_from_iri(predicate)
                if relation not in ALL_RELATIONS:
                    raise VocabularyError(f"{path}:{line_no}: unknown relation {relation!r}")
                edges.append((relation, subject, _node_ref(obj, "edge target", line_no)))
            elif predicate.startswith(vocab.NS + "restrict/"):
                element = _restriction_element(predicate, line_no, path)
                draft.add("restrictions", (element, _node_ref(obj, "restriction type", line_no)))
            elif predicate.startswith(vocab.NS + "fe/"):
                if draft.kind != ids.FI:
                    raise VocabularyError(
                        f"{path}:{line_no}: binding predicate on non-instance subject"
                    )
                element = vocab.iri_to_node(predicate)
                if not isinstance(obj, Literal):
                    obj = _node_ref(obj, "binding value", line_no)
                draft.add("bindings", (element, obj))
            elif predicate in vocab.ATTRIBUTE_PREDICATES:
                draft.add(predicate, obj)
            else:
                raise VocabularyError(f"{path}:{line_no}: unknown predicate {predicate}")
    finally:
        if should_close:
            handle.close()

    return _assemble(drafts, edges)


def _record_type(draft: _NodeDraft, subject: str, obj, line_no: int, path: str) -> None:
    expected = {
        ids.SF: vocab.CLASS_FRAME,
        ids.FE: vocab.CLASS_ELEMENT,
        ids.TX: vocab.CLASS_TAXONOMY,
        ids.FER: vocab.CLASS_FER,
        ids.EN: vocab.CLASS_ENTITY,
    }
    if draft.kind == ids.FI:
        frame = _node_ref(obj, "instance class", line_no)
        if ids.kind_of(frame) != ids.SF:
            raise VocabularyError(f"{path}:{line_no}: instance class must be a frame IRI")
        draft.add("frame-class", frame)
    elif obj != expected[draft.kind]:
        raise VocabularyError(f"{path}:{line_no}: wrong class for {subject}")
    draft.type_seen = True


def _restriction_element(predicate: str, line_no: int, path: str) -> str:
    tail = predicate[len(vocab.NS) + len("restrict/"):]
    frame_part, sep, element_part = tail.partition("/")
    if not sep:
        raise VocabularyError(f"{path}:{line_no}: bad restriction predicate {predicate}")
    from urllib.parse import unquote

    return ids.element_id(unquote(frame_part), unquote(element_part))


def _assemble(drafts: dict[str, _NodeDraft], edges: list[tuple[str, str, str]]) -> Store:
    store = Store()
    by_kind: dict[str, list[str]] = {kind: [] for kind in ids.NODE_KINDS}
    for node_id, draft in drafts.items():
        if not draft.type_seen:
            raise ReconstructionError(f"{node_id} has no rdf:type triple")
        by_kind[draft.kind].append(node_id)

    def put(node) -> None:
        try:
            store.put_node(node)
        except Exception as exc:
            raise ReconstructionError(f"cannot reconstruct {node.id}: {exc}") from exc

    for node_id in sorted(by_kind[ids.TX]):
        draft = drafts[node_id]
        put(
            TaxonomyType(
                id=node_id,
                key=node_id.split(":", 1)[1],
                gloss=_lexical(draft.one(vocab.P_GLOSS, Literal("")), "gloss", draft.line),
                lemmas=sorted(
                    _lemma_pair(_lexical(v, "lemma", draft.line)) for v in draft.many(vocab.P_LEMMA)
                ),
                hypernyms=sorted(
                    _node_ref(v, "hypernym", draft.line) for v in draft.many(vocab.P_HYPERNYM)
                ),
            )
        )

    elements_by_frame: dict[str, list[tuple[int, FrameElement]]] = {}
    for node_id in by_kind[ids.FE]:
        draft = drafts[node_id]
        frame_id = _node_ref(draft.one(vocab.P_FRAME), "element frame", draft.line)
        index_text = _lexical(draft.one(vocab.P_INDEX), "element index", draft.line)
        try:
            index = int(index_text)
        except ValueError:
            raise ReconstructionError(f"bad element index {index_text!r}") from None
        element = FrameElement(
            id=node_id,
            frame=frame_id,
            name=_lexical(draft.one(vocab.P_NAME), "element name", draft.line),
            coreness=_lexical(draft.one(vocab.P_CORENESS), "coreness", draft.line),
        )
        elements_by_frame.setdefault(frame_id, []).append((index, element))

    for node_id in sorted(by_kind[ids.SF]):
        draft = drafts[node_id]
        ordered = sorted(elements_by_frame.get(node_id, ()), key=lambda pair: pair[0])
        put(
            Frame(
                id=node_id,
                name=_lexical(draft.one(vocab.P_NAME), "frame name", draft.line),
                definition=_lexical(
                    draft.one(vocab.P_DEFINITION, Literal("")), "definition", draft.line
                ),
                language=_lexical(
                    draft.one(vocab.P_LANGUAGE, Literal("en")), "language", draft.line
                ),
                elements=[element for _, element in ordered],
                lexical_units=sorted(
                    _lu_pair(_lexical(v, "lexical unit", draft.line))
                    for v in draft.many(vocab.P_LEXICAL_UNIT)
                ),
                source_refs=sorted(
                    _split_pair(_lexical(v, "source ref", draft.line), "sourceRef")
                    for v in draft.many(vocab.P_SOURCE_REF)
                ),
            )
        )

    orphan_elements = set(elements_by_frame) - set(by_kind[ids.SF])
    if orphan_elements:
        raise ReconstructionError(f"elements reference missing frames: {sorted(orphan_elements)}")

    for node_id in sorted(by_kind[ids.FER]):
        draft = drafts[node_id]
        put(
            Fer(
                id=node_id,
                frame=_node_ref(draft.one(vocab.P_FRAME), "fer frame", draft.line),
                restrictions=frozenset(draft.many("restrictions")),
                surface_form=_lexical(draft.one(vocab.P_SURFACE_FORM), "surface", draft.line),
                language=_lexical(
                    draft.one(vocab.P_LANGUAGE, Literal("en")), "language", draft.line
                ),
                provenance=_lexical(draft.one(vocab.P_PROVENANCE), "provenance", draft.line),
            )
        )

    for node_id in sorted(by_kind[ids.EN]):
        draft = drafts[node_id]
        put(
            Entity(
                id=node_id,
                canonical_label=_lexical(draft.one(vocab.P_LABEL), "label", draft.line),
                alt_labels=sorted(
                    _lexical(v, "alt label", draft.line) for v in draft.many(vocab.P_ALT_LABEL)
                ),
                types={
                    _node_ref(v, "entity type", draft.line)
                    for v in draft.many(vocab.P_ENTITY_TYPE)
                },
                source_refs=sorted(
                    _split_pair(_lexical(v, "source ref", draft.line), "sourceRef")
                    for v in draft.many(vocab.P_SOURCE_REF)
                ),
            )
        )

    for node_id in sorted(by_kind[ids.FI]):
        draft = drafts[node_id]
        bindings = dict(draft.many("bindings"))
        put(
            FrameInstance(
                id=node_id,
                frame=draft.one("frame-class"),
                bindings=bindings,
                provenance=("", "", "", ""),
            )
        )

    for relation, src, dst in edges:
        try:
            store.put_edge(relation, src, dst)
        except Exception as exc:
            raise ReconstructionError(f"cannot reconstruct edge: {exc}") from exc

    store.freeze()
    return store


def _lemma_pair(lexical: str) -> tuple[str, int]:
    lemma, rank_text = _split_pair(lexical, "lemma")
    try:
        return lemma, int(rank_text)
    except ValueError:
        raise ReconstructionError(f"bad lemma rank in {lexical!r}") from None


def _lu_pair(lexical: str) -> tuple[str, str]:
    return _split_pair(lexical, "lexicalUnit")

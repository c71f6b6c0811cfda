"""Frame schema and taxonomy ingestion.

Schema files mix five record types, one per line:

    F       <frameName> <language> <definition>
    E       <frameName> <elementName> <coreness>
    L       <frameName> <lemma> <pos>
    R       <relation> <fromFrame> <toFrame>
    ROLE    <frameName> <slot> <elementName>

E, L, and ROLE records must follow the F record that declares their frame in
the same file.  R records are resolved once all frames in the file are
stored, so they may point forward or at frames from an earlier file.  ROLE
records feed the per-frame role tables used by phrase parsing; the slot is
``object`` or ``oblique:<preposition>`` (a bare ``oblique`` acts as the
fallback for any preposition).

Taxonomy files carry two record types:

    S   <key> <gloss> <lemma[:rank][,lemma[:rank]...]>
    H   <childKey> <parentKey>

A lemma without an explicit sense rank gets the next free rank for that
lemma in file order, so the first-sense heuristic stays total.  Declaring
the same key twice is an error; hypernym targets must be declared in the
same file.  Cycles are allowed to enter the store here - freeze rejects
them, which keeps the error report in one place.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import ids, text
from .errors import DuplicateKeyError, MissingNodeError, ParseError, PhaseError
from .model import CORENESS, POS_TAGS, Frame, FrameElement, TaxonomyType
from .store import FROZEN, Store
from .tsvio import iter_records

logger = logging.getLogger(__name__)

ROLE_SLOT_OBJECT = "object"
ROLE_SLOT_OBLIQUE = "oblique"


@dataclass
class SchemaIngestReport:
    frames_added: int = 0
    elements_added: int = 0
    lexical_units_added: int = 0
    relations_added: int = 0
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "framesAdded": self.frames_added,
            "elementsAdded": self.elements_added,
            "lexicalUnitsAdded": self.lexical_units_added,
            "relationsAdded": self.relations_added,
            "warnings": list(self.warnings),
        }


@dataclass
class TaxonomyIngestReport:
    types_added: int = 0
    hypernyms_added: int = 0
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "typesAdded": self.types_added,
            "hypernymsAdded": self.hypernyms_added,
            "warnings": list(self.warnings),
        }


def _valid_slot(slot: str) -> bool:
    if slot == ROLE_SLOT_OBJECT or slot == ROLE_SLOT_OBLIQUE:
        return True
    return slot.startswith(ROLE_SLOT_OBLIQUE + ":") and len(slot) > len(ROLE_SLOT_OBLIQUE) + 1


def ingest_frames(store: Store, source) -> SchemaIngestReport:
    """Load a frame schema file into a building store."""
    report = SchemaIngestReport()
    declared: dict[str, Frame] = {}
    roles: dict[str, dict[str, str]] = {}
    relations: list[tuple[str, str, str, int, str]] = []

    for line_no, fields, path in iter_records(source):
        record = fields[0]
        if record == "F":
            if len(fields) != 4:
                raise ParseError("F record needs frameName, language, definition", line_no, path)
            _, name, language, definition = fields
            if not name:
                raise ParseError("empty frame name", line_no, path)
            if name in declared or ids.frame_id(name) in store.frames:
                report.warnings.append(f"duplicate declaration of frame {name}; replacing")
            frame_id = ids.frame_id(name)
            declared[name] = Frame(
                id=frame_id,
                name=name,
                definition=definition,
                language=text.normalize(language) or "en",
            )
            roles.setdefault(name, {})
        elif record == "E":
            if len(fields) != 4:
                raise ParseError("E record needs frameName, elementName, coreness", line_no, path)
            _, frame_name, element_name, coreness = fields
            frame = declared.get(frame_name)
            if frame is None:
                raise ParseError(f"element for undeclared frame {frame_name!r}", line_no, path)
            if coreness not in CORENESS:
                raise ParseError(f"bad coreness {coreness!r}", line_no, path)
            existing = frame.element_by_name(element_name)
            if existing is not None:
                report.warnings.append(
                    f"duplicate element {frame_name}.{element_name}; keeping latest coreness"
                )
                existing.coreness = coreness
                continue
            frame.elements.append(
                FrameElement(
                    id=ids.element_id(frame_name, element_name),
                    frame=frame.id,
                    name=element_name,
                    coreness=coreness,
                )
            )
        elif record == "L":
            if len(fields) != 4:
                raise ParseError("L record needs frameName, lemma, pos", line_no, path)
            _, frame_name, lemma, pos = fields
            frame = declared.get(frame_name)
            if frame is None:
                raise ParseError(f"lexical unit for undeclared frame {frame_name!r}", line_no, path)
            if pos not in POS_TAGS:
                raise ParseError(f"bad part of speech {pos!r}", line_no, path)
            unit = (text.normalize_phrase(lemma), pos)
            if unit in frame.lexical_units:
                report.warnings.append(f"duplicate lexical unit {unit[0]}/{pos} on {frame_name}")
                continue
            frame.lexical_units.append(unit)
        elif record == "R":
            if len(fields) != 4:
                raise ParseError("R record needs relation, fromFrame, toFrame", line_no, path)
            _, relation, from_frame, to_frame = fields
            relations.append((relation, from_frame, to_frame, line_no, path))
        elif record == "ROLE":
            if len(fields) != 4:
                raise ParseError("ROLE record needs frameName, slot, elementName", line_no, path)
            _, frame_name, slot, element_name = fields
            frame = declared.get(frame_name)
            if frame is None:
                raise ParseError(f"role for undeclared frame {frame_name!r}", line_no, path)
            if not _valid_slot(slot):
                raise ParseError(f"bad role slot {slot!r}", line_no, path)
            if frame.element_by_name(element_name) is None:
                raise ParseError(
                    f"role targets undeclared element {frame_name}.{element_name}", line_no, path
                )
            table = roles.setdefault(frame_name, {})
            if slot in table:
                report.warnings.append(f"duplicate role slot {slot} on {frame_name}; last wins")
            table[slot] = element_name
        else:
            raise ParseError(f"unknown record type {record!r}", line_no, path)

    for name, frame in declared.items():
        new = frame.id not in store.frames
        store.put_node(frame)
        if new:
            report.frames_added += 1
            report.elements_added += len(frame.elements)
            report.lexical_units_added += len(frame.lexical_units)
        if frame.elementless:
            report.warnings.append(f"frame {name} has no elements; it cannot anchor instances")
        if roles.get(name):
            store.role_tables[frame.id] = dict(roles[name])

    for relation, from_frame, to_frame, line_no, path in relations:
        src = ids.frame_id(from_frame)
        dst = ids.frame_id(to_frame)
        if src not in store.frames:
            raise MissingNodeError(f"{path}:{line_no}: relation source frame {from_frame!r} not found")
        if dst not in store.frames:
            raise MissingNodeError(f"{path}:{line_no}: relation target frame {to_frame!r} not found")
        if store.put_edge(relation, src, dst, provenance="schema"):
            report.relations_added += 1
        else:
            report.warnings.append(f"duplicate relation {relation} {from_frame} -> {to_frame}")
    return report


def _parse_lemma_list(raw: str, rank_counter: dict[str, int], line_no: int, path: str) -> list[tuple[str, int]]:
    lemmas: list[tuple[str, int]] = []
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        lemma, sep, rank_text = chunk.rpartition(":")
        if sep and rank_text.isdigit():
            lemma_text = text.normalize_phrase(lemma)
            rank = int(rank_text)
            if rank < 1:
                raise ParseError(f"sense rank must be >= 1: {chunk!r}", line_no, path)
        else:
            lemma_text = text.normalize_phrase(chunk)
            rank = rank_counter.get(lemma_text, 0) + 1
        if not lemma_text:
            raise ParseError(f"empty lemma in {raw!r}", line_no, path)
        rank_counter[lemma_text] = max(rank_counter.get(lemma_text, 0), rank)
        lemmas.append((lemma_text, rank))
    if not lemmas:
        raise ParseError("synset needs at least one lemma", line_no, path)
    return lemmas


def ingest_taxonomy(store: Store, source) -> TaxonomyIngestReport:
    """Load a hypernym taxonomy file into a building store."""
    report = TaxonomyIngestReport()
    declared: dict[str, TaxonomyType] = {}
    rank_counter: dict[str, int] = {}
    hypernyms: list[tuple[str, str, int, str]] = []

    for line_no, fields, path in iter_records(source):
        record = fields[0]
        if record == "S":
            if len(fields) != 4:
                raise ParseError("S record needs key, gloss, lemma list", line_no, path)
            _, key, gloss, lemma_list = fields
            if not key:
                raise ParseError("empty synset key", line_no, path)
            if key in declared:
                raise DuplicateKeyError(f"synset key {key!r} declared twice", line_no, path)
            declared[key] = TaxonomyType(
                id=ids.taxonomy_id(key),
                key=key,
                gloss=gloss,
                lemmas=_parse_lemma_list(lemma_list, rank_counter, line_no, path),
            )
        elif record == "H":
            if len(fields) != 3:
                raise ParseError("H record needs childKey, parentKey", line_no, path)
            _, child, parent = fields
            hypernyms.append((child, parent, line_no, path))
        else:
            raise ParseError(f"unknown record type {record!r}", line_no, path)

    for child, parent, line_no, path in hypernyms:
        if child not in declared:
            raise ParseError(f"hypernym child {child!r} not declared in this file", line_no, path)
        if parent not in declared:
            raise ParseError(f"hypernym parent {parent!r} not declared in this file", line_no, path)
        node = declared[child]
        parent_id = ids.taxonomy_id(parent)
        if parent_id in node.hypernyms:
            report.warnings.append(f"duplicate hypernym {child} -> {parent}")
            continue
        node.hypernyms.append(parent_id)
        report.hypernyms_added += 1

    for node in declared.values():
        if node.id in store.taxonomy:
            report.warnings.append(f"taxonomy key {node.key} already present; replacing")
            report.hypernyms_added -= sum(
                1 for h in node.hypernyms if h in store.taxonomy[node.id].hypernyms
            )
        else:
            report.types_added += 1
        store.put_node(node)
    return report


def lookup_lexical_unit(store: Store, lemma: str, pos: str) -> list[Frame]:
    """Frames declaring the (lemma, pos) lexical unit, sorted by name."""
    if store.phase != FROZEN:
        raise PhaseError("lookup_lexical_unit requires a frozen store")
    frame_ids = store.lu_index.get((text.normalize_phrase(lemma), pos), set())
    frames = [store.frames[fid] for fid in frame_ids]
    frames.sort(key=lambda f: f.name)
    return frames

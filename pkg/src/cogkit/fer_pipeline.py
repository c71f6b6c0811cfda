"""From free-form phrases to restricted frames.

parse_phrase implements the deterministic pipeline:

 1. whitespace tokenization, normalization, lemmatization
 2. evoking-word scan: leftmost token (or contiguous bigram) whose lemma is
    a verb lexical unit, falling back to nouns; none -> noEvokingWord
 3. the remaining tokens are classified: prepositions set the next filler's
    syntactic slot to oblique:<prep>, stopwords are skipped, everything else
    becomes a filler typed through the taxonomy's first-sense lookup; an
    untypeable filler -> fillerUnknown
 4. when several frames declare the evoking lexical unit, the one whose core
    elements can absorb the most fillers wins, ties broken by frame name
 5. each filler is assigned an element: the frame role table first (exact
    oblique:<prep> slot, then bare oblique, then object), otherwise the
    first unassigned core element that is not the first-declared one; the
    first-declared core acts as the agent-like slot and is only used once
    everything else is taken; no element left -> unsupportedShape
 6. zero fillers yield a FrameRef to the evoked frame, one or more a
    FerDraft with one (element, taxonomy type) restriction per filler

The tie-break rules make every outcome deterministic, so the reason code
``ambiguousUnresolved`` is never produced by this parser; it stays in the
reason enum for annotation tooling that may refuse to guess.

ingest_assertions parses both phrases of each assertion before touching the
store, so a rejected assertion adds zero nodes and zero edges.  Rejections
are appended to a needs-annotation TSV (assertion fields + side + reason)
that import_annotations later consumes in curated form.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field

from . import ids, text
from .errors import (
    NoAssignableElement,
    ParseError,
    UnknownLemma,
    UnresolvedName,
)
from .model import COMMONSENSE_RELATIONS, Fer, Frame, FrameElement, TaxonomyType
from .schema_ingest import ROLE_SLOT_OBJECT, ROLE_SLOT_OBLIQUE
from .store import Store
from .tsvio import iter_records

logger = logging.getLogger(__name__)

REASON_NO_EVOKING_WORD = "noEvokingWord"
REASON_AMBIGUOUS = "ambiguousUnresolved"
REASON_FILLER_UNKNOWN = "fillerUnknown"
REASON_UNSUPPORTED_SHAPE = "unsupportedShape"
REJECT_REASONS = (
    REASON_NO_EVOKING_WORD,
    REASON_AMBIGUOUS,
    REASON_FILLER_UNKNOWN,
    REASON_UNSUPPORTED_SHAPE,
)


@dataclass(frozen=True)
class FrameRef:
    """The phrase evokes a frame with no typed fillers."""

    frame: str


@dataclass(frozen=True)
class FerDraft:
    """The phrase evokes a frame and restricts some of its elements."""

    frame: str
    assignments: tuple[tuple[str, str, str], ...]  # (element id, filler lemma, taxonomy id)
    surface_form: str


@dataclass(frozen=True)
class Reject:
    reason: str
    detail: str = ""


@dataclass(frozen=True)
class Assertion:
    start: str
    relation: str
    end: str
    weight: float
    source: str

    def fields(self) -> tuple[str, str, str, str, str]:
        return (self.start, self.relation, self.end, repr_weight(self.weight), self.source)


def repr_weight(weight: float) -> str:
    text_value = f"{weight:g}"
    return text_value


@dataclass
class Rejection:
    assertion: Assertion
    side: str  # "start" | "end"
    reason: str

    def to_json(self) -> dict:
        return {
            "assertion": list(self.assertion.fields()),
            "side": self.side,
            "reason": self.reason,
        }


@dataclass
class FerIngestReport:
    fers_created: int = 0
    frame_edges: int = 0
    fer_edges: int = 0
    rejected: list[Rejection] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "fersCreated": self.fers_created,
            "frameEdges": self.frame_edges,
            "ferEdges": self.fer_edges,
            "rejected": [r.to_json() for r in self.rejected],
        }


@dataclass
class AnnotationImportReport:
    fers_created: int = 0
    fers_replaced: int = 0
    edges_repointed: int = 0
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "fersCreated": self.fers_created,
            "fersReplaced": self.fers_replaced,
            "edgesRepointed": self.edges_repointed,
            "warnings": list(self.warnings),
        }


# --- taxonomy linking ---------------------------------------------------------


def link_taxonomy(store: Store, lemma: str) -> TaxonomyType:
    """First-sense lookup: the type with the lowest sense rank for the lemma,
    ties broken by taxonomy key order."""
    candidates = store.tax_lemma_index.get(text.normalize_phrase(lemma))
    if not candidates:
        raise UnknownLemma(f"no taxonomy type lists lemma {lemma!r}")
    rank, tax_id = min(candidates)
    return store.taxonomy[tax_id]


# --- element assignment -------------------------------------------------------


def assign_element(
    store: Store,
    frame: Frame,
    filler_lemma: str,
    filler_type: str,
    slot: str = ROLE_SLOT_OBJECT,
    assigned: tuple[str, ...] = (),
) -> FrameElement:
    """Pick the frame element a filler restricts.

    The role table is consulted first: the exact slot, then the bare oblique
    fallback for preposition slots.  If the table is silent or its target is
    taken, the default rule walks the core elements in declaration order,
    saving the first-declared core (the agent-like slot) for last.  The
    filler's lemma and type take no part in the choice today; they are in
    the signature because they define the restriction the caller will store.
    """
    del filler_lemma, filler_type
    taken = set(assigned)
    table = store.role_tables.get(frame.id, {})
    for key in _slot_keys(slot):
        element_name = table.get(key)
        if element_name is None:
            continue
        element = frame.element_by_name(element_name)
        if element is not None and element.id not in taken:
            return element
    cores = frame.core_elements()
    if not cores:
        raise NoAssignableElement(f"frame {frame.name} has no core elements")
    for element in cores[1:] + cores[:1]:
        if element.id not in taken:
            return element
    raise NoAssignableElement(f"all core elements of {frame.name} are taken")


def _slot_keys(slot: str) -> list[str]:
    if slot.startswith(ROLE_SLOT_OBLIQUE + ":"):
        return [slot, ROLE_SLOT_OBLIQUE]
    return [slot]


# --- phrase parsing -----------------------------------------------------------


@dataclass(frozen=True)
class _Filler:
    lemma: str
    slot: str
    tax_id: str = ""


def parse_phrase(store: Store, phrase: str, language: str = "en"):
    """Parse one phrase against the store's schema and taxonomy indexes.

    Returns FrameRef, FerDraft, or Reject.  Runs against the live building
    indexes; ingestion is single threaded, so the schema view is stable for
    the duration of an assertion file.
    """
    del language  # carried on the resulting record, not used for tokenizing
    tokens = text.tokenize(phrase)
    if not tokens:
        return Reject(REASON_UNSUPPORTED_SHAPE, "empty phrase")
    lemmas = [text.lemmatize(token) for token in tokens]

    evoked = _find_evoking(store, lemmas)
    if evoked is None:
        return Reject(REASON_NO_EVOKING_WORD, "no token evokes a frame")
    candidate_frames, consumed = evoked

    fillers: list[_Filler] = []
    pending_prep: str | None = None
    for index, lemma in enumerate(lemmas):
        if index in consumed:
            continue
        if lemma in text.PREPOSITIONS:
            pending_prep = lemma
            continue
        if lemma in text.STOPWORDS:
            continue
        slot = ROLE_SLOT_OBJECT if pending_prep is None else f"{ROLE_SLOT_OBLIQUE}:{pending_prep}"
        pending_prep = None
        fillers.append(_Filler(lemma=lemma, slot=slot))

    typed: list[_Filler] = []
    for filler in fillers:
        try:
            tax = link_taxonomy(store, filler.lemma)
        except UnknownLemma:
            return Reject(REASON_FILLER_UNKNOWN, filler.lemma)
        typed.append(_Filler(filler.lemma, filler.slot, tax.id))

    frame_id = _choose_frame(store, candidate_frames, typed)
    frame = store.frames[frame_id]

    if not typed:
        return FrameRef(frame_id)

    assignments: list[tuple[str, str, str]] = []
    taken: list[str] = []
    for filler in typed:
        try:
            element = assign_element(
                store, frame, filler.lemma, filler.tax_id, filler.slot, tuple(taken)
            )
        except NoAssignableElement as exc:
            return Reject(REASON_UNSUPPORTED_SHAPE, str(exc))
        taken.append(element.id)
        assignments.append((element.id, filler.lemma, filler.tax_id))
    return FerDraft(
        frame=frame_id,
        assignments=tuple(assignments),
        surface_form=text.normalize_phrase(phrase),
    )


def _find_evoking(store: Store, lemmas: list[str]):
    """Leftmost longest-match lexical-unit scan: verbs first, then nouns.
    Returns (candidate frame ids, consumed token indexes) or None."""
    for pos in ("v", "n"):
        for index in range(len(lemmas)):
            if index + 1 < len(lemmas):
                bigram = f"{lemmas[index]} {lemmas[index + 1]}"
                hit = store.lu_index.get((bigram, pos))
                if hit:
                    return set(hit), {index, index + 1}
            hit = store.lu_index.get((lemmas[index], pos))
            if hit:
                return set(hit), {index}
    return None


def _choose_frame(store: Store, candidates: set[str], fillers: list[_Filler]) -> str:
    """Prefer the candidate whose core elements absorb the most fillers;
    break ties by frame name."""
    if len(candidates) == 1:
        return next(iter(candidates))

    def absorbed(frame_id: str) -> int:
        frame = store.frames[frame_id]
        taken: list[str] = []
        count = 0
        for filler in fillers:
            try:
                element = assign_element(
                    store, frame, filler.lemma, filler.tax_id, filler.slot, tuple(taken)
                )
            except NoAssignableElement:
                break
            taken.append(element.id)
            count += 1
        return count

    ranked = sorted(
        candidates,
        key=lambda fid: (-absorbed(fid), store.frames[fid].name),
    )
    return ranked[0]


# --- assertion ingestion ------------------------------------------------------


def _materialize(store: Store, parse, language: str) -> str:
    """Turn a FrameRef or FerDraft into the node the assertion edge will use."""
    if isinstance(parse, FrameRef):
        return parse.frame
    frame = store.frames[parse.frame]
    restrictions = frozenset((element, tax) for element, _, tax in parse.assignments)
    fer = Fer(
        id=ids.fer_id(frame.name, restrictions, parse.surface_form),
        frame=parse.frame,
        restrictions=restrictions,
        surface_form=parse.surface_form,
        language=language,
        provenance="automatic",
    )
    return store.put_node(fer)


def read_assertions(source) -> list[tuple[int, Assertion, str]]:
    rows: list[tuple[int, Assertion, str]] = []
    for line_no, fields, path in iter_records(source):
        if len(fields) != 5:
            raise ParseError(
                "assertion needs startPhrase, relation, endPhrase, weight, source",
                line_no,
                path,
            )
        start, relation, end, weight_text, source_name = fields
        if relation not in COMMONSENSE_RELATIONS:
            raise ParseError(f"{relation!r} is not a commonsense relation", line_no, path)
        try:
            weight = float(weight_text)
        except ValueError:
            raise ParseError(f"bad weight {weight_text!r}", line_no, path) from None
        if not weight > 0:
            raise ParseError(f"weight must be positive: {weight_text}", line_no, path)
        rows.append((line_no, Assertion(start, relation, end, weight, source_name), path))
    return rows


def ingest_assertions(
    store: Store,
    source,
    needs_annotation_path: "str | os.PathLike | None" = None,
    language: str = "en",
) -> FerIngestReport:
    """Parse and materialize a commonsense assertion file.

    Every assertion either materializes exactly one edge (its endpoints are
    frames or restricted frames) or contributes exactly one rejection, so
    frame_edges + fer_edges + len(rejected) equals the assertion count.
    """
    report = FerIngestReport()
    for _, assertion, _ in read_assertions(source):
        start_parse = parse_phrase(store, assertion.start, language)
        if isinstance(start_parse, Reject):
            report.rejected.append(Rejection(assertion, "start", start_parse.reason))
            continue
        end_parse = parse_phrase(store, assertion.end, language)
        if isinstance(end_parse, Reject):
            report.rejected.append(Rejection(assertion, "end", end_parse.reason))
            continue
        before = len(store.fers)
        src = _materialize(store, start_parse, language)
        dst = _materialize(store, end_parse, language)
        report.fers_created += len(store.fers) - before
        store.put_edge(
            assertion.relation, src, dst, weight=assertion.weight, provenance=assertion.source
        )
        if ids.kind_of(src) == ids.SF and ids.kind_of(dst) == ids.SF:
            report.frame_edges += 1
        else:
            report.fer_edges += 1
    if needs_annotation_path is not None:
        write_needs_annotation(needs_annotation_path, report.rejected)
    return report


def write_needs_annotation(path: "str | os.PathLike", rejections: list[Rejection]) -> None:
    """Emit rejected assertions for curation: original fields + side + reason."""
    with open(os.fspath(path), "w", encoding="utf-8", newline="\n") as handle:
        handle.write("# startPhrase\trelation\tendPhrase\tweight\tsource\tside\treason\n")
        for rejection in rejections:
            fields = rejection.assertion.fields() + (rejection.side, rejection.reason)
            handle.write("\t".join(fields) + "\n")


# --- curated annotations ------------------------------------------------------


def import_annotations(store: Store, source, language: str = "en") -> AnnotationImportReport:
    """Load curated restricted frames.

    Records are ``surfaceForm<TAB>frameName<TAB>element=taxKey[;element=taxKey...]``.
    An annotated record replaces every automatic restricted frame that shares
    its surface form; edges touching a replaced node are re-pointed to the
    annotated one.
    """
    report = AnnotationImportReport()
    for line_no, fields, path in iter_records(source):
        if len(fields) != 3:
            raise ParseError(
                "annotation needs surfaceForm, frameName, element=taxonomyKey list",
                line_no,
                path,
            )
        surface_raw, frame_name, restriction_text = fields
        record_name = f"{path}:{line_no}"
        frame = store.frames.get(ids.frame_id(frame_name))
        if frame is None:
            raise UnresolvedName(record_name, "frame", frame_name)
        restrictions: set[tuple[str, str]] = set()
        for chunk in restriction_text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            element_name, sep, tax_key = chunk.partition("=")
            if not sep:
                raise ParseError(f"bad restriction {chunk!r}", line_no, path)
            element = frame.element_by_name(element_name.strip())
            if element is None:
                raise UnresolvedName(record_name, "element", element_name.strip())
            tax_id = ids.taxonomy_id(tax_key.strip())
            if tax_id not in store.taxonomy:
                raise UnresolvedName(record_name, "taxonomy key", tax_key.strip())
            restrictions.add((element.id, tax_id))
        if not restrictions:
            raise ParseError("annotation needs at least one restriction", line_no, path)

        surface = text.normalize_phrase(surface_raw)
        frozen = frozenset(restrictions)
        fer = Fer(
            id=ids.fer_id(frame.name, frozen, surface),
            frame=frame.id,
            restrictions=frozen,
            surface_form=surface,
            language=language,
            provenance="annotated",
        )
        replaced = [
            old_id
            for old_id in sorted(store.fers_by_surface.get(surface, set()))
            if old_id != fer.id and store.fers[old_id].provenance == "automatic"
        ]
        created = fer.id not in store.fers
        store.put_node(fer)
        if created:
            report.fers_created += 1
        for old_id in replaced:
            store.remove_fer(old_id)
            report.edges_repointed += store.repoint_edges(old_id, fer.id)
            report.fers_replaced += 1
    return report

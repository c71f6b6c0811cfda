"""Search and pattern queries over a frozen store.

Keyword search runs three stages and aggregates by node, keeping the best
score: exact frame-name match (1.0, underscore and space insensitive),
lexical-unit lookup of each lemmatized query token (0.9), and trigram
similarity against FER surface forms and entity labels (0.8 x similarity,
cut off below minSimilarity).  Ties sort frames before FERs before
entities, then by node id, so rankings are reproducible.

The pattern engine evaluates conjunctions of (s, p, o) patterns against the
triple projection.  Constants are adapted to the projection's value domain
per position: subjects are node ids, predicates are IRIs, objects are node
ids, class IRIs, or literals.  A well-formed constant that denotes nothing
in the store yields an empty result; only malformed syntax is an error.
Join order is a greedy plan (fewest unbound positions first, then the
constant-only cardinality estimate, then input order), and the result is
identical under any execution order, which the tests enforce by forcing
permutations through the _order hook.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from . import ids, text, vocab
from .errors import (
    EmptyQuery,
    PatternSyntaxError,
    UnboundProjection,
    VocabularyError,
)
from .model import DATATYPES, Literal
from .store import Store

logger = logging.getLogger(__name__)

MATCH_FRAME_NAME = "frameName"
MATCH_LEXICAL_UNIT = "lexicalUnit"
MATCH_FUZZY_LABEL = "fuzzyLabel"

_KIND_ORDER = {ids.SF: 0, ids.FER: 1, ids.EN: 2, ids.TX: 3, ids.FI: 4, ids.FE: 5}

_VAR_RE = re.compile(r"^\?([A-Za-z_][A-Za-z0-9_]*)$")


@dataclass(frozen=True)
class SearchHit:
    node: str
    kind: str
    match_type: str
    score: float
    matched_text: str

    def to_json(self) -> dict:
        return {
            "node": self.node,
            "kind": self.kind,
            "matchType": self.match_type,
            "score": self.score,
            "matchedText": self.matched_text,
        }


# --- keyword search -----------------------------------------------------------


def _name_key(value: str) -> str:
    return " ".join(text.normalize(value).replace("_", " ").split())


def search(
    store: Store,
    query: str,
    limit: int = 20,
    min_similarity: float = 0.5,
) -> list[SearchHit]:
    store._require_frozen("search")
    normalized = text.normalize_phrase(query)
    if not normalized:
        raise EmptyQuery("search query is empty")

    best: dict[str, SearchHit] = {}

    def offer(hit: SearchHit) -> None:
        seen = best.get(hit.node)
        if seen is None or hit.score > seen.score:
            best[hit.node] = hit

    query_key = _name_key(query)
    for name in sorted(store.frames_by_name):
        if _name_key(name) == query_key:
            frame_id = store.frames_by_name[name]
            offer(SearchHit(frame_id, ids.SF, MATCH_FRAME_NAME, 1.0, name))

    for token in text.tokenize(query):
        lemma = text.lemmatize(token)
        for frame_id in sorted(store.lu_by_lemma.get(lemma, ())):
            offer(SearchHit(frame_id, ids.SF, MATCH_LEXICAL_UNIT, 0.9, lemma))

    candidates = set(store.trigram_index.candidates(normalized))
    for token in normalized.split():
        candidates |= store.trigram_index.candidates(token)
    for node_id, label in sorted(candidates):
        similarity = text.trigram_similarity(normalized, label)
        if similarity >= min_similarity:
            offer(
                SearchHit(node_id, ids.kind_of(node_id), MATCH_FUZZY_LABEL, 0.8 * similarity, label)
            )

    ranked = sorted(
        best.values(),
        key=lambda hit: (-hit.score, _KIND_ORDER.get(hit.kind, 9), hit.node),
    )
    return ranked[: max(limit, 0)]


def search_payload(
    store: Store,
    query: str,
    limit: int = 20,
    min_similarity: float = 0.5,
) -> dict:
    """The search response shape shared by the CLI and the HTTP API."""
    hits = search(store, query, limit=limit, min_similarity=min_similarity)
    return {"query": query, "hits": [hit.to_json() for hit in hits]}


# --- pattern queries ----------------------------------------------------------


_UNMATCHABLE = object()


@dataclass(frozen=True)
class Term:
    """One pattern position: a variable or a constant.

    Constants keep both readings where they exist: ``node`` for the store's
    internal node id and ``iri`` for the raw IRI, because subjects match by
    node id while predicates match by IRI.
    """

    var: str | None = None
    node: str | None = None
    iri: str | None = None
    literal: Literal | None = None

    @property
    def is_var(self) -> bool:
        return self.var is not None

    def value_for(self, position: int):
        """Adapt the constant to a position: 0 subject, 1 predicate, 2 object."""
        if position == 0:
            return self.node if self.node is not None else _UNMATCHABLE
        if position == 1:
            if self.iri is not None:
                return self.iri
            if self.node is not None:
                return vocab.node_iri(self.node)
            return _UNMATCHABLE
        if self.literal is not None:
            return self.literal
        if self.node is not None:
            return self.node
        return self.iri if self.iri is not None else _UNMATCHABLE


@dataclass(frozen=True)
class TriplePattern:
    s: Term
    p: Term
    o: Term

    def terms(self) -> tuple[Term, Term, Term]:
        return (self.s, self.p, self.o)

    def variables(self) -> set[str]:
        return {t.var for t in self.terms() if t.is_var}


@dataclass(frozen=True)
class PatternQuery:
    variables: tuple[str, ...]
    patterns: tuple[TriplePattern, ...]


def _tokenize_pattern_line(line: str) -> list[str]:
    """Whitespace splitting that keeps quoted literals (with escapes) whole."""
    tokens: list[str] = []
    i = 0
    while i < len(line):
        ch = line[i]
        if ch.isspace():
            i += 1
            continue
        start = i
        if ch == '"':
            i += 1
            while i < len(line):
                if line[i] == "\\":
                    i += 2
                    continue
                if line[i] == '"':
                    i += 1
                    break
                i += 1
            else:
                raise PatternSyntaxError(f"unterminated literal in {line!r}")
            while i < len(line) and not line[i].isspace():
                i += 1
        else:
            while i < len(line) and not line[i].isspace():
                i += 1
        tokens.append(line[start:i])
    return tokens


def _const_from_iri(iri: str) -> Term:
    try:
        return Term(node=vocab.iri_to_node(iri), iri=iri)
    except VocabularyError:
        return Term(iri=iri)


_LITERAL_RE = re.compile(r'^"((?:[^"\\]|\\.)*)"\^\^(.+)$')


def _parse_term(token: str) -> Term:
    match = _VAR_RE.match(token)
    if match:
        return Term(var=match.group(1))
    if token.startswith("<") and token.endswith(">") and len(token) > 2:
        return _const_from_iri(token[1:-1])
    if token == "rdf:type":
        return Term(iri=vocab.RDF_TYPE)
    if token.startswith("cognet:") and len(token) > len("cognet:"):
        return _const_from_iri(vocab.NS + token[len("cognet:"):])
    literal = _LITERAL_RE.match(token)
    if literal:
        lexical = vocab.unescape_literal(literal.group(1))
        datatype = literal.group(2)
        if datatype.startswith("<") and datatype.endswith(">"):
            datatype = vocab.IRI_DATATYPES.get(datatype[1:-1], "")
        if datatype not in DATATYPES:
            raise PatternSyntaxError(f"unknown literal datatype in {token!r}")
        return Term(literal=Literal(lexical, datatype))
    if ids.is_node_id(token):
        return Term(node=token)
    raise PatternSyntaxError(f"cannot parse pattern term {token!r}")


def parse_pattern_query(source: str) -> PatternQuery:
    lines = [line.strip() for line in source.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines:
        raise PatternSyntaxError("empty pattern query")
    header = lines[0].split()
    if not header or header[0] != "SELECT" or len(header) < 2:
        raise PatternSyntaxError("first line must be: SELECT ?var [?var ...]")
    variables: list[str] = []
    for token in header[1:]:
        match = _VAR_RE.match(token)
        if not match:
            raise PatternSyntaxError(f"bad projection variable {token!r}")
        if match.group(1) not in variables:
            variables.append(match.group(1))
    patterns: list[TriplePattern] = []
    for line in lines[1:]:
        tokens = _tokenize_pattern_line(line)
        if len(tokens) != 3:
            raise PatternSyntaxError(f"pattern needs 3 terms: {line!r}")
        s, p, o = (_parse_term(token) for token in tokens)
        patterns.append(TriplePattern(s, p, o))
    if not patterns:
        raise PatternSyntaxError("query has no patterns")
    seen_vars = set().union(*(pattern.variables() for pattern in patterns))
    for name in variables:
        if name not in seen_vars:
            raise UnboundProjection(f"projected variable ?{name} not used in any pattern")
    return PatternQuery(tuple(variables), tuple(patterns))


def _plan(store: Store, query: PatternQuery) -> list[int]:
    """Greedy join order: fewest unbound positions, then narrowest constant
    scan, then original position."""

    def const_cardinality(pattern: TriplePattern) -> int:
        args = []
        for position, term in enumerate(pattern.terms()):
            if term.is_var:
                args.append(None)
                continue
            value = term.value_for(position)
            if value is _UNMATCHABLE:
                return 0
            args.append(value)
        return store.count_triples(*args)

    cards = [const_cardinality(p) for p in query.patterns]
    order: list[int] = []
    bound: set[str] = set()
    remaining = list(range(len(query.patterns)))
    while remaining:
        def key(index: int):
            pattern = query.patterns[index]
            free = len(pattern.variables() - bound)
            return (free, cards[index], index)

        best = min(remaining, key=key)
        remaining.remove(best)
        order.append(best)
        bound |= query.patterns[best].variables()
    return order


def evaluate_pattern(
    store: Store,
    query: PatternQuery,
    limit: int | None = None,
    _order: list[int] | None = None,
) -> list[tuple]:
    """Rows of projected values, deduplicated, in serialized lexicographic
    order.  _order forces a pattern execution order (testing hook)."""
    store._require_frozen("evaluate_pattern")
    order = list(_order) if _order is not None else _plan(store, query)
    if sorted(order) != list(range(len(query.patterns))):
        raise PatternSyntaxError("execution order must be a permutation of the patterns")

    rows: list[dict[str, object]] = [{}]
    for index in order:
        pattern = query.patterns[index]
        new_rows: list[dict[str, object]] = []
        for row in rows:
            args: list = []
            unusable = False
            for position, term in enumerate(pattern.terms()):
                if term.is_var:
                    args.append(row.get(term.var))
                else:
                    value = term.value_for(position)
                    if value is _UNMATCHABLE:
                        unusable = True
                        break
                    args.append(value)
            if unusable:
                continue
            for triple in store.match_triples(*args):
                extended = dict(row)
                consistent = True
                for term, value in zip(pattern.terms(), triple):
                    if not term.is_var:
                        continue
                    assigned = extended.get(term.var)
                    if assigned is None:
                        extended[term.var] = value
                    elif assigned != value:
                        consistent = False
                        break
                if consistent:
                    new_rows.append(extended)
        rows = new_rows
        if not rows:
            break

    projected = {tuple(row[name] for name in query.variables) for row in rows}
    ordered = sorted(projected, key=lambda values: tuple(_row_sort_key(v) for v in values))
    if limit is not None:
        ordered = ordered[: max(limit, 0)]
    return ordered


def _row_sort_key(value) -> str:
    return vocab.serialize_object(value)


def row_value_to_json(value) -> dict:
    if isinstance(value, Literal):
        return {"kind": "literal", "lexical": value.lexical, "datatype": value.datatype}
    if isinstance(value, str) and ids.is_node_id(value):
        return {"kind": "node", "id": value}
    return {"kind": "iri", "iri": value}


def rows_to_json(query: PatternQuery, rows: list[tuple]) -> dict:
    return {
        "variables": list(query.variables),
        "rows": [[row_value_to_json(value) for value in row] for row in rows],
    }


# --- frame catalog --------------------------------------------------------------


@dataclass(frozen=True)
class CatalogRow:
    frame: str
    name: str
    fers: int
    fis: int

    def to_json(self) -> dict:
        return {"id": self.frame, "name": self.name, "fers": self.fers, "fis": self.fis}


def explore_catalog(store: Store) -> list[CatalogRow]:
    """One row per frame, sorted by name, with incoming concretizes counts
    split by the concretizing node's kind."""
    store._require_frozen("explore_catalog")
    rows: list[CatalogRow] = []
    for name in sorted(store.frames_by_name):
        frame_id = store.frames_by_name[name]
        fers = 0
        fis = 0
        for edge, direction in store.neighbors(frame_id, "concretizes"):
            if direction != "in":
                continue
            kind = ids.kind_of(edge.src)
            if kind == ids.FER:
                fers += 1
            elif kind == ids.FI:
                fis += 1
        rows.append(CatalogRow(frame_id, name, fers, fis))
    return rows

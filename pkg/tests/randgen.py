"""Random store generation and independent oracles.

The generators build coherent stores straight from record types, bypassing
the ingestion file formats, so property tests can sweep shapes the sample
corpus does not cover.  The oracles reimplement documented behaviour in the
most naive way available (full scans, recursive closures, per-record
arithmetic) and share no evaluation machinery with the engine.
"""

from __future__ import annotations

import random

from cogkit import ids, vocab
from cogkit.model import (
    COMMONSENSE_RELATIONS,
    FRAME_RELATIONS,
    Entity,
    Fer,
    Frame,
    FrameElement,
    FrameInstance,
    Literal,
    TaxonomyType,
)
from cogkit.store import Store

WORDS = (
    "amber", "basalt", "cedar", "dune", "ember", "fjord", "garnet", "harbor",
    "iris", "juniper", "krill", "lagoon", "marble", "nectar", "onyx", "prairie",
    "quartz", "reef", "saffron", "tundra", "umber", "violet", "willow", "zephyr",
)

TORTURE_LABELS = (
    'quote " inside',
    "back\\slash",
    "line\nbreak",
    "tab\there",
    'all of it " \\ \n \t end',
)

_DATATYPE_SAMPLES = {
    "string": lambda rng: rng.choice(WORDS),
    "integer": lambda rng: str(rng.randint(-500, 500)),
    "decimal": lambda rng: f"{rng.randint(0, 99)}.{rng.randint(0, 99):02d}",
    "dateTime": lambda rng: f"16{rng.randint(10, 99)}-01-0{rng.randint(1, 9)}T00:00:00",
}


# --- generators ------------------------------------------------------------------


def add_random_taxonomy(rng: random.Random, store: Store, count: int) -> list[str]:
    """A random DAG: each type may point at one or two earlier types."""
    tax_ids: list[str] = []
    for i in range(count):
        key = f"t{i}"
        parents: list[str] = []
        if tax_ids and rng.random() < 0.8:
            parents = rng.sample(tax_ids, k=min(len(tax_ids), rng.choice((1, 1, 2))))
        node = TaxonomyType(
            id=ids.taxonomy_id(key),
            key=key,
            gloss=rng.choice(WORDS),
            lemmas=[(f"{rng.choice(WORDS)} {i}", 1)],
            hypernyms=sorted(parents),
        )
        store.put_node(node)
        tax_ids.append(node.id)
    return tax_ids


def add_random_frames(rng: random.Random, store: Store, count: int) -> list[str]:
    frame_ids: list[str] = []
    for i in range(count):
        name = f"F{i}"
        frame_id = ids.frame_id(name)
        elements = []
        for j in range(rng.randint(0, 4)):
            elements.append(
                FrameElement(
                    id=ids.element_id(name, f"E{j}"),
                    frame=frame_id,
                    name=f"E{j}",
                    coreness=rng.choice(("core", "core", "peripheral", "extrathematic")),
                )
            )
        units = [(word, rng.choice(("v", "n"))) for word in rng.sample(WORDS, rng.randint(0, 2))]
        store.put_node(
            Frame(
                id=frame_id,
                name=name,
                definition=rng.choice(WORDS),
                elements=elements,
                lexical_units=sorted(set(units)),
            )
        )
        frame_ids.append(frame_id)
    return frame_ids


def _frames_with_elements(store: Store) -> list[str]:
    return sorted(fid for fid, frame in store.frames.items() if frame.elements)


def add_random_fers(rng: random.Random, store: Store, count: int, tax_ids: list[str]) -> list[str]:
    anchors = _frames_with_elements(store)
    if not anchors or not tax_ids:
        return []
    fer_ids: list[str] = []
    for _ in range(count):
        frame = store.frames[rng.choice(anchors)]
        chosen = rng.sample(frame.elements, k=rng.randint(1, min(2, len(frame.elements))))
        restrictions = frozenset((e.id, rng.choice(tax_ids)) for e in chosen)
        surface = " ".join(rng.sample(WORDS, rng.randint(1, 3)))
        fer = Fer(
            id=ids.fer_id(frame.name, restrictions, surface),
            frame=frame.id,
            restrictions=restrictions,
            surface_form=surface,
            provenance=rng.choice(("automatic", "annotated")),
        )
        fer_ids.append(store.put_node(fer))
    return sorted(set(fer_ids))


def add_random_entities(
    rng: random.Random,
    store: Store,
    count: int,
    tax_ids: list[str],
    torture: bool = False,
) -> list[str]:
    entity_ids: list[str] = []
    for i in range(count):
        label = rng.choice(TORTURE_LABELS) if torture and rng.random() < 0.5 else rng.choice(WORDS)
        types = set(rng.sample(tax_ids, k=rng.randint(0, min(2, len(tax_ids))))) if tax_ids else set()
        entity = Entity(
            id=ids.entity_id(f"src{i}", f"e{i}"),
            canonical_label=label,
            alt_labels=sorted({rng.choice(WORDS)} - {label}) if rng.random() < 0.3 else [],
            types=types,
            source_refs=[(f"src{i}", f"e{i}")],
        )
        entity_ids.append(store.put_node(entity))
    return entity_ids


def add_random_instances(
    rng: random.Random,
    store: Store,
    count: int,
    entity_ids: list[str],
) -> list[str]:
    anchors = _frames_with_elements(store)
    if not anchors or not entity_ids:
        return []
    fi_ids: list[str] = []
    for i in range(count):
        frame = store.frames[rng.choice(anchors)]
        chosen = rng.sample(frame.elements, k=rng.randint(1, len(frame.elements)))
        bindings: dict[str, object] = {}
        for element in chosen:
            if rng.random() < 0.7:
                bindings[element.id] = rng.choice(entity_ids)
            else:
                datatype = rng.choice(tuple(_DATATYPE_SAMPLES))
                bindings[element.id] = Literal(_DATATYPE_SAMPLES[datatype](rng), datatype)
        provenance = (f"s{i}", f"subj{i}", f"pred{i}", f"obj{i}")
        fi = FrameInstance(
            id=ids.fi_id(provenance),
            frame=frame.id,
            bindings=bindings,
            provenance=provenance,
        )
        fi_ids.append(store.put_node(fi))
    return fi_ids


def add_random_edges(rng: random.Random, store: Store, count: int) -> None:
    frames = sorted(store.frames)
    fers = sorted(store.fers)
    entities = sorted(store.entities)
    for _ in range(count):
        choice = rng.random()
        if choice < 0.3 and len(frames) >= 2:
            src, dst = rng.sample(frames, 2)
            store.put_edge(rng.choice(FRAME_RELATIONS), src, dst, weight=rng.uniform(0.1, 2.0))
        elif choice < 0.7 and frames and (fers or len(frames) >= 2):
            pool = frames + fers
            src, dst = rng.choice(pool), rng.choice(pool)
            if src != dst:
                store.put_edge(
                    rng.choice(COMMONSENSE_RELATIONS), src, dst, weight=rng.uniform(0.1, 2.0)
                )
        elif len(entities) >= 2:
            src, dst = rng.sample(entities, 2)
            store.put_edge("sameAs", src, dst)


def random_store(
    seed: int,
    max_tax: int = 25,
    max_frames: int = 6,
    max_fers: int = 15,
    max_instances: int = 30,
    max_entities: int = 12,
    edge_count: int = 8,
    torture: bool = False,
) -> Store:
    """A coherent building-phase store that will pass freeze validation."""
    rng = random.Random(seed)
    store = Store()
    tax_ids = add_random_taxonomy(rng, store, rng.randint(1, max_tax))
    add_random_frames(rng, store, rng.randint(1, max_frames))
    if not _frames_with_elements(store):
        # guarantee one anchorable frame
        name = "Fanchor"
        store.put_node(
            Frame(
                id=ids.frame_id(name),
                name=name,
                elements=[
                    FrameElement(
                        id=ids.element_id(name, "E0"),
                        frame=ids.frame_id(name),
                        name="E0",
                        coreness="core",
                    )
                ],
            )
        )
    add_random_fers(rng, store, rng.randint(0, max_fers), tax_ids)
    entity_ids = add_random_entities(rng, store, rng.randint(1, max_entities), tax_ids, torture)
    add_random_instances(rng, store, rng.randint(0, max_instances), entity_ids)
    add_random_edges(rng, store, edge_count)
    return store


# --- independent oracles ----------------------------------------------------------


def dfs_ancestors(store: Store, tax_id: str) -> frozenset[str]:
    """Reflexive-transitive hypernym closure by plain recursion."""
    seen: set[str] = set()

    def walk(node: str) -> None:
        if node in seen:
            return
        seen.add(node)
        for parent in store.taxonomy[node].hypernyms:
            walk(parent)

    walk(tax_id)
    return frozenset(seen)


def brute_force_concretizes(store: Store) -> set[tuple[str, str]]:
    """Quadratic scan for every concretizes pair the linker should add."""
    closures = {tax_id: dfs_ancestors(store, tax_id) for tax_id in store.taxonomy}
    expected: set[tuple[str, str]] = set()
    for fer in store.fers.values():
        expected.add((fer.id, fer.frame))
    for fi in store.instances.values():
        expected.add((fi.id, fi.frame))
        for fer in store.fers.values():
            if fer.frame != fi.frame:
                continue
            if all(
                _restriction_holds(store, fi, element, required, closures)
                for element, required in fer.restrictions
            ):
                expected.add((fi.id, fer.id))
    return expected


def _restriction_holds(store, fi, element, required, closures) -> bool:
    value = fi.bindings.get(element)
    if not isinstance(value, str):
        return False
    entity = store.entities[value]
    return any(required in closures[tax_id] for tax_id in entity.types)


def expected_triple_count(store: Store) -> int:
    """Per-record arity arithmetic for the projection size.

    Valid when no two records emit an identical triple, which holds for the
    generated stores (distinct ids everywhere) and the sample corpus.
    """
    n = 0
    for frame in store.frames.values():
        n += 4 + len(frame.lexical_units) + len(frame.source_refs) + 5 * len(frame.elements)
    for node in store.taxonomy.values():
        n += 2 + len(node.lemmas) + len(node.hypernyms)
    for fer in store.fers.values():
        n += 5 + len(fer.restrictions)
    for entity in store.entities.values():
        n += 2 + len(entity.alt_labels) + len(entity.types) + len(entity.source_refs)
    for fi in store.instances.values():
        n += 1 + len(fi.bindings)
    return n + len(store.edges)


def naive_pattern_eval(store: Store, query) -> list[tuple]:
    """Full-scan nested-loop join in declaration order, no indexes."""
    triples = store.project_triples()
    rows: list[dict] = [{}]
    for pattern in query.patterns:
        extended: list[dict] = []
        for row in rows:
            for triple in triples:
                bindings = dict(row)
                if _naive_match(pattern, triple, bindings):
                    extended.append(bindings)
        rows = extended
    projected = {tuple(row[name] for name in query.variables) for row in rows}
    return sorted(
        projected, key=lambda values: tuple(vocab.serialize_object(v) for v in values)
    )


def _naive_match(pattern, triple, bindings) -> bool:
    for position, (term, value) in enumerate(zip(pattern.terms(), triple)):
        if term.is_var:
            if term.var in bindings:
                if bindings[term.var] != value:
                    return False
            else:
                bindings[term.var] = value
            continue
        if term.literal is not None:
            if position != 2 or value != term.literal:
                return False
        elif position == 0:
            if term.node is None or value != term.node:
                return False
        elif position == 1:
            iri = term.iri if term.iri is not None else (
                vocab.node_iri(term.node) if term.node is not None else None
            )
            if iri is None or value != iri:
                return False
        else:
            if term.node is not None:
                if value != term.node:
                    return False
            elif term.iri is None or value != term.iri:
                return False
    return True


def random_query_text(rng: random.Random, store: Store, max_patterns: int = 3) -> str:
    """Query text built by abstracting positions of real projection triples."""
    triples = store.project_triples()
    names = ("a", "b", "c", "d")
    pattern_tokens: list[list[str]] = []
    used: list[str] = []
    for _ in range(rng.randint(1, max_patterns)):
        base = rng.choice(triples)
        tokens: list[str] = []
        for position, value in enumerate(base):
            if rng.random() < 0.45:
                name = rng.choice(names)
                tokens.append(f"?{name}")
                if name not in used:
                    used.append(name)
            else:
                tokens.append(_term_text(rng, value, position))
        pattern_tokens.append(tokens)
    if not used:
        name = rng.choice(names)
        pattern_tokens[0][0] = f"?{name}"
        used.append(name)
    projected = used if rng.random() < 0.7 else used[: rng.randint(1, len(used))]
    lines = ["SELECT " + " ".join(f"?{name}" for name in projected)]
    lines.extend(" ".join(tokens) for tokens in pattern_tokens)
    return "\n".join(lines)


def _term_text(rng: random.Random, value, position: int) -> str:
    if isinstance(value, Literal):
        lexical = vocab.escape_literal(value.lexical)
        if rng.random() < 0.5:
            return f'"{lexical}"^^{value.datatype}'
        return f'"{lexical}"^^<{vocab.DATATYPE_IRIS[value.datatype]}>'
    if ids.is_node_id(value):
        style = rng.random()
        if style < 0.4 and position != 1:
            return value
        iri = vocab.node_iri(value)
        if style < 0.7:
            return f"<{iri}>"
        return "cognet:" + iri[len(vocab.NS):]
    if value == vocab.RDF_TYPE and rng.random() < 0.6:
        return "rdf:type"
    if value.startswith(vocab.NS) and rng.random() < 0.4:
        return "cognet:" + value[len(vocab.NS):]
    return f"<{value}>"


def merge_snapshot(store: Store) -> dict:
    """Everything entity merging is allowed to touch, in comparable form."""
    return {
        "entities": {
            eid: (
                entity.canonical_label,
                tuple(entity.alt_labels),
                tuple(sorted(entity.types)),
                tuple(entity.source_refs),
            )
            for eid, entity in store.entities.items()
        },
        "refs": dict(store.source_ref_index),
        "retired": frozenset(store.retired_entities),
        "sameas": frozenset(key for key in store.edges if key[0] == "sameAs"),
        "bindings": {
            fi.id: tuple(
                sorted(
                    (element, value if isinstance(value, str) else value.sort_key())
                    for element, value in fi.bindings.items()
                )
            )
            for fi in store.instances.values()
        },
    }

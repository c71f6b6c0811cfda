"""Node identifier scheme.

Ids are kind-prefixed strings derived from record content, never from
insertion order, so rebuilding a store from the same inputs always produces
the same ids:

    sf:<frame name>                  semantic frame
    fe:<frame name>/<element name>   frame element
    tx:<synset key>                  taxonomy type
    fer:<hash>                       frame with element restrictions
    fi:<hash>                        frame instance
    en:<hash>                        entity

The ``lit:`` prefix is reserved for keying literals inside indexes and never
names a stored node.  Hashes are truncated SHA-256 over a canonical joining
of the content fields; tab cannot occur inside TSV fields, so it doubles as
an unambiguous separator.
"""

from __future__ import annotations

import hashlib
from typing import Iterable, Sequence

SF = "sf"
FE = "fe"
TX = "tx"
FER = "fer"
FI = "fi"
EN = "en"
LIT = "lit"

NODE_KINDS = (SF, FE, TX, FER, FI, EN)


def _digest(parts: Sequence[str]) -> str:
    joined = "\x1f".join(parts)
    return hashlib.sha256(joined.encode("utf-8")).hexdigest()[:16]


def kind_of(node_id: str) -> str:
    """Return the kind prefix of a node id, or raise ValueError."""
    prefix, sep, rest = node_id.partition(":")
    if not sep or not rest or prefix not in NODE_KINDS:
        raise ValueError(f"malformed node id: {node_id!r}")
    return prefix


def is_node_id(value: str) -> bool:
    try:
        kind_of(value)
    except ValueError:
        return False
    return True


def frame_id(name: str) -> str:
    return f"{SF}:{name}"


def element_id(frame_name: str, element_name: str) -> str:
    return f"{FE}:{frame_name}/{element_name}"


def taxonomy_id(key: str) -> str:
    return f"{TX}:{key}"


def fer_id(frame_name: str, restrictions: Iterable[tuple[str, str]], surface_form: str) -> str:
    """Hash of (frame name, sorted restriction pairs, surface form)."""
    restr = sorted(f"{elem}\t{typ}" for elem, typ in restrictions)
    return f"{FER}:" + _digest(["fer", frame_name, surface_form, *restr])


def fi_id(provenance: Sequence[str]) -> str:
    """Hash of the source (name, subject, predicate, object) quadruple."""
    source, subject, predicate, obj = provenance
    return f"{FI}:" + _digest(["fi", source, subject, predicate, obj])


def entity_id(source_name: str, source_id: str) -> str:
    """Hash of the (source, id) pair that first registered the entity."""
    return f"{EN}:" + _digest(["en", source_name, source_id])

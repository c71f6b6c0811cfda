"""RDF vocabulary: the IRI scheme shared by the triple projection and the
N-Triples round-trip.

Every node id maps to exactly one IRI and back.  Name segments are
percent-encoded with a fixed safe set so frame or taxonomy names survive the
trip bytewise even when they contain characters N-Triples forbids inside an
IRIREF.  Literals always carry an xsd datatype so object terms never need
language-tag or plain-literal handling.
"""

from __future__ import annotations

from urllib.parse import quote, unquote

from . import ids
from .errors import VocabularyError
from .model import Literal

NS = "http://cognet.example/ns#"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
XSD = "http://www.w3.org/2001/XMLSchema#"

DATATYPE_IRIS = {
    "string": XSD + "string",
    "integer": XSD + "integer",
    "decimal": XSD + "decimal",
    "dateTime": XSD + "dateTime",
}
IRI_DATATYPES = {iri: name for name, iri in DATATYPE_IRIS.items()}

CLASS_FRAME = NS + "Frame"
CLASS_ELEMENT = NS + "FrameElement"
CLASS_TAXONOMY = NS + "TaxonomyType"
CLASS_FER = NS + "Fer"
CLASS_ENTITY = NS + "Entity"

# Attribute predicates.  Imports treat anything outside this set (and the
# structured fe/, restrict/, rel/ paths) as a vocabulary violation.
P_NAME = NS + "name"
P_DEFINITION = NS + "definition"
P_LANGUAGE = NS + "language"
P_CORENESS = NS + "coreness"
P_INDEX = NS + "index"
P_FRAME = NS + "frame"
P_LEXICAL_UNIT = NS + "lexicalUnit"
P_SOURCE_REF = NS + "sourceRef"
P_GLOSS = NS + "gloss"
P_LEMMA = NS + "lemma"
P_HYPERNYM = NS + "hypernym"
P_SURFACE_FORM = NS + "surfaceForm"
P_PROVENANCE = NS + "provenance"
P_LABEL = NS + "label"
P_ALT_LABEL = NS + "altLabel"
P_ENTITY_TYPE = NS + "entityType"

ATTRIBUTE_PREDICATES = frozenset(
    {
        P_NAME,
        P_DEFINITION,
        P_LANGUAGE,
        P_CORENESS,
        P_INDEX,
        P_FRAME,
        P_LEXICAL_UNIT,
        P_SOURCE_REF,
        P_GLOSS,
        P_LEMMA,
        P_HYPERNYM,
        P_SURFACE_FORM,
        P_PROVENANCE,
        P_LABEL,
        P_ALT_LABEL,
        P_ENTITY_TYPE,
    }
)

_SEGMENT_SAFE = ""  # encode everything outside the unreserved set


def _q(segment: str) -> str:
    return quote(segment, safe=_SEGMENT_SAFE)


def node_iri(node_id: str) -> str:
    """Map a node id to its IRI."""
    kind = ids.kind_of(node_id)
    rest = node_id.split(":", 1)[1]
    if kind == ids.SF:
        return f"{NS}frame/{_q(rest)}"
    if kind == ids.FE:
        frame_name, _, element_name = rest.partition("/")
        return f"{NS}fe/{_q(frame_name)}/{_q(element_name)}"
    if kind == ids.TX:
        return f"{NS}tx/{_q(rest)}"
    # fer/fi/en ids embed a hex hash that needs no quoting
    return f"{NS}{kind}/{rest}"


def iri_to_node(iri: str) -> str:
    """Invert node_iri.  Raises VocabularyError for foreign or bad paths."""
    if not iri.startswith(NS):
        raise VocabularyError(f"IRI outside namespace: {iri}")
    tail = iri[len(NS):]
    head, _, rest = tail.partition("/")
    if not rest:
        raise VocabularyError(f"not a node IRI: {iri}")
    if head == "frame":
        return ids.frame_id(unquote(rest))
    if head == "fe":
        frame_part, sep, element_part = rest.partition("/")
        if not sep:
            raise VocabularyError(f"bad element IRI: {iri}")
        return ids.element_id(unquote(frame_part), unquote(element_part))
    if head == "tx":
        return ids.taxonomy_id(unquote(rest))
    if head in (ids.FER, ids.FI, ids.EN):
        return f"{head}:{rest}"
    raise VocabularyError(f"unknown IRI path: {iri}")


def frame_class_iri(frame_name: str) -> str:
    return f"{NS}frame/{_q(frame_name)}"


def element_predicate(frame_name: str, element_name: str) -> str:
    """Binding predicates reuse the element's own IRI."""
    return f"{NS}fe/{_q(frame_name)}/{_q(element_name)}"


def restriction_predicate(frame_name: str, element_name: str) -> str:
    return f"{NS}restrict/{_q(frame_name)}/{_q(element_name)}"


def relation_iri(relation: str) -> str:
    return f"{NS}rel/{_q(relation)}"


def relation_from_iri(iri: str) -> str:
    return unquote(iri[len(NS) + len("rel/"):])


# --- N-Triples term serialization -------------------------------------------

_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


def escape_literal(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def unescape_literal(text: str) -> str:
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n:
            raise ValueError("dangling escape")
        nxt = text[i + 1]
        simple = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}
        if nxt in simple:
            out.append(simple[nxt])
            i += 2
        elif nxt == "u":
            out.append(chr(int(text[i + 2 : i + 6], 16)))
            i += 6
        elif nxt == "U":
            out.append(chr(int(text[i + 2 : i + 10], 16)))
            i += 10
        else:
            raise ValueError(f"bad escape \\{nxt}")
    return "".join(out)


def serialize_iri(iri: str) -> str:
    return f"<{iri}>"


def serialize_literal(lit: Literal) -> str:
    dt = DATATYPE_IRIS.get(lit.datatype)
    if dt is None:
        raise VocabularyError(f"unknown literal datatype: {lit.datatype}")
    return f'"{escape_literal(lit.lexical)}"^^<{dt}>'


def serialize_object(obj: "str | Literal") -> str:
    """Objects may be node ids, bare class IRIs, or literals."""
    if isinstance(obj, Literal):
        return serialize_literal(obj)
    if ids.is_node_id(obj):
        return serialize_iri(node_iri(obj))
    return serialize_iri(obj)


def triple_sort_key(triple: tuple[str, str, "str | Literal"]) -> tuple[str, str, str]:
    s, p, o = triple
    return (serialize_iri(node_iri(s)), serialize_iri(p), serialize_object(o))

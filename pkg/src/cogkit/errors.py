"""Exception hierarchy for the knowledge-base engine.

Every error raised by this package derives from CogkitError so callers can
catch engine failures without swallowing programming mistakes.  Ingestion
errors carry the offending line number where one exists.
"""

from __future__ import annotations


class CogkitError(Exception):
    """Base class for all engine errors."""

    code = "error"


class PhaseError(CogkitError):
    """Operation not allowed in the store's current lifecycle phase."""

    code = "phase"


class InvariantError(CogkitError):
    """A record violates a structural invariant."""

    code = "invariant"


class MissingNodeError(CogkitError):
    """A referenced node id does not resolve to a stored node."""

    code = "missing_node"


class EndpointKindError(CogkitError):
    """An edge connects node kinds its relation does not allow."""

    code = "endpoint_kind"


class ValidationFailed(CogkitError):
    """Freeze-time validation found violations; the store stays mutable."""

    code = "validation_failed"

    def __init__(self, report):
        self.report = report
        lines = "; ".join(v.message for v in report.violations[:5])
        super().__init__(f"{len(report.violations)} violation(s): {lines}")


class ParseError(CogkitError):
    """A flat input file has a malformed line."""

    code = "parse"

    def __init__(self, reason: str, line: int | None = None, path: str | None = None):
        self.reason = reason
        self.line = line
        self.path = path
        where = f"{path or '<input>'}:{line}" if line is not None else (path or "<input>")
        super().__init__(f"{where}: {reason}")


class DuplicateKeyError(ParseError):
    """A taxonomy file declares the same synset key twice."""

    code = "duplicate_key"


class UnknownLemma(CogkitError):
    """No taxonomy type lists the lemma."""

    code = "unknown_lemma"


class NoAssignableElement(CogkitError):
    """No frame element is left for a filler."""

    code = "no_assignable_element"


class UnresolvedName(CogkitError):
    """A record names a frame, element, or taxonomy key that does not exist."""

    code = "unresolved_name"

    def __init__(self, record: str, field: str, value: str):
        self.record = record
        self.field = field
        self.value = value
        super().__init__(f"{record}: unknown {field} {value!r}")


class DatatypeError(CogkitError):
    """A literal does not satisfy its declared datatype."""

    code = "datatype"


class EmptyQuery(CogkitError):
    """The search query contains no usable characters."""

    code = "empty_query"


class PatternSyntaxError(CogkitError):
    """The pattern query text is malformed."""

    code = "bad_pattern"


class UnboundProjection(CogkitError):
    """A projected variable never occurs in any pattern."""

    code = "unbound_projection"


class VocabularyError(CogkitError):
    """An imported triple uses a predicate or class outside the vocabulary."""

    code = "vocabulary"


class ReconstructionError(CogkitError):
    """Imported triples cannot be assembled into valid records."""

    code = "reconstruction"


class SinkError(CogkitError):
    """The export sink could not be written."""

    code = "sink"


class BindError(CogkitError):
    """The HTTP server could not bind its address."""

    code = "bind"

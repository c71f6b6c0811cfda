"""Shared reader for the flat tab-separated input files.

All ingestion formats are UTF-8 TSV with full-line ``#`` comments and blank
lines ignored.  Fields themselves can never contain tabs, which is what lets
tab double as a safe separator inside derived values elsewhere.
"""

from __future__ import annotations

import io
import os
from typing import Iterator, TextIO

from .errors import ParseError


def open_text(source: "str | os.PathLike | TextIO"):
    """Return (file object, display name, should_close)."""
    if hasattr(source, "read"):
        name = getattr(source, "name", "<stream>")
        return source, str(name), False
    path = os.fspath(source)
    return io.open(path, "r", encoding="utf-8", newline=""), path, True


def iter_records(
    source: "str | os.PathLike | TextIO",
    min_fields: int | None = None,
    max_fields: int | None = None,
) -> Iterator[tuple[int, list[str], str]]:
    """Yield (line number, fields, path) for every record line."""
    handle, path, should_close = open_text(source)
    try:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if min_fields is not None and len(fields) < min_fields:
                raise ParseError(
                    f"expected at least {min_fields} fields, got {len(fields)}",
                    line_no,
                    path,
                )
            if max_fields is not None and len(fields) > max_fields:
                raise ParseError(
                    f"expected at most {max_fields} fields, got {len(fields)}",
                    line_no,
                    path,
                )
            yield line_no, fields, path
    finally:
        if should_close:
            handle.close()

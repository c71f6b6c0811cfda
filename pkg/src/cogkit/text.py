"""Normalization, the rule-based lemmatizer, and trigram similarity.

The lemmatizer is deliberately small: a static exception table shipped with
the package plus a handful of suffix rules (-ies, -es, -s, -ed, -ing with
doubled-consonant repair).  It is context free, so the same token always
yields the same lemma.  Anything the rules get wrong for a given corpus
belongs in the exception table.
"""

from __future__ import annotations

import unicodedata
from importlib import resources

_VOWELS = set("aeiou")
# Doubled finals that are usually genuine English spellings (call, pass,
# buzz, stuff) and must not be collapsed by the doubling repair.
_KEEP_DOUBLED = set("lszf")


def _load_lines(name: str) -> list[str]:
    raw = resources.files("cogkit.data").joinpath(name).read_text(encoding="utf-8")
    lines = []
    for line in raw.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return lines


def _load_exceptions() -> dict[str, str]:
    table = {}
    for line in _load_lines("lemma_exceptions.txt"):
        surface, _, lemma = line.partition("\t")
        table[surface] = lemma
    return table


LEMMA_EXCEPTIONS = _load_exceptions()
STOPWORDS = frozenset(_load_lines("stopwords.txt"))
PREPOSITIONS = frozenset(_load_lines("prepositions.txt"))


def normalize(text: str) -> str:
    """NFC, lowercase, trim."""
    return unicodedata.normalize("NFC", text).lower().strip()


def normalize_phrase(text: str) -> str:
    """normalize() plus collapsing internal whitespace runs."""
    return " ".join(normalize(text).split())


def tokenize(text: str) -> list[str]:
    return normalize(text).split()


def _repair_doubling(stem: str) -> str:
    if (
        len(stem) >= 3
        and stem[-1] == stem[-2]
        and stem[-1] not in _VOWELS
        and stem[-1] not in _KEEP_DOUBLED
    ):
        return stem[:-1]
    return stem


def lemmatize(token: str) -> str:
    """Map one normalized token to its lemma."""
    word = normalize(token)
    hit = LEMMA_EXCEPTIONS.get(word)
    if hit is not None:
        return hit
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("ied") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("es") and len(word) > 3:
        stem = word[:-2]
        # strip -es only where e-insertion happens; otherwise the plain -s
        # rule below handles it (likes -> like needs only the s dropped)
        if stem.endswith(("s", "x", "z", "ch", "sh", "o")):
            return stem
    if word.endswith("s") and not word.endswith("ss") and len(word) > 3:
        return word[:-1]
    if word.endswith("ing") and len(word) > 5:
        return _repair_doubling(word[:-3])
    if word.endswith("ed") and len(word) > 3:
        return _repair_doubling(word[:-2])
    return word


# --- trigram similarity ------------------------------------------------------

_PAD = "  "


def trigrams(text: str) -> frozenset[str]:
    """Padded character trigrams of a normalized string."""
    s = normalize_phrase(text)
    if not s:
        return frozenset()
    padded = _PAD + s + _PAD
    return frozenset(padded[i : i + 3] for i in range(len(padded) - 2))


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a or not b:
        return 0.0
    inter = len(a & b)
    if inter == 0:
        return 0.0
    return inter / (len(a) + len(b) - inter)


def trigram_similarity(query: str, label: str) -> float:
    """Best trigram-Jaccard of the query against the whole label or any of
    its tokens.

    The per-token leg lets a query for one word of a long label score above
    threshold, while an exact match still scores 1.0.
    """
    q = trigrams(query)
    if not q:
        return 0.0
    best = _jaccard(q, trigrams(label))
    for token in normalize_phrase(label).split():
        if best >= 1.0:
            break
        best = max(best, _jaccard(q, trigrams(token)))
    return best

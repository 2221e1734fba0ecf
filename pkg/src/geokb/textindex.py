"""In-memory text search over entry metadata.

Two query styles: ``simple_search`` runs a case-insensitive regular
expression over the name field only (substring match unless the pattern
uses ``^``/``$``), while ``extended_search`` tokenizes the query and scores
entries across name, keywords, shortDescription and description with
OR semantics and field-weighted term frequency.

The index is volatile: repositories rebuild it from persisted entries at
startup.  Many concurrent readers or one writer; callers serialize
mutations.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from .errors import NotFoundError, PatternError

#: score weight per field for extended search
FIELD_WEIGHTS = {"name": 4, "keywords": 3, "shortDescription": 2, "description": 1}

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercase tokens split on anything non-alphanumeric."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class IndexedEntry:
    identifier: str
    name: str
    description: str = ""
    short_description: str = ""
    keywords: tuple[str, ...] = ()


@dataclass(frozen=True)
class SearchHit:
    identifier: str
    score: int
    matched_fields: frozenset[str]


class TextIndex:
    def __init__(self, field_weights: dict[str, int] | None = None):
        self._weights = dict(FIELD_WEIGHTS if field_weights is None else field_weights)
        self._entries: dict[str, IndexedEntry] = {}
        self._tokens: dict[str, dict[str, Counter[str]]] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, identifier: str) -> bool:
        return identifier in self._entries

    def identifiers(self) -> list[str]:
        return sorted(self._entries)

    def index_entry(self, entry: IndexedEntry) -> None:
        """Add or replace; re-indexing an identifier overwrites it."""
        self._entries[entry.identifier] = entry
        self._tokens[entry.identifier] = {
            "name": Counter(tokenize(entry.name)),
            "keywords": Counter(t for k in entry.keywords for t in tokenize(k)),
            "shortDescription": Counter(tokenize(entry.short_description)),
            "description": Counter(tokenize(entry.description)),
        }

    def remove_entry(self, identifier: str) -> None:
        if identifier not in self._entries:
            raise NotFoundError(f"no indexed entry {identifier!r}")
        del self._entries[identifier]
        del self._tokens[identifier]

    def simple_search(self, pattern: str) -> list[str]:
        """Identifiers whose name matches the pattern, sorted."""
        try:
            rx = re.compile(pattern, re.IGNORECASE)
        except re.error as exc:
            raise PatternError(f"invalid pattern {pattern!r}: {exc}") from exc
        return sorted(i for i, e in self._entries.items() if rx.search(e.name))

    def extended_search(self, query: str) -> list[SearchHit]:
        """Hits with positive field-weighted term-frequency score, best first."""
        tokens = tokenize(query)
        if not tokens:
            return []
        hits: list[SearchHit] = []
        for identifier, fields in self._tokens.items():
            score = 0
            matched: set[str] = set()
            for field, counter in fields.items():
                raw = sum(counter[t] for t in tokens)
                if raw:
                    score += raw * self._weights[field]
                    matched.add(field)
            if score:
                hits.append(SearchHit(identifier, score, frozenset(matched)))
        hits.sort(key=lambda h: (-h.score, h.identifier))
        return hits

"""Dictionaries as sets of (definiendum, definientes) entries and their graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import (
    DuplicateEntryError,
    EmptyDefinitionError,
    NotClosedError,
    ParseError,
    SelfDefinitionError,
)
from .graph import DirectedGraph, sources


@dataclass(frozen=True)
class Entry:
    word: str
    definition: frozenset

    def __init__(self, word: str, definition: Iterable[str]):
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "definition", frozenset(definition))


class Dictionary(Mapping):
    """Validated, closed dictionary: one entry per word, every definiens defined.

    Construction validates; use :func:`validate` for the functional spelling.
    """

    def __init__(self, entries: Iterable[Entry]):
        table: dict[str, Entry] = {}
        for e in entries:
            if not e.definition:
                raise EmptyDefinitionError(e.word)
            if e.word in e.definition:
                raise SelfDefinitionError(e.word)
            if e.word in table:
                raise DuplicateEntryError(e.word)
            table[e.word] = e
        missing = set()
        for e in table.values():
            missing.update(w for w in e.definition if w not in table)
        if missing:
            raise NotClosedError(missing)
        self._entries = dict(sorted(table.items()))

    def __getitem__(self, word) -> Entry:
        return self._entries[word]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __repr__(self):
        return f"Dictionary({len(self)} entries)"

    def __eq__(self, other):
        if isinstance(other, Dictionary):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._entries.values()))

    @property
    def words(self) -> list[str]:
        return list(self._entries)

    def entries(self) -> list[Entry]:
        return list(self._entries.values())


def validate(entries: Iterable[Entry]) -> Dictionary:
    return Dictionary(entries)


def associated_graph(d: Dictionary) -> DirectedGraph:
    """Arc u -> v whenever u occurs in the definition of v."""
    g = DirectedGraph(
        d.words,
        ((u, e.word) for e in d.values() for u in e.definition),
    )
    assert not g.self_loops(), "associated graphs are loopless"
    assert not sources(g), "associated graphs have no sources"
    return g


def dictionary_from_graph(g: DirectedGraph) -> Dictionary:
    """Inverse of :func:`associated_graph`: read definitions off in-neighbourhoods."""
    return Dictionary(Entry(v, g.predecessors(v)) for v in g)


# --- canonical text / JSON forms ------------------------------------------


def dumps(d: Dictionary) -> str:
    """``word<TAB>definiens definiens ...`` lines, sorted."""
    return "".join(f"{e.word}\t{' '.join(sorted(e.definition))}\n" for e in d.values())


def loads(text: str) -> Dictionary:
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        if line.count("\t") != 1:
            raise ParseError("expected 'word<TAB>definition'", lineno)
        word, definition = line.split("\t")
        entries.append(Entry(word, definition.split()))
    return Dictionary(entries)


def dumps_json(d: Dictionary) -> str:
    payload = [{"word": e.word, "definition": sorted(e.definition)} for e in d.values()]
    return json.dumps(payload, indent=1, ensure_ascii=False) + "\n"


def loads_json(text: str) -> Dictionary:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from exc
    if not isinstance(payload, list):
        raise ParseError("top-level JSON value must be a list")
    entries = []
    for i, item in enumerate(payload):
        if not isinstance(item, dict) or "word" not in item or "definition" not in item:
            raise ParseError(f"item {i}: expected {{'word': ..., 'definition': [...]}}")
        entries.append(Entry(item["word"], item["definition"]))
    return Dictionary(entries)

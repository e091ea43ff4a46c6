"""Psycholinguistic norm tables: loading, merging and joining onto levels."""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Mapping
from dataclasses import dataclass

from .errors import NoOverlapError, ParseError
from .graph import HierarchyLevels
from .porter import porter_stem

VARIABLES = ("aoa", "c", "i", "bf", "tlf")
HEADER = ("word",) + VARIABLES


@dataclass(frozen=True)
class NormRecord:
    aoa: float | None = None
    c: float | None = None
    i: float | None = None
    bf: float | None = None
    tlf: float | None = None

    def get(self, variable: str) -> float | None:
        return getattr(self, variable)

    def present(self) -> tuple[str, ...]:
        return tuple(v for v in VARIABLES if getattr(self, v) is not None)

    def complete(self) -> bool:
        return all(getattr(self, v) is not None for v in VARIABLES)


class NormTable(Mapping):
    """word -> NormRecord; every retained row has at least one value."""

    def __init__(self, rows: Mapping[str, NormRecord] | None = None, rejected: int = 0):
        self._rows = dict(sorted((rows or {}).items()))
        for w, r in self._rows.items():
            if not r.present():
                raise ValueError(f"norm row for {w!r} has no values")
        self.rejected = rejected

    def __getitem__(self, word):
        return self._rows[word]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self):
        return len(self._rows)

    def __eq__(self, other):
        if isinstance(other, NormTable):
            return self._rows == other._rows
        return NotImplemented

    def __repr__(self):
        return f"NormTable({len(self)} words)"

    def coverage(self, words) -> float:
        words = set(words)
        return len(words & self._rows.keys()) / len(words) if words else 0.0


def _parse_value(text: str, lineno: int, column: str) -> float | None:
    text = text.strip()
    if not text:
        return None
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"column {column!r}: {text!r} is not a number", lineno) from None


def load_norms(source, stem: bool = True) -> NormTable:
    """Read ``word,aoa,c,i,bf,tlf`` CSV; blank cells are missing.

    Words are lowercased (and stemmed unless ``stem=False``); rows that
    collapse onto one word are averaged per variable over the rows that
    supply it. Rows without any value are dropped and counted.
    """
    text = source if isinstance(source, str) else source.read()
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty norms file", 1) from None
    if tuple(h.strip().lower() for h in header) != HEADER:
        raise ParseError(f"expected header {','.join(HEADER)}", 1)
    sums: dict[str, dict[str, list[float]]] = {}
    rejected = 0
    for lineno, row in enumerate(reader, 2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(HEADER):
            raise ParseError(f"expected {len(HEADER)} columns, got {len(row)}", lineno)
        word = row[0].strip().lower()
        if not word:
            raise ParseError("empty word", lineno)
        values = {v: _parse_value(x, lineno, v) for v, x in zip(VARIABLES, row[1:])}
        if all(x is None for x in values.values()):
            rejected += 1
            continue
        key = porter_stem(word) if stem else word
        acc = sums.setdefault(key, {v: [] for v in VARIABLES})
        for v, x in values.items():
            if x is not None:
                acc[v].append(x)
    rows = {
        w: NormRecord(**{v: (sum(xs) / len(xs) if xs else None) for v, xs in acc.items()})
        for w, acc in sums.items()
    }
    return NormTable(rows, rejected)


def merge_norms(tables) -> NormTable:
    """Per word and variable, the first table supplying a value wins."""
    tables = list(tables)
    if not tables:
        raise ValueError("merge_norms needs at least one table")
    merged: dict[str, dict[str, float | None]] = {}
    for t in tables:
        for w, rec in t.items():
            slot = merged.setdefault(w, {v: None for v in VARIABLES})
            for v in VARIABLES:
                if slot[v] is None:
                    slot[v] = rec.get(v)
    return NormTable({w: NormRecord(**vals) for w, vals in merged.items()})


FREQUENCY_VARIABLES = ("bf", "tlf")


def log_frequencies(table: NormTable, variables=FREQUENCY_VARIABLES) -> NormTable:
    """Replace frequency counts x by log10(1 + x); other variables are untouched."""
    rows = {}
    for w, rec in table.items():
        vals = {v: rec.get(v) for v in VARIABLES}
        for v in variables:
            x = vals[v]
            if x is None:
                continue
            if x < 0:
                raise ValueError(f"negative frequency {x!r} for {w!r} ({v})")
            vals[v] = math.log10(1.0 + x)
        rows[w] = NormRecord(**vals)
    return NormTable(rows, table.rejected)


@dataclass(frozen=True)
class Observation:
    word: str
    level: int
    values: NormRecord


@dataclass(frozen=True)
class LeveledObservations:
    records: tuple[Observation, ...]
    coverage: float
    dropped: int = 0  # norm words absent from the hierarchy
    kind: str = "custom"

    def __len__(self):
        return len(self.records)

    def levels(self) -> list[int]:
        return sorted({r.level for r in self.records})

    def restrict(self, exclude_levels=(), level_range=None) -> "LeveledObservations":
        lo, hi = level_range if level_range is not None else (None, None)
        keep = tuple(
            r
            for r in self.records
            if r.level not in exclude_levels
            and (lo is None or r.level >= lo)
            and (hi is None or r.level <= hi)
        )
        return LeveledObservations(keep, self.coverage, self.dropped, self.kind)


def join_levels(levels: HierarchyLevels, norms: NormTable) -> LeveledObservations:
    """Inner join of hierarchy levels with norms on the word."""
    graph_words = levels.levels
    records = tuple(
        Observation(w, graph_words[w], norms[w]) for w in sorted(norms) if w in graph_words
    )
    if not records:
        raise NoOverlapError("no word has both a level and a norm value")
    coverage = len(records) / len(graph_words)
    return LeveledObservations(records, coverage, len(norms) - len(records), levels.kind)

"""Raw dictionary parsing and normalization into a closed :class:`Dictionary`.

Normalization order is fixed:

1. stem headwords and definition tokens (Porter);
2. keep the first sense of each stemmed headword;
3. drop self-references (loops);
4. drop entries whose definition became empty;
5. drop definientes that no longer have an entry;

and 3-5 repeat until nothing changes.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass

from .dictionary import Dictionary, Entry
from .errors import DuplicateRecordError, EmptyResultError, ParseError
from .porter import porter_stem

_NON_ALPHA = re.compile(r"[^a-z]+")


def tokenize(text: str) -> tuple[str, ...]:
    """Lowercase and split on every non-alphabetic character."""
    return tuple(t for t in _NON_ALPHA.split(text.lower()) if t)


@dataclass(frozen=True)
class RawRecord:
    headword: str
    sense: int
    text: str

    @property
    def tokens(self) -> tuple[str, ...]:
        return tokenize(self.text)


@dataclass(frozen=True)
class RawDictionary:
    records: tuple[RawRecord, ...]

    def __post_init__(self):
        seen = set()
        for r in self.records:
            key = (r.headword, r.sense)
            if key in seen:
                raise DuplicateRecordError(f"duplicate sense {r.sense} for {r.headword!r}")
            seen.add(key)

    def __len__(self):
        return len(self.records)


@dataclass
class NormalizationReport:
    stems_merged: int = 0
    senses_dropped: int = 0
    loops_removed: int = 0
    empty_definitions_removed: int = 0
    unknown_definientes_dropped: int = 0
    iterations: int = 0
    entries_in: int = 0
    entries_out: int = 0

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1, sort_keys=True) + "\n"


# --- parsing ------------------------------------------------------------


def _parse_tsv(text: str) -> list[RawRecord]:
    records = []
    seen: set[tuple[str, int]] = set()
    next_sense: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) == 2:
            head, definition = cols
            sense = None
        elif len(cols) == 3:
            head, sense_txt, definition = cols
            try:
                sense = int(sense_txt)
            except ValueError:
                raise ParseError(f"sense index {sense_txt!r} is not an integer", lineno) from None
            if sense < 1:
                raise ParseError("sense index must be >= 1", lineno)
        else:
            raise ParseError("expected 'headword<TAB>[sense<TAB>]definition'", lineno)
        head = head.strip().lower()
        if not head:
            raise ParseError("empty headword", lineno)
        if sense is None:
            sense = next_sense.get(head, 1)
        next_sense[head] = max(next_sense.get(head, 1), sense + 1)
        if (head, sense) in seen:
            raise DuplicateRecordError(f"duplicate sense {sense} for {head!r}", lineno)
        seen.add((head, sense))
        records.append(RawRecord(head, sense, definition))
    return records


def _parse_json(text: str) -> list[RawRecord]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from exc
    if not isinstance(payload, list):
        raise ParseError("top-level JSON value must be a list")
    records = []
    seen: set[tuple[str, int]] = set()
    next_sense: dict[str, int] = {}
    for i, item in enumerate(payload):
        if not isinstance(item, dict) or "word" not in item or "definition" not in item:
            raise ParseError(f"item {i}: expected keys 'word' and 'definition'")
        head = str(item["word"]).strip().lower()
        definition = item["definition"]
        if isinstance(definition, list):
            definition = " ".join(map(str, definition))
        sense = item.get("sense", next_sense.get(head, 1))
        if not isinstance(sense, int) or sense < 1:
            raise ParseError(f"item {i}: sense must be an integer >= 1")
        next_sense[head] = max(next_sense.get(head, 1), sense + 1)
        if (head, sense) in seen:
            raise DuplicateRecordError(f"item {i}: duplicate sense {sense} for {head!r}")
        seen.add((head, sense))
        records.append(RawRecord(head, sense, str(definition)))
    return records


def parse_raw(text: str, format: str = "tsv") -> RawDictionary:
    """Parse TSV (``headword<TAB>[sense<TAB>]definition``) or JSON records.

    A two-column line gets the next free sense index for its headword.
    """
    if format == "tsv":
        records = _parse_tsv(text)
    elif format == "json":
        records = _parse_json(text)
    else:
        raise ValueError(f"unknown raw format {format!r}")
    return RawDictionary(tuple(records))


def render_raw(d: Dictionary) -> RawDictionary:
    return RawDictionary(
        tuple(RawRecord(e.word, 1, " ".join(sorted(e.definition))) for e in d.values())
    )


# --- normalization ------------------------------------------------------


def _drop_empty(definitions: dict, report: NormalizationReport) -> int:
    empty = [h for h, t in definitions.items() if not t]
    for h in empty:
        del definitions[h]
    report.empty_definitions_removed += len(empty)
    return len(empty)


def normalize(
    raw: RawDictionary,
    stem: bool = True,
    keep_all_senses: bool = False,
) -> tuple[Dictionary, NormalizationReport]:
    report = NormalizationReport(entries_in=len(raw.records))
    norm = porter_stem if stem else (lambda w: w)

    # (1) stemming; (2) first sense per stemmed headword
    chosen: dict[str, tuple[int, int]] = {}  # stem -> (sense, file position)
    definitions: dict[str, set[str]] = {}
    raw_heads: dict[str, set[str]] = {}
    for pos, rec in enumerate(raw.records):
        head = norm(rec.headword)
        raw_heads.setdefault(head, set()).add(rec.headword)
        tokens = {norm(t) for t in rec.tokens}
        if keep_all_senses:
            definitions.setdefault(head, set()).update(tokens)
            chosen.setdefault(head, (rec.sense, pos))
            continue
        key = (rec.sense, pos)
        if head not in chosen or key < chosen[head]:
            chosen[head] = key
            definitions[head] = tokens
    report.stems_merged = sum(len(v) - 1 for v in raw_heads.values())
    report.senses_dropped = 0 if keep_all_senses else len(raw.records) - len(chosen)

    # (3) loops cannot reappear once removed, definitions only shrink
    for head, tokens in definitions.items():
        if head in tokens:
            tokens.discard(head)
            report.loops_removed += 1
    _drop_empty(definitions, report)
    # (5) then (4) until no entry disappears; every pass but the last removes one
    while True:
        report.iterations += 1
        for tokens in definitions.values():
            unknown = [t for t in tokens if t not in definitions]
            if unknown:
                tokens.difference_update(unknown)
                report.unknown_definientes_dropped += len(unknown)
        if not _drop_empty(definitions, report):
            break

    if not definitions:
        raise EmptyResultError("normalization removed every entry")
    report.entries_out = len(definitions)
    d = Dictionary(Entry(h, t) for h, t in definitions.items())
    return d, report


def load_dictionary(
    text: str,
    format: str = "tsv",
    stem: bool = True,
    keep_all_senses: bool = False,
) -> tuple[Dictionary, NormalizationReport]:
    return normalize(parse_raw(text, format), stem=stem, keep_all_senses=keep_all_senses)

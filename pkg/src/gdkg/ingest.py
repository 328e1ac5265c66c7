"""Corpus loading, sentence boundary detection, and length-bounded segmentation.

Abstracts come in as JSONL or CSV; line breaks are normalized to single
spaces at load time. Sentences keep [start, end) character spans into the
normalized abstract so the original text is exactly reconstructable from
spans plus the skipped separators. Segments cap sentence text at a
character budget (default 512) for downstream annotators.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ValidationError

DEFAULT_MAX_SEGMENT_CHARS = 512
MIN_SEGMENT_CHARS = 32

# Multi-character abbreviations whose trailing period never ends a sentence.
# Single uppercase initials ("J. Smith") are handled by rule, not by list.
DEFAULT_ABBREVIATIONS = (
    "et al.",
    "e.g.",
    "i.e.",
    "cf.",
    "vs.",
    "ca.",
    "approx.",
    "fig.",
    "figs.",
    "ref.",
    "refs.",
    "eq.",
    "eqs.",
    "no.",
    "dr.",
    "mr.",
    "mrs.",
    "ms.",
    "prof.",
    "st.",
    "jr.",
    "sr.",
    "inc.",
    "ltd.",
    "spp.",
    "subsp.",
)

_LINE_BREAKS = re.compile(r"[\r\n\v\f  ]+")
_TERMINATORS = frozenset(".!?")


@dataclass(frozen=True)
class AbstractRecord:
    pubmed_id: str
    text: str


@dataclass(frozen=True)
class Sentence:
    pubmed_id: str
    sentence_index: int
    text: str
    char_span: tuple[int, int]


@dataclass(frozen=True)
class Segment:
    pubmed_id: str
    sentence_index: int
    segment_index: int
    text: str
    char_span: tuple[int, int]


def normalize_text(raw: str) -> str:
    """Collapse every run of line-break control characters to one space."""
    return _LINE_BREAKS.sub(" ", raw)


def load_abbreviations(path: str | Path) -> tuple[str, ...]:
    """Read one abbreviation per line; blank lines and '#' comments ignored."""
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(line)
    return tuple(out)


def _validate_record(pubmed_id: object, text: object, lineno: int) -> AbstractRecord:
    if not isinstance(pubmed_id, str) or not pubmed_id or not pubmed_id.isdigit():
        raise ValidationError(
            f"line {lineno}: pubmed_id must be a non-empty digit string, got {pubmed_id!r}"
        )
    if not isinstance(text, str) or not text.strip():
        raise ValidationError(f"line {lineno}: abstract text must be a non-empty string")
    return AbstractRecord(pubmed_id=pubmed_id, text=normalize_text(text))


def load_corpus(path: str | Path, fmt: str = "jsonl") -> list[AbstractRecord]:
    """Load abstracts in file order, rejecting malformed rows and duplicate IDs.

    JSONL rows carry ``pubmed_id`` and ``abstract``; CSV has a
    ``pubmed_id,abstract`` header with RFC-4180 quoting.
    """
    if fmt == "jsonl":
        records = _load_jsonl(path)
    elif fmt == "csv":
        records = _load_csv(path)
    else:
        raise ValidationError(f"unknown corpus format {fmt!r} (expected jsonl or csv)")

    seen: set[str] = set()
    for rec in records:
        if rec.pubmed_id in seen:
            raise ValidationError(f"duplicate pubmed_id {rec.pubmed_id!r} in corpus")
        seen.add(rec.pubmed_id)
    return records


def _load_jsonl(path: str | Path) -> list[AbstractRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict) or "pubmed_id" not in obj or "abstract" not in obj:
                raise ValidationError(
                    f"line {lineno}: record must be an object with pubmed_id and abstract"
                )
            records.append(_validate_record(obj["pubmed_id"], obj["abstract"], lineno))
    return records


def _load_csv(path: str | Path) -> list[AbstractRecord]:
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return []
        if [h.strip() for h in header] != ["pubmed_id", "abstract"]:
            raise ValidationError(
                f"line 1: expected header 'pubmed_id,abstract', got {','.join(header)!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise ValidationError(f"line {lineno}: expected 2 columns, got {len(row)}")
            records.append(_validate_record(row[0], row[1], lineno))
    return records


def _prepare_abbrevs(abbrevs: Iterable[str]) -> list[str]:
    # Stored lowercased and without the trailing period; matched against the
    # text immediately preceding a candidate period.
    out = []
    for a in abbrevs:
        a = a.strip().lower()
        if a.endswith("."):
            a = a[:-1]
        if a:
            out.append(a)
    return out


def _is_abbreviation(text: str, dot: int, abbrevs: Sequence[str]) -> bool:
    """True when the period at ``dot`` terminates an abbreviation or an initial."""
    # Single uppercase initial: "J. Smith", "John Q. Public".
    if dot >= 1 and text[dot - 1].isupper():
        if dot == 1 or not text[dot - 2].isalnum():
            return True
    lowered = text[:dot].lower()
    for abbr in abbrevs:
        if not lowered.endswith(abbr):
            continue
        start = dot - len(abbr)
        if start == 0 or text[start - 1].isspace():
            return True
    return False


def _boundary_positions(text: str, abbrevs: Sequence[str]) -> list[int]:
    """Indexes just past each sentence terminator that counts as a boundary."""
    boundaries = []
    n = len(text)
    for i, ch in enumerate(text):
        if ch not in _TERMINATORS:
            continue
        j = i + 1
        while j < n and text[j].isspace():
            j += 1
        if j == i + 1 or j == n:
            continue  # no whitespace after, or trailing terminator
        nxt = text[j]
        if not (nxt.isupper() or nxt.isdigit()):
            continue
        if ch == ".":
            if 0 < i < n - 1 and text[i - 1].isdigit() and text[i + 1].isdigit():
                continue  # decimal number
            if _is_abbreviation(text, i, abbrevs):
                continue
        boundaries.append(i + 1)
    return boundaries


def split_sentences(
    record: AbstractRecord, abbrevs: Iterable[str] = DEFAULT_ABBREVIATIONS
) -> list[Sentence]:
    """Split an abstract at terminator+whitespace+uppercase/digit boundaries.

    Abbreviation periods, initials, and decimal points never bound a
    sentence. The whole text becomes one sentence when no boundary exists.
    """
    text = record.text
    if not text:
        raise ValidationError(f"abstract {record.pubmed_id}: empty text")
    prepared = _prepare_abbrevs(abbrevs)
    cuts = _boundary_positions(text, prepared)

    sentences = []
    start = 0
    for cut in cuts + [len(text)]:
        s, e = start, cut
        while s < e and text[s].isspace():
            s += 1
        while e > s and text[e - 1].isspace():
            e -= 1
        if e > s:
            sentences.append(
                Sentence(
                    pubmed_id=record.pubmed_id,
                    sentence_index=len(sentences),
                    text=text[s:e],
                    char_span=(s, e),
                )
            )
        start = cut
    return sentences


def segment(
    sentence: Sentence, max_chars: int = DEFAULT_MAX_SEGMENT_CHARS
) -> list[Segment]:
    """Cut a sentence into pieces of at most ``max_chars`` characters.

    The cut lands on the last whitespace at or before the budget; a single
    token longer than the budget is hard-split. Whitespace at a cut is
    consumed, so segments concatenate back to the sentence text modulo the
    split whitespace.
    """
    if max_chars < MIN_SEGMENT_CHARS:
        raise ValidationError(f"max_chars must be >= {MIN_SEGMENT_CHARS}, got {max_chars}")

    text = sentence.text
    base = sentence.char_span[0]
    segments = []
    pos = 0
    while pos < len(text):
        remaining = len(text) - pos
        if remaining <= max_chars:
            end = len(text)
        else:
            window = text[pos : pos + max_chars + 1]
            ws = max((k for k, c in enumerate(window) if c.isspace()), default=-1)
            end = pos + ws if ws > 0 else pos + max_chars
        seg_text = text[pos:end].rstrip()
        seg_end = pos + len(seg_text)
        if seg_text:
            segments.append(
                Segment(
                    pubmed_id=sentence.pubmed_id,
                    sentence_index=sentence.sentence_index,
                    segment_index=len(segments),
                    text=seg_text,
                    char_span=(base + pos, base + seg_end),
                )
            )
        pos = end
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return segments


def segment_corpus(
    records: Iterable[AbstractRecord],
    abbrevs: Iterable[str] = DEFAULT_ABBREVIATIONS,
    max_chars: int = DEFAULT_MAX_SEGMENT_CHARS,
) -> tuple[list[Sentence], list[Segment]]:
    """Sentence-split and segment every record, in corpus order."""
    sentences: list[Sentence] = []
    segments: list[Segment] = []
    for record in records:
        sents = split_sentences(record, abbrevs)
        sentences.extend(sents)
        for sent in sents:
            segments.extend(segment(sent, max_chars))
    return sentences, segments

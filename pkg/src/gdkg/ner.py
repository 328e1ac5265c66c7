"""Labeled-token production and BIO decoding.

Labels come from an external annotation file (parallel token/label arrays
per segment) or from the built-in gazetteer scan over the lexicons. Either
way, decoding is lenient: an I after O, at the start, or after a different
kind opens a new mention instead of failing.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import ValidationError
from .ingest import Segment, Sentence
from .lexnorm import Lexicon, lexical_key

LABELS = ("B-GENE", "I-GENE", "B-DISEASE", "I-DISEASE", "O")
_KIND_OF = {"GENE": "gene", "DISEASE": "disease"}

_WORD = re.compile(r"\S+")


@dataclass(frozen=True, slots=True)
class LabeledToken:
    text: str
    label: str
    char_span: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class EntityMention:
    surface: str
    kind: str  # "gene" | "disease"
    pubmed_id: str
    sentence_index: int
    token_span: tuple[int, int]  # [first, last] token indices, inclusive


def label_parts(label: str) -> tuple[str, Optional[str]]:
    """Split a label into (tag, kind); kind is None for O."""
    if label == "O":
        return "O", None
    tag, _, suffix = label.partition("-")
    return tag, _KIND_OF[suffix]


def tokenize_text(text: str) -> list[tuple[str, tuple[int, int]]]:
    """Whitespace tokens with leading/trailing punctuation detached.

    Each edge punctuation character becomes its own token; interior
    punctuation (hyphens, slashes) stays inside the word. Spans index into
    ``text``.
    """
    tokens: list[tuple[str, tuple[int, int]]] = []
    for m in _WORD.finditer(text):
        word, start = m.group(), m.start()
        left = 0
        while left < len(word) and not word[left].isalnum():
            tokens.append((word[left], (start + left, start + left + 1)))
            left += 1
        right = len(word)
        trailing = []
        while right > left and not word[right - 1].isalnum():
            right -= 1
            trailing.append((word[right], (start + right, start + right + 1)))
        if right > left:
            tokens.append((word[left:right], (start + left, start + right)))
        tokens.extend(reversed(trailing))
    return tokens


def tokenize_words(segment: Segment) -> list[tuple[str, tuple[int, int]]]:
    """Tokenize a segment's text; spans are relative to the segment."""
    if not segment.text:
        raise ValidationError("cannot tokenize an empty segment")
    return tokenize_text(segment.text)


def decode_bio(
    tokens: Sequence[LabeledToken], *, pubmed_id: str, sentence_index: int
) -> list[EntityMention]:
    """Decode one segment's BIO labels into mentions, left to right.

    B always opens; I extends an open mention of the same kind and
    otherwise opens one (lenient decoding); O closes.
    """
    mentions: list[EntityMention] = []
    open_kind: Optional[str] = None
    first = 0
    words: list[str] = []

    def close(last: int) -> None:
        nonlocal open_kind
        if open_kind is not None:
            mentions.append(
                EntityMention(
                    surface=" ".join(words),
                    kind=open_kind,
                    pubmed_id=pubmed_id,
                    sentence_index=sentence_index,
                    token_span=(first, last),
                )
            )
            open_kind = None

    for i, tok in enumerate(tokens):
        tag, kind = label_parts(tok.label)
        if tag == "O":
            close(i - 1)
        elif tag == "B" or kind != open_kind:
            close(i - 1)
            open_kind = kind
            first = i
            words = [tok.text]
        else:
            words.append(tok.text)
    close(len(tokens) - 1)
    return mentions


def encode_bio(
    tokens: Sequence[str], mentions: Iterable[EntityMention]
) -> list[str]:
    """Re-emit BIO labels for mentions over a token list (B first, I rest)."""
    labels = ["O"] * len(tokens)
    for m in mentions:
        start, end = m.token_span
        suffix = m.kind.upper()
        labels[start] = f"B-{suffix}"
        for i in range(start + 1, end + 1):
            labels[i] = f"I-{suffix}"
    return labels


class GazetteerTagger:
    """Longest-match dictionary scan emitting BIO labels.

    A span matches when the concatenated lexical keys of its tokens equal a
    lexicon entry key. Longer spans win; on equal length, gene beats
    disease. Spans must start and end on tokens that contribute at least
    one key character, so punctuation never hugs a mention edge.
    """

    def __init__(self, genes: Lexicon, diseases: Lexicon):
        self.lexicons = ((genes, "GENE"), (diseases, "DISEASE"))
        self.max_window = 1
        for lex, _ in self.lexicons:
            for term in lex.terms:
                self.max_window = max(self.max_window, len(tokenize_text(term)))

    def tag(self, segment: Segment) -> list[LabeledToken]:
        toks = tokenize_words(segment)
        keys = [lexical_key(t) for t, _ in toks]
        labels = ["O"] * len(toks)
        i = 0
        while i < len(toks):
            if not keys[i]:
                i += 1
                continue
            match_len = 0
            match_kind = ""
            for length in range(min(self.max_window, len(toks) - i), 0, -1):
                if not keys[i + length - 1]:
                    continue
                span_key = "".join(keys[i : i + length])
                for lex, kind in self.lexicons:
                    if span_key in lex.entries:
                        match_len, match_kind = length, kind
                        break
                if match_len:
                    break
            if match_len:
                labels[i] = f"B-{match_kind}"
                for k in range(i + 1, i + match_len):
                    labels[k] = f"I-{match_kind}"
                i += match_len
            else:
                i += 1
        return [
            LabeledToken(text=t, label=lab, char_span=span)
            for (t, span), lab in zip(toks, labels)
        ]


def gazetteer_ner(segment: Segment, genes: Lexicon, diseases: Lexicon) -> list[LabeledToken]:
    """One-shot gazetteer tagging; build a GazetteerTagger for corpus runs."""
    return GazetteerTagger(genes, diseases).tag(segment)


@dataclass(frozen=True)
class AnnotationRecord:
    pubmed_id: str
    sentence_index: int
    tokens: tuple[LabeledToken, ...]


def load_annotations(
    path: str | Path, sentences: Optional[Iterable[Sentence]] = None
) -> list[AnnotationRecord]:
    """Load per-segment token/label arrays from annotation JSONL.

    When ``sentences`` is given, every record must reference a known
    (pubmed_id, sentence_index).
    """
    known = None
    if sentences is not None:
        known = {(s.pubmed_id, s.sentence_index) for s in sentences}

    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
            try:
                pubmed_id = obj["pubmed_id"]
                sentence_index = obj["sentence_index"]
                tokens = obj["tokens"]
                labels = obj["labels"]
            except (KeyError, TypeError):
                raise ValidationError(
                    f"line {lineno}: record needs pubmed_id, sentence_index, tokens, labels"
                ) from None
            if not isinstance(tokens, list) or not isinstance(labels, list):
                raise ValidationError(f"line {lineno}: tokens and labels must be arrays")
            if len(tokens) != len(labels):
                raise ValidationError(
                    f"line {lineno}: {len(tokens)} tokens vs {len(labels)} labels"
                )
            for lab in labels:
                if lab not in LABELS:
                    raise ValidationError(f"line {lineno}: unknown label {lab!r}")
            if not isinstance(pubmed_id, str) or not isinstance(sentence_index, int):
                raise ValidationError(
                    f"line {lineno}: pubmed_id must be a string and sentence_index an integer"
                )
            if known is not None and (pubmed_id, sentence_index) not in known:
                raise ValidationError(
                    f"line {lineno}: unknown sentence ({pubmed_id!r}, {sentence_index})"
                )
            records.append(
                AnnotationRecord(
                    pubmed_id=pubmed_id,
                    sentence_index=sentence_index,
                    tokens=tuple(
                        LabeledToken(text=t, label=lab) for t, lab in zip(tokens, labels)
                    ),
                )
            )
    return records

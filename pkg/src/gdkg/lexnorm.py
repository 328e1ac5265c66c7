"""Lexicons and mention normalization.

A lexicon maps lexical keys (lowercased, whitespace and punctuation
stripped) to master terms. A mention resolves in three stages: exact key
hit, connector-split into multiple masters, then approximate matching by
normalized edit-distance similarity. Anything below the similarity
threshold is dropped.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Optional

from .errors import ValidationError

if TYPE_CHECKING:
    from .ner import EntityMention

DEFAULT_THRESHOLD = 0.85

# Tokens ignored when splitting a multi-entity surface like "BRCA1 and BRCA2".
CONNECTOR_TOKENS = frozenset({"and", "or", ",", "/", "&"})


def lexical_key(term: str) -> str:
    """Lowercase and drop every character that is not a letter or digit."""
    return "".join(ch for ch in term.lower() if ch.isalnum())


@dataclass(frozen=True)
class Lexicon:
    kind: str  # "gene" | "disease"
    entries: dict[str, str]  # lexical key -> master term
    masters: tuple[str, ...]  # master display names, sorted
    terms: tuple[str, ...]  # every master + synonym surface, as loaded


@dataclass(frozen=True)
class NormalizedEntity:
    masters: frozenset[str]
    kind: str
    method: str  # "exact" | "split" | "approximate"
    source: "EntityMention"


def load_lexicon(path: str | Path, kind: str) -> Lexicon:
    """Load a ``master_term,synonym`` CSV into a keyed lexicon.

    Every master self-maps under its own key; a key claimed by two
    different masters is a load error.
    """
    entries: dict[str, str] = {}
    masters: dict[str, None] = {}
    terms: list[str] = []

    def put(surface: str, master: str) -> None:
        key = lexical_key(surface)
        if not key:
            raise ValidationError(f"lexicon {path}: term {surface!r} has an empty lexical key")
        existing = entries.get(key)
        if existing is not None and existing != master:
            raise ValidationError(
                f"lexicon {path}: key {key!r} maps to both {existing!r} and {master!r}"
            )
        entries[key] = master
        terms.append(surface)

    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ValidationError(f"lexicon {path}: empty file")
        if [h.strip() for h in header] != ["master_term", "synonym"]:
            raise ValidationError(
                f"lexicon {path}: expected header 'master_term,synonym', got {','.join(header)!r}"
            )
        rows = 0
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise ValidationError(f"lexicon {path}: line {lineno}: expected 2 columns")
            master, synonym = row[0].strip(), row[1].strip()
            if not master:
                raise ValidationError(f"lexicon {path}: line {lineno}: empty master term")
            if master not in masters:
                masters[master] = None
                put(master, master)
            if synonym:
                put(synonym, master)
            rows += 1
        if rows == 0:
            raise ValidationError(f"lexicon {path}: no data rows")

    return Lexicon(
        kind=kind,
        entries=entries,
        masters=tuple(sorted(masters)),
        terms=tuple(terms),
    )


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance, two-row dynamic program."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def similarity(a: str, b: str) -> float:
    """1 - editdistance / max(len); 1.0 for two empty strings."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - edit_distance(a, b) / longest


def string_match(
    key: str, lexicon: Lexicon, threshold: float = DEFAULT_THRESHOLD
) -> Optional[str]:
    """Best approximate master for ``key``, or None below the threshold.

    Ties break toward higher similarity, then longer candidate key, then
    lexicographically smallest master.
    """
    if not key:
        raise ValidationError("string_match requires a non-empty key")
    best: tuple[float, int, str, str] | None = None
    for cand_key, master in lexicon.entries.items():
        sim = similarity(key, cand_key)
        if sim < threshold:
            continue
        rank = (sim, len(cand_key))
        if best is None or rank > (best[0], best[1]) or (
            rank == (best[0], best[1]) and master < best[2]
        ):
            best = (sim, len(cand_key), master, cand_key)
    return best[2] if best else None


def _split_groups(surface: str) -> list[str]:
    """Maximal runs of non-connector tokens in a surface string."""
    from .ner import tokenize_text  # local import: ner also imports lexical_key

    groups: list[list[str]] = []
    current: list[str] = []
    for token, _span in tokenize_text(surface):
        if token.lower() in CONNECTOR_TOKENS:
            if current:
                groups.append(current)
                current = []
        else:
            current.append(token)
    if current:
        groups.append(current)
    return ["".join(lexical_key(t) for t in g) for g in groups]


def normalize(
    mention: "EntityMention",
    lexicon: Lexicon,
    threshold: float = DEFAULT_THRESHOLD,
) -> Optional[NormalizedEntity]:
    """Resolve a mention to master term(s), or None when nothing matches.

    Stage 1: exact lexical-key hit. Stage 2: drop connector tokens and, if
    at least two remaining token groups hit exactly, return all hit
    masters. Stage 3: approximate match over the full key.
    """
    if lexicon.kind != mention.kind:
        raise ValidationError(
            f"mention kind {mention.kind!r} does not match lexicon kind {lexicon.kind!r}"
        )
    key = lexical_key(mention.surface)

    master = lexicon.entries.get(key)
    if master is not None:
        return NormalizedEntity(
            masters=frozenset({master}), kind=mention.kind, method="exact", source=mention
        )

    group_keys = _split_groups(mention.surface)
    if len(group_keys) >= 2:
        hits = [lexicon.entries[g] for g in group_keys if g in lexicon.entries]
        if len(hits) >= 2:
            return NormalizedEntity(
                masters=frozenset(hits), kind=mention.kind, method="split", source=mention
            )

    if key:
        master = string_match(key, lexicon, threshold)
        if master is not None:
            return NormalizedEntity(
                masters=frozenset({master}),
                kind=mention.kind,
                method="approximate",
                source=mention,
            )
    return None

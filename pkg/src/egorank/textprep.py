"""Primary text preprocessing: language handling, mentions, noise, case.

Applied to every content dataset (never to dataset 5), in a fixed order:
language detection (optionally translation), mention extraction, noise
removal, then lowercasing with optional spelling correction. The output
alphabet is exactly lowercase letters, digits, spaces, commas and full
stops.

All operations are pure functions; documents can be preprocessed in any
order or in parallel.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .corpus import Document
from .errors import DataError, TranslatorUnavailableError

Translator = Callable[[str], str]

_MENTION = re.compile(r"(?:(?<=^)|(?<=\s))@\S+")
_NOISE = re.compile(r"[^A-Za-z0-9\s,.]+")
_WS = re.compile(r"\s+")
_GAP = re.compile(r"[ \t]{2,}")
_WORD_TOKEN = re.compile(r"[a-z0-9]+")
_ASCII_WORD = re.compile(r"[A-Za-z]+")

# Share of tokens that must look English before a text passes as English.
ENGLISH_TOKEN_RATIO = 0.34
# Share of letters allowed to come from non-ASCII scripts.
FOREIGN_LETTER_RATIO = 0.30

_SPELL_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class CleanDocument:
    """A primary-preprocessed document plus harvested mentions."""

    doc_id: str
    owner_id: str
    dataset_no: int
    parent_doc_id: str | None
    text: str
    mentions: tuple[str, ...]
    flagged_non_english: bool

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "owner_id": self.owner_id,
            "dataset_no": self.dataset_no,
            "parent_doc_id": self.parent_doc_id,
            "text": self.text,
            "mentions": list(self.mentions),
            "flagged_non_english": self.flagged_non_english,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CleanDocument":
        return cls(
            doc_id=data["doc_id"],
            owner_id=data["owner_id"],
            dataset_no=int(data["dataset_no"]),
            parent_doc_id=data["parent_doc_id"],
            text=data["text"],
            mentions=tuple(data["mentions"]),
            flagged_non_english=bool(data["flagged_non_english"]),
        )


def looks_english(text: str, english_vocab: Iterable[str] | None = None) -> bool:
    """Deterministic language heuristic: script check plus common-word ratio.

    Shipping a real translator is out of scope, so detection only needs to
    separate obviously foreign text from the English mainstream; flagged
    documents are excluded from classification downstream rather than
    mistranslated.
    """
    letters = [c for c in text if c.isalpha()]
    if not letters:
        return True
    foreign = sum(1 for c in letters if ord(c) > 127)
    if foreign / len(letters) > FOREIGN_LETTER_RATIO:
        return False
    tokens = [t.lower() for t in _ASCII_WORD.findall(text)]
    if not tokens:
        return True
    if english_vocab is None:
        from .resources import load_english_words
        english_vocab = load_english_words()
    vocab = english_vocab if isinstance(english_vocab, (set, frozenset)) else set(english_vocab)
    known = sum(1 for t in tokens if t in vocab)
    return known / len(tokens) >= ENGLISH_TOKEN_RATIO


def detect_and_translate(
    text: str,
    translator: Translator | None = None,
    english_vocab: Iterable[str] | None = None,
) -> tuple[str, bool]:
    """Return (text, flagged_non_english).

    English text passes through. Non-English text is translated when a
    translator is configured; otherwise it passes through flagged, which
    excludes it from classification and scoring later in the pipeline.
    """
    if looks_english(text, english_vocab):
        return text, False
    if translator is None:
        return text, True
    try:
        translated = translator(text)
    except Exception as exc:
        raise TranslatorUnavailableError(f"translator failed: {exc}") from exc
    return translated, False


def extract_mentions(text: str) -> tuple[str, list[str]]:
    """Remove every whitespace-delimited token starting with '@'.

    The stripped names are returned deduplicated in first-seen order, with
    '@' and surrounding punctuation dropped. Non-mention token order is
    preserved.
    """
    mentions: list[str] = []
    for tok in _MENTION.findall(text):
        name = tok.replace("@", "")
        name = re.sub(r"^[^A-Za-z0-9_]+|[^A-Za-z0-9_]+$", "", name)
        if name and name not in mentions:
            mentions.append(name)
    stripped = _MENTION.sub("", text)
    stripped = _GAP.sub(" ", stripped).strip()
    return stripped, mentions


def strip_noise(text: str) -> str:
    """Drop every character outside letters/digits/whitespace/','/'.'.

    Emoji, symbol runs and replacement characters all disappear; runs of
    whitespace collapse to single spaces.
    """
    cleaned = _NOISE.sub(" ", text)
    return _WS.sub(" ", cleaned).strip()


def load_spelling_dictionary(path: str | Path) -> dict[str, int]:
    """Read a unigram-frequency lexicon of ``word<TAB>count`` lines."""
    table: dict[str, int] = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise DataError(f"{path}:{line_no}: expected word<TAB>count")
        try:
            table[parts[0].strip().lower()] = int(parts[1])
        except ValueError:
            raise DataError(f"{path}:{line_no}: bad count {parts[1]!r}") from None
    return table


def _edits1(word: str) -> set[str]:
    splits = [(word[:i], word[i:]) for i in range(len(word) + 1)]
    deletes = {a + b[1:] for a, b in splits if b}
    transposes = {a + b[1] + b[0] + b[2:] for a, b in splits if len(b) > 1}
    replaces = {a + c + b[1:] for a, b in splits if b for c in _SPELL_ALPHABET}
    inserts = {a + c + b for a, b in splits for c in _SPELL_ALPHABET}
    return deletes | transposes | replaces | inserts


def _correct(word: str, dictionary: Mapping[str, int]) -> str:
    if word in dictionary:
        return word
    candidates = [w for w in _edits1(word) if w in dictionary]
    if not candidates:
        return word
    return min(candidates, key=lambda w: (-dictionary[w], w))


def normalize_case_and_spell(text: str, dictionary: Mapping[str, int] | None = None) -> str:
    """Lowercase the text; optionally correct noisy spellings.

    Correction stays off without a dictionary. With one, each alphabetic
    token absent from the dictionary is replaced by its highest-frequency
    edit-distance-1 neighbor (ties broken lexicographically); tokens with
    no candidate are kept.
    """
    lowered = text.lower()
    if not dictionary:
        return lowered

    def fix(match: re.Match) -> str:
        token = match.group(0)
        return _correct(token, dictionary) if token.isalpha() else token

    return _WORD_TOKEN.sub(fix, lowered)


def primary_preprocess(
    doc: Document,
    *,
    translator: Translator | None = None,
    spelling: Mapping[str, int] | None = None,
    english_vocab: Iterable[str] | None = None,
) -> CleanDocument:
    """Run the four primary preprocessing stages over one document."""
    if doc.dataset_no == 5:
        raise ValueError("dataset 5 holds the member list, not text to preprocess")
    text, flagged = detect_and_translate(doc.text, translator, english_vocab)
    text, mentions = extract_mentions(text)
    text = strip_noise(text)
    text = normalize_case_and_spell(text, spelling)
    return CleanDocument(
        doc_id=doc.doc_id,
        owner_id=doc.owner_id,
        dataset_no=doc.dataset_no,
        parent_doc_id=doc.parent_doc_id,
        text=text,
        mentions=tuple(mentions),
        flagged_non_english=flagged,
    )

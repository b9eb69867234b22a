"""Secondary preprocessing: tokens, stop-word removal, lemmas, Document-Set.

This stage feeds the recommender only. Sentence punctuation is dropped
here (sentiment already ran on the punctuated text), frequent function
words are filtered against a pinned external stop list, and surviving
tokens are reduced to root words by a dictionary-validated rule
lemmatizer. Lemmatization is used instead of stemming so every output is
an actual word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import MissingLemmaDictionaryError, MissingStopListError
from .textprep import CleanDocument

_TOKEN = re.compile(r"[a-z0-9]+")

# Suffix rules tried in order once the exception table misses. Each rule
# yields candidates that must validate against the known-lemma set.
_SUFFIX_RULES = ("ies", "es", "s", "ing", "ed")


@dataclass(frozen=True)
class TokenizedDoc:
    """A document reduced to its scored token list.

    ``text`` keeps the primary-preprocessed form (with commas and full
    stops) because sentiment scoring needs it. A doc whose token list is
    empty is inert: it is retained for bookkeeping but never scores.
    """

    doc_id: str
    owner_id: str
    dataset_no: int
    parent_doc_id: str | None
    text: str
    tokens: tuple[str, ...]
    flagged_non_english: bool = False

    @property
    def inert(self) -> bool:
        return not self.tokens


@dataclass
class DocumentSet:
    """The tokenized corpus plus owner and bucket indexes."""

    documents: list[TokenizedDoc]
    ego_id: str
    by_id: dict[str, TokenizedDoc] = field(default_factory=dict)
    by_owner: dict[str, list[str]] = field(default_factory=dict)
    buckets: dict | None = None

    def __post_init__(self) -> None:
        if not self.by_id:
            self.by_id = {d.doc_id: d for d in self.documents}
        if not self.by_owner:
            for d in self.documents:
                self.by_owner.setdefault(d.owner_id, []).append(d.doc_id)

    def doc(self, doc_id: str) -> TokenizedDoc:
        return self.by_id[doc_id]


def tokenize(text: str) -> list[str]:
    """Split primary-preprocessed text into maximal [a-z0-9]+ runs."""
    return _TOKEN.findall(text)


def remove_stop_words(tokens: Sequence[str], stop_words: Iterable[str] | None) -> list[str]:
    """Order-preserving filter of the configured stop list."""
    if stop_words is None:
        raise MissingStopListError()
    stops = stop_words if isinstance(stop_words, (set, frozenset)) else frozenset(stop_words)
    return [t for t in tokens if t not in stops]


class Lemmatizer:
    """Dictionary-plus-rules lemmatizer.

    Irregular forms resolve through the exception table; regular forms
    through suffix rules whose candidates must be known lemmas; anything
    else passes through unchanged. ``lemmatize`` is idempotent for every
    input.
    """

    def __init__(self, table: Mapping[str, str]):
        if not table:
            raise MissingLemmaDictionaryError()
        self._table = dict(table)
        self._lemmas = frozenset(self._table.values())

    @classmethod
    def from_file(cls, path: str | Path | None = None) -> "Lemmatizer":
        from .resources import load_lemma_table
        return cls(load_lemma_table(path))

    def lemmatize(self, token: str) -> str:
        hit = self._table.get(token)
        if hit is not None:
            return hit
        for suffix in _SUFFIX_RULES:
            if not token.endswith(suffix) or len(token) <= len(suffix):
                continue
            stem = token[: -len(suffix)]
            if suffix == "ies":
                candidates = (stem + "y",)
            elif suffix in ("ing", "ed"):
                undoubled = stem[:-1] if len(stem) > 1 and stem[-1] == stem[-2] else None
                candidates = (stem, stem + "e") + ((undoubled,) if undoubled else ())
            else:
                candidates = (stem,)
            for cand in candidates:
                if cand in self._lemmas:
                    return cand
        return token


def build_document_set(
    clean_docs: Iterable[CleanDocument],
    *,
    stop_words: Iterable[str],
    lemmatizer: Lemmatizer,
    ego_id: str,
) -> DocumentSet:
    """Tokenize, stop-filter and lemmatize every document.

    Documents that reduce to zero tokens are kept but inert. Flagged
    non-English documents keep their flag so classification and scoring
    can skip them.
    """
    stops = frozenset(stop_words)
    docs: list[TokenizedDoc] = []
    for cd in clean_docs:
        tokens = [lemmatizer.lemmatize(t) for t in remove_stop_words(tokenize(cd.text), stops)]
        docs.append(TokenizedDoc(
            doc_id=cd.doc_id,
            owner_id=cd.owner_id,
            dataset_no=cd.dataset_no,
            parent_doc_id=cd.parent_doc_id,
            text=cd.text,
            tokens=tuple(tokens),
            flagged_non_english=cd.flagged_non_english,
        ))
    return DocumentSet(documents=docs, ego_id=ego_id)

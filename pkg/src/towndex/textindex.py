"""Tokenizer and inverted index over newspaper pages.

Matching is strictly token-level: a name can only ever match whole tokens,
never a run of letters inside a longer word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date
from typing import Optional

from .errors import ArgumentError, FormatError
from .records import Page

PHRASE_MAX_TERMS = 3

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)

PageRef = tuple[date, int]


@dataclass(frozen=True)
class Token:
    text: str  # lowercased
    raw: str
    start: int
    end: int


@dataclass(frozen=True)
class Posting:
    page_ref: PageRef
    token_index: int
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    """Maximal letter/digit runs, lowercased, with exact offsets.

    Periods split tokens, so initials like "J.E." come out as ["j", "e"].
    """
    return [
        Token(text=m.group(0).lower(), raw=m.group(0), start=m.start(), end=m.end())
        for m in _TOKEN.finditer(text)
    ]


class InvertedIndex:
    """Immutable after build; postings are in canonical (page_ref, ordinal) order."""

    def __init__(self) -> None:
        self.postings: dict[str, list[Posting]] = {}
        self.pages: dict[PageRef, Page] = {}
        self.page_tokens: dict[PageRef, list[Token]] = {}

    def tokens_of(self, page_ref: PageRef) -> list[Token]:
        return self.page_tokens[page_ref]

    def page(self, page_ref: PageRef) -> Page:
        return self.pages[page_ref]

    def vocabulary(self) -> list[str]:
        return sorted(self.postings)

    def lookup(self, term: str) -> list[Posting]:
        return self.postings.get(term, [])


def build_index(pages: list[Page]) -> InvertedIndex:
    """Index every page; deterministic and independent of input order."""
    index = InvertedIndex()
    for page in sorted(pages, key=lambda p: p.page_ref):
        if page.page_ref in index.pages:
            raise FormatError(f"duplicate page key: {page.page_ref}")
        index.pages[page.page_ref] = page
        tokens = tokenize(page.text)
        index.page_tokens[page.page_ref] = tokens
        for ordinal, token in enumerate(tokens):
            index.postings.setdefault(token.text, []).append(
                Posting(page.page_ref, ordinal, token.start, token.end)
            )
    return index


def search_exact(index: InvertedIndex, terms: list[str]) -> list[Posting]:
    """Phrase search over 1..3 normalized terms.

    Returns postings of the first term whose following ordinals carry the
    remaining terms consecutively on the same page.
    """
    if not terms:
        raise ArgumentError("search_exact requires at least one term")
    if len(terms) > PHRASE_MAX_TERMS:
        raise ArgumentError(f"phrase window capped at {PHRASE_MAX_TERMS} terms")
    results = []
    for posting in index.lookup(terms[0]):
        tokens = index.page_tokens[posting.page_ref]
        if all(
            posting.token_index + offset < len(tokens)
            and tokens[posting.token_index + offset].text == term
            for offset, term in enumerate(terms[1:], start=1)
        ):
            results.append(posting)
    return results


def snippet(page: Page, span: tuple[int, int], radius: int, tokens: Optional[list[Token]] = None) -> str:
    """Raw text window of `radius` tokens each side of span, span marked [[...]].

    The text between the markers is exactly page.text[span[0]:span[1]].
    """
    start, end = span
    if not (0 <= start < end <= len(page.text)):
        raise ArgumentError(f"span {span} out of range for page of length {len(page.text)}")
    if tokens is None:
        tokens = tokenize(page.text)
    covering = [i for i, t in enumerate(tokens) if t.end > start and t.start < end]
    if not covering:
        raise ArgumentError(f"span {span} covers no tokens")
    lo = max(0, covering[0] - radius)
    hi = min(len(tokens) - 1, covering[-1] + radius)
    window_start = tokens[lo].start
    window_end = tokens[hi].end
    return (
        page.text[window_start:start]
        + "[["
        + page.text[start:end]
        + "]]"
        + page.text[end:window_end]
    )

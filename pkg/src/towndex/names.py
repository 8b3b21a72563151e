"""Name normalization: honorific stripping, token keys, initial handling."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import ArgumentError

# Canonical honorific spellings keyed by their folded form ("mr." folds to "mr").
HONORIFICS = {
    "mr": "Mr", "mrs": "Mrs", "miss": "Miss", "dr": "Dr",
    "rev": "Rev", "judge": "Judge", "mayor": "Mayor",
}

_NAME_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class NameKey:
    tokens: tuple[str, ...]
    honorific: Optional[str] = None

    def __post_init__(self):
        if not self.tokens:
            raise ArgumentError("NameKey requires at least one token")

    @property
    def initials(self) -> tuple[bool, ...]:
        return tuple(len(t) == 1 for t in self.tokens)

    def __str__(self) -> str:
        return " ".join(self.tokens)


def is_initial(token: str) -> bool:
    return len(token) == 1


def name_tokens(raw: str) -> list[str]:
    """Lowercased letter/digit runs; 'J.E.' yields ['j', 'e']."""
    return [m.group(0).lower() for m in _NAME_TOKEN.finditer(raw)]


def normalize_name(raw: str) -> NameKey:
    """Build a NameKey from a raw name string.

    Leading honorifics move into the honorific field; the first one wins.
    Raises ArgumentError when no name tokens remain.
    """
    tokens = name_tokens(raw)
    honorific = None
    while tokens and tokens[0] in HONORIFICS:
        if honorific is None:
            honorific = HONORIFICS[tokens[0]]
        tokens = tokens[1:]
    if not tokens:
        raise ArgumentError(f"no name tokens in {raw!r}")
    return NameKey(tokens=tuple(tokens), honorific=honorific)


def initial_compatible(a: str, b: str) -> bool:
    """True when one token is an initial of the other (or both equal)."""
    if a == b:
        return True
    if len(a) == 1:
        return b.startswith(a)
    if len(b) == 1:
        return a.startswith(b)
    return False


def keys_equal(a: NameKey, b: NameKey) -> bool:
    """Exact token-sequence equality, ignoring honorifics."""
    return a.tokens == b.tokens

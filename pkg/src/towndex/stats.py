"""Mention counting, rankings, role shares, and the household coverage experiment."""

from __future__ import annotations

import random
from dataclasses import dataclass
from datetime import date
from typing import Optional

from .errors import ArgumentError, NotFoundError, UndefinedResultError
from .kb import EntityId, EntityKind, KnowledgeBase
from .linking import Mention, MentionStore
from .names import NameKey
from .textindex import InvertedIndex

DateRange = tuple[Optional[date], Optional[date]]  # inclusive bounds, None = open
ROLE_WINDOW_RADIUS = 5


def in_range(day: date, window: Optional[DateRange]) -> bool:
    if window is None:
        return True
    start, end = window
    if start is not None and day < start:
        return False
    if end is not None and day > end:
        return False
    return True


def count_person_mentions(
    store: MentionStore,
    kb: KnowledgeBase,
    person: EntityId,
    window: Optional[DateRange] = None,
) -> int:
    """Entity-target mentions of one person with page dates in range."""
    if person.kind != EntityKind.PERSON or not kb.contains(person):
        raise NotFoundError(f"no such person: {person}")
    return sum(1 for m in store.for_entity(person) if in_range(m.page_ref[0], window))


def count_family_mentions(
    store: MentionStore,
    kb: KnowledgeBase,
    surname: NameKey,
    window: Optional[DateRange] = None,
) -> int:
    """Mentions of any person with the surname, plus surname-group mentions.

    Each located mention counts exactly once.
    """
    family = kb.persons_with_surname(surname.tokens)
    if not family:
        raise NotFoundError(f"no persons with surname {surname}")
    seen: set[tuple] = set()
    for person in family:
        for m in store.for_entity(person.id):
            if in_range(m.page_ref[0], window):
                seen.add((m.page_ref, m.start))
    for m in store.for_surname(surname.tokens):
        if in_range(m.page_ref[0], window):
            seen.add((m.page_ref, m.start))
    return len(seen)


@dataclass
class CoverageReport:
    sample_size: int
    seed: int
    sampled: list[tuple[EntityId, Optional[EntityId], bool]]  # (person, household, covered)
    covered_fraction: float


def coverage_sample(
    kb: KnowledgeBase,
    store: MentionStore,
    n: int,
    seed: int,
    window: Optional[DateRange] = None,
) -> CoverageReport:
    """Sample n persons and measure household-extended newspaper coverage.

    Persons are drawn uniformly without replacement from the non-excluded
    population using a seeded Mersenne Twister generator, so reports are
    reproducible for a fixed (kb, store, n, seed, range).  A person counts
    as covered when anyone in their household has at least one mention in
    range (an entity mention, or a surname-group mention of that member's
    surname).
    """
    if n < 1:
        raise ArgumentError("coverage sample size must be >= 1")
    eligible = sorted(
        (p for p in kb.persons.values() if not p.excluded),
        key=lambda p: p.id,
    )
    if n > len(eligible):
        raise ArgumentError(f"sample size {n} exceeds eligible population {len(eligible)}")
    rng = random.Random(seed)
    sampled = rng.sample(eligible, n)
    rows = []
    covered_count = 0
    for person in sampled:
        covered = _household_covered(kb, store, person, window)
        covered_count += covered
        rows.append((person.id, person.household, covered))
    return CoverageReport(
        sample_size=n,
        seed=seed,
        sampled=rows,
        covered_fraction=covered_count / n,
    )


def _household_covered(kb, store, person, window) -> bool:
    if person.household is not None:
        member_ids = [pid for pid, _ in kb.entity(person.household).members]
    else:
        member_ids = [person.id]
    for pid in member_ids:
        member = kb.persons[pid]
        if any(in_range(m.page_ref[0], window) for m in store.for_entity(pid)):
            return True
        if any(in_range(m.page_ref[0], window)
               for m in store.for_surname(member.surname_key.tokens)):
            return True
    return False


def top_entities(
    store: MentionStore,
    kb: KnowledgeBase,
    k: int,
    window: Optional[DateRange] = None,
) -> list[tuple[EntityId, int]]:
    """Persons ranked by mention count descending; deterministic tie order."""
    ranked = []
    for person in kb.persons.values():
        count = sum(1 for m in store.for_entity(person.id) if in_range(m.page_ref[0], window))
        ranked.append((person, count))
    ranked.sort(key=lambda pc: (
        -pc[1],
        pc[0].surname_key.tokens,
        pc[0].given_key.tokens if pc[0].given_key else (),
        pc[0].id.serial,
    ))
    return [(p.id, c) for p, c in ranked[:max(0, k)]]


def role_share(
    store: MentionStore,
    kb: KnowledgeBase,
    person: EntityId,
    window: Optional[DateRange] = None,
    index: Optional[InvertedIndex] = None,
) -> float:
    """Fraction of a person's mentions whose context names one of their roles.

    The context is a ±5-token window around the mention; role tokens come
    from the person's office titles and occupation assertions.  Undefined
    (an error, not zero) for a person with no mentions in range.
    """
    if person.kind != EntityKind.PERSON or not kb.contains(person):
        raise NotFoundError(f"no such person: {person}")
    if index is None:
        raise ArgumentError("role_share requires the corpus index for context windows")
    mentions = [m for m in store.for_entity(person) if in_range(m.page_ref[0], window)]
    if not mentions:
        raise UndefinedResultError(f"{person} has no mentions in range")
    roles = kb.role_tokens(kb.persons[person])
    hits = sum(1 for m in mentions if _window_has_role(index, m, roles))
    return hits / len(mentions)


def _window_has_role(index: InvertedIndex, mention: Mention, roles: set[str]) -> bool:
    tokens = index.tokens_of(mention.page_ref)
    covering = [i for i, t in enumerate(tokens) if t.end > mention.start and t.start < mention.end]
    if not covering:
        return False
    lo = max(0, covering[0] - ROLE_WINDOW_RADIUS)
    hi = min(len(tokens), covering[-1] + ROLE_WINDOW_RADIUS + 1)
    return any(tokens[i].text in roles for i in range(lo, hi))

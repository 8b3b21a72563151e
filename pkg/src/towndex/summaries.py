"""Query-facing views: person summaries and ranked name search.

These JSON-shaped dicts are the single source for both the CLI and the
HTTP API, which keeps the two surfaces byte-compatible.
"""

from __future__ import annotations

from typing import Optional

from .errors import ArgumentError
from .kb import EntityId, KnowledgeBase, Person
from .linking import Mention
from .names import initial_compatible, normalize_name
from .snapshot import Snapshot
from .stats import DateRange, count_person_mentions, in_range
from .textindex import InvertedIndex, snippet

TOP_SNIPPET_COUNT = 3


def mention_payload(m: Mention, index: Optional[InvertedIndex]) -> dict:
    text = None
    source_url = None
    if index is not None and m.page_ref in index.pages:
        page = index.page(m.page_ref)
        source_url = page.source_url
        text = snippet(page, (m.start, m.end), radius=5, tokens=index.tokens_of(m.page_ref))
    return {
        "date": m.page_ref[0].isoformat(),
        "page": m.page_ref[1],
        "start": m.start,
        "end": m.end,
        "surface": m.surface,
        "target_kind": m.target_kind,
        "entity": str(m.entity) if m.entity else None,
        "surname": list(m.surname),
        "confidence": m.confidence,
        "method": m.method,
        "snippet": text,
        "source_url": source_url,
    }


def person_summary(
    snapshot: Snapshot,
    person: Person,
    index: Optional[InvertedIndex] = None,
    window: Optional[DateRange] = None,
) -> dict:
    kb = snapshot.kb
    household = None
    if person.household is not None:
        record = kb.entity(person.household)
        household = {
            "id": str(record.id),
            "household_id": record.household_id,
            "locality": record.locality,
            "is_institution": record.is_institution,
            "member_count": len(record.members),
        }
    census: dict = {}
    occupations = []
    for a in kb.assertions_about(person.id):
        if a.attribute in ("sex", "age_at_census", "race", "birthplace") and a.attribute not in census:
            census[a.attribute] = a.value
        if a.attribute == "occupation":
            occupations.append({"value": a.value, "source": {"kind": a.source.kind, "ref": a.source.ref}})
    mentions = [m for m in snapshot.store.for_entity(person.id) if in_range(m.page_ref[0], window)]
    offices = [
        o.title for o in kb.offices.values()
        if any(holder == person.id for holder, _, _ in o.holders)
    ]
    return {
        "id": str(person.id),
        "display_name": person.display_name(),
        "census_ref": person.census_ref,
        "excluded": person.excluded,
        "household": household,
        "census": census,
        "occupations": occupations,
        "offices": offices,
        "mention_count": len(mentions),
        "top_snippets": [mention_payload(m, index) for m in mentions[:TOP_SNIPPET_COUNT]],
    }


def query_person(
    snapshot: Snapshot,
    name: str,
    index: Optional[InvertedIndex] = None,
    window: Optional[DateRange] = None,
) -> list[dict]:
    """Ranked person search for a raw name string.

    Candidates match the query's trailing tokens against the surname key
    exactly; ranking favors given-name/initial agreement, then mention
    count.  An unknown name yields an empty list, not an error.
    """
    if not name or not name.strip():
        raise ArgumentError("empty query")
    key = normalize_name(name)
    kb = snapshot.kb
    ranked = []
    for person in kb.persons.values():
        s = person.surname_key.tokens
        if len(key.tokens) < len(s) or tuple(key.tokens[-len(s):]) != s:
            continue
        given_query = key.tokens[:-len(s)]
        agreement = _given_agreement(given_query, person)
        if given_query and agreement == 0 and person.given_key is not None:
            # a fully mismatched given name is a different person
            continue
        count = count_person_mentions(snapshot.store, kb, person.id, window)
        ranked.append((agreement, count, person))
    ranked.sort(key=lambda r: (-r[0], -r[1], r[2].surname_key.tokens,
                               r[2].given_key.tokens if r[2].given_key else (),
                               r[2].id.serial))
    return [person_summary(snapshot, p, index, window) for _, _, p in ranked]


def _given_agreement(query_tokens: tuple[str, ...], person: Person) -> int:
    if not query_tokens:
        return 0
    if person.given_key is None:
        return 0
    given = person.given_key.tokens
    if query_tokens == given:
        return 2
    if all(any(initial_compatible(q, g) for g in given) for q in query_tokens):
        return 1
    return 0

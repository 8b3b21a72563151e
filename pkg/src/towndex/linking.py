"""Mention finding and entity linking over OCR page text.

Candidates come from token-level fuzzy matching of KB surnames (and
business names) against the index vocabulary; each occurrence is then
scored with local context.  Fuzzy hits on common dictionary words are
always suppressed: OCR noise makes ordinary words masquerade as names
far more often than the reverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .distance import ConfusionTable, weighted_edit_distance
from .kb import EntityId, EntityKind, KnowledgeBase, Person
from .names import HONORIFICS, initial_compatible
from .records import Page
from .textindex import InvertedIndex, PageRef, Posting, build_index, tokenize

SURNAME_WEIGHT = 0.6
GIVEN_WEIGHT = 0.25
ROLE_WEIGHT = 0.15
LINK_THRESHOLD = 0.6
TIE_WINDOW = 0.05
CONTEXT_RADIUS = 2  # tokens each side for given-name/honorific agreement


def length_band_threshold(length: int) -> float:
    """Max fuzzy distance allowed for a name of this length."""
    if length <= 5:
        return 1.0
    if length <= 8:
        return 1.5
    return 2.0


def load_stoplist(path: Optional[Union[str, Path]] = None) -> frozenset[str]:
    if path is None:
        text = resources.files("towndex").joinpath("data/stoplist.txt").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


@dataclass
class LinkerConfig:
    confusions: ConfusionTable = field(default_factory=ConfusionTable.default)
    stoplist: frozenset[str] = field(default_factory=load_stoplist)
    surname_weight: float = SURNAME_WEIGHT
    given_weight: float = GIVEN_WEIGHT
    role_weight: float = ROLE_WEIGHT
    link_threshold: float = LINK_THRESHOLD
    tie_window: float = TIE_WINDOW
    context_radius: int = CONTEXT_RADIUS


@dataclass(frozen=True)
class RawCandidate:
    """One index token that may be a mention of one KB surname or business."""
    token: str
    distance: float
    threshold: float
    method: str  # "exact" | "fuzzy"
    surname: tuple[str, ...] = ()              # person-name candidates
    business: Optional[EntityId] = None        # business-name candidates
    extra_tokens: tuple[str, ...] = ()         # exact-tail tokens of a phrase


@dataclass(frozen=True)
class Mention:
    page_ref: PageRef
    start: int
    end: int
    surface: str
    target_kind: str  # "entity" | "surname" | "unlinked"
    confidence: float
    method: str  # "exact" | "fuzzy"
    entity: Optional[EntityId] = None
    surname: tuple[str, ...] = ()


class MentionStore:
    """Sealed, canonically ordered mention collection."""

    def __init__(self, mentions: list[Mention]):
        self.mentions = sorted(mentions, key=lambda m: (m.page_ref, m.start))
        self._by_entity: dict[EntityId, list[Mention]] = {}
        self._by_surname: dict[tuple[str, ...], list[Mention]] = {}
        for m in self.mentions:
            if m.target_kind == "entity" and m.entity is not None:
                self._by_entity.setdefault(m.entity, []).append(m)
            elif m.target_kind == "surname":
                self._by_surname.setdefault(m.surname, []).append(m)

    def __len__(self) -> int:
        return len(self.mentions)

    def for_entity(self, entity: EntityId) -> list[Mention]:
        return self._by_entity.get(entity, [])

    def for_surname(self, surname: tuple[str, ...]) -> list[Mention]:
        return self._by_surname.get(surname, [])

    def linked(self) -> list[Mention]:
        return [m for m in self.mentions if m.target_kind != "unlinked"]


def find_candidates(index: InvertedIndex, kb: KnowledgeBase, config: Optional[LinkerConfig] = None) -> list[RawCandidate]:
    """Match every index token against every KB surname and business name.

    A token is a candidate when its confusion-weighted distance to the
    name's first token is within the name's length-band threshold.
    Multi-token surnames and business names admit fuzziness only in the
    first token; the tail must appear exactly, consecutively.
    """
    config = config or LinkerConfig()
    vocabulary = index.vocabulary()
    candidates: list[RawCandidate] = []
    surname_keys = sorted({p.surname_key.tokens for p in kb.persons.values()})
    for surname in surname_keys:
        head, tail = surname[0], tuple(surname[1:])
        candidates.extend(
            replace(c, surname=surname, extra_tokens=tail)
            for c in _match_token(vocabulary, head, config)
        )
    for business in sorted(kb.businesses.values(), key=lambda b: b.id):
        name_tokens = tuple(t.text for t in tokenize(business.name))
        if not name_tokens:
            continue
        candidates.extend(
            replace(c, business=business.id, extra_tokens=name_tokens[1:])
            for c in _match_token(vocabulary, name_tokens[0], config)
        )
    return candidates


def _match_token(vocabulary: list[str], name: str, config: LinkerConfig) -> list[RawCandidate]:
    threshold = length_band_threshold(len(name))
    out = []
    for token in vocabulary:
        # cheap length screen: every edit costs at least 0.5
        if abs(len(token) - len(name)) > threshold * 2:
            continue
        if token == name:
            out.append(RawCandidate(token, 0.0, threshold, "exact"))
            continue
        distance = weighted_edit_distance(token, name, config.confusions)
        if distance <= threshold:
            out.append(RawCandidate(token, distance, threshold, "fuzzy"))
    return out


def score_and_link(
    candidate: RawCandidate,
    kb: KnowledgeBase,
    index: InvertedIndex,
    posting: Posting,
    config: Optional[LinkerConfig] = None,
) -> Mention:
    """Resolve one occurrence of a candidate token to a target.

    Per-person score = surname_weight * (1 - dist/threshold)
                     + given_weight   * given-name/initial agreement nearby
                     + role_weight    * honorific-or-role agreement nearby.
    A unique, context-discriminated best above the threshold links the
    person; surname-only support links the surname group; fuzzy hits on
    stoplist words never link.
    """
    config = config or LinkerConfig()
    tokens = index.tokens_of(posting.page_ref)
    token = tokens[posting.token_index]
    if candidate.business is not None:
        return _link_business(candidate, posting, tokens, token, config,
                              index.page(posting.page_ref).text)

    base = config.surname_weight * (1.0 - candidate.distance / candidate.threshold)
    unlinked = Mention(
        page_ref=posting.page_ref, start=token.start, end=token.end,
        surface=token.raw, target_kind="unlinked", confidence=0.0,
        method=candidate.method,
    )
    # phrase tail of a multi-token surname must follow exactly
    for offset, term in enumerate(candidate.extra_tokens, start=1):
        i = posting.token_index + offset
        if i >= len(tokens) or tokens[i].text != term:
            return unlinked
    end = tokens[posting.token_index + len(candidate.extra_tokens)].end
    surface = index.page(posting.page_ref).text[token.start:end]

    if candidate.method == "fuzzy" and token.text in config.stoplist:
        return replace(unlinked, end=end, surface=surface)

    window = _window_tokens(tokens, posting.token_index, config.context_radius)
    persons = kb.persons_with_surname(candidate.surname)
    scored: list[tuple[float, bool, Person]] = []
    for person in persons:
        given = _given_agreement(person, window, config)
        role = _role_agreement(person, window, kb)
        score = base + config.given_weight * given + config.role_weight * role
        scored.append((score, given > 0 or role > 0, person))
    if not scored:
        return replace(unlinked, end=end, surface=surface)
    scored.sort(key=lambda s: (-s[0], s[2].surname_key.tokens,
                               s[2].given_key.tokens if s[2].given_key else (), s[2].id))
    best_score, best_discriminated, best_person = scored[0]
    tied = sum(1 for s, _, _ in scored if s >= best_score - config.tie_window)
    if best_score >= config.link_threshold and tied == 1 and best_discriminated:
        return Mention(
            page_ref=posting.page_ref, start=token.start, end=end,
            surface=surface, target_kind="entity", entity=best_person.id,
            confidence=min(1.0, best_score), method=candidate.method,
        )
    if base >= config.link_threshold:
        return Mention(
            page_ref=posting.page_ref, start=token.start, end=end,
            surface=surface, target_kind="surname", surname=candidate.surname,
            confidence=base, method=candidate.method,
        )
    return replace(unlinked, end=end, surface=surface, confidence=max(0.0, best_score))


def _link_business(candidate, posting, tokens, token, config, page_text: str) -> Mention:
    unlinked = Mention(
        page_ref=posting.page_ref, start=token.start, end=token.end,
        surface=token.raw, target_kind="unlinked", confidence=0.0,
        method=candidate.method,
    )
    for offset, term in enumerate(candidate.extra_tokens, start=1):
        i = posting.token_index + offset
        if i >= len(tokens) or tokens[i].text != term:
            return unlinked
    if candidate.method == "fuzzy" and token.text in config.stoplist:
        return unlinked
    last = tokens[posting.token_index + len(candidate.extra_tokens)]
    base = config.surname_weight * (1.0 - candidate.distance / candidate.threshold)
    confidence = base + (1.0 - config.surname_weight)  # full exact tail
    if confidence < config.link_threshold:
        return unlinked
    return Mention(
        page_ref=posting.page_ref, start=token.start, end=last.end,
        surface=page_text[token.start:last.end], target_kind="entity",
        entity=candidate.business,
        confidence=min(1.0, confidence), method=candidate.method,
    )


def _window_tokens(tokens, center: int, radius: int) -> list[str]:
    lo = max(0, center - radius)
    hi = min(len(tokens), center + radius + 1)
    return [tokens[i].text for i in range(lo, hi) if i != center]


def _given_agreement(person: Person, window: list[str], config: LinkerConfig) -> float:
    if person.given_key is None:
        return 0.0
    for given in person.given_key.tokens:
        threshold = length_band_threshold(len(given))
        for w in window:
            if initial_compatible(w, given):
                return 1.0
            if len(w) > 1 and len(given) > 1 and \
                    weighted_edit_distance(w, given, config.confusions) <= threshold:
                return 1.0
    return 0.0


def _role_agreement(person: Person, window: list[str], kb: KnowledgeBase) -> float:
    roles = kb.role_tokens(person)
    for w in window:
        if w in roles:
            return 1.0
        if w in HONORIFICS and _honorific_consistent(w, person, kb, roles):
            return 1.0
    return 0.0


def _honorific_consistent(word: str, person: Person, kb: KnowledgeBase, roles: set[str]) -> bool:
    if word in ("mayor", "judge", "dr", "rev"):
        return word in roles
    sexes = {str(a.value) for a in kb.assertions_about(person.id) if a.attribute == "sex"}
    if word == "mr":
        return "M" in sexes
    if word in ("mrs", "miss"):
        return "F" in sexes
    return False


_TARGET_PRIORITY = {"entity": 2, "surname": 1, "unlinked": 0}


def link_corpus(
    kb: KnowledgeBase,
    index: InvertedIndex,
    pages: Optional[list[Page]] = None,
    config: Optional[LinkerConfig] = None,
) -> MentionStore:
    """Scan the whole corpus once and link every candidate occurrence.

    Mentions are deduplicated by (page_ref, start): the best-linked,
    highest-confidence resolution wins.  Output is deterministic for
    fixed inputs.
    """
    config = config or LinkerConfig()
    if pages is not None and not index.pages:
        index = build_index(pages)
    best: dict[tuple[PageRef, int], Mention] = {}
    for candidate in find_candidates(index, kb, config):
        for posting in index.lookup(candidate.token):
            mention = score_and_link(candidate, kb, index, posting, config)
            key = (mention.page_ref, mention.start)
            current = best.get(key)
            if current is None or _mention_rank(mention) > _mention_rank(current):
                best[key] = mention
    return MentionStore(list(best.values()))


def _mention_rank(m: Mention) -> tuple:
    return (_TARGET_PRIORITY[m.target_kind], m.confidence,
            str(m.entity) if m.entity else "", m.surname)

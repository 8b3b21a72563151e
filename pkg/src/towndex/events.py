"""Verb-frame events, interruptible processes, and per-entity timelines.

Events are only ever asserted with a source; nothing is inferred to fill
gaps between them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from typing import Optional, Union

from .errors import ArgumentError, NotFoundError, TransitionError
from .kb import EntityId, KnowledgeBase, SourceRef
from .linking import MentionStore
from .textindex import InvertedIndex, snippet

STARTER_FRAMES = frozenset({
    "pay", "marry", "travel", "visit", "elope", "build", "sell", "die", "appoint",
})

PROCESS_STATUSES = ("Planned", "Active", "Interrupted", "Abandoned", "Completed")

LEGAL_TRANSITIONS = frozenset({
    ("Planned", "Active"),
    ("Planned", "Abandoned"),
    ("Active", "Interrupted"),
    ("Active", "Completed"),
    ("Active", "Abandoned"),
    ("Interrupted", "Active"),
    ("Interrupted", "Abandoned"),
})


@dataclass(frozen=True)
class EventTime:
    """A day, a year (normalized to July 1 for sorting), or an interval."""
    start: Optional[date] = None
    end: Optional[date] = None
    precision: str = "unknown"  # "day" | "year" | "interval" | "unknown"

    @classmethod
    def of(cls, value: Union[None, int, date, tuple[date, date], "EventTime"]) -> "EventTime":
        if value is None:
            return cls()
        if isinstance(value, EventTime):
            return value
        if isinstance(value, int):
            return cls(start=date(value, 7, 1), end=date(value, 7, 1), precision="year")
        if isinstance(value, date):
            return cls(start=value, end=value, precision="day")
        start, end = value
        if end < start:
            raise ArgumentError("event interval ends before it starts")
        return cls(start=start, end=end, precision="interval")

    @property
    def sort_date(self) -> Optional[date]:
        return self.start


@dataclass
class EventFrame:
    event_id: int
    frame: str
    participants: list[tuple[str, EntityId]]
    time: EventTime = field(default_factory=EventTime)
    location: Optional[str] = None
    amount: Optional[tuple[float, str]] = None
    source: Optional[SourceRef] = None


@dataclass
class Process:
    process_id: int
    title: str
    status: str
    history: list[tuple[str, Optional[date], SourceRef]] = field(default_factory=list)
    events: list[int] = field(default_factory=list)


def record_event(
    kb: KnowledgeBase,
    frame: str,
    participants: list[tuple[str, EntityId]],
    time: Union[None, int, date, tuple[date, date], EventTime] = None,
    location: Optional[str] = None,
    amount: Optional[tuple[float, str]] = None,
    source: Optional[SourceRef] = None,
    allow_novel_frames: bool = False,
) -> int:
    """Store one verb-frame event; returns its id."""
    if not participants:
        raise ArgumentError("an event needs at least one participant")
    if source is None:
        raise ArgumentError("an event needs a source")
    if frame not in STARTER_FRAMES and not allow_novel_frames:
        raise ArgumentError(
            f"frame {frame!r} not in the starter lexicon (pass allow_novel_frames=True)"
        )
    for _, entity in participants:
        if not kb.contains(entity):
            raise NotFoundError(f"no such participant: {entity}")
    event = EventFrame(
        event_id=len(kb.events) + 1,
        frame=frame,
        participants=list(participants),
        time=EventTime.of(time),
        location=location,
        amount=amount,
        source=source,
    )
    kb.events.append(event)
    return event.event_id


def events_for(kb: KnowledgeBase, entity: EntityId) -> list[EventFrame]:
    return [e for e in kb.events if any(pid == entity for _, pid in e.participants)]


def start_process(kb: KnowledgeBase, title: str, when: Optional[date], source: SourceRef) -> Process:
    process = Process(
        process_id=len(kb.processes) + 1,
        title=title,
        status="Planned",
        history=[("Planned", when, source)],
    )
    kb.processes.append(process)
    return process


def advance_process(process: Process, new_status: str, when: Optional[date], source: SourceRef) -> Process:
    """Append one lifecycle step; only the legal transitions are accepted."""
    if new_status not in PROCESS_STATUSES:
        raise ArgumentError(f"unknown process status: {new_status!r}")
    if (process.status, new_status) not in LEGAL_TRANSITIONS:
        raise TransitionError(process.status, new_status)
    process.history.append((new_status, when, source))
    process.status = new_status
    return process


@dataclass(frozen=True)
class TimelineEntry:
    kind: str  # "event" | "mention"
    when: Optional[date]
    label: str
    source: SourceRef


def timeline(
    kb: KnowledgeBase,
    store: MentionStore,
    entity: EntityId,
    window=None,
    index: Optional[InvertedIndex] = None,
) -> list[TimelineEntry]:
    """Chronological merge of an entity's events and mentions.

    Undated events sort last; ties keep source page order.
    """
    from .stats import in_range

    if not kb.contains(entity):
        raise NotFoundError(f"no such entity: {entity}")
    entries: list[tuple[tuple, TimelineEntry]] = []
    for event in events_for(kb, entity):
        when = event.time.sort_date
        label = event.frame
        if event.amount:
            label += f" {event.amount[0]} {event.amount[1]}"
        if event.location:
            label += f" at {event.location}"
        if when is not None and window is not None and not in_range(when, window):
            continue
        entries.append((
            _sort_key(when, event.source.ref if event.source else "", 0),
            TimelineEntry("event", when, label, event.source),
        ))
    for mention in store.for_entity(entity):
        when = mention.page_ref[0]
        if window is not None and not in_range(when, window):
            continue
        if index is not None and mention.page_ref in index.pages:
            label = snippet(index.page(mention.page_ref), (mention.start, mention.end),
                            radius=5, tokens=index.tokens_of(mention.page_ref))
        else:
            label = mention.surface
        source = SourceRef.page_span(when, mention.page_ref[1], mention.start, mention.end)
        entries.append((
            _sort_key(when, source.ref, mention.start),
            TimelineEntry("mention", when, label, source),
        ))
    entries.sort(key=lambda pair: pair[0])
    return [entry for _, entry in entries]


def _sort_key(when: Optional[date], source_ref: str, offset: int) -> tuple:
    # undated entries go last
    return (when is None, when or date.min, source_ref, offset)

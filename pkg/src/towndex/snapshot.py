"""Versioned JSON snapshot: the whole KB + mention store + build metadata.

The encoder is canonical (sorted keys, fixed indentation, entities ordered
by id), so identical content always yields identical bytes and
save -> load -> save is a byte-level fixed point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Optional, Union

from .errors import FormatError
from .events import EventFrame, EventTime, Process
from .kb import (Assertion, Building, Business, EntityId, EntityKind, Household,
                 KnowledgeBase, Office, Person, SourceRef)
from .linking import Mention, MentionStore
from .names import NameKey

SNAPSHOT_VERSION = 1


@dataclass
class Snapshot:
    kb: KnowledgeBase
    store: MentionStore
    meta: dict = field(default_factory=dict)  # corpus_hash, config_hash, created_at, corpus_root


def _date(value: Optional[date]) -> Optional[str]:
    return value.isoformat() if value else None


def _parse_date(value: Optional[str]) -> Optional[date]:
    return date.fromisoformat(value) if value else None


def _name_key(key: Optional[NameKey]):
    if key is None:
        return None
    return {"tokens": list(key.tokens), "honorific": key.honorific}


def _parse_name_key(doc) -> Optional[NameKey]:
    if doc is None:
        return None
    return NameKey(tuple(doc["tokens"]), doc["honorific"])


def _source(ref: SourceRef) -> dict:
    return {"kind": ref.kind, "ref": ref.ref}


def _parse_source(doc: dict) -> SourceRef:
    return SourceRef(doc["kind"], doc["ref"])


def to_document(snapshot: Snapshot) -> dict:
    kb = snapshot.kb
    return {
        "towndex_kb_version": SNAPSHOT_VERSION,
        "meta": {
            "corpus_hash": snapshot.meta.get("corpus_hash"),
            "config_hash": snapshot.meta.get("config_hash"),
            "created_at": snapshot.meta.get("created_at"),
            "corpus_root": snapshot.meta.get("corpus_root"),
        },
        "persons": [
            {
                "id": str(p.id),
                "surname_key": _name_key(p.surname_key),
                "given_key": _name_key(p.given_key),
                "census_ref": p.census_ref,
                "household": str(p.household) if p.household else None,
                "excluded": p.excluded,
            }
            for p in sorted(kb.persons.values(), key=lambda p: p.id)
        ],
        "households": [
            {
                "id": str(h.id),
                "household_id": h.household_id,
                "members": [[str(pid), relation] for pid, relation in h.members],
                "locality": h.locality,
                "is_institution": h.is_institution,
                "warnings": list(h.warnings),
            }
            for h in sorted(kb.households.values(), key=lambda h: h.id)
        ],
        "businesses": [
            {
                "id": str(b.id),
                "name": b.name,
                "category": b.category,
                "building": str(b.building) if b.building else None,
            }
            for b in sorted(kb.businesses.values(), key=lambda b: b.id)
        ],
        "buildings": [
            {"id": str(b.id), "address": b.address}
            for b in sorted(kb.buildings.values(), key=lambda b: b.id)
        ],
        "offices": [
            {
                "id": str(o.id),
                "title": o.title,
                "parent": str(o.parent) if o.parent else None,
                "holders": [
                    [str(pid), _date(start), _date(end)] for pid, start, end in o.holders
                ],
            }
            for o in sorted(kb.offices.values(), key=lambda o: o.id)
        ],
        "assertions": [
            {
                "subject": str(a.subject),
                "attribute": a.attribute,
                "value": a.value,
                "source": _source(a.source),
                "as_of": _date(a.as_of),
                "confidence": a.confidence,
            }
            for a in kb.assertions
        ],
        "mentions": [
            {
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
            }
            for m in snapshot.store.mentions
        ],
        "events": [
            {
                "event_id": e.event_id,
                "frame": e.frame,
                "participants": [[role, str(pid)] for role, pid in e.participants],
                "time": {
                    "start": _date(e.time.start),
                    "end": _date(e.time.end),
                    "precision": e.time.precision,
                },
                "location": e.location,
                "amount": list(e.amount) if e.amount else None,
                "source": _source(e.source) if e.source else None,
            }
            for e in kb.events
        ],
        "processes": [
            {
                "process_id": p.process_id,
                "title": p.title,
                "status": p.status,
                "history": [
                    [status, _date(when), _source(source)]
                    for status, when, source in p.history
                ],
                "events": list(p.events),
            }
            for p in kb.processes
        ],
    }


def from_document(doc: dict) -> Snapshot:
    if doc.get("towndex_kb_version") != SNAPSHOT_VERSION:
        raise FormatError(
            f"unsupported snapshot version: {doc.get('towndex_kb_version')!r}"
        )
    kb = KnowledgeBase()
    for p in doc["persons"]:
        pid = EntityId.parse(p["id"])
        kb.bump_serial(pid.kind, pid.serial)
        kb.persons[pid] = Person(
            id=pid,
            surname_key=_parse_name_key(p["surname_key"]),
            given_key=_parse_name_key(p["given_key"]),
            census_ref=p["census_ref"],
            household=EntityId.parse(p["household"]) if p["household"] else None,
            excluded=p["excluded"],
        )
    for h in doc["households"]:
        hid = EntityId.parse(h["id"])
        kb.bump_serial(hid.kind, hid.serial)
        kb.households[hid] = Household(
            id=hid,
            household_id=h["household_id"],
            members=[(EntityId.parse(pid), relation) for pid, relation in h["members"]],
            locality=h["locality"],
            is_institution=h["is_institution"],
            warnings=list(h["warnings"]),
        )
    for b in doc["businesses"]:
        bid = EntityId.parse(b["id"])
        kb.bump_serial(bid.kind, bid.serial)
        kb.businesses[bid] = Business(
            id=bid, name=b["name"], category=b["category"],
            building=EntityId.parse(b["building"]) if b["building"] else None,
        )
    for b in doc["buildings"]:
        bid = EntityId.parse(b["id"])
        kb.bump_serial(bid.kind, bid.serial)
        kb.buildings[bid] = Building(id=bid, address=b["address"])
    for o in doc["offices"]:
        oid = EntityId.parse(o["id"])
        kb.bump_serial(oid.kind, oid.serial)
        kb.offices[oid] = Office(
            id=oid,
            title=o["title"],
            parent=EntityId.parse(o["parent"]) if o["parent"] else None,
            holders=[
                (EntityId.parse(pid), _parse_date(start), _parse_date(end))
                for pid, start, end in o["holders"]
            ],
        )
    for a in doc["assertions"]:
        kb.assertions.append(Assertion(
            subject=EntityId.parse(a["subject"]),
            attribute=a["attribute"],
            value=a["value"],
            source=_parse_source(a["source"]),
            as_of=_parse_date(a["as_of"]),
            confidence=a["confidence"],
        ))
    for e in doc["events"]:
        kb.events.append(EventFrame(
            event_id=e["event_id"],
            frame=e["frame"],
            participants=[(role, EntityId.parse(pid)) for role, pid in e["participants"]],
            time=EventTime(
                start=_parse_date(e["time"]["start"]),
                end=_parse_date(e["time"]["end"]),
                precision=e["time"]["precision"],
            ),
            location=e["location"],
            amount=tuple(e["amount"]) if e["amount"] else None,
            source=_parse_source(e["source"]) if e["source"] else None,
        ))
    for p in doc["processes"]:
        kb.processes.append(Process(
            process_id=p["process_id"],
            title=p["title"],
            status=p["status"],
            history=[
                (status, _parse_date(when), _parse_source(source))
                for status, when, source in p["history"]
            ],
            events=list(p["events"]),
        ))
    mentions = [
        Mention(
            page_ref=(date.fromisoformat(m["date"]), m["page"]),
            start=m["start"],
            end=m["end"],
            surface=m["surface"],
            target_kind=m["target_kind"],
            entity=EntityId.parse(m["entity"]) if m["entity"] else None,
            surname=tuple(m["surname"]),
            confidence=m["confidence"],
            method=m["method"],
        )
        for m in doc["mentions"]
    ]
    return Snapshot(kb=kb, store=MentionStore(mentions), meta=doc["meta"])


def dumps(snapshot: Snapshot) -> str:
    return json.dumps(to_document(snapshot), sort_keys=True, indent=1) + "\n"


def loads(text: str) -> Snapshot:
    return from_document(json.loads(text))


def save(snapshot: Snapshot, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(snapshot), encoding="utf-8")


def load(path: Union[str, Path]) -> Snapshot:
    path = Path(path)
    if not path.is_file():
        raise FormatError(f"snapshot file does not exist: {path}")
    return loads(path.read_text(encoding="utf-8"))

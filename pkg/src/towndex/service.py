"""Read-only HTTP JSON API over a sealed snapshot.

Every response is derived solely from the snapshot (plus the rebuilt text
index for snippets); no request mutates anything, so concurrent requests
need no locking.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import events as events_mod
from . import stats as stats_mod
from .errors import ArgumentError, NotFoundError, UndefinedResultError
from .kb import EntityId, EntityKind
from .names import NameKey, name_tokens
from .snapshot import Snapshot
from .summaries import mention_payload, person_summary, query_person
from .textindex import InvertedIndex, search_exact, snippet

DEFAULT_LIMIT = 50
MAX_LIMIT = 500


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message}})


def create_app(
    snapshot: Snapshot,
    index: Optional[InvertedIndex] = None,
    static_dir: Optional[Path] = None,
) -> FastAPI:
    app = FastAPI(title="towndex", docs_url=None, redoc_url=None)
    kb = snapshot.kb
    store = snapshot.store

    @app.exception_handler(StarletteHTTPException)
    async def http_error(request: Request, exc: StarletteHTTPException):
        code = "not_found" if exc.status_code == 404 else "http_error"
        return _error(exc.status_code, code, str(exc.detail))

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return _error(400, "bad_params", str(exc.errors()))

    @app.exception_handler(NotFoundError)
    async def not_found(request: Request, exc: NotFoundError):
        return _error(404, "not_found", str(exc))

    @app.exception_handler(ArgumentError)
    async def bad_argument(request: Request, exc: ArgumentError):
        return _error(400, "bad_argument", str(exc))

    @app.exception_handler(UndefinedResultError)
    async def undefined(request: Request, exc: UndefinedResultError):
        return _error(400, "undefined_result", str(exc))

    def person_or_404(serial: int):
        pid = EntityId(EntityKind.PERSON, serial)
        if not kb.contains(pid):
            raise NotFoundError(f"no such person: {pid}")
        return kb.persons[pid]

    @app.get("/api/persons")
    def list_persons(
        q: Optional[str] = None,
        offset: int = Query(0, ge=0),
        limit: int = Query(DEFAULT_LIMIT, ge=1, le=MAX_LIMIT),
    ):
        if q is not None:
            results = query_person(snapshot, q, index)
        else:
            results = [
                person_summary(snapshot, p, index)
                for p in sorted(kb.persons.values(), key=lambda p: p.id)
            ]
        return {"total": len(results), "offset": offset, "limit": limit,
                "results": results[offset:offset + limit]}

    @app.get("/api/persons/{serial}")
    def get_person(serial: int):
        return person_summary(snapshot, person_or_404(serial), index)

    @app.get("/api/persons/{serial}/mentions")
    def get_person_mentions(serial: int):
        person = person_or_404(serial)
        mentions = store.for_entity(person.id)
        return {"id": str(person.id),
                "mentions": [mention_payload(m, index) for m in mentions]}

    @app.get("/api/persons/{serial}/timeline")
    def get_person_timeline(serial: int):
        person = person_or_404(serial)
        entries = events_mod.timeline(kb, store, person.id, index=index)
        return {"id": str(person.id), "entries": [
            {
                "kind": e.kind,
                "date": e.when.isoformat() if e.when else None,
                "label": e.label,
                "source": {"kind": e.source.kind, "ref": e.source.ref} if e.source else None,
            }
            for e in entries
        ]}

    @app.get("/api/households/{serial}")
    def get_household(serial: int):
        hid = EntityId(EntityKind.HOUSEHOLD, serial)
        if not kb.contains(hid):
            raise NotFoundError(f"no such household: {hid}")
        record = kb.households[hid]
        return {
            "id": str(record.id),
            "household_id": record.household_id,
            "locality": record.locality,
            "is_institution": record.is_institution,
            "warnings": record.warnings,
            "members": [
                {
                    "id": str(pid),
                    "relation": relation,
                    "display_name": kb.persons[pid].display_name(),
                    "mention_count": len(store.for_entity(pid)),
                }
                for pid, relation in record.members
            ],
        }

    @app.get("/api/businesses")
    def list_businesses(
        q: Optional[str] = None,
        offset: int = Query(0, ge=0),
        limit: int = Query(DEFAULT_LIMIT, ge=1, le=MAX_LIMIT),
    ):
        businesses = sorted(kb.businesses.values(), key=lambda b: b.id)
        if q:
            needle = q.lower()
            businesses = [b for b in businesses if needle in b.name.lower()]
        results = [
            {
                "id": str(b.id),
                "name": b.name,
                "category": b.category,
                "address": kb.buildings[b.building].address if b.building else None,
                "mention_count": len(store.for_entity(b.id)),
            }
            for b in businesses
        ]
        return {"total": len(results), "offset": offset, "limit": limit,
                "results": results[offset:offset + limit]}

    @app.get("/api/businesses/{serial}")
    def get_business(serial: int):
        bid = EntityId(EntityKind.BUSINESS, serial)
        if not kb.contains(bid):
            raise NotFoundError(f"no such business: {bid}")
        b = kb.businesses[bid]
        return {
            "id": str(b.id),
            "name": b.name,
            "category": b.category,
            "address": kb.buildings[b.building].address if b.building else None,
            "mentions": [mention_payload(m, index) for m in store.for_entity(b.id)],
        }

    @app.get("/api/offices")
    def list_offices():
        return {"offices": [
            {
                "id": str(o.id),
                "title": o.title,
                "parent": str(o.parent) if o.parent else None,
                "holders": [
                    {
                        "id": str(pid),
                        "display_name": kb.persons[pid].display_name(),
                        "start": start.isoformat() if start else None,
                        "end": end.isoformat() if end else None,
                    }
                    for pid, start, end in o.holders
                ],
            }
            for o in sorted(kb.offices.values(), key=lambda o: o.id)
        ]}

    @app.get("/api/search")
    def text_search(phrase: str, limit: int = Query(DEFAULT_LIMIT, ge=1, le=MAX_LIMIT)):
        if index is None:
            raise ArgumentError("text search unavailable: corpus not loaded")
        terms = name_tokens(phrase)
        if not terms:
            raise ArgumentError("empty phrase")
        if len(terms) > 3:
            raise ArgumentError("phrase window capped at 3 terms")
        postings = search_exact(index, terms)
        results = []
        for p in postings[:limit]:
            page = index.page(p.page_ref)
            tokens = index.tokens_of(p.page_ref)
            end = tokens[p.token_index + len(terms) - 1].end
            results.append({
                "date": p.page_ref[0].isoformat(),
                "page": p.page_ref[1],
                "start": p.start,
                "end": end,
                "snippet": snippet(page, (p.start, end), radius=5, tokens=tokens),
                "source_url": page.source_url,
            })
        return {"phrase": phrase, "total": len(postings), "results": results}

    @app.get("/api/stats/top")
    def stats_top(k: int = Query(10, ge=0)):
        entries = stats_mod.top_entities(store, kb, k)
        return {"k": k, "entries": [
            {
                "entity": str(pid),
                "display_name": kb.persons[pid].display_name(),
                "count": count,
            }
            for pid, count in entries
        ]}

    @app.get("/api/stats/coverage")
    def stats_coverage(n: int, seed: int):
        report = stats_mod.coverage_sample(kb, store, n, seed)
        return {
            "sample_size": report.sample_size,
            "seed": report.seed,
            "covered_fraction": report.covered_fraction,
            "sampled": [
                {
                    "person": str(pid),
                    "display_name": kb.persons[pid].display_name(),
                    "household": str(hid) if hid else None,
                    "covered": covered,
                }
                for pid, hid, covered in report.sampled
            ],
        }

    @app.get("/api/meta")
    def meta():
        return {
            "towndex_kb_version": 1,
            "meta": snapshot.meta,
            "counts": {
                "persons": len(kb.persons),
                "households": len(kb.households),
                "businesses": len(kb.businesses),
                "buildings": len(kb.buildings),
                "offices": len(kb.offices),
                "assertions": len(kb.assertions),
                "mentions": len(store),
                "events": len(kb.events),
                "processes": len(kb.processes),
            },
        }

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app

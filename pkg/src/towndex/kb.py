"""The entity knowledge base: persons, households, businesses, buildings, offices.

Every attribute claim is an Assertion carrying a SourceRef; conflicting
assertions coexist and are resolved by provenance, never overwritten.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from typing import Optional, Union

from .errors import ArgumentError, FormatError, NotFoundError
from .names import NameKey, keys_equal, normalize_name
from .records import CensusRow, DirectoryRecord


class EntityKind(str, Enum):
    PERSON = "person"
    HOUSEHOLD = "household"
    BUSINESS = "business"
    BUILDING = "building"
    OFFICE = "office"


@dataclass(frozen=True, order=True)
class EntityId:
    kind: EntityKind
    serial: int

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.serial}"

    @classmethod
    def parse(cls, raw: str) -> "EntityId":
        try:
            kind, serial = raw.split(":")
            return cls(EntityKind(kind), int(serial))
        except ValueError:
            raise ArgumentError(f"not an entity id: {raw!r}")


@dataclass(frozen=True)
class SourceRef:
    kind: str  # "census" | "directory" | "page" | "manual"
    ref: str   # record_id, "year|line", "YYYY-MM-DD/p{n}@start-end", or note

    @classmethod
    def census(cls, record_id: str) -> "SourceRef":
        return cls("census", record_id)

    @classmethod
    def directory(cls, record: DirectoryRecord) -> "SourceRef":
        return cls("directory", "|".join(str(x) for x in record.identity()))

    @classmethod
    def page_span(cls, issue_date: date, page_number: int, start: int, end: int) -> "SourceRef":
        return cls("page", f"{issue_date.isoformat()}/p{page_number}@{start}-{end}")

    @classmethod
    def manual(cls, note: str) -> "SourceRef":
        return cls("manual", note)


@dataclass
class Assertion:
    subject: EntityId
    attribute: str
    value: Union[str, int, float]
    source: SourceRef
    as_of: Optional[date] = None
    confidence: float = 1.0


@dataclass
class Person:
    id: EntityId
    surname_key: NameKey
    given_key: Optional[NameKey]
    census_ref: Optional[str] = None
    household: Optional[EntityId] = None
    excluded: bool = False  # institution residents stay queryable, out of stats

    def display_name(self) -> str:
        given = str(self.given_key).title() if self.given_key else ""
        return f"{given} {str(self.surname_key).title()}".strip()


@dataclass
class Household:
    id: EntityId
    household_id: str  # source census key
    members: list[tuple[EntityId, str]] = field(default_factory=list)
    locality: str = ""
    is_institution: bool = False
    warnings: list[str] = field(default_factory=list)


@dataclass
class Business:
    id: EntityId
    name: str
    category: str = ""
    building: Optional[EntityId] = None


@dataclass
class Building:
    id: EntityId
    address: str


@dataclass
class Office:
    id: EntityId
    title: str
    parent: Optional[EntityId] = None
    holders: list[tuple[EntityId, Optional[date], Optional[date]]] = field(default_factory=list)


def _normalize_address(address: str) -> str:
    return " ".join(address.lower().split())


class KnowledgeBase:
    """Typed entity graph with provenance-tagged assertions.

    Build phase is single-writer; once built the KB is treated as an
    immutable snapshot by all readers.
    """

    def __init__(self) -> None:
        self.persons: dict[EntityId, Person] = {}
        self.households: dict[EntityId, Household] = {}
        self.businesses: dict[EntityId, Business] = {}
        self.buildings: dict[EntityId, Building] = {}
        self.offices: dict[EntityId, Office] = {}
        self.assertions: list[Assertion] = []
        self.events: list = []      # populated by towndex.events
        self.processes: list = []   # populated by towndex.events
        self.unresolved: list[str] = []  # ambiguous directory matches, audit trail
        self._serials: dict[EntityKind, int] = {k: 0 for k in EntityKind}
        self._applied_directory: set[tuple] = set()

    # -- id allocation ----------------------------------------------------

    def new_id(self, kind: EntityKind) -> EntityId:
        self._serials[kind] += 1
        return EntityId(kind, self._serials[kind])

    def bump_serial(self, kind: EntityKind, serial: int) -> None:
        """Keep the counter ahead of ids loaded from a snapshot."""
        self._serials[kind] = max(self._serials[kind], serial)

    # -- lookups -----------------------------------------------------------

    def _tables(self) -> dict[EntityKind, dict]:
        return {
            EntityKind.PERSON: self.persons,
            EntityKind.HOUSEHOLD: self.households,
            EntityKind.BUSINESS: self.businesses,
            EntityKind.BUILDING: self.buildings,
            EntityKind.OFFICE: self.offices,
        }

    def contains(self, entity_id: EntityId) -> bool:
        return entity_id in self._tables()[entity_id.kind]

    def entity(self, entity_id: EntityId):
        table = self._tables()[entity_id.kind]
        if entity_id not in table:
            raise NotFoundError(f"no such entity: {entity_id}")
        return table[entity_id]

    def assertions_about(self, entity_id: EntityId) -> list[Assertion]:
        return [a for a in self.assertions if a.subject == entity_id]

    def persons_with_surname(self, tokens: tuple[str, ...]) -> list[Person]:
        return [p for p in self.persons.values() if p.surname_key.tokens == tokens]

    def role_tokens(self, person: Person) -> set[str]:
        """Lowercased tokens from the person's office titles and occupations."""
        from .names import name_tokens
        tokens: set[str] = set()
        for office in self.offices.values():
            for holder, _, _ in office.holders:
                if holder == person.id:
                    tokens.update(name_tokens(office.title))
        for a in self.assertions_about(person.id):
            if a.attribute == "occupation":
                tokens.update(name_tokens(str(a.value)))
        return tokens


def build_entities(rows: list[CensusRow]) -> KnowledgeBase:
    """One Person per census row, one Household per distinct household_id.

    Institution households mark their members excluded-from-analysis;
    a household without exactly one Head gets a warning, not a fix.
    """
    kb = KnowledgeBase()
    seen_record_ids: set[str] = set()
    households_by_key: dict[str, Household] = {}
    for row in rows:
        if row.record_id in seen_record_ids:
            raise FormatError(f"duplicate record_id: {row.record_id!r}")
        seen_record_ids.add(row.record_id)
        household = households_by_key.get(row.household_id)
        if household is None:
            household = Household(
                id=kb.new_id(EntityKind.HOUSEHOLD),
                household_id=row.household_id,
                locality=row.locality,
                is_institution=row.is_institution,
            )
            households_by_key[row.household_id] = household
            kb.households[household.id] = household
        person = Person(
            id=kb.new_id(EntityKind.PERSON),
            surname_key=normalize_name(row.surname) if row.surname else NameKey(("unknown",)),
            given_key=normalize_name(row.given_name) if row.given_name else None,
            census_ref=row.record_id,
            household=household.id,
            excluded=household.is_institution,
        )
        kb.persons[person.id] = person
        household.members.append((person.id, row.relation))
        source = SourceRef.census(row.record_id)
        kb.assertions.append(Assertion(person.id, "sex", row.sex, source))
        kb.assertions.append(Assertion(person.id, "age_at_census", row.age, source))
        kb.assertions.append(Assertion(person.id, "race", row.race, source))
        kb.assertions.append(Assertion(person.id, "birthplace", row.birthplace, source))
        if row.father_birthplace:
            kb.assertions.append(Assertion(person.id, "father_birthplace", row.father_birthplace, source))
        if row.mother_birthplace:
            kb.assertions.append(Assertion(person.id, "mother_birthplace", row.mother_birthplace, source))
        if row.occupation:
            kb.assertions.append(Assertion(person.id, "occupation", row.occupation, source))
    for household in kb.households.values():
        heads = sum(1 for _, relation in household.members if relation == "Head")
        if heads != 1:
            household.warnings.append(f"{heads} members with relation Head")
    return kb


def merge_directory_records(kb: KnowledgeBase, records: list[DirectoryRecord]) -> KnowledgeBase:
    """Fold directory records into the KB.

    Businesses create Business + Building entities; residents attach
    occupation/address assertions to the unique exact-key person match,
    or create a directory-sourced person when no one matches.  Ambiguous
    matches (two or more candidates) are recorded and left alone.
    Idempotent per record identity.
    """
    buildings_by_address = {_normalize_address(b.address): b for b in kb.buildings.values()}
    businesses_by_name = {b.name.lower(): b for b in kb.businesses.values()}
    for record in records:
        key = record.identity()
        if key in kb._applied_directory:
            continue
        kb._applied_directory.add(key)
        source = SourceRef.directory(record)
        if record.kind == "Business":
            building = None
            if record.address:
                addr_key = _normalize_address(record.address)
                building = buildings_by_address.get(addr_key)
                if building is None:
                    building = Building(id=kb.new_id(EntityKind.BUILDING), address=record.address)
                    kb.buildings[building.id] = building
                    buildings_by_address[addr_key] = building
            business = businesses_by_name.get(record.business_name.lower())
            if business is None:
                business = Business(
                    id=kb.new_id(EntityKind.BUSINESS),
                    name=record.business_name,
                    category=record.category,
                    building=building.id if building else None,
                )
                kb.businesses[business.id] = business
                businesses_by_name[business.name.lower()] = business
            kb.assertions.append(Assertion(business.id, "category", record.category, source))
            if record.address:
                kb.assertions.append(Assertion(business.id, "address", record.address, source))
            continue
        # Resident
        surname_key = normalize_name(record.surname)
        given_key = normalize_name(record.given_name) if record.given_name else None
        matches = [
            p for p in kb.persons.values()
            if keys_equal(p.surname_key, surname_key)
            and _given_keys_equal(p.given_key, given_key)
        ]
        if len(matches) == 1:
            person = matches[0]
        elif len(matches) > 1:
            kb.unresolved.append(
                f"directory {record.year}: {record.surname}, {record.given_name} "
                f"matches {len(matches)} persons"
            )
            continue
        else:
            person = Person(
                id=kb.new_id(EntityKind.PERSON),
                surname_key=surname_key,
                given_key=given_key,
            )
            kb.persons[person.id] = person
        if record.occupation:
            kb.assertions.append(Assertion(person.id, "occupation", record.occupation, source))
        if record.address:
            kb.assertions.append(Assertion(person.id, "address", record.address, source))
    return kb


def _given_keys_equal(a: Optional[NameKey], b: Optional[NameKey]) -> bool:
    if a is None or b is None:
        return a is b
    return a.tokens == b.tokens


def add_assertion(kb: KnowledgeBase, subject: EntityId, assertion: Assertion) -> KnowledgeBase:
    """Append one assertion. Prior assertions are never modified."""
    if not kb.contains(subject):
        raise NotFoundError(f"no such entity: {subject}")
    if assertion.source is None:
        raise ArgumentError("assertion requires a source")
    if assertion.subject != subject:
        raise ArgumentError("assertion.subject does not match subject argument")
    kb.assertions.append(assertion)
    return kb


def register_office(
    kb: KnowledgeBase,
    title: str,
    parent: Optional[EntityId] = None,
    holders: Optional[list[tuple[EntityId, Optional[date], Optional[date]]]] = None,
) -> EntityId:
    """Add a government office, keeping the parent links a forest."""
    holders = holders or []
    if parent is not None and (parent.kind != EntityKind.OFFICE or not kb.contains(parent)):
        raise NotFoundError(f"no such parent office: {parent}")
    for holder, _, _ in holders:
        if not kb.contains(holder):
            raise NotFoundError(f"no such holder: {holder}")
    _check_term_overlap(holders)
    office = Office(id=kb.new_id(EntityKind.OFFICE), title=title, parent=parent, holders=list(holders))
    if parent is not None and _would_cycle(kb, office.id, parent):
        raise ArgumentError(f"office parent chain would cycle at {parent}")
    kb.offices[office.id] = office
    return office.id


def set_office_parent(kb: KnowledgeBase, office: EntityId, parent: Optional[EntityId]) -> None:
    """Re-parent an office; rejected if the chain would stop being a forest."""
    record = kb.entity(office)
    if parent is not None:
        if parent.kind != EntityKind.OFFICE or not kb.contains(parent):
            raise NotFoundError(f"no such parent office: {parent}")
        if office == parent or _would_cycle(kb, office, parent):
            raise ArgumentError(f"office parent chain would cycle at {parent}")
    record.parent = parent


def _would_cycle(kb: KnowledgeBase, new_id: EntityId, parent: EntityId) -> bool:
    seen = {new_id}
    current: Optional[EntityId] = parent
    while current is not None:
        if current in seen:
            return True
        seen.add(current)
        current = kb.offices[current].parent if current in kb.offices else None
    return False


def _check_term_overlap(holders: list[tuple[EntityId, Optional[date], Optional[date]]]) -> None:
    spans = []
    for _, start, end in holders:
        s = start or date.min
        e = end or date.max
        for s2, e2 in spans:
            if s <= e2 and s2 <= e:
                raise ArgumentError("office holder terms overlap")
        spans.append((s, e))


@dataclass
class EntityView:
    entity_id: EntityId
    entity: object
    assertions: list[Assertion]


def lookup(kb: KnowledgeBase, entity_id: EntityId) -> EntityView:
    """Complete view of one entity: its record plus every assertion."""
    return EntityView(entity_id, kb.entity(entity_id), kb.assertions_about(entity_id))


def members(kb: KnowledgeBase, household: EntityId) -> list[tuple[Person, str]]:
    """Household members with relations, in census order."""
    record = kb.entity(household)
    return [(kb.persons[pid], relation) for pid, relation in record.members]

from datetime import date

import pytest

from towndex.errors import ArgumentError, FormatError, NotFoundError
from towndex.kb import (Assertion, EntityId, EntityKind, SourceRef,
                        add_assertion, build_entities, lookup, members,
                        merge_directory_records, register_office,
                        set_office_parent)
from towndex.records import parse_census_file, parse_directory_file

from conftest import CENSUS_CSV, person_by_census_ref
from test_records import synthetic_census
import random


def small_kb():
    rows, _ = parse_census_file(CENSUS_CSV)
    return build_entities(rows), rows


def test_household_grouping():
    kb, rows = small_kb()
    assert len(kb.persons) == len(rows)
    h7 = next(h for h in kb.households.values() if h.household_id == "H7")
    assert len(h7.members) == 4
    assert sum(1 for _, rel in h7.members if rel == "Head") == 1
    assert h7.warnings == []


def test_paper_scale_person_count():
    rows, _ = parse_census_file(synthetic_census(5176, random.Random(0)))
    kb = build_entities(rows)
    assert len(kb.persons) == 5176


def test_institution_members_flagged_excluded():
    kb, _ = small_kb()
    emil = person_by_census_ref(kb, "K1")
    assert emil.excluded
    household = kb.households[emil.household]
    assert household.is_institution
    assert person_by_census_ref(kb, "A3").excluded is False


def test_duplicate_record_id_fatal():
    rows, _ = parse_census_file(CENSUS_CSV)
    with pytest.raises(FormatError):
        build_entities(rows + [rows[0]])


def test_headless_household_warns():
    rows, _ = parse_census_file(CENSUS_CSV)
    headless = [r for r in rows if r.household_id == "H6"]
    kb = build_entities(headless)
    household = next(iter(kb.households.values()))
    assert household.warnings  # zero Heads


def test_bidirectional_links():
    kb, _ = small_kb()
    for person in kb.persons.values():
        assert person.household is not None
        assert any(pid == person.id for pid, _ in kb.households[person.household].members)
    for household in kb.households.values():
        for pid, _ in household.members:
            assert kb.persons[pid].household == household.id


def test_every_assertion_sourced():
    kb, _ = small_kb()
    assert kb.assertions
    assert all(a.source is not None and a.source.ref for a in kb.assertions)


def test_build_is_order_insensitive_per_record():
    rows, _ = parse_census_file(CENSUS_CSV)
    kb1 = build_entities(rows)
    kb2 = build_entities(list(reversed(rows)))

    def content(kb):
        out = {}
        for p in kb.persons.values():
            attrs = sorted((a.attribute, a.value) for a in kb.assertions_about(p.id))
            household = kb.households[p.household].household_id
            out[p.census_ref] = (p.surname_key, p.given_key, household, p.excluded, tuple(attrs))
        return out

    assert content(kb1) == content(kb2)


def test_merge_business_creates_business_and_building():
    kb, _ = small_kb()
    records, _ = parse_directory_file("B|Truman Paint & Wallpaper|paints|412 Main\n", 1899)
    merge_directory_records(kb, records)
    assert len(kb.businesses) == 1
    assert len(kb.buildings) == 1
    business = next(iter(kb.businesses.values()))
    assert business.building is not None
    assert kb.buildings[business.building].address == "412 Main"


def test_merge_resident_unique_match_attaches_assertion():
    kb, _ = small_kb()
    records, _ = parse_directory_file("R|Truman|H.C.|paperhanger|412 Main\n", 1889)
    merge_directory_records(kb, records)
    truman = person_by_census_ref(kb, "T1")
    occupations = [a.value for a in kb.assertions_about(truman.id) if a.attribute == "occupation"]
    assert "paperhanger" in occupations
    sources = {a.source.kind for a in kb.assertions_about(truman.id) if a.value == "paperhanger"}
    assert sources == {"directory"}


def test_merge_unmatched_resident_creates_person():
    kb, _ = small_kb()
    before = len(kb.persons)
    records, _ = parse_directory_file("R|Zook|Eli|cooper|9 Elm\n", 1889)
    merge_directory_records(kb, records)
    assert len(kb.persons) == before + 1
    newcomer = next(p for p in kb.persons.values() if p.census_ref is None)
    assert newcomer.surname_key.tokens == ("zook",)


def test_merge_ambiguous_match_recorded_not_applied():
    header_rows, _ = parse_census_file(CENSUS_CSV)
    twin = [r for r in header_rows if r.record_id == "A3"][0]
    twin2 = type(twin)(**{**twin.__dict__, "record_id": "A9", "household_id": "H11"})
    kb = build_entities(header_rows + [twin2])
    records, _ = parse_directory_file("R|Asmus|Max|clerk|1 Main\n", 1889)
    before = len(kb.assertions)
    merge_directory_records(kb, records)
    assert len(kb.assertions) == before
    assert kb.unresolved


def test_merge_idempotent():
    kb, _ = small_kb()
    records, _ = parse_directory_file(
        "R|Truman|H.C.|painter|412 Main\nB|Truman Paint & Wallpaper|paints|412 Main\n", 1889)
    merge_directory_records(kb, records)
    snapshot = (len(kb.persons), len(kb.businesses), len(kb.buildings), len(kb.assertions))
    merge_directory_records(kb, records)
    assert (len(kb.persons), len(kb.businesses), len(kb.buildings), len(kb.assertions)) == snapshot


def test_add_assertion_appends():
    kb, _ = small_kb()
    simpson = person_by_census_ref(kb, "S1")
    before = len(kb.assertions)
    source = SourceRef.page_span(date(1899, 4, 6), 1, 0, 13)
    add_assertion(kb, simpson.id, Assertion(simpson.id, "occupation", "insurance agent", source))
    assert len(kb.assertions) == before + 1
    assert kb.assertions[:before] == kb.assertions[:before]


def test_add_assertion_unknown_subject():
    kb, _ = small_kb()
    ghost = EntityId(EntityKind.PERSON, 999999)
    before = len(kb.assertions)
    with pytest.raises(NotFoundError):
        add_assertion(kb, ghost, Assertion(ghost, "x", "y", SourceRef.manual("n")))
    assert len(kb.assertions) == before


def test_conflicting_assertions_coexist():
    kb, _ = small_kb()
    simpson = person_by_census_ref(kb, "S1")
    add_assertion(kb, simpson.id, Assertion(simpson.id, "age_at_census", 51, SourceRef.manual("note")))
    ages = [(a.value, a.source.kind) for a in kb.assertions_about(simpson.id)
            if a.attribute == "age_at_census"]
    assert (50, "census") in ages and (51, "manual") in ages


def test_register_office_with_holder():
    kb, _ = small_kb()
    simpson = person_by_census_ref(kb, "S1")
    office = register_office(kb, "Mayor", holders=[(simpson.id, date(1899, 1, 1), date(1900, 12, 31))])
    assert kb.offices[office].title == "Mayor"


def test_office_self_parent_cycle_rejected():
    kb, _ = small_kb()
    office = register_office(kb, "Mayor")
    with pytest.raises(ArgumentError):
        set_office_parent(kb, office, office)
    child = register_office(kb, "Clerk", parent=office)
    with pytest.raises(ArgumentError):
        set_office_parent(kb, office, child)


def test_overlapping_holder_terms_rejected():
    kb, _ = small_kb()
    simpson = person_by_census_ref(kb, "S1")
    baird = person_by_census_ref(kb, "B1")
    with pytest.raises(ArgumentError):
        register_office(kb, "Mayor", holders=[
            (simpson.id, date(1899, 1, 1), date(1900, 6, 30)),
            (baird.id, date(1900, 1, 1), date(1901, 12, 31)),
        ])


def test_lookup_round_trip():
    kb, rows = small_kb()
    max_asmus = person_by_census_ref(kb, "A3")
    view = lookup(kb, max_asmus.id)
    attrs = {a.attribute: a.value for a in view.assertions}
    row = next(r for r in rows if r.record_id == "A3")
    assert attrs["age_at_census"] == row.age
    assert attrs["sex"] == row.sex
    assert attrs["race"] == row.race
    assert attrs["birthplace"] == row.birthplace


def test_members_in_census_order():
    kb, rows = small_kb()
    h7 = next(h for h in kb.households.values() if h.household_id == "H7")
    listed = members(kb, h7.id)
    expected = [r.given_name for r in rows if r.household_id == "H7"]
    assert [str(p.given_key).upper() for p, _ in listed] == [g.replace(".", " ").strip().upper() for g in expected]


def test_lookup_reads_writes():
    kb, _ = small_kb()
    simpson = person_by_census_ref(kb, "S1")
    add_assertion(kb, simpson.id, Assertion(simpson.id, "note", "chaired meeting", SourceRef.manual("m")))
    view = lookup(kb, simpson.id)
    assert any(a.attribute == "note" for a in view.assertions)


def test_lookup_unknown_id():
    kb, _ = small_kb()
    with pytest.raises(NotFoundError):
        lookup(kb, EntityId(EntityKind.BUSINESS, 42))

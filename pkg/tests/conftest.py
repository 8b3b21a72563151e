"""Shared fixtures: a small synthetic town with census, directory, and newspaper."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from towndex.pipeline import BuildConfig, BuildResult, build_pipeline

CENSUS_CSV = """\
record_id,surname,given_name,relation,sex,age,race,birthplace,father_birthplace,mother_birthplace,occupation,household_id,locality,is_institution
A1,Asmus,Carl,Head,M,45,White,Germany,Germany,Germany,grocer,H7,Norfolk,false
A2,Asmus,Anna,Wife,F,40,White,Germany,Germany,Germany,,H7,Norfolk,false
A3,Asmus,Max,Son,M,19,White,Nebraska,Germany,Germany,,H7,Norfolk,false
A4,Asmus,Otto,Son,M,15,White,Nebraska,Germany,Germany,,H7,Norfolk,false
S1,Simpson,J.E.,Head,M,50,White,Ohio,Ohio,Ohio,mayor,H1,Norfolk,false
T1,Truman,H.C.,Head,M,44,White,Illinois,Illinois,Illinois,painter,H2,Norfolk,false
B1,Baird,Henry,Head,M,30,White,Iowa,Iowa,Iowa,manager,H3,Norfolk,false
M1,McClary,J.S.,Head,M,60,White,Pennsylvania,Pennsylvania,Pennsylvania,judge,H4,Norfolk,false
G1,Goon,Sam,Head,M,35,White,China,China,China,laborer,H5,Norfolk,false
K1,Krause,Emil,Other,M,28,White,Germany,Germany,Germany,,H6,Norfolk,true
K2,Krause,Rudolf,Other,M,33,White,Germany,Germany,Germany,,H6,Norfolk,true
W1,Weber,Gustav,Head,M,52,White,Germany,Germany,Germany,farmer,H9,Norfolk,false
D1,Schmidt,Frieda,Head,F,61,White,Germany,Germany,Germany,,H8,Norfolk,false
D2,Schmidt,Lena,Daughter,F,22,White,Nebraska,Germany,Germany,,H8,Norfolk,false
N1,Koenig,Albert,Head,M,41,White,Germany,Germany,Germany,blacksmith,H10,Norfolk,false
"""

DIRECTORY_1889 = """\
R|Truman|H.C.|painter|412 Main
R|Simpson|J.E.|insurance agent|217 Norfolk Ave
B|Truman Paint & Wallpaper|paints|412 Main
"""

# (issue date, page number, text); mention layout is load-bearing for the
# stats tests: Simpson 5 entity mentions (3 with "mayor" in the role window),
# Truman 3 (2 with "painter"), Max Asmus 2, one Asmus surname-group mention,
# Baird 1, Goon 1, McClary 1.
PAGES = [
    ("1899-04-06", 1,
     "Mayor Simpson presided at the council meeting on Tuesday evening. "
     "Max Asmus rode his bicycle to Pierce and returned before dark. "
     "J. E. Simpson returned from Omaha with samples for the store."),
    ("1899-04-06", 2,
     "H. C. Truman the painter finished the church work this week. "
     "The secretary read the minutes of the meeting. "
     "Sam Goon was paid one dollar for labor on the streets."),
    ("1899-10-26", 10,
     "A young baker and his bride eloped to Madison county and were caught. "
     "The mother objected to the marriage but relented and gave the consent. "
     "Henry Baird attended the dance at the opera house."),
    ("1900-03-15", 1,
     "Mayor Simpson made remarks at the school exercises on Friday. "
     "J. E. Simpson wrote insurance for the mill against fire. "
     "Max Asmus returned from a long bicycle trip through Stanton."),
    ("1900-06-20", 1,
     "Mayor Simpson opened the spring meeting of the board. "
     "The council paid painter H. C. Truman ten dollars for the hall. "
     "H. C. Truman attended the ward caucus on Monday. "
     "The Asmus family gave a supper at the hall. "
     "Judge J. S. McClary spoke of the old days."),
    ("1900-06-20", 2,
     "Truman Paint & Wallpaper has received new stock of paints. "
     "Sugar beets remain the main crop of the county."),
]

ELOPEMENT_URL = "https://example.org/norfolk-weekly-news/1899-10-26"


def write_town(root: Path) -> Path:
    """Materialize the fixture town under root; returns the config path."""
    (root / "census.csv").write_text(CENSUS_CSV, encoding="utf-8")
    (root / "directory-1889.txt").write_text(DIRECTORY_1889, encoding="utf-8")
    corpus = root / "corpus"
    for issue_date, number, text in PAGES:
        issue_dir = corpus / issue_date
        issue_dir.mkdir(parents=True, exist_ok=True)
        meta = f"date={issue_date}\n"
        if issue_date == "1899-10-26":
            meta += f"source_url={ELOPEMENT_URL}\n"
        (issue_dir / "issue.meta").write_text(meta, encoding="utf-8")
        (issue_dir / f"page-{number:02d}.txt").write_text(text, encoding="utf-8")
    config = {
        "census": "census.csv",
        "corpus_root": "corpus",
        "directories": [{"path": "directory-1889.txt", "year": 1889}],
    }
    config_path = root / "config.json"
    config_path.write_text(json.dumps(config), encoding="utf-8")
    return config_path


@pytest.fixture(scope="session")
def town_dir(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("town")
    write_town(root)
    return root


@pytest.fixture()
def town(town_dir) -> BuildResult:
    return build_pipeline(BuildConfig.from_file(town_dir / "config.json"))


def person_by_census_ref(kb, record_id):
    for person in kb.persons.values():
        if person.census_ref == record_id:
            return person
    raise AssertionError(f"no person with census_ref {record_id}")

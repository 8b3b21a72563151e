"""Parsers for the three source families: census CSV, directory lines, newspaper pages.

All parsers are pure functions over their input text.  Bad rows are rejected
individually and reported; only a broken header or duplicate page keys abort
a parse.
"""

from __future__ import annotations

import csv
import io
import logging
import re
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Iterable, Optional, TextIO, Union

from .errors import FormatError

log = logging.getLogger(__name__)

CENSUS_HEADER = [
    "record_id", "surname", "given_name", "relation", "sex", "age", "race",
    "birthplace", "father_birthplace", "mother_birthplace", "occupation",
    "household_id", "locality", "is_institution",
]

CORE_RELATIONS = {"Head", "Wife", "Son", "Daughter", "Boarder", "Servant"}
MAX_AGE = 130


@dataclass(frozen=True)
class CensusRow:
    record_id: str
    surname: str
    given_name: str
    relation: str  # one of CORE_RELATIONS, or a free label treated as Other
    sex: str  # "M", "F", or "Unknown"
    age: int
    race: str
    birthplace: str
    father_birthplace: str
    mother_birthplace: str
    occupation: str
    household_id: str
    locality: str
    is_institution: bool

    @property
    def is_head(self) -> bool:
        return self.relation == "Head"


@dataclass(frozen=True)
class DirectoryRecord:
    year: int
    kind: str  # "Resident" or "Business"
    surname: str = ""
    given_name: str = ""
    occupation: str = ""
    address: str = ""
    business_name: str = ""
    category: str = ""

    def identity(self) -> tuple:
        """Content key used for idempotent re-merges into the KB."""
        return (self.year, self.kind, self.surname, self.given_name,
                self.occupation, self.address, self.business_name, self.category)


@dataclass(frozen=True)
class Page:
    issue_date: date
    page_number: int
    text: str
    source_url: Optional[str] = None

    @property
    def page_ref(self) -> tuple[date, int]:
        return (self.issue_date, self.page_number)


@dataclass
class IngestReport:
    rows_ok: int = 0
    rows_rejected: int = 0
    reject_reasons: list[tuple[int, str]] = field(default_factory=list)

    def reject(self, line_number: int, reason: str) -> None:
        self.rows_rejected += 1
        self.reject_reasons.append((line_number, reason))


def _as_stream(stream: Union[str, TextIO]) -> TextIO:
    return io.StringIO(stream) if isinstance(stream, str) else stream


def _parse_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0", ""):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _parse_sex(raw: str) -> str:
    low = raw.strip().lower()
    if low == "m":
        return "M"
    if low == "f":
        return "F"
    if low in ("", "u", "unknown"):
        return "Unknown"
    raise ValueError(f"not a sex code: {raw!r}")


def parse_census_file(
    stream: Union[str, TextIO],
    locality_filter: Optional[str] = None,
) -> tuple[list[CensusRow], IngestReport]:
    """Parse a census CSV. Returns valid rows plus a per-row rejection report.

    A malformed header is fatal; a bad row is rejected and parsing continues.
    With `locality_filter`, valid rows from other localities still count as
    parsed in the report but are not returned.
    """
    reader = csv.reader(_as_stream(stream))
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("census file is empty (no header)")
    if [h.strip() for h in header] != CENSUS_HEADER:
        raise FormatError(
            f"bad census header: expected {','.join(CENSUS_HEADER)}"
        )

    rows: list[CensusRow] = []
    report = IngestReport()
    seen_ids: set[str] = set()
    for line_number, fields in enumerate(reader, start=2):
        if not fields:
            continue
        try:
            row = _census_row(fields)
        except ValueError as exc:
            report.reject(line_number, str(exc))
            continue
        if row.record_id in seen_ids:
            report.reject(line_number, f"duplicate record_id {row.record_id!r}")
            continue
        seen_ids.add(row.record_id)
        report.rows_ok += 1
        if locality_filter is None or row.locality == locality_filter:
            rows.append(row)
    return rows, report


def _census_row(fields: list[str]) -> CensusRow:
    if len(fields) != len(CENSUS_HEADER):
        raise ValueError(f"expected {len(CENSUS_HEADER)} fields, got {len(fields)}")
    (record_id, surname, given, relation, sex, age_raw, race, birthplace,
     father_bp, mother_bp, occupation, household_id, locality, inst_raw) = fields
    if not record_id.strip():
        raise ValueError("empty record_id")
    if not household_id.strip():
        raise ValueError("empty household_id")
    try:
        age = int(age_raw)
    except ValueError:
        raise ValueError(f"age not an integer: {age_raw!r}")
    if not 0 <= age <= MAX_AGE:
        raise ValueError(f"age {age} outside [0, {MAX_AGE}]")
    return CensusRow(
        record_id=record_id.strip(),
        surname=surname.strip(),
        given_name=given.strip(),
        relation=relation.strip() or "Other",
        sex=_parse_sex(sex),
        age=age,
        race=race.strip(),
        birthplace=birthplace.strip(),
        father_birthplace=father_bp.strip(),
        mother_birthplace=mother_bp.strip(),
        occupation=occupation.strip(),
        household_id=household_id.strip(),
        locality=locality.strip(),
        is_institution=_parse_bool(inst_raw),
    )


def census_to_csv(rows: Iterable[CensusRow]) -> str:
    """Serialize rows back to the census CSV format (round-trip inverse)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CENSUS_HEADER)
    for r in rows:
        writer.writerow([
            r.record_id, r.surname, r.given_name, r.relation, r.sex,
            str(r.age), r.race, r.birthplace, r.father_birthplace,
            r.mother_birthplace, r.occupation, r.household_id, r.locality,
            "true" if r.is_institution else "false",
        ])
    return out.getvalue()


def parse_directory_file(
    stream: Union[str, TextIO],
    year: int,
) -> tuple[list[DirectoryRecord], IngestReport]:
    """Parse a pipe-delimited directory file.

    Lines are `R|surname|given|occupation|address` for residents and
    `B|name|category|address` for businesses.
    """
    records: list[DirectoryRecord] = []
    report = IngestReport()
    for line_number, line in enumerate(_as_stream(stream), start=1):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        try:
            records.append(_directory_record(line, year))
        except ValueError as exc:
            report.reject(line_number, str(exc))
            continue
        report.rows_ok += 1
    return records, report


def _directory_record(line: str, year: int) -> DirectoryRecord:
    parts = line.split("|")
    tag = parts[0].strip()
    if tag == "R":
        if len(parts) != 5:
            raise ValueError(f"resident line needs 5 fields, got {len(parts)}")
        _, surname, given, occupation, address = (p.strip() for p in parts)
        if not surname:
            raise ValueError("resident record with empty surname")
        return DirectoryRecord(year=year, kind="Resident", surname=surname,
                               given_name=given, occupation=occupation,
                               address=address)
    if tag == "B":
        if len(parts) != 4:
            raise ValueError(f"business line needs 4 fields, got {len(parts)}")
        _, name, category, address = (p.strip() for p in parts)
        if not name:
            raise ValueError("business record with empty name")
        return DirectoryRecord(year=year, kind="Business", business_name=name,
                               category=category, address=address)
    raise ValueError(f"unknown record tag {tag!r}")


def directory_to_lines(records: Iterable[DirectoryRecord]) -> str:
    """Serialize directory records back to the line format."""
    lines = []
    for r in records:
        if r.kind == "Resident":
            lines.append(f"R|{r.surname}|{r.given_name}|{r.occupation}|{r.address}")
        else:
            lines.append(f"B|{r.business_name}|{r.category}|{r.address}")
    return "\n".join(lines) + ("\n" if lines else "")


_ISSUE_DIR = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_PAGE_FILE = re.compile(r"^page-(\d+)\.txt$")


def load_newspaper_corpus(root: Union[str, Path]) -> list[Page]:
    """Load an issue-per-directory newspaper corpus.

    Layout: `<root>/<YYYY-MM-DD>/issue.meta` plus `page-NN.txt` files.
    Issues missing their metadata file are skipped with a warning;
    duplicate (date, page) keys are fatal.
    """
    root = Path(root)
    if not root.is_dir():
        raise FormatError(f"corpus root does not exist: {root}")
    pages: list[Page] = []
    seen: set[tuple[date, int]] = set()
    for issue_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        if not _ISSUE_DIR.match(issue_dir.name):
            continue
        meta_path = issue_dir / "issue.meta"
        if not meta_path.is_file():
            log.warning("skipping issue %s: no issue.meta", issue_dir.name)
            continue
        meta = _parse_meta(meta_path)
        issue_date = date.fromisoformat(meta.get("date", issue_dir.name))
        source_url = meta.get("source_url") or None
        for page_path in sorted(issue_dir.iterdir()):
            m = _PAGE_FILE.match(page_path.name)
            if not m:
                continue
            number = int(m.group(1))
            key = (issue_date, number)
            if key in seen:
                raise FormatError(f"duplicate page {issue_date} p{number}")
            seen.add(key)
            pages.append(Page(
                issue_date=issue_date,
                page_number=number,
                text=page_path.read_text(encoding="utf-8"),
                source_url=source_url,
            ))
    pages.sort(key=lambda p: (p.issue_date, p.page_number))
    return pages


def _parse_meta(path: Path) -> dict[str, str]:
    meta: dict[str, str] = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, value = line.split("=", 1)
        meta[key.strip()] = value.strip()
    return meta

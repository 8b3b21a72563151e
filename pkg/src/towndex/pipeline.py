"""End-to-end build: ingest -> KB -> index -> link -> snapshot."""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .distance import ConfusionTable
from .errors import FormatError
from .kb import build_entities, merge_directory_records
from .linking import LinkerConfig, link_corpus, load_stoplist
from .records import (IngestReport, load_newspaper_corpus, parse_census_file,
                      parse_directory_file)
from .snapshot import Snapshot
from .textindex import InvertedIndex, build_index

log = logging.getLogger(__name__)


@dataclass
class BuildConfig:
    census_path: Path
    corpus_root: Path
    directories: list[tuple[Path, int]] = field(default_factory=list)
    locality: Optional[str] = None
    confusions_path: Optional[Path] = None
    stoplist_path: Optional[Path] = None
    created_at: Optional[str] = None  # unset by default so rebuilds are byte-identical

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "BuildConfig":
        path = Path(path)
        if not path.is_file():
            raise FormatError(f"config file does not exist: {path}")
        doc = json.loads(path.read_text(encoding="utf-8"))
        base = path.parent
        return cls(
            census_path=base / doc["census"],
            corpus_root=base / doc["corpus_root"],
            directories=[(base / d["path"], int(d["year"])) for d in doc.get("directories", [])],
            locality=doc.get("locality"),
            confusions_path=base / doc["confusions"] if doc.get("confusions") else None,
            stoplist_path=base / doc["stoplist"] if doc.get("stoplist") else None,
            created_at=doc.get("created_at"),
        )

    def linker_config(self) -> LinkerConfig:
        confusions = (ConfusionTable.from_file(self.confusions_path)
                      if self.confusions_path else ConfusionTable.default())
        stoplist = load_stoplist(self.stoplist_path)
        return LinkerConfig(confusions=confusions, stoplist=stoplist)

    def fingerprint(self) -> str:
        doc = {
            "census": str(self.census_path),
            "corpus_root": str(self.corpus_root),
            "directories": [[str(p), y] for p, y in self.directories],
            "locality": self.locality,
            "confusions": str(self.confusions_path) if self.confusions_path else None,
            "stoplist": str(self.stoplist_path) if self.stoplist_path else None,
        }
        return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()


@dataclass
class BuildResult:
    snapshot: Snapshot
    index: InvertedIndex
    census_report: IngestReport
    directory_reports: list[tuple[int, IngestReport]]


def build_pipeline(config: BuildConfig) -> BuildResult:
    """Run the full pipeline; deterministic for identical inputs."""
    if not config.census_path.is_file():
        raise FormatError(f"census file does not exist: {config.census_path}")
    if not config.corpus_root.is_dir():
        raise FormatError(f"corpus root does not exist: {config.corpus_root}")

    corpus_hash = hashlib.sha256()
    census_text = config.census_path.read_text(encoding="utf-8")
    corpus_hash.update(census_text.encode())
    rows, census_report = parse_census_file(census_text, config.locality)
    kb = build_entities(rows)

    directory_reports = []
    for dir_path, year in config.directories:
        if not dir_path.is_file():
            raise FormatError(f"directory file does not exist: {dir_path}")
        text = dir_path.read_text(encoding="utf-8")
        corpus_hash.update(text.encode())
        records, report = parse_directory_file(text, year)
        directory_reports.append((year, report))
        merge_directory_records(kb, records)

    pages = load_newspaper_corpus(config.corpus_root)
    for page in pages:
        corpus_hash.update(page.issue_date.isoformat().encode())
        corpus_hash.update(str(page.page_number).encode())
        corpus_hash.update(page.text.encode())
    index = build_index(pages)
    store = link_corpus(kb, index, config=config.linker_config())

    snapshot = Snapshot(
        kb=kb,
        store=store,
        meta={
            "corpus_hash": corpus_hash.hexdigest(),
            "config_hash": config.fingerprint(),
            "created_at": config.created_at,
            "corpus_root": str(config.corpus_root),
        },
    )
    return BuildResult(snapshot, index, census_report, directory_reports)


def load_index_for(snapshot: Snapshot) -> Optional[InvertedIndex]:
    """Rebuild the text index from the corpus named in snapshot metadata."""
    root = snapshot.meta.get("corpus_root")
    if not root or not Path(root).is_dir():
        log.warning("corpus root unavailable; snippets and text search disabled")
        return None
    return build_index(load_newspaper_corpus(root))

"""Confusion-weighted edit distance for OCR-tolerant name matching.

The cost table prices classic OCR character confusions (l/1, rn/m, ...)
below the unit substitution cost, so a single scanner error stays within
the match threshold while unrelated words do not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

INSERT_DELETE_COST = 1.0

# (a, b, cost) triples; entries with a two-character side are digram pairs.
DEFAULT_CONFUSIONS = [
    ("i", "l", 0.5),
    ("l", "1", 0.5),
    ("i", "1", 0.5),
    ("c", "e", 0.5),
    ("o", "0", 0.5),
    ("u", "n", 0.5),
    ("h", "b", 0.5),
    ("f", "t", 0.5),
    ("rn", "m", 0.5),
]


@dataclass
class ConfusionTable:
    """Symmetric substitution costs for character pairs and digram pairs."""

    # single-char pair -> cost, stored under both orderings
    chars: dict[tuple[str, str], float] = field(default_factory=dict)
    # (digram, char) -> cost, stored under both orderings
    digrams: dict[tuple[str, str], float] = field(default_factory=dict)

    def add(self, a: str, b: str, cost: float) -> None:
        if not (0.0 < cost <= 1.0):
            raise ValueError(f"confusion cost must be in (0, 1]: {cost}")
        if len(a) == 1 and len(b) == 1:
            self.chars[(a, b)] = cost
            self.chars[(b, a)] = cost
        elif {len(a), len(b)} == {1, 2}:
            self.digrams[(a, b)] = cost
            self.digrams[(b, a)] = cost
        else:
            raise ValueError(f"unsupported pair lengths: {a!r}, {b!r}")

    def sub_cost(self, a: str, b: str) -> float:
        if a == b:
            return 0.0
        return self.chars.get((a, b), 1.0)

    @classmethod
    def default(cls) -> "ConfusionTable":
        table = cls()
        for a, b, cost in DEFAULT_CONFUSIONS:
            table.add(a, b, cost)
        return table

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ConfusionTable":
        """Read `a,b,cost` lines; blank lines and # comments ignored."""
        table = cls()
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            a, b, cost = (p.strip() for p in line.split(","))
            table.add(a, b, float(cost))
        return table


def default_confusion_path() -> Path:
    return Path(str(resources.files("towndex").joinpath("data/confusions.txt")))


def weighted_edit_distance(a: str, b: str, table: ConfusionTable) -> float:
    """Minimal alignment cost between a and b.

    Inserts and deletes cost 1.0; substitutions are priced by the table
    (default 1.0); digram entries let e.g. "rn" align against "m" at the
    listed cost.  Symmetric, non-negative, zero iff a == b.
    """
    la, lb = len(a), len(b)
    prev2: list[float] = []
    prev: list[float] = [j * INSERT_DELETE_COST for j in range(lb + 1)]
    digrams = table.digrams
    for i in range(1, la + 1):
        cur = [i * INSERT_DELETE_COST] + [0.0] * lb
        ca = a[i - 1]
        for j in range(1, lb + 1):
            cb = b[j - 1]
            best = min(
                prev[j] + INSERT_DELETE_COST,
                cur[j - 1] + INSERT_DELETE_COST,
                prev[j - 1] + table.sub_cost(ca, cb),
            )
            if digrams:
                if i >= 2:
                    cost = digrams.get((a[i - 2:i], cb))
                    if cost is not None:
                        best = min(best, prev2[j - 1] + cost)
                if j >= 2:
                    cost = digrams.get((ca, b[j - 2:j]))
                    if cost is not None:
                        best = min(best, prev[j - 2] + cost)
            cur[j] = best
        prev2, prev = prev, cur
    return prev[lb]

"""Expected component shapes for the suite, and the comparison against a computed partition."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .catalog.groups import data_path
from .commgraph import ComponentPartition
from .numtheory import PrimeSet

DEFAULT_TABLE = "expectations.json"


class ExpectationError(ValueError):
    """A malformed expectation table."""


@dataclass(frozen=True)
class ExpectationRow:
    group: str
    big: tuple[PrimeSet, ...]
    small: PrimeSet
    provenance: str

    def __post_init__(self):
        if not self.provenance.strip():
            raise ExpectationError(f"{self.group}: empty provenance")
        for b in self.big:
            if set(b) & set(self.small):
                raise ExpectationError(f"{self.group}: big set {b} meets small set {self.small}")

    @classmethod
    def from_dict(cls, d: dict) -> "ExpectationRow":
        try:
            return cls(d["group"], tuple(sorted(PrimeSet(b) for b in d["big"])),
                       PrimeSet(d["small"]), d["provenance"])
        except KeyError as exc:
            raise ExpectationError(f"row missing field {exc}") from None

    def to_dict(self) -> dict:
        return {"group": self.group, "big": [list(b) for b in self.big],
                "small": list(self.small), "provenance": self.provenance}


def load_table(path=None) -> tuple[int, dict[str, ExpectationRow]]:
    """Read an expectation table; returns ``(version, rows by group name)``."""
    path = Path(path) if path else data_path(DEFAULT_TABLE)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ExpectationError(f"{path}: {exc}") from None
    rows = {}
    for d in doc.get("rows", []):
        row = ExpectationRow.from_dict(d)
        if row.group in rows:
            raise ExpectationError(f"duplicate row for {row.group}")
        rows[row.group] = row
    return int(doc.get("version", 0)), rows


def compare(row: ExpectationRow, partition: ComponentPartition) -> tuple[bool, dict]:
    """Exact comparison of big prime sets and the union of small-component primes."""
    big = sorted(partition.big_prime_sets())
    small = partition.small_primes()
    diff = {}
    if big != list(row.big):
        diff["big"] = {"expected": [list(b) for b in row.big], "found": [list(b) for b in big]}
    if small != row.small:
        diff["small"] = {"expected": list(row.small), "found": list(small)}
    return not diff, diff

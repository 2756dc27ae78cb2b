"""A small bundled table of prime knots and their geometric types.

Torus entries are machine-checked at load time: the Alexander polynomial of
the Wirtinger presentation built from the DT code must match the closed
formula for T(p,q).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import gcd
from pathlib import Path

from .diagram import dt_to_diagram
from .engine.alexander import alexander_polynomial, torus_alexander
from .errors import CrossCheckFailed, ParseError, UnknownTableName
from .notation import DTCode, parse_dt
from .presentation import wirtinger

TYPES = ("torus", "hyperbolic", "satellite")
HEADER = ["name", "dt", "type", "params"]


@dataclass(frozen=True)
class CensusEntry:
    name: str
    dt: DTCode
    geometric_type: str
    params: tuple[int, ...] = ()


@dataclass(frozen=True)
class CensusTable:
    entries: dict[str, CensusEntry]
    provenance: str

    def lookup(self, name: str) -> CensusEntry:
        return lookup(self, name)

    def __contains__(self, name: str) -> bool:
        return name in self.entries


def lookup(table: CensusTable, name: str) -> CensusEntry:
    try:
        return table.entries[name]
    except KeyError:
        raise UnknownTableName(f"{name!r} is not in the knot table") from None


def _parse_row(row: list[str], line: int) -> CensusEntry:
    if len(row) != 4:
        raise ParseError(f"line {line}: expected 4 fields, got {len(row)}")
    name, dt, kind, params = (f.strip() for f in row)
    if not name:
        raise ParseError(f"line {line}: empty name")
    if kind not in TYPES:
        raise ParseError(f"line {line}: unknown geometric type {kind!r}")
    try:
        values = tuple(int(v) for v in params.split())
    except ValueError:
        raise ParseError(f"line {line}: params must be integers, got {params!r}") from None
    if kind == "torus" and len(values) != 2:
        raise ParseError(f"line {line}: torus entry {name} needs params \"p q\"")
    return CensusEntry(name, parse_dt(dt), kind, values)


def cross_check(entry: CensusEntry) -> None:
    """Raise CrossCheckFailed unless a torus entry's DT code has the torus polynomial."""
    if entry.geometric_type != "torus":
        return
    p, q = entry.params
    if gcd(p, q) != 1 or min(abs(p), abs(q)) < 2:
        raise CrossCheckFailed(f"{entry.name}: T({p},{q}) is not a torus knot (gcd or trivial)")
    group, _ = wirtinger(dt_to_diagram(entry.dt))
    found = alexander_polynomial(group)
    if not found.equivalent(torus_alexander(p, q)):
        raise CrossCheckFailed(f"{entry.name}: Alexander polynomial {found} is not that of T({p},{q})")


def parse_census(text: str) -> CensusTable:
    lines = text.splitlines()
    comments = [ln for ln in lines if ln.lstrip().startswith("#")]
    if not comments or not lines[0].lstrip().startswith("#"):
        raise ParseError("the first line must be a comment naming the data provenance")
    provenance = comments[0].lstrip()[1:].strip()
    body = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise ParseError("missing header line")
    rows = list(csv.reader(io.StringIO("\n".join(ln for _, ln in body))))
    if [f.strip() for f in rows[0]] != HEADER:
        raise ParseError(f"header must be {','.join(HEADER)}")
    entries: dict[str, CensusEntry] = {}
    for (line, _), row in zip(body[1:], rows[1:]):
        entry = _parse_row(row, line)
        if entry.name in entries:
            raise ParseError(f"line {line}: duplicate name {entry.name}")
        cross_check(entry)
        entries[entry.name] = entry
    if not entries:
        raise ParseError("the table has no entries")
    return CensusTable(entries, provenance)


def load_census(path: str | Path) -> CensusTable:
    return parse_census(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def default_census() -> CensusTable:
    text = resources.files("knotmal").joinpath("data/knots9.csv").read_text(encoding="utf-8")
    return parse_census(text)

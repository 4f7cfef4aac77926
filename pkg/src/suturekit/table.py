"""Knot tables: the built-in table through seven crossings and user JSON/CSV files."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .diagram import DiagramError, KnotDiagram, parse_braid, parse_pd


class TableError(ValueError):
    def __init__(self, errors: list[str]):
        self.errors = errors
        super().__init__("; ".join(errors))


@dataclass(frozen=True)
class TableEntry:
    """One knot row.  ``genus`` is certified metadata when present."""

    id: str
    pd: str | None = None
    braid: str | None = None
    genus: int | None = None
    two_bridge: tuple[int, int] | None = None
    minimal: bool = False
    line: int | None = None

    def diagram(self) -> KnotDiagram:
        if self.pd is not None and (self.pd or not self.braid):
            return parse_pd(self.pd)
        if self.braid is not None:
            return parse_braid(self.braid)
        raise DiagramError(f"row {self.id!r} has neither pd nor braid")


def _row_to_entry(row: dict, line: int) -> TableEntry:
    if "id" not in row or not str(row["id"]).strip():
        raise ValueError("missing id")
    genus = row.get("genus")
    if genus in ("", None):
        genus = None
    else:
        genus = int(genus)
        if genus < 0:
            raise ValueError("genus must be non-negative")
    tb = row.get("two_bridge")
    if isinstance(tb, str):
        tb = [int(x) for x in tb.replace("/", " ").replace(",", " ").split()] if tb.strip() else None
    if tb is not None:
        tb = tuple(int(x) for x in tb)
        if len(tb) != 2:
            raise ValueError("two_bridge must be a pair p,q")
    pd = row.get("pd")
    braid = row.get("braid")
    if pd is None and braid is None:
        raise ValueError("row needs a pd or braid column")
    minimal = row.get("minimal", False)
    if isinstance(minimal, str):
        minimal = minimal.strip().lower() in ("1", "true", "yes")
    return TableEntry(str(row["id"]).strip(), pd, braid or None, genus, tb, bool(minimal), line)


def _rows_from_text(text: str, fmt: str) -> list[tuple[int, dict]]:
    if fmt == "json":
        data = json.loads(text)
        if isinstance(data, dict):
            data = data.get("knots", [])
        return [(k + 1, r) for k, r in enumerate(data)]
    reader = csv.DictReader(io.StringIO(text))
    # DictReader's line_num counts physical lines; the header is line 1
    out = []
    for r in reader:
        out.append((reader.line_num, {k.strip(): (v.strip() if v is not None else v) for k, v in r.items() if k}))
    return out


def read_table(path: str | Path) -> tuple[list[TableEntry], list[str]]:
    """Lenient read: entries that look well formed, plus per-row error messages.

    Diagrams are not parsed here; see :func:`ingest_table` for full validation.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    fmt = "json" if path.suffix.lower() == ".json" or text.lstrip().startswith(("{", "[")) else "csv"
    return _entries_from_rows(_rows_from_text(text, fmt), fmt)


def _entries_from_rows(rows, fmt: str) -> tuple[list[TableEntry], list[str]]:
    where = "row" if fmt == "json" else "line"
    entries, errors, seen = [], [], {}
    for line, row in rows:
        try:
            e = _row_to_entry(row, line)
        except (ValueError, TypeError) as exc:
            errors.append(f"{where} {line}: {exc}")
            continue
        if e.id in seen:
            errors.append(f"{where} {line}: duplicate id {e.id!r} (first at {where} {seen[e.id]})")
            continue
        seen[e.id] = line
        entries.append(e)
    return entries, errors


def ingest_table(path: str | Path) -> list[TableEntry]:
    """Read and fully validate a table; any bad row raises :class:`TableError` naming it."""
    entries, errors = read_table(path)
    fmt_where = "row" if Path(path).suffix.lower() == ".json" else "line"
    for e in entries:
        try:
            e.diagram()
        except DiagramError as exc:
            errors.append(f"{fmt_where} {e.line}: knot {e.id!r}: {exc}")
    if errors:
        raise TableError(errors)
    return entries


def builtin_table() -> list[TableEntry]:
    text = resources.files("suturekit").joinpath("data/knot_table.json").read_text(encoding="utf-8")
    entries, errors = _entries_from_rows(_rows_from_text(text, "json"), "json")
    if errors:
        raise TableError(errors)
    return entries


def builtin_path() -> Path:
    return Path(str(resources.files("suturekit").joinpath("data/knot_table.json")))


def lookup(knot_id: str) -> TableEntry:
    table = {e.id: e for e in builtin_table()}
    if knot_id not in table:
        raise KeyError(f"unknown knot id {knot_id!r}; known ids: {', '.join(table)}")
    return table[knot_id]

"""JSON-lines brace catalogs: one brace JSON object per line plus metadata."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, TextIO

from .brace import brace_from_json
from .constructors import CatalogEntry, BraceCatalog, EXAMPLES
from .groups import GroupError, identify


class FileUnreadable(OSError):
    pass


class MalformedEntry(ValueError):
    def __init__(self, line: int, detail: str):
        super().__init__(f"line {line}: {detail}")
        self.line = line


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def write_catalog(entries: Iterable[CatalogEntry], out: TextIO) -> None:
    for e in entries:
        out.write(dumps(e.to_json()) + "\n")


def parse_catalog(text: str) -> BraceCatalog:
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
            brace = brace_from_json(data)
        except (json.JSONDecodeError, KeyError, TypeError, GroupError, ValueError) as exc:
            raise MalformedEntry(lineno, str(exc)) from exc
        entries.append(
            CatalogEntry(
                brace=brace,
                brace_id=str(data.get("id", f"line{lineno}")),
                source=data.get("source", "file"),
                add_group=data.get("add_group"),
                mul_group=data.get("mul_group"),
                iso_class_id=data.get("iso_class_id"),
            )
        )
    return BraceCatalog(entries, dedup="none")


def read_catalog(path: str | Path) -> BraceCatalog:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_catalog(text)


def fixture_entries() -> list[CatalogEntry]:
    out = []
    for name, build in EXAMPLES.items():
        b = build()
        out.append(
            CatalogEntry(b, name, "fixture", add_group=identify(b.add), mul_group=identify(b.mul))
        )
    return out

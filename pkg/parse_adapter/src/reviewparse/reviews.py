"""Minimal reader for the reviews JSONL file.

This package only needs the review key and the text, so the reader takes
just that and leaves scores, countries, and validation of those fields to
the downstream consumer of its output. Rows that cannot supply a key are
yielded as problems, not exceptions, so one bad line never kills a batch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .errors import InputError


@dataclass(frozen=True)
class ReviewText:
    user_id: str
    album_id: str
    text: str

    @property
    def key(self) -> str:
        return f"{self.user_id}|{self.album_id}"


@dataclass(frozen=True)
class BadRow:
    line_no: int
    reason: str


def iter_reviews(path: str | Path) -> Iterator[ReviewText | BadRow]:
    """Yield reviews (or problems) in file order."""
    target = Path(path)
    if not target.is_file():
        raise InputError(f"reviews file not found: {target}")
    raw = target.read_text(encoding="utf-8")
    # split on "\n" only: JSON strings may contain raw U+2028 and friends
    for line_no, line in enumerate(raw.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError:
            yield BadRow(line_no, "not valid JSON")
            continue
        if not isinstance(record, dict):
            yield BadRow(line_no, "row is not an object")
            continue
        user = record.get("user_id")
        album = record.get("album_id")
        if not isinstance(user, str) or not user or not isinstance(album, str) or not album:
            yield BadRow(line_no, "missing user_id or album_id")
            continue
        text = record.get("text")
        if not isinstance(text, str):
            text = ""
        yield ReviewText(user_id=user, album_id=album, text=text)

"""Loading, validation, and joining of review and album data.

Input formats are fixed: reviews arrive as JSONL (one object per line with
keys user_id, album_id, score, and optional text/date) or as a CSV with
the same column names; albums arrive as a CSV with header
``album_id,band_id,title,year,country,genres`` where the genres field is
";"-separated. Malformed rows are collected as row-level errors rather
than aborting the load; unreadable files and conflicting duplicate albums
are fatal.
"""

from __future__ import annotations

import csv
import dataclasses
import datetime
import io
import json
import logging
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError

log = logging.getLogger(__name__)

_WS = re.compile(r"\s+")


def normalize_genre(name: str) -> str:
    """Matching key for a genre name: trimmed, whitespace-collapsed, case-folded.

    Original casing is preserved separately for display; two source
    databases may spell the same genre differently and must not produce
    phantom duplicates.
    """
    return _WS.sub(" ", name.strip()).casefold()


@dataclass(frozen=True)
class ReviewRecord:
    user_id: str
    album_id: str
    score: int
    text: str | None = None
    date: str | None = None

    def __post_init__(self):
        if not self.user_id:
            raise ValueError("user_id must be non-empty")
        if not self.album_id:
            raise ValueError("album_id must be non-empty")
        if not isinstance(self.score, int) or isinstance(self.score, bool):
            raise ValueError(f"score must be an integer, got {self.score!r}")
        if not 0 <= self.score <= 100:
            raise ValueError(f"score {self.score} outside [0, 100]")
        if self.date is not None:
            try:
                datetime.date.fromisoformat(self.date)
            except ValueError as exc:
                raise ValueError(f"date {self.date!r} is not ISO-8601") from exc


@dataclass(frozen=True)
class AlbumRecord:
    album_id: str
    band_id: str
    genres: tuple[str, ...]
    country: str | None = None
    year: int | None = None

    def __post_init__(self):
        if not self.album_id:
            raise ValueError("album_id must be non-empty")
        if not self.genres:
            raise ValueError("genres must be non-empty")
        keys = [normalize_genre(g) for g in self.genres]
        if any(not k for k in keys):
            raise ValueError("genre names must be non-empty after normalization")
        if len(set(keys)) != len(keys):
            raise ValueError(f"duplicate genres within album {self.album_id!r}")


@dataclass(frozen=True)
class RowError:
    line: int
    message: str

    def __str__(self):
        return f"line {self.line}: {self.message}"


@dataclass(frozen=True)
class LoadedReviews:
    records: tuple[ReviewRecord, ...]
    errors: tuple[RowError, ...] = ()

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)


@dataclass(frozen=True)
class LoadedAlbums:
    albums: Mapping[str, AlbumRecord]
    errors: tuple[RowError, ...] = ()

    def __len__(self):
        return len(self.albums)


@dataclass(frozen=True)
class CorpusSummary:
    reviews: int
    users: int
    albums: int
    genres: int
    orphans: int


@dataclass(frozen=True)
class Corpus:
    """Joined, validated review/album data; immutable and thread-safe."""

    reviews: tuple[ReviewRecord, ...]
    albums: Mapping[str, AlbumRecord]
    n_orphans: int = 0
    genre_display: Mapping[str, str] = field(default_factory=dict)

    def genres_of(self, album_id: str) -> tuple[str, ...]:
        """Canonical display names of the album's genres."""
        album = self.albums[album_id]
        return tuple(self.genre_display[normalize_genre(g)] for g in album.genres)

    def summary(self) -> CorpusSummary:
        return CorpusSummary(
            reviews=len(self.reviews),
            users=len({r.user_id for r in self.reviews}),
            albums=len(self.albums),
            genres=len(self.genre_display),
            orphans=self.n_orphans,
        )


def _review_from_mapping(obj: Mapping, line: int) -> ReviewRecord:
    for key in ("user_id", "album_id", "score"):
        if key not in obj or obj[key] in (None, ""):
            raise ValueError(f"missing required field {key!r}")
    score = obj["score"]
    if isinstance(score, str):
        try:
            score = int(score)
        except ValueError:
            raise ValueError(f"score {score!r} is not an integer") from None
    text = obj.get("text") or None
    date = obj.get("date") or None
    return ReviewRecord(
        user_id=str(obj["user_id"]),
        album_id=str(obj["album_id"]),
        score=score,
        text=text,
        date=date,
    )


def load_reviews(path: str | Path, format: str = "jsonl") -> LoadedReviews:
    """Load review rows, preserving order; bad rows become RowErrors."""
    path = Path(path)
    if format not in ("jsonl", "csv"):
        raise DataError(f"unknown review format {format!r}")
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read reviews file {path}: {exc}") from exc

    records: list[ReviewRecord] = []
    errors: list[RowError] = []

    if format == "jsonl":
        # split on "\n" only: JSON strings may legally contain raw U+2028
        # and friends, which str.splitlines would treat as line breaks
        for line_no, line in enumerate(raw.split("\n"), start=1):
            line = line.rstrip("\r")
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                if not isinstance(obj, dict):
                    raise ValueError("row is not a JSON object")
                records.append(_review_from_mapping(obj, line_no))
            except ValueError as exc:
                errors.append(RowError(line_no, str(exc)))
    else:
        reader = csv.DictReader(io.StringIO(raw, newline=""))
        if reader.fieldnames is None or "user_id" not in reader.fieldnames:
            raise DataError(f"reviews CSV {path} lacks a user_id header")
        for line_no, row in enumerate(reader, start=2):
            try:
                records.append(_review_from_mapping(row, line_no))
            except ValueError as exc:
                errors.append(RowError(line_no, str(exc)))

    for err in errors:
        log.warning("reviews %s: %s", path.name, err)
    log.info("loaded %d reviews (%d rejected rows) from %s", len(records), len(errors), path)
    return LoadedReviews(tuple(records), tuple(errors))


ALBUM_HEADER = ["album_id", "band_id", "title", "year", "country", "genres"]


def _album_from_row(row: Mapping[str, str]) -> AlbumRecord:
    genres = []
    seen_keys = set()
    for part in (row.get("genres") or "").split(";"):
        name = _WS.sub(" ", part.strip())
        if not name:
            continue
        key = normalize_genre(name)
        if key in seen_keys:
            continue
        seen_keys.add(key)
        genres.append(name)
    year_raw = (row.get("year") or "").strip()
    year = None
    if year_raw:
        try:
            year = int(year_raw)
        except ValueError:
            raise ValueError(f"year {year_raw!r} is not an integer") from None
    return AlbumRecord(
        album_id=(row.get("album_id") or "").strip(),
        band_id=(row.get("band_id") or "").strip(),
        genres=tuple(genres),
        country=(row.get("country") or "").strip() or None,
        year=year,
    )


def load_albums(path: str | Path) -> LoadedAlbums:
    """Load the album CSV, deduplicating identical rows by album_id.

    Two rows for the same album_id with differing content are a fatal
    error (the files are probably mismatched); identical repeats collapse
    to one record.
    """
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read albums file {path}: {exc}") from exc

    reader = csv.DictReader(io.StringIO(raw, newline=""))
    if reader.fieldnames is None or "album_id" not in reader.fieldnames:
        raise DataError(f"albums CSV {path} lacks an album_id header")

    albums: dict[str, AlbumRecord] = {}
    first_line: dict[str, int] = {}
    errors: list[RowError] = []
    for line_no, row in enumerate(reader, start=2):
        try:
            record = _album_from_row(row)
        except ValueError as exc:
            errors.append(RowError(line_no, str(exc)))
            continue
        existing = albums.get(record.album_id)
        if existing is None:
            albums[record.album_id] = record
            first_line[record.album_id] = line_no
        elif existing != record:
            raise DataError(
                f"conflicting rows for album {record.album_id!r}: "
                f"line {first_line[record.album_id]} has {existing}, line {line_no} has {record}"
            )

    for err in errors:
        log.warning("albums %s: %s", path.name, err)
    log.info("loaded %d albums (%d rejected rows) from %s", len(albums), len(errors), path)
    return LoadedAlbums(albums, tuple(errors))


def join_corpus(
    reviews: Iterable[ReviewRecord] | LoadedReviews,
    albums: Mapping[str, AlbumRecord] | LoadedAlbums,
) -> Corpus:
    """Join reviews to albums, excluding (and counting) orphan reviews.

    More than half the reviews lacking an album is treated as mismatched
    input files and is fatal.
    """
    if isinstance(reviews, LoadedReviews):
        reviews = reviews.records
    if isinstance(albums, LoadedAlbums):
        albums = albums.albums
    review_list = list(reviews)
    album_map = dict(albums)

    joined = [r for r in review_list if r.album_id in album_map]
    n_orphans = len(review_list) - len(joined)
    if review_list and n_orphans * 2 > len(review_list):
        raise DataError(
            f"{n_orphans} of {len(review_list)} reviews reference missing albums; "
            "review and album files probably do not belong together"
        )

    genre_display: dict[str, str] = {}
    for album_id in sorted(album_map):
        for name in album_map[album_id].genres:
            genre_display.setdefault(normalize_genre(name), name)

    corpus = Corpus(
        reviews=tuple(joined),
        albums=album_map,
        n_orphans=n_orphans,
        genre_display=genre_display,
    )
    s = corpus.summary()
    log.info(
        "corpus: %d reviews, %d users, %d albums, %d genres (%d orphan reviews excluded)",
        s.reviews, s.users, s.albums, s.genres, s.orphans,
    )
    return corpus


# -- serialization (round-trip support and toy-data tooling) ----------------


def save_reviews_jsonl(reviews: Iterable[ReviewRecord], path: str | Path) -> None:
    lines = []
    for r in reviews:
        obj = {"user_id": r.user_id, "album_id": r.album_id, "score": r.score}
        if r.text is not None:
            obj["text"] = r.text
        if r.date is not None:
            obj["date"] = r.date
        lines.append(json.dumps(obj, ensure_ascii=False, sort_keys=False))
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def save_albums_csv(albums: Mapping[str, AlbumRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(ALBUM_HEADER)
        for album_id in sorted(albums):
            a = albums[album_id]
            writer.writerow(
                [a.album_id, a.band_id, "", a.year if a.year is not None else "",
                 a.country or "", ";".join(a.genres)]
            )


def corpus_asdict(corpus: Corpus) -> dict:
    """Plain-data view used by tests for round-trip comparisons."""
    return {
        "reviews": [dataclasses.asdict(r) for r in corpus.reviews],
        "albums": {k: dataclasses.asdict(v) for k, v in sorted(corpus.albums.items())},
        "n_orphans": corpus.n_orphans,
        "genre_display": dict(corpus.genre_display),
    }

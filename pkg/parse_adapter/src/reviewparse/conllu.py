"""CoNLL-U rows: construction, well-formedness checks, and serialization.

One sentence is a tuple of 10-field token rows. The checks here are the
contract the output promises downstream consumers: exactly 10 columns,
1-based contiguous IDs, every HEAD pointing at a real token or 0, and
exactly one root per sentence.
"""

from __future__ import annotations

from dataclasses import dataclass

NUM_COLUMNS = 10


@dataclass(frozen=True)
class Row:
    """One token line. String fields use "_" for absent, per the format."""

    id: int
    form: str
    lemma: str
    upos: str
    head: int
    deprel: str
    xpos: str = "_"
    feats: str = "_"
    deps: str = "_"
    misc: str = "_"

    def columns(self) -> tuple[str, ...]:
        return (
            str(self.id), self.form, self.lemma, self.upos, self.xpos,
            self.feats, str(self.head), self.deprel, self.deps, self.misc,
        )


def check_sentence(rows: tuple[Row, ...]) -> None:
    """Raise ValueError unless ``rows`` form a well-formed sentence."""
    if not rows:
        raise ValueError("empty sentence")
    roots = 0
    for position, row in enumerate(rows, start=1):
        if len(row.columns()) != NUM_COLUMNS:
            raise ValueError(f"token {position}: wrong column count")
        if row.id != position:
            raise ValueError(f"token {position}: id {row.id} breaks contiguity")
        if not (0 <= row.head <= len(rows)):
            raise ValueError(f"token {position}: head {row.head} out of range")
        if row.head == row.id:
            raise ValueError(f"token {position}: token is its own head")
        if row.head == 0:
            roots += 1
        for field in row.columns():
            if not field or "\t" in field or "\n" in field:
                raise ValueError(f"token {position}: field {field!r} breaks the format")
    if roots != 1:
        raise ValueError(f"expected exactly one root, found {roots}")


def sentence_lines(rows: tuple[Row, ...], text: str | None = None) -> list[str]:
    """Render one sentence: optional ``# text`` comment, rows, no blank line."""
    lines = []
    if text is not None:
        # comments are single lines; collapse any stray breaks in the source
        lines.append("# text = " + " ".join(text.split()))
    lines.extend("\t".join(row.columns()) for row in rows)
    return lines


def parse_line(line: str) -> Row:
    """Read one token line back into a Row (used by the validators/tests)."""
    cols = line.split("\t")
    if len(cols) != NUM_COLUMNS:
        raise ValueError(f"expected {NUM_COLUMNS} columns, got {len(cols)}")
    return Row(
        id=int(cols[0]), form=cols[1], lemma=cols[2], upos=cols[3],
        xpos=cols[4], feats=cols[5], head=int(cols[6]), deprel=cols[7],
        deps=cols[8], misc=cols[9],
    )


def validate_file(path) -> int:
    """Check every sentence in a CoNLL-U file; return the sentence count.

    Raises ValueError naming the line where the first problem sits.
    """
    sentences = 0
    current: list[Row] = []
    first_line = 0
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if line.startswith("#"):
                continue
            if not line.strip():
                if current:
                    _check_at(tuple(current), first_line)
                    sentences += 1
                    current = []
                continue
            if not current:
                first_line = line_no
            try:
                current.append(parse_line(line))
            except ValueError as exc:
                raise ValueError(f"line {line_no}: {exc}") from None
    if current:
        _check_at(tuple(current), first_line)
        sentences += 1
    return sentences


def _check_at(rows: tuple[Row, ...], line_no: int) -> None:
    try:
        check_sentence(rows)
    except ValueError as exc:
        raise ValueError(f"sentence starting at line {line_no}: {exc}") from None

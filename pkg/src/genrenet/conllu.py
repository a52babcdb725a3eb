"""Reading and validating CoNLL-U dependency parses.

Only the subset of the format this pipeline produces and consumes is
supported: plain 10-column token lines, comments, and blank-line sentence
separators. Multiword-token ranges and empty nodes are tolerated on input
and ignored. Review provenance rides in ``# review_id = <user>|<album>``
comments, which stick to every following sentence until replaced.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import DataError

log = logging.getLogger(__name__)

NUM_COLUMNS = 10
REVIEW_ID_PREFIX = "# review_id ="


@dataclass(frozen=True)
class Token:
    id: int
    form: str
    lemma: str
    upos: str
    xpos: str
    feats: str
    head: int
    deprel: str
    deps: str
    misc: str


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    comments: tuple[str, ...] = ()
    review_id: tuple[str, str] | None = None

    def __len__(self):
        return len(self.tokens)

    def token_by_id(self, token_id: int) -> Token:
        return self.tokens[token_id - 1]

    def children_of(self, head_id: int) -> tuple[Token, ...]:
        return tuple(t for t in self.tokens if t.head == head_id)


@dataclass(frozen=True)
class ParsedDocument:
    user_id: str
    album_id: str
    sentences: tuple[Sentence, ...]


def _validate_sentence(tokens: list[Token], start_line: int) -> None:
    n = len(tokens)
    for pos, token in enumerate(tokens, start=1):
        if token.id != pos:
            raise DataError(
                f"line {start_line}: token ids not contiguous from 1 "
                f"(expected {pos}, got {token.id})"
            )
        if not 0 <= token.head <= n:
            raise DataError(
                f"line {start_line}: head {token.head} of token {token.id} "
                f"outside 0..{n}"
            )
    roots = [t.id for t in tokens if t.head == 0]
    if len(roots) != 1:
        raise DataError(
            f"line {start_line}: sentence must have exactly one root, found {len(roots)}"
        )


def _parse_review_id(comment: str) -> tuple[str, str]:
    value = comment[len(REVIEW_ID_PREFIX):].strip()
    user_id, sep, album_id = value.partition("|")
    if not sep or not user_id or not album_id:
        raise DataError(f"malformed review_id comment {comment!r}")
    return user_id, album_id


def iter_sentences(path: str | Path) -> Iterator[Sentence]:
    """Stream validated sentences; review_id comments stick until replaced."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read parses file {path}: {exc}") from exc

    comments: list[str] = []
    tokens: list[Token] = []
    review_id: tuple[str, str] | None = None
    sentence_start = 1

    def flush() -> Sentence | None:
        nonlocal comments, tokens
        if not tokens:
            comments = []
            return None
        _validate_sentence(tokens, sentence_start)
        sentence = Sentence(tuple(tokens), tuple(comments), review_id)
        comments, tokens = [], []
        return sentence

    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            done = flush()
            if done:
                yield done
            continue
        if line.startswith("#"):
            if not tokens:
                if not comments:
                    sentence_start = line_no
                comments.append(line)
                if line.startswith(REVIEW_ID_PREFIX):
                    review_id = _parse_review_id(line)
            continue
        cols = line.split("\t")
        if len(cols) != NUM_COLUMNS:
            raise DataError(f"line {line_no}: expected {NUM_COLUMNS} columns, got {len(cols)}")
        if "-" in cols[0] or "." in cols[0]:
            continue  # multiword-token range or empty node
        if not tokens:
            if not comments:
                sentence_start = line_no
        try:
            token_id = int(cols[0])
        except ValueError:
            raise DataError(f"line {line_no}: token id {cols[0]!r} is not an integer") from None
        try:
            head = int(cols[6])
        except ValueError:
            raise DataError(f"line {line_no}: head {cols[6]!r} is not an integer") from None
        token = Token(
            id=token_id,
            form=cols[1],
            lemma=cols[2],
            upos=cols[3],
            xpos=cols[4],
            feats=cols[5],
            head=head,
            deprel=cols[7],
            deps=cols[8],
            misc=cols[9],
        )
        tokens.append(token)
    done = flush()
    if done:
        yield done


def read_sentences(path: str | Path) -> tuple[Sentence, ...]:
    return tuple(iter_sentences(path))


def read_documents(path: str | Path) -> tuple[ParsedDocument, ...]:
    """Group sentences into per-review documents, preserving file order.

    Sentences before any review_id comment would be unattributable and are
    rejected.
    """
    documents: list[ParsedDocument] = []
    current_key: tuple[str, str] | None = None
    current: list[Sentence] = []
    for sentence in iter_sentences(path):
        if sentence.review_id is None:
            raise DataError("sentence without a preceding review_id comment")
        if sentence.review_id != current_key:
            if current_key is not None:
                documents.append(ParsedDocument(current_key[0], current_key[1], tuple(current)))
            current_key = sentence.review_id
            current = []
        current.append(sentence)
    if current_key is not None:
        documents.append(ParsedDocument(current_key[0], current_key[1], tuple(current)))
    log.info("read %d parsed documents from %s", len(documents), path)
    return tuple(documents)


def sentences_of(documents: Iterable[ParsedDocument]) -> Iterator[Sentence]:
    for document in documents:
        yield from document.sentences

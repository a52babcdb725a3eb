"""Parse review text to CoNLL-U, one document per review, in input order.

The output file starts with a ``# parser = <model> <version>`` provenance
comment; each review contributes a ``# review_id = <user>|<album>`` comment
followed by its sentences. Reviews with no usable text are skipped and
counted, never silently dropped. Every emitted sentence is checked against
the well-formedness contract before it is written; a backend producing a
malformed parse turns into a counted skip, not corrupt output.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from .backends import get_backend
from .conllu import check_sentence, sentence_lines
from .reviews import BadRow, iter_reviews

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParseReport:
    model: str
    model_version: str
    documents: int = 0
    parsed: int = 0
    skipped: int = 0
    sentences: int = 0
    tokens: int = 0
    skips: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    def summary(self) -> str:
        return (
            f"model {self.model} {self.model_version}: "
            f"{self.parsed}/{self.documents} reviews parsed "
            f"({self.sentences} sentences, {self.tokens} tokens, "
            f"{self.skipped} skipped)"
        )


def parse_reviews(reviews_in: str | Path, out: str | Path, *,
                  model: str = "en_core_web_sm") -> ParseReport:
    """Parse every review in ``reviews_in`` and write CoNLL-U to ``out``."""
    backend = get_backend(model)  # ModelError here is fatal, by design
    documents = parsed = skipped = n_sentences = n_tokens = 0
    skips: list[tuple[str, str]] = []
    lines: list[str] = [f"# parser = {backend.name} {backend.version}"]

    for item in iter_reviews(reviews_in):
        documents += 1
        if isinstance(item, BadRow):
            skipped += 1
            skips.append((f"line {item.line_no}", item.reason))
            continue
        if not item.text.strip():
            skipped += 1
            skips.append((item.key, "empty text"))
            continue
        sentences = backend.parse(item.text)
        if not sentences:
            skipped += 1
            skips.append((item.key, "no sentences recognized"))
            continue
        try:
            for rows, _ in sentences:
                check_sentence(rows)
        except ValueError as exc:
            skipped += 1
            skips.append((item.key, f"malformed parse: {exc}"))
            log.warning("skipping %s: %s", item.key, exc)
            continue
        lines.append(f"# review_id = {item.key}")
        for rows, raw in sentences:
            lines.extend(sentence_lines(rows, text=raw))
            lines.append("")
            n_sentences += 1
            n_tokens += len(rows)
        parsed += 1

    target = Path(out)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    report = ParseReport(
        model=backend.name, model_version=backend.version,
        documents=documents, parsed=parsed, skipped=skipped,
        sentences=n_sentences, tokens=n_tokens, skips=tuple(skips),
    )
    log.info("%s -> %s: %s", reviews_in, target, report.summary())
    return report

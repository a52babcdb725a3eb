"""Adjective-noun feature extraction and per-cluster scoring.

Features come from two dependency patterns: an adjective directly
modifying a noun (amod), and a predicative adjective linked to a noun
subject through a verb (nsubj + acomp). Scoring treats each cluster as
one document and computes tf-idf where the document frequency looks at
the adjective alone — an adjective used across every cluster ("great",
"awesome") is generic praise and scores zero no matter the noun.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .conllu import ParsedDocument, Sentence
from .consensus import ClusterTree
from .errors import DataError
from .ingest import Corpus

log = logging.getLogger(__name__)

NOUN_TAGS = frozenset({"NOUN", "PROPN"})
VERB_TAGS = frozenset({"VERB", "AUX"})


@dataclass(frozen=True, order=True)
class Feature:
    """An (adjective, noun) pair; both fields are lower-cased lemmas."""

    adjective_lemma: str
    noun_lemma: str

    def __post_init__(self):
        if not self.adjective_lemma or not self.noun_lemma:
            raise DataError("feature lemmas must be non-empty")


@dataclass(frozen=True)
class FeatureScore:
    feature: Feature
    tf: float
    idf: float
    tfidf: float


@dataclass(frozen=True)
class AccuracyReport:
    n_correct: int
    n_total: int

    def __post_init__(self):
        if not 0 <= self.n_correct <= self.n_total:
            raise DataError(f"invalid counts {self.n_correct}/{self.n_total}")
        if self.n_total == 0:
            raise DataError("accuracy undefined with no judged features")

    @property
    def accuracy(self) -> float:
        # multiply first: 35/50 must give exactly 70.0
        return self.n_correct * 100 / self.n_total


def match_patterns(sentence: Sentence) -> list[Feature]:
    """All features in one sentence, sorted; duplicates are kept.

    Pattern (a): ADJ --amod--> NOUN/PROPN head.
    Pattern (b): verb with a NOUN/PROPN nsubj child and an ADJ acomp
    child; every such subject-adjective combination is emitted.
    """
    features: list[Feature] = []
    for token in sentence.tokens:
        if token.upos == "ADJ" and token.deprel == "amod" and token.head > 0:
            head = sentence.token_by_id(token.head)
            if head.upos in NOUN_TAGS:
                features.append(Feature(token.lemma.casefold(), head.lemma.casefold()))
        if token.upos in VERB_TAGS:
            children = sentence.children_of(token.id)
            subjects = [c for c in children if c.deprel == "nsubj" and c.upos in NOUN_TAGS]
            adjectives = [c for c in children if c.deprel == "acomp" and c.upos == "ADJ"]
            for subject in subjects:
                for adjective in adjectives:
                    features.append(
                        Feature(adjective.lemma.casefold(), subject.lemma.casefold())
                    )
    features.sort()
    return features


def document_features(document: ParsedDocument) -> list[Feature]:
    features: list[Feature] = []
    for sentence in document.sentences:
        features.extend(match_patterns(sentence))
    return features


@dataclass(frozen=True)
class CollectedFeatures:
    """Per-cluster feature counts plus how many reviews fell out of scope."""

    per_cluster: Mapping[str, Counter]
    skipped: int


def collect_cluster_features(
    parses: Iterable[ParsedDocument],
    corpus: Corpus,
    leaves: Iterable[ClusterTree],
) -> CollectedFeatures:
    """Attribute each review's features to every cluster its album touches.

    An album spanning several genres of the same cluster still counts each
    feature once there; an album touching two clusters counts its features
    in both. Reviews whose genres all lie outside the given clusters are
    skipped and tallied.
    """
    cluster_of_genre: dict[str, str] = {}
    counters: dict[str, Counter] = {}
    for leaf in leaves:
        counters[leaf.label] = Counter()
        for genre in leaf.genres:
            if genre in cluster_of_genre:
                raise DataError(f"genre {genre!r} appears in two clusters")
            cluster_of_genre[genre] = leaf.label

    skipped = 0
    for document in parses:
        album = corpus.albums.get(document.album_id)
        genres = corpus.genres_of(document.album_id) if album else ()
        labels = sorted({cluster_of_genre[g] for g in genres if g in cluster_of_genre})
        if not labels:
            skipped += 1
            continue
        features = document_features(document)
        if not features:
            continue
        for label in labels:
            counters[label].update(features)

    log.info(
        "collected features for %d clusters (%d reviews out of scope)",
        len(counters), skipped,
    )
    return CollectedFeatures(per_cluster=counters, skipped=skipped)


def modified_tfidf(
    per_cluster: Mapping[str, Counter],
) -> dict[str, list[FeatureScore]]:
    """Score each cluster's features with adjective-only document frequency.

    tf counts the feature inside its cluster; df counts how many clusters
    use the feature's adjective with ANY noun; idf = ln(N/df). Scores are
    sorted by descending tfidf, ties by feature.
    """
    n_clusters = len(per_cluster)
    if n_clusters < 2:
        raise DataError(f"tf-idf needs at least 2 clusters, got {n_clusters}")

    df: Counter = Counter()
    for counter in per_cluster.values():
        for adjective in {f.adjective_lemma for f in counter}:
            df[adjective] += 1

    idf = {adj: math.log(n_clusters / count) for adj, count in df.items()}

    scored: dict[str, list[FeatureScore]] = {}
    for label, counter in per_cluster.items():
        scores = [
            FeatureScore(
                feature=feature,
                tf=float(tf),
                idf=idf[feature.adjective_lemma],
                tfidf=float(tf) * idf[feature.adjective_lemma],
            )
            for feature, tf in counter.items()
        ]
        scores.sort(key=lambda s: (-s.tfidf, s.feature))
        scored[label] = scores
    return scored


def top_features(scores: list[FeatureScore], n: int = 50) -> list[FeatureScore]:
    """First n scores in rank order; fewer if fewer exist."""
    if n < 1:
        raise DataError(f"top-n must be >= 1, got {n}")
    return scores[:n]


def load_judgments(path: str | Path) -> list[tuple[str, Feature, bool]]:
    """Read a judgment CSV with header cluster,adjective,noun,correct."""
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read judgments file {path}: {exc}") from exc
    reader = csv.DictReader(io.StringIO(raw, newline=""))
    required = {"cluster", "adjective", "noun", "correct"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        raise DataError(f"judgments CSV {path} must have columns {sorted(required)}")
    rows = []
    for line_no, row in enumerate(reader, start=2):
        flag = (row["correct"] or "").strip()
        if flag not in ("0", "1"):
            raise DataError(f"line {line_no}: correct must be 0 or 1, got {flag!r}")
        rows.append(
            (
                row["cluster"].strip(),
                Feature(row["adjective"].strip().casefold(), row["noun"].strip().casefold()),
                flag == "1",
            )
        )
    return rows


def evaluate_accuracy(
    judgments: str | Path | Iterable[tuple[str, Feature, bool]],
    top_by_cluster: Mapping[str, Iterable[FeatureScore]],
) -> tuple[dict[str, AccuracyReport], AccuracyReport]:
    """Per-cluster and overall accuracy of judged top features.

    Every judgment must reference a feature actually present in that
    cluster's top list; stray rows indicate a stale judgment file and are
    reported together.
    """
    if isinstance(judgments, (str, Path)):
        judgments = load_judgments(judgments)

    known: dict[str, set[Feature]] = {
        label: {score.feature for score in scores}
        for label, scores in top_by_cluster.items()
    }
    offenders = []
    counts: dict[str, list[int]] = {}
    for label, feature, correct in judgments:
        if label not in known or feature not in known[label]:
            offenders.append(f"{label}:{feature.adjective_lemma},{feature.noun_lemma}")
            continue
        bucket = counts.setdefault(label, [0, 0])
        bucket[0] += int(correct)
        bucket[1] += 1
    if offenders:
        raise DataError(f"judgments for unknown features: {', '.join(sorted(offenders))}")
    if not counts:
        raise DataError("no judgments matched any cluster")

    per_cluster = {
        label: AccuracyReport(n_correct=c, n_total=t) for label, (c, t) in sorted(counts.items())
    }
    overall = AccuracyReport(
        n_correct=sum(c for c, _ in counts.values()),
        n_total=sum(t for _, t in counts.values()),
    )
    return per_cluster, overall

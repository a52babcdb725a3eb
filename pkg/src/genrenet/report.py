"""Artifact writers and summary tables.

Everything here must be byte-deterministic for a fixed input: rows are
sorted by documented rules, floats are fixed to six decimals (one decimal
for displayed percentages), and line endings are plain "\n". GraphML
export delegates to networkx; node and edge insertion order is pinned so
the emitted XML is stable too.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .consensus import ClusterTree, ConsensusState
from .errors import DataError
from .graphs import WeightedGraph
from .ingest import Corpus
from .textfeat import FeatureScore

log = logging.getLogger(__name__)


def _write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def _csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# -- cluster tree and trace ---------------------------------------------------


def write_clusters_json(tree: ClusterTree, path: str | Path) -> Path:
    return _write_text(path, json.dumps(tree.to_dict(), indent=2) + "\n")


def write_trace_csv(trace: Iterable[ConsensusState], path: str | Path) -> Path:
    rows = [
        (state.round, state.num_components, state.num_edges, state.epsilon_max)
        for state in trace
    ]
    return _write_text(
        path, _csv_text(["round", "num_components", "num_edges", "epsilon_max"], rows)
    )


def write_core_report_csv(removed: Iterable[tuple[str, int]], path: str | Path) -> Path:
    return _write_text(path, _csv_text(["genre", "core_number"], sorted(removed)))


def write_partition_csv(assignment: Mapping[str, int], path: str | Path) -> Path:
    rows = [(genre, assignment[genre]) for genre in sorted(assignment)]
    return _write_text(path, _csv_text(["genre", "community_id"], rows))


# -- features -----------------------------------------------------------------


def write_features_csv(scores: Iterable[FeatureScore], path: str | Path) -> Path:
    rows = [
        (
            s.feature.adjective_lemma,
            s.feature.noun_lemma,
            int(s.tf),
            f"{s.idf:.6f}",
            f"{s.tfidf:.6f}",
        )
        for s in scores
    ]
    return _write_text(path, _csv_text(["adjective", "noun", "tf", "idf", "tfidf"], rows))


# -- network exports ----------------------------------------------------------

EXPORT_MODES = ("full", "top3_out_edges")


def _cluster_labels(graph: WeightedGraph, leaves: Iterable[ClusterTree]) -> dict[str, str]:
    label_of: dict[str, str] = {}
    for leaf in leaves:
        for genre in leaf.genres:
            if genre in label_of:
                raise DataError(f"genre {genre!r} appears in two clusters")
            label_of[genre] = leaf.label
    missing = [n for n in graph.nodes if n not in label_of]
    if missing:
        raise DataError(f"clusters do not cover nodes: {missing[:5]}")
    return label_of


def select_edges(
    graph: WeightedGraph,
    label_of: Mapping[str, str],
    mode: str,
) -> tuple[tuple[str, str], ...]:
    """Edge subset for an export mode, canonically ordered.

    "full" keeps everything. "top3_out_edges" keeps every intra-cluster
    edge plus, for each cluster, its 3 heaviest edges to other clusters
    (weight ties resolved by the lexicographically smallest edge).
    """
    if mode not in EXPORT_MODES:
        raise DataError(f"unknown export mode {mode!r}; expected one of {EXPORT_MODES}")
    if mode == "full":
        return tuple((a, b) for a, b, _ in graph.edges())

    keep: set[tuple[str, str]] = set()
    outgoing: dict[str, list[tuple[float, tuple[str, str]]]] = {}
    for a, b, w in graph.edges():
        la, lb = label_of[a], label_of[b]
        if la == lb:
            keep.add((a, b))
        else:
            outgoing.setdefault(la, []).append((w, (a, b)))
            outgoing.setdefault(lb, []).append((w, (a, b)))
    for edges in outgoing.values():
        edges.sort(key=lambda item: (-item[0], item[1]))
        keep.update(edge for _, edge in edges[:3])
    return tuple(sorted(keep))


def export_network(
    graph: WeightedGraph,
    leaves: Iterable[ClusterTree],
    mode: str,
    path: str | Path,
) -> Path:
    """Write the genre network as GraphML with a per-node cluster attribute."""
    label_of = _cluster_labels(graph, list(leaves))
    edges = select_edges(graph, label_of, mode)

    out = nx.Graph()
    for node in graph.nodes:
        out.add_node(node, cluster=label_of[node])
    for a, b in edges:
        out.add_edge(a, b, weight=graph.weight(a, b))

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    nx.write_graphml(out, path, named_key_ids=True)
    log.info("wrote %s export (%d nodes, %d edges) to %s",
             mode, out.number_of_nodes(), out.number_of_edges(), path)
    return path


# -- summary tables -----------------------------------------------------------


@dataclass(frozen=True)
class CountryRow:
    country: str
    reviews: int
    percentage: float


def country_table(
    corpus: Corpus,
    cluster_genres: Iterable[str],
    threshold: int = 75,
) -> tuple[CountryRow, ...]:
    """Positive reviews of a cluster's albums, grouped by band country.

    An album belongs to the cluster when any of its genres does. Albums
    without a country fall under "unknown". Rows are sorted by review
    count (descending), then country name.
    """
    genres = set(cluster_genres)
    counts: dict[str, int] = {}
    for review in corpus.reviews:
        if review.score < threshold:
            continue
        album = corpus.albums.get(review.album_id)
        if album is None:
            continue
        if not genres.intersection(corpus.genres_of(review.album_id)):
            continue
        country = album.country or "unknown"
        counts[country] = counts.get(country, 0) + 1
    total = sum(counts.values())
    rows = tuple(
        CountryRow(country, count, count * 100 / total)
        for country, count in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    )
    return rows


def write_country_csv(rows: Iterable[CountryRow], path: str | Path) -> Path:
    return _write_text(
        path,
        _csv_text(
            ["country", "reviews", "percentage"],
            [(r.country, r.reviews, f"{r.percentage:.1f}") for r in rows],
        ),
    )


@dataclass(frozen=True)
class GenreStatsRow:
    genre: str
    reviews: int
    positive_reviews: int
    users: int
    positive_users: int


def genre_stats(corpus: Corpus, threshold: int = 75) -> tuple[GenreStatsRow, ...]:
    """Per-genre review and reviewer counts, busiest genres first.

    A review of a multi-genre album counts toward each of its genres.
    "users" counts distinct reviewers of the genre at any score;
    "positive_users" counts those with at least one review at or above
    the threshold.
    """
    reviews: dict[str, int] = {}
    positive: dict[str, int] = {}
    users: dict[str, set[str]] = {}
    positive_users: dict[str, set[str]] = {}
    for review in corpus.reviews:
        if review.album_id not in corpus.albums:
            continue
        for genre in corpus.genres_of(review.album_id):
            reviews[genre] = reviews.get(genre, 0) + 1
            users.setdefault(genre, set()).add(review.user_id)
            if review.score >= threshold:
                positive[genre] = positive.get(genre, 0) + 1
                positive_users.setdefault(genre, set()).add(review.user_id)
    rows = tuple(
        GenreStatsRow(
            genre=genre,
            reviews=reviews[genre],
            positive_reviews=positive.get(genre, 0),
            users=len(users[genre]),
            positive_users=len(positive_users.get(genre, set())),
        )
        for genre in sorted(reviews, key=lambda g: (-reviews[g], g))
    )
    return rows


def write_genre_stats_csv(rows: Iterable[GenreStatsRow], path: str | Path) -> Path:
    return _write_text(
        path,
        _csv_text(
            ["genre", "reviews", "positive_reviews", "users", "positive_users"],
            [(r.genre, r.reviews, r.positive_reviews, r.users, r.positive_users) for r in rows],
        ),
    )


def write_accuracy_csv(
    per_cluster: Mapping[str, "object"],
    overall,
    path: str | Path,
) -> Path:
    rows = [
        (label, rep.n_correct, rep.n_total, f"{rep.accuracy:.1f}")
        for label, rep in sorted(per_cluster.items())
    ]
    rows.append(("overall", overall.n_correct, overall.n_total, f"{overall.accuracy:.1f}"))
    return _write_text(
        path, _csv_text(["cluster", "n_correct", "n_total", "accuracy"], rows)
    )


def write_edgelist_csv(graph: WeightedGraph, path: str | Path) -> Path:
    rows = [(a, b, w) for a, b, w in graph.edges()]
    return _write_text(path, _csv_text(["genre_a", "genre_b", "weight"], rows))


def safe_label(label: str) -> str:
    """Cluster label as a filename fragment."""
    return "".join(ch if ch.isalnum() or ch in "._-" else "_" for ch in label)

"""User-genre bipartite graph and its one-mode projection.

A user is linked to a genre when at least one of their (already
score-filtered) reviews targets an album carrying that genre. Projecting
onto the genre side yields a weighted genre graph whose edge weights count
distinct users shared by two genres — a user reviewing many albums of the
same genre pair still contributes 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DataError
from .graphs import USER_COUNT, WeightedGraph
from .ingest import Corpus, normalize_genre

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BipartiteGraph:
    """Immutable user-genre incidence structure.

    ``user_genres`` maps each user to the sorted tuple of genre display
    names they are linked to; ``genre_users`` is the inverse. Users with
    no genres never appear.
    """

    user_genres: Mapping[str, tuple[str, ...]]
    genre_users: Mapping[str, tuple[str, ...]] = field(repr=False)

    @property
    def users(self) -> tuple[str, ...]:
        return tuple(sorted(self.user_genres))

    @property
    def genres(self) -> tuple[str, ...]:
        return tuple(sorted(self.genre_users))

    @property
    def num_edges(self) -> int:
        return sum(len(gs) for gs in self.user_genres.values())

    def degree(self, user_id: str) -> int:
        """Number of distinct genres the user is linked to."""
        return len(self.user_genres[user_id])


def _freeze(mapping: dict[str, set[str]]) -> dict[str, tuple[str, ...]]:
    return {k: tuple(sorted(v)) for k, v in sorted(mapping.items())}


def filter_positive(corpus: Corpus, threshold: int = 75) -> Corpus:
    """Corpus restricted to reviews with score >= threshold."""
    if not 0 <= threshold <= 100:
        raise DataError(f"threshold {threshold} outside [0, 100]")
    kept = tuple(r for r in corpus.reviews if r.score >= threshold)
    log.info("kept %d of %d reviews at threshold %d", len(kept), len(corpus.reviews), threshold)
    return Corpus(
        reviews=kept,
        albums=corpus.albums,
        n_orphans=corpus.n_orphans,
        genre_display=corpus.genre_display,
    )


def build_bipartite(corpus: Corpus) -> BipartiteGraph:
    """Link each reviewer to every genre of every album they reviewed."""
    user_genres: dict[str, set[str]] = {}
    genre_users: dict[str, set[str]] = {}
    for review in corpus.reviews:
        for genre in corpus.genres_of(review.album_id):
            user_genres.setdefault(review.user_id, set()).add(genre)
            genre_users.setdefault(genre, set()).add(review.user_id)
    graph = BipartiteGraph(_freeze(user_genres), _freeze(genre_users))
    log.info(
        "bipartite graph: %d users, %d genres, %d edges",
        len(graph.user_genres), len(graph.genre_users), graph.num_edges,
    )
    return graph


def remove_outlier_users(graph: BipartiteGraph, k: int = 2) -> BipartiteGraph:
    """Drop the k users with the most genre links (ties: smaller id first).

    Listeners connected to nearly everything blur community structure
    instead of revealing it. Removing at least as many users as exist is
    refused outright.
    """
    if k < 0:
        raise DataError(f"outlier count {k} is negative")
    if k == 0:
        return graph
    users = graph.user_genres
    if k >= len(users):
        raise DataError(f"cannot remove {k} outliers from {len(users)} users")
    # sort once: highest degree first, lexicographic user id as tie-break
    ranked = sorted(users, key=lambda u: (-len(users[u]), u))
    dropped = set(ranked[:k])
    for u in sorted(dropped):
        log.info("removing outlier user %s (%d genres)", u, len(users[u]))

    user_genres = {u: set(gs) for u, gs in users.items() if u not in dropped}
    genre_users: dict[str, set[str]] = {}
    for u, gs in user_genres.items():
        for g in gs:
            genre_users.setdefault(g, set()).add(u)
    return BipartiteGraph(_freeze(user_genres), _freeze(genre_users))


def project(graph: BipartiteGraph) -> WeightedGraph:
    """One-mode projection onto genres; weights count distinct shared users.

    Genres with no co-reviewer remain as isolated nodes so that later
    pruning sees them.
    """
    weights: dict[tuple[str, str], int] = {}
    for genres in graph.user_genres.values():
        # genres is sorted, so (a, b) pairs are already canonical
        for i, a in enumerate(genres):
            for b in genres[i + 1:]:
                weights[(a, b)] = weights.get((a, b), 0) + 1
    projected = WeightedGraph(graph.genres, weights, semantics=USER_COUNT)
    log.info(
        "projection: %d genres, %d edges, total weight %s",
        projected.num_nodes, projected.num_edges, projected.total_weight,
    )
    return projected

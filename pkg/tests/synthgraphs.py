"""Seeded synthetic graph generators shared across test modules."""

from __future__ import annotations

import random
from itertools import combinations

from genrenet import WeightedGraph


def node_names(n: int) -> list[str]:
    return [f"n{i:02d}" for i in range(n)]


def random_graph(seed: int, max_nodes: int = 40, *, min_nodes: int = 2,
                 p_edge: float = 0.3, integer_weights: bool = True) -> WeightedGraph:
    """Erdos-Renyi-ish weighted graph; may be disconnected or even edgeless."""
    rng = random.Random(seed)
    nodes = node_names(rng.randint(min_nodes, max_nodes))
    edges = {}
    for a, b in combinations(nodes, 2):
        if rng.random() < p_edge:
            w = rng.randint(1, 9) if integer_weights else rng.uniform(0.1, 9.0)
            edges[(a, b)] = float(w)
    return WeightedGraph(nodes, edges)


def random_connected_graph(seed: int, max_nodes: int = 8, *, min_nodes: int = 2) -> WeightedGraph:
    """Random spanning tree plus extra edges, so the result is connected."""
    rng = random.Random(seed)
    nodes = node_names(rng.randint(min_nodes, max_nodes))
    edges: dict[tuple[str, str], float] = {}
    for i in range(1, len(nodes)):
        j = rng.randrange(i)
        a, b = sorted((nodes[i], nodes[j]))
        edges[(a, b)] = float(rng.randint(1, 9))
    for a, b in combinations(nodes, 2):
        if (a, b) not in edges and rng.random() < 0.25:
            edges[(a, b)] = float(rng.randint(1, 9))
    return WeightedGraph(nodes, edges)


def random_bipartite(seed: int, max_users: int = 30, max_genres: int = 30) -> dict[str, set[str]]:
    """user -> genre-set mapping with no isolated users."""
    rng = random.Random(seed)
    users = [f"u{i:02d}" for i in range(rng.randint(1, max_users))]
    genres = [f"g{i:02d}" for i in range(rng.randint(2, max_genres))]
    mapping = {}
    for u in users:
        count = rng.randint(1, min(6, len(genres)))
        mapping[u] = set(rng.sample(genres, count))
    return mapping


def planted_partition(seed: int, groups: int = 4, size: int = 8) -> tuple[WeightedGraph, list[list[str]]]:
    """Dense heavy blocks joined by a few weak edges; returns (graph, blocks)."""
    rng = random.Random(seed)
    blocks = [[f"g{g}_{i}" for i in range(size)] for g in range(groups)]
    edges: dict[tuple[str, str], float] = {}
    for block in blocks:
        for a, b in combinations(block, 2):
            if rng.random() < 0.9:
                edges[tuple(sorted((a, b)))] = float(rng.randint(5, 10))
    # guarantee each block is connected regardless of the coin flips
    for block in blocks:
        for i in range(1, len(block)):
            key = tuple(sorted((block[i - 1], block[i])))
            edges.setdefault(key, float(rng.randint(5, 10)))
    for ga, gb in combinations(range(groups), 2):
        for a in blocks[ga]:
            for b in blocks[gb]:
                if rng.random() < 0.04:
                    edges[tuple(sorted((a, b)))] = 1.0
    nodes = [n for block in blocks for n in block]
    return WeightedGraph(nodes, edges), [sorted(b) for b in blocks]

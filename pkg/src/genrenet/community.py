"""Weighted modularity and greedy agglomerative community detection.

The detector is the classic two-phase scheme: repeatedly sweep nodes in
seeded-random order, moving each to the neighboring community with the
best strictly positive modularity gain, then collapse communities into
super-nodes and repeat on the aggregate. Determinism is part of the
contract: identical (graph, seed) must yield an identical partition, so
every tie is broken explicitly and all iteration orders are pinned.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DataError
from .graphs import WeightedGraph

log = logging.getLogger(__name__)

# A move must beat this margin to count as an improvement; guards against
# oscillation on float noise.
GAIN_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Partition:
    """Node -> community id map with dense ids 0..C-1 and no empty community."""

    assignment: Mapping[str, int]

    def __post_init__(self):
        ids = set(self.assignment.values())
        if ids and ids != set(range(len(ids))):
            raise DataError(f"community ids are not dense 0..{len(ids) - 1}: {sorted(ids)}")

    @property
    def num_communities(self) -> int:
        return len(set(self.assignment.values()))

    def community_of(self, node: str) -> int:
        return self.assignment[node]

    def communities(self) -> tuple[tuple[str, ...], ...]:
        """Members per community id, each sorted."""
        groups: dict[int, list[str]] = {c: [] for c in range(self.num_communities)}
        for node in sorted(self.assignment):
            groups[self.assignment[node]].append(node)
        return tuple(tuple(groups[c]) for c in range(len(groups)))

    def community_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.communities())

    @classmethod
    def from_communities(cls, groups: Iterable[Iterable[str]]) -> "Partition":
        membership: dict[str, int] = {}
        for cid, group in enumerate(groups):
            members = list(group)
            if not members:
                raise DataError(f"community {cid} is empty")
            for node in members:
                if node in membership:
                    raise DataError(f"node {node!r} assigned to two communities")
                membership[node] = cid
        return cls(membership)

    def renumbered(self) -> "Partition":
        """Canonical id assignment: communities ordered by smallest member."""
        groups = sorted(self.communities(), key=lambda c: c[0])
        return Partition.from_communities(groups)


def modularity(graph: WeightedGraph, partition: Partition) -> float:
    """Weighted modularity of the partition; undefined on zero-weight graphs."""
    nodes = set(graph.nodes)
    if set(partition.assignment) != nodes:
        missing = nodes - set(partition.assignment)
        extra = set(partition.assignment) - nodes
        raise DataError(
            f"partition does not cover the graph exactly "
            f"(missing={sorted(missing)[:5]}, extra={sorted(extra)[:5]})"
        )
    m = graph.total_weight
    if m <= 0:
        raise DataError("modularity is undefined on a graph with no edge weight")

    n_comm = partition.num_communities
    intra = [0.0] * n_comm
    tot = [0.0] * n_comm
    for a, b, w in graph.edges():
        ca, cb = partition.assignment[a], partition.assignment[b]
        if ca == cb:
            intra[ca] += w
    for node in graph.nodes:
        tot[partition.assignment[node]] += graph.strength(node)

    two_m = 2.0 * m
    q = 0.0
    for c in range(n_comm):
        q += intra[c] / m - (tot[c] / two_m) ** 2
    return q


def _sweep_q(comm_in: list[float], comm_tot: list[float], m: float) -> float:
    two_m = 2.0 * m
    return sum(ci / two_m - (ct / two_m) ** 2 for ci, ct in zip(comm_in, comm_tot))


def _one_level(
    n: int,
    adj: list[dict[int, float]],
    loops: list[float],
    m: float,
    rng: random.Random,
    trace: list[float],
) -> tuple[list[int], int]:
    """Run move sweeps to a fixed point; returns (node -> community, total moves).

    Community ids at this level are the indices of their founding nodes;
    candidates are only the communities a node actually touches, plus its
    own. Each node stays put unless some candidate beats its current
    community by more than GAIN_TOLERANCE; equal-gain candidates resolve
    to the smallest community id because ids are scanned in ascending
    order and replacement requires a strictly greater gain.
    """
    node_comm = list(range(n))
    k = [2.0 * loops[i] + sum(adj[i].values()) for i in range(n)]
    comm_tot = k[:]
    comm_in = [2.0 * loops[i] for i in range(n)]
    two_m_sq = 2.0 * m * m

    total_moves = 0
    while True:
        moves = 0
        order = list(range(n))
        rng.shuffle(order)
        for i in order:
            old = node_comm[i]
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                cj = node_comm[j]
                links[cj] = links.get(cj, 0.0) + w
            # detach i, then score candidate communities from the outside
            comm_tot[old] -= k[i]
            comm_in[old] -= 2.0 * links.get(old, 0.0) + 2.0 * loops[i]
            gain_old = links.get(old, 0.0) / m - comm_tot[old] * k[i] / two_m_sq
            best_comm = old
            best_gain = gain_old + GAIN_TOLERANCE
            for c in sorted(links):
                if c == old:
                    continue
                gain = links[c] / m - comm_tot[c] * k[i] / two_m_sq
                if gain > best_gain:
                    best_gain = gain
                    best_comm = c
            node_comm[i] = best_comm
            comm_tot[best_comm] += k[i]
            comm_in[best_comm] += 2.0 * links.get(best_comm, 0.0) + 2.0 * loops[i]
            if best_comm != old:
                moves += 1
        trace.append(_sweep_q(comm_in, comm_tot, m))
        total_moves += moves
        if moves == 0:
            return node_comm, total_moves


def louvain_trace(graph: WeightedGraph, seed: int) -> tuple[Partition, tuple[float, ...]]:
    """Detect communities; also return modularity after every sweep.

    The trace is non-decreasing by construction. A graph with no edges
    cannot be scored, so it degenerates to one singleton per node with an
    empty trace.
    """
    nodes = graph.nodes
    if graph.num_edges == 0:
        singletons = Partition({node: i for i, node in enumerate(nodes)})
        return singletons, ()

    rng = random.Random(seed)
    index = {node: i for i, node in enumerate(nodes)}
    n = len(nodes)
    adj: list[dict[int, float]] = [{} for _ in range(n)]
    for a, b, w in graph.edges():
        ia, ib = index[a], index[b]
        adj[ia][ib] = float(w)
        adj[ib][ia] = float(w)
    loops = [0.0] * n
    m = float(graph.total_weight)

    trace: list[float] = []
    # baseline: every node alone
    trace.append(_sweep_q([2.0 * lp for lp in loops], [2.0 * lp + sum(a.values()) for lp, a in zip(loops, adj)], m))

    assignment = list(range(n))  # original node index -> current super-node
    while True:
        node_comm, moved = _one_level(n, adj, loops, m, rng, trace)
        if moved == 0:
            break
        # collapse communities into super-nodes, ordered by community id
        comms = sorted(set(node_comm))
        remap = {c: i for i, c in enumerate(comms)}
        new_n = len(comms)
        new_adj: list[dict[int, float]] = [{} for _ in range(new_n)]
        new_loops = [0.0] * new_n
        for i in range(n):
            ci = remap[node_comm[i]]
            new_loops[ci] += loops[i]
            for j, w in adj[i].items():
                if j <= i:
                    continue
                cj = remap[node_comm[j]]
                if ci == cj:
                    new_loops[ci] += w
                else:
                    new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
                    new_adj[cj][ci] = new_adj[cj].get(ci, 0.0) + w
        assignment = [remap[node_comm[s]] for s in assignment]
        n, adj, loops = new_n, new_adj, new_loops

    groups: dict[int, list[str]] = {}
    for orig, super_node in enumerate(assignment):
        groups.setdefault(super_node, []).append(nodes[orig])
    ordered = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    partition = Partition.from_communities(ordered)
    log.debug(
        "louvain(seed=%d): %d communities, Q=%.6f after %d sweeps",
        seed, partition.num_communities, trace[-1], len(trace) - 1,
    )
    return partition, tuple(trace)


def louvain(graph: WeightedGraph, seed: int) -> Partition:
    """Seeded community detection; same (graph, seed) -> same partition."""
    return louvain_trace(graph, seed)[0]

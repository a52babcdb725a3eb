"""Unweighted k-core decomposition for pruning weakly attached nodes.

Core numbers ignore edge weights: what matters for keeping a genre is how
many other genres it is co-reviewed with at all, not how strongly. The
main core (maximum k) is the densest surviving subgraph and is what the
clustering stages operate on.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

from .errors import DataError
from .graphs import WeightedGraph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoreDecomposition:
    graph: WeightedGraph
    core_number: Mapping[str, int]

    @property
    def max_k(self) -> int:
        return max(self.core_number.values())

    @property
    def main_core_nodes(self) -> tuple[str, ...]:
        k = self.max_k
        return tuple(n for n in self.graph.nodes if self.core_number[n] == k)

    def core_nodes(self, k: int) -> tuple[str, ...]:
        """Nodes of the k-core: everything with core number >= k."""
        return tuple(n for n in self.graph.nodes if self.core_number[n] >= k)

    def removed_by_main_core(self) -> tuple[tuple[str, int], ...]:
        """(node, core_number) pairs pruned when taking the main core."""
        k = self.max_k
        return tuple(
            (n, self.core_number[n]) for n in self.graph.nodes if self.core_number[n] < k
        )


def core_decompose(graph: WeightedGraph) -> CoreDecomposition:
    """Compute every node's core number by iterative minimum-degree peeling."""
    if graph.num_nodes == 0:
        raise DataError("cannot core-decompose an empty graph")

    degree = {n: graph.degree(n) for n in graph.nodes}
    # bucket queue over degrees; peel the minimum repeatedly
    core: dict[str, int] = {}
    remaining = set(graph.nodes)
    buckets: dict[int, set[str]] = {}
    for n, d in degree.items():
        buckets.setdefault(d, set()).add(n)

    current_k = 0
    while remaining:
        d = min(b for b in buckets if buckets[b])
        current_k = max(current_k, d)
        # deterministic peel order within a bucket
        node = min(buckets[d])
        buckets[d].remove(node)
        remaining.remove(node)
        core[node] = current_k
        for nb in graph.neighbors(node):
            if nb in remaining:
                old = degree[nb]
                buckets[old].remove(nb)
                degree[nb] = old - 1
                buckets.setdefault(old - 1, set()).add(nb)

    decomposition = CoreDecomposition(graph, {n: core[n] for n in graph.nodes})
    log.info(
        "core decomposition: max core %d, %d nodes in main core",
        decomposition.max_k, len(decomposition.main_core_nodes),
    )
    return decomposition


def main_core(graph: WeightedGraph) -> WeightedGraph:
    """Subgraph induced by the maximum-k core, original weights retained."""
    decomposition = core_decompose(graph)
    pruned = graph.subgraph(decomposition.main_core_nodes)
    for node, k in decomposition.removed_by_main_core():
        log.info("main core drops %s (core number %d)", node, k)
    log.info(
        "main core (k=%d): kept %d of %d nodes",
        decomposition.max_k, pruned.num_nodes, graph.num_nodes,
    )
    return pruned

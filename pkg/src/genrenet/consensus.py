"""Ensemble community detection driven to a stable co-assignment fixpoint.

One round runs the seeded detector R times on the current graph and
replaces every edge weight with the number of runs that put its endpoints
in the same community (pairs never co-assigned disappear). When every
surviving component is a complete clique — equivalently, when the edge
count reaches the theoretical maximum for the component sizes — further
rounds cannot change anything and the components are the final
communities. On top of that sits a recursive splitter that re-runs the
ensemble inside oversized clusters, keeping a split only when it improves
the mean intra-cluster weight measured on the original user-count graph.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .community import Partition, louvain
from .errors import ConvergenceError, DataError
from .graphs import COASSIGNMENT_COUNT, WeightedGraph

log = logging.getLogger(__name__)


def epsilon_max(component_sizes: Sequence[int]) -> int:
    """Maximum possible edge count given component sizes: sum of N(N-1)/2."""
    total = 0
    for size in component_sizes:
        if size < 1:
            raise DataError(f"component size {size} is not positive")
        total += size * (size - 1) // 2
    return total


@dataclass(frozen=True)
class ConsensusState:
    """Snapshot after a round: the working graph plus its summary statistics."""

    round: int
    graph: WeightedGraph
    num_runs: int
    num_components: int
    num_edges: int
    epsilon_max: int

    @property
    def converged(self) -> bool:
        # every component is a clique exactly when no possible edge is missing
        return self.num_edges == self.epsilon_max

    @classmethod
    def from_graph(cls, graph: WeightedGraph, round: int, num_runs: int) -> "ConsensusState":
        components = graph.connected_components()
        return cls(
            round=round,
            graph=graph,
            num_runs=num_runs,
            num_components=len(components),
            num_edges=graph.num_edges,
            epsilon_max=epsilon_max([len(c) for c in components]),
        )


def consensus_round(state: ConsensusState, base_seed: int) -> ConsensusState:
    """One ensemble round: R detector runs, reduced to co-assignment counts.

    Uses seeds base_seed .. base_seed + R - 1. The result keeps the same
    node set; an edge (a, b) carries the number of runs assigning a and b
    together, and pairs with count zero are absent.
    """
    graph = state.graph
    if graph.num_nodes == 0:
        raise DataError("consensus round on an empty graph")
    runs = state.num_runs
    counts: dict[tuple[str, str], int] = {}
    for j in range(runs):
        partition = louvain(graph, base_seed + j)
        for members in partition.communities():
            for i, a in enumerate(members):
                for b in members[i + 1:]:
                    counts[(a, b)] = counts.get((a, b), 0) + 1
    new_graph = WeightedGraph(graph.nodes, counts, semantics=COASSIGNMENT_COUNT)
    new_state = ConsensusState.from_graph(new_graph, state.round + 1, runs)
    log.info(
        "consensus round %d: %d components, %d edges, epsilon_max %d%s",
        new_state.round, new_state.num_components, new_state.num_edges,
        new_state.epsilon_max, " (converged)" if new_state.converged else "",
    )
    return new_state


def run_to_convergence(
    graph: WeightedGraph,
    runs: int,
    base_seed: int,
    max_rounds: int = 50,
) -> tuple[Partition, tuple[ConsensusState, ...]]:
    """Iterate rounds until every component is a clique; components become communities.

    At least one round always executes — the input graph may consist of
    cliques by coincidence, which says nothing about co-assignment
    stability. Round r draws its seeds from base_seed + (r-1)*runs so no
    two rounds share a seed. Exceeding max_rounds raises, with the trace
    attached for diagnosis.
    """
    if runs < 1:
        raise DataError(f"runs must be >= 1, got {runs}")
    if max_rounds < 1:
        raise DataError(f"max_rounds must be >= 1, got {max_rounds}")
    state = ConsensusState.from_graph(graph, round=0, num_runs=runs)
    trace = [state]
    while state.round == 0 or not state.converged:
        if state.round >= max_rounds:
            raise ConvergenceError(
                f"no convergence after {max_rounds} rounds "
                f"({state.num_edges} edges vs epsilon_max {state.epsilon_max})",
                trace=tuple(trace),
            )
        state = consensus_round(state, base_seed + state.round * runs)
        trace.append(state)

    communities = state.graph.connected_components()
    partition = Partition.from_communities(communities)
    log.info(
        "converged after %d rounds into %d communities (sizes %s)",
        state.round, len(communities), sorted((len(c) for c in communities), reverse=True),
    )
    return partition, tuple(trace)


# -- hierarchical splitting --------------------------------------------------


@dataclass(frozen=True)
class ClusterTree:
    """A cluster and its recursive sub-clusters.

    Labels encode the path: the root is "root", its clusters are "1",
    "2", ..., and a sub-cluster of "2" is "2.1". avg_intra_weight is the
    mean weight of the member-induced edges on the original user-count
    graph (0 when no such edge exists).
    """

    label: str
    genres: tuple[str, ...]
    avg_intra_weight: float
    children: tuple["ClusterTree", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def size(self) -> int:
        return len(self.genres)

    def leaves(self) -> tuple["ClusterTree", ...]:
        if self.is_leaf:
            return (self,)
        return tuple(leaf for child in self.children for leaf in child.leaves())

    def find(self, label: str) -> "ClusterTree | None":
        if self.label == label:
            return self
        for child in self.children:
            found = child.find(label)
            if found is not None:
                return found
        return None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "genres": list(self.genres),
            "avg_intra_weight": round(self.avg_intra_weight, 6),
            "children": [child.to_dict() for child in self.children],
        }


@dataclass(frozen=True)
class SplitPolicy:
    """Knobs for the recursive splitter.

    A cluster is only re-examined when it has more than max_size members
    and lies above max_depth layers; an attempted split is kept only when
    the pooled mean intra-cluster weight of the children beats the
    parent's own mean.
    """

    max_size: int = 16
    max_depth: int = 3
    runs: int = 100
    base_seed: int = 0
    max_rounds: int = 50

    def __post_init__(self):
        if self.max_size < 1 or self.max_depth < 1 or self.runs < 1 or self.max_rounds < 1:
            raise DataError(f"invalid split policy {self}")


def _intra_stats(graph: WeightedGraph, members: Iterable[str]) -> tuple[float, int]:
    """(total weight, edge count) of the subgraph induced by members."""
    sub = graph.subgraph(members)
    return float(sub.total_weight), sub.num_edges


def average_intra_weight(graph: WeightedGraph, members: Iterable[str]) -> float:
    total, count = _intra_stats(graph, members)
    return total / count if count else 0.0


def _ordered_groups(partition: Partition) -> list[tuple[str, ...]]:
    # biggest first; first member breaks size ties
    return sorted(partition.communities(), key=lambda g: (-len(g), g[0]))


def split_cluster(
    original: WeightedGraph,
    members: Iterable[str],
    runs: int,
    base_seed: int,
    max_rounds: int = 50,
) -> tuple[ClusterTree, ...]:
    """Re-cluster one cluster on the original user-count weights.

    Returns prospective children (labeled "1", "2", ... for the caller to
    re-prefix), or an empty tuple when the cluster cannot or need not
    split: fewer than two members, no internal edges, or the ensemble
    returning everything as a single community.
    """
    member_tuple = tuple(sorted(set(members)))
    if len(member_tuple) < 2:
        return ()
    sub = original.subgraph(member_tuple)
    if sub.num_edges == 0:
        return ()
    partition, _ = run_to_convergence(sub, runs, base_seed, max_rounds)
    groups = _ordered_groups(partition)
    if len(groups) < 2:
        return ()
    return tuple(
        ClusterTree(str(i), group, average_intra_weight(original, group))
        for i, group in enumerate(groups, start=1)
    )


@dataclass(frozen=True)
class HierarchicalResult:
    tree: ClusterTree
    root_trace: tuple[ConsensusState, ...]


def hierarchical_pipeline(graph: WeightedGraph, policy: SplitPolicy) -> HierarchicalResult:
    """Root ensemble run plus recursive splitting under the policy.

    Every ensemble invocation (root first, then split attempts in
    depth-first label order) consumes its own block of runs*max_rounds
    seeds from policy.base_seed, so the whole tree is a pure function of
    (graph, policy) — including rolled-back splits, which still consume
    their block.
    """
    cursor = itertools.count()
    stride = policy.runs * policy.max_rounds

    def next_base() -> int:
        return policy.base_seed + next(cursor) * stride

    def grow(node: ClusterTree, depth: int) -> ClusterTree:
        if node.size <= policy.max_size or depth >= policy.max_depth:
            return node
        children = split_cluster(
            graph, node.genres, policy.runs, next_base(), policy.max_rounds
        )
        if len(children) < 2:
            return node
        pooled_total = 0.0
        pooled_count = 0
        for child in children:
            total, count = _intra_stats(graph, child.genres)
            pooled_total += total
            pooled_count += count
        pooled_mean = pooled_total / pooled_count if pooled_count else 0.0
        if pooled_mean <= node.avg_intra_weight:
            log.info(
                "split of %s rolled back (children mean %.4f <= parent %.4f)",
                node.label, pooled_mean, node.avg_intra_weight,
            )
            return node
        relabeled = tuple(
            dataclasses.replace(child, label=f"{node.label}.{i}")
            for i, child in enumerate(children, start=1)
        )
        log.info(
            "split %s (%d genres) into %s",
            node.label, node.size, [c.size for c in relabeled],
        )
        return dataclasses.replace(
            node, children=tuple(grow(child, depth + 1) for child in relabeled)
        )

    root_partition, root_trace = run_to_convergence(
        graph, policy.runs, next_base(), policy.max_rounds
    )
    top_groups = _ordered_groups(root_partition)
    top = tuple(
        grow(ClusterTree(str(i), group, average_intra_weight(graph, group)), depth=1)
        for i, group in enumerate(top_groups, start=1)
    )
    root = ClusterTree(
        label="root",
        genres=graph.nodes,
        avg_intra_weight=average_intra_weight(graph, graph.nodes),
        children=top,
    )
    log.info("cluster tree: %d leaves (sizes %s)", len(root.leaves()),
             sorted((leaf.size for leaf in root.leaves()), reverse=True))
    return HierarchicalResult(tree=root, root_trace=root_trace)

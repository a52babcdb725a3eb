"""Weighted undirected graph with canonical, deterministic ordering.

All pipeline stages share this one structure. Instances are value-like:
construction canonicalizes node and edge order, so two graphs built from
the same content behave identically regardless of input order (this is
what makes seeded runs reproducible down to float summation order).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from typing import Any

from .errors import DataError

Node = Any  # genre names (str) or aggregated community ids (int)

USER_COUNT = "user_count"
COASSIGNMENT_COUNT = "coassignment_count"


def canonical_edge(a: Node, b: Node) -> tuple[Node, Node]:
    return (a, b) if a <= b else (b, a)


class WeightedGraph:
    """Immutable undirected graph; no self-loops, strictly positive weights.

    `semantics` tags what edge weights mean: distinct-user counts for the
    projected genre network, or co-assignment counts after a consensus
    round.
    """

    __slots__ = ("_nodes", "_edges", "_adj", "semantics")

    def __init__(
        self,
        nodes: Iterable[Node] = (),
        edges: Mapping[tuple[Node, Node], float] | Iterable[tuple[Node, Node, float]] = (),
        semantics: str = USER_COUNT,
    ):
        node_set = set(nodes)
        if isinstance(edges, Mapping):
            edge_items = [(a, b, w) for (a, b), w in edges.items()]
        else:
            edge_items = list(edges)

        canon: dict[tuple[Node, Node], float] = {}
        for a, b, w in edge_items:
            if a == b:
                raise DataError(f"self-loop on node {a!r} is not allowed")
            if not w > 0:
                raise DataError(f"edge ({a!r}, {b!r}) has non-positive weight {w!r}")
            key = canonical_edge(a, b)
            if key in canon and canon[key] != w:
                raise DataError(f"conflicting weights for edge {key!r}")
            canon[key] = w
            node_set.add(a)
            node_set.add(b)

        self._nodes: tuple[Node, ...] = tuple(sorted(node_set))
        self._edges: dict[tuple[Node, Node], float] = {k: canon[k] for k in sorted(canon)}
        adj: dict[Node, dict[Node, float]] = {n: {} for n in self._nodes}
        for (a, b), w in self._edges.items():
            adj[a][b] = w
            adj[b][a] = w
        # rebuild each adjacency dict in sorted neighbor order
        self._adj = {n: {m: nbrs[m] for m in sorted(nbrs)} for n, nbrs in adj.items()}
        self.semantics = semantics

    # -- basic accessors ---------------------------------------------------

    @property
    def nodes(self) -> tuple[Node, ...]:
        return self._nodes

    @property
    def num_nodes(self) -> int:
        return len(self._nodes)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def edges(self) -> Iterable[tuple[Node, Node, float]]:
        for (a, b), w in self._edges.items():
            yield a, b, w

    def has_node(self, n: Node) -> bool:
        return n in self._adj

    def has_edge(self, a: Node, b: Node) -> bool:
        return canonical_edge(a, b) in self._edges

    def weight(self, a: Node, b: Node) -> float:
        return self._edges[canonical_edge(a, b)]

    def neighbors(self, n: Node) -> Iterable[Node]:
        return self._adj[n].keys()

    def degree(self, n: Node) -> int:
        """Number of incident edges (weights ignored)."""
        return len(self._adj[n])

    def strength(self, n: Node) -> float:
        """Sum of incident edge weights."""
        return sum(self._adj[n].values())

    @property
    def total_weight(self) -> float:
        return sum(self._edges.values())

    def adjacency(self, n: Node) -> Mapping[Node, float]:
        return self._adj[n]

    # -- derived graphs ----------------------------------------------------

    def subgraph(self, members: Iterable[Node]) -> "WeightedGraph":
        """Induced subgraph on `members`, keeping original weights."""
        keep = set(members)
        missing = keep - set(self._nodes)
        if missing:
            raise DataError(f"subgraph members not in graph: {sorted(missing)!r}")
        sub_edges = {
            (a, b): w for (a, b), w in self._edges.items() if a in keep and b in keep
        }
        return WeightedGraph(keep, sub_edges, semantics=self.semantics)

    def connected_components(self) -> list[list[Node]]:
        """Components as sorted node lists, ordered by their smallest node."""
        seen: set[Node] = set()
        components: list[list[Node]] = []
        for start in self._nodes:
            if start in seen:
                continue
            stack = [start]
            seen.add(start)
            comp = []
            while stack:
                n = stack.pop()
                comp.append(n)
                for m in self._adj[n]:
                    if m not in seen:
                        seen.add(m)
                        stack.append(m)
            components.append(sorted(comp))
        return components

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self._nodes == other._nodes
            and self._edges == other._edges
            and self.semantics == other.semantics
        )

    def __hash__(self):
        return hash((self._nodes, tuple(self._edges.items()), self.semantics))

    def __repr__(self):
        return (
            f"WeightedGraph({self.num_nodes} nodes, {self.num_edges} edges, "
            f"semantics={self.semantics!r})"
        )

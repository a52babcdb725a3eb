"""Diagnostic figures rendered alongside the delimited artifacts.

These are run-inspection aids (score distribution, reviewer breadth,
convergence behaviour, cluster sizes), not network drawings: the exported
GraphML is the input for any layout tool. All rendering targets files via
the Agg backend; nothing opens a window.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bipartite import BipartiteGraph
from .consensus import ClusterTree, ConsensusState
from .ingest import Corpus

log = logging.getLogger(__name__)

_DPI = 150


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    log.info("wrote figure %s", path)
    return path


def score_histogram(corpus: Corpus, path: str | Path, threshold: int = 75) -> Path:
    scores = [r.score for r in corpus.reviews]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.hist(scores, bins=range(0, 102, 2), color="#4878a8", edgecolor="white")
    ax.axvline(threshold, color="#c44e52", linestyle="--", label=f"threshold {threshold}")
    ax.set_xlabel("review score")
    ax.set_ylabel("reviews")
    ax.set_title("Review score distribution")
    ax.legend()
    return _save(fig, path)


def user_degree_plot(graph: BipartiteGraph, path: str | Path, outliers: int = 2) -> Path:
    """Reviewer breadth in rank order; the to-be-removed top users highlighted."""
    degrees = sorted((graph.degree(u) for u in graph.user_genres), reverse=True)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(range(1, len(degrees) + 1), degrees, marker=".", linestyle="-", color="#4878a8")
    if 0 < outliers < len(degrees):
        ax.plot(range(1, outliers + 1), degrees[:outliers], marker="o",
                linestyle="", color="#c44e52", label=f"top {outliers} removed")
        ax.legend()
    ax.set_xlabel("user rank")
    ax.set_ylabel("distinct genres reviewed")
    ax.set_title("Genres per user")
    return _save(fig, path)


def convergence_plot(trace: Iterable[ConsensusState], path: str | Path) -> Path:
    states = list(trace)
    rounds = [s.round for s in states]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(rounds, [s.num_edges for s in states], marker="o", label="edges")
    ax.plot(rounds, [s.epsilon_max for s in states], marker="s", label="epsilon_max")
    ax.set_xlabel("round")
    ax.set_ylabel("count")
    ax.set_xticks(rounds)
    ax.set_title("Co-assignment convergence")
    ax.legend()
    return _save(fig, path)


def leaf_sizes_plot(tree: ClusterTree, path: str | Path) -> Path:
    leaves = tree.leaves()
    labels = [leaf.label for leaf in leaves]
    sizes = [leaf.size for leaf in leaves]
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(leaves)), 4))
    ax.bar(range(len(leaves)), sizes, color="#4878a8")
    ax.set_xticks(range(len(leaves)))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_xlabel("cluster")
    ax.set_ylabel("genres")
    ax.set_title("Leaf cluster sizes")
    return _save(fig, path)

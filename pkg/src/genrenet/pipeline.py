"""End-to-end orchestration: stages, artifacts, and the run manifest.

Stages run strictly in order, each timed and recorded. A stage failure
stops the run but keeps every artifact already written; the manifest then
marks which stage failed and why, so a partial output directory is always
interpretable. All delimited/JSON artifacts are byte-deterministic for a
fixed config; wall-clock facts live only in the manifest.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import bipartite, figures, kcore, report, textfeat
from .config import PipelineConfig
from .conllu import read_documents
from .consensus import SplitPolicy, hierarchical_pipeline
from .errors import GenrenetError
from .ingest import join_corpus, load_albums, load_reviews

log = logging.getLogger(__name__)

MANIFEST_VERSION = 1

# stage order is fixed; verbs pick a prefix/subset
STAGE_ORDER = (
    "ingest",
    "filter",
    "bipartite",
    "project",
    "core",
    "cluster",
    "features",
    "export",
    "stats",
    "figures",
)

VERB_STAGES = {
    "run": set(STAGE_ORDER),
    "project": {"ingest", "filter", "bipartite", "project", "core"},
    "cluster": {"ingest", "filter", "bipartite", "project", "core", "cluster"},
    "features": {"ingest", "filter", "bipartite", "project", "core", "cluster", "features"},
    "export": {"ingest", "filter", "bipartite", "project", "core", "cluster", "export"},
    "stats": {"ingest", "stats"},
}


@dataclass
class RunContext:
    config: PipelineConfig
    out_dir: Path
    artifacts: list[str] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    corpus = None
    positive = None
    usergraph = None
    projection = None
    core_graph = None
    tree = None
    trace = None
    scored = None
    top = None

    def emit(self, path: Path) -> None:
        self.artifacts.append(str(path.relative_to(self.out_dir)))


@dataclass(frozen=True)
class RunResult:
    exit_code: int
    out_dir: Path
    manifest: dict


def _parser_comment(path: str) -> str | None:
    """Provenance comment ("# parser = ...") from the head of a parses file."""
    try:
        with open(path, encoding="utf-8") as fh:
            for _ in range(50):
                line = fh.readline()
                if not line:
                    break
                if line.startswith("# parser ="):
                    return line.partition("=")[2].strip()
                if line.strip() and not line.startswith("#"):
                    break
    except OSError:
        return None
    return None


def _stage_ingest(ctx: RunContext) -> None:
    cfg = ctx.config
    reviews = load_reviews(cfg.reviews_path, format=cfg.reviews_format)
    albums = load_albums(cfg.albums_path)
    ctx.corpus = join_corpus(reviews, albums)
    summary = ctx.corpus.summary()
    ctx.counts["corpus"] = {
        "reviews": summary.reviews,
        "users": summary.users,
        "albums": summary.albums,
        "genres": summary.genres,
        "orphans": summary.orphans,
        "rejected_review_rows": len(reviews.errors),
        "rejected_album_rows": len(albums.errors),
    }


def _stage_filter(ctx: RunContext) -> None:
    ctx.positive = bipartite.filter_positive(ctx.corpus, ctx.config.score_threshold)
    ctx.counts["positive_reviews"] = len(ctx.positive.reviews)


def _stage_bipartite(ctx: RunContext) -> None:
    graph = bipartite.build_bipartite(ctx.positive)
    ctx.counts["bipartite"] = {
        "users": len(graph.user_genres),
        "genres": len(graph.genre_users),
        "edges": graph.num_edges,
    }
    ranked = sorted(graph.user_genres, key=lambda u: (-graph.degree(u), u))
    removed = ranked[: ctx.config.outlier_user_count]
    ctx.usergraph = bipartite.remove_outlier_users(graph, ctx.config.outlier_user_count)
    ctx.counts["outliers_removed"] = [
        {"user_id": u, "genres": graph.degree(u)} for u in removed
    ]
    if ctx.config.figures:
        ctx.emit(figures.user_degree_plot(
            graph, ctx.out_dir / "figures" / "user_degrees.png",
            outliers=ctx.config.outlier_user_count,
        ))


def _stage_project(ctx: RunContext) -> None:
    ctx.projection = bipartite.project(ctx.usergraph)
    ctx.counts["projection"] = {
        "genres": ctx.projection.num_nodes,
        "edges": ctx.projection.num_edges,
    }
    ctx.emit(report.write_edgelist_csv(ctx.projection, ctx.out_dir / "edgelist.csv"))


def _stage_core(ctx: RunContext) -> None:
    decomposition = kcore.core_decompose(ctx.projection)
    ctx.core_graph = ctx.projection.subgraph(decomposition.main_core_nodes)
    ctx.counts["core"] = {
        "max_k": decomposition.max_k,
        "genres": ctx.core_graph.num_nodes,
        "removed": len(decomposition.removed_by_main_core()),
    }
    ctx.emit(report.write_core_report_csv(
        decomposition.removed_by_main_core(), ctx.out_dir / "core_removed.csv"
    ))


def _stage_cluster(ctx: RunContext) -> None:
    cfg = ctx.config
    policy = SplitPolicy(
        max_size=cfg.max_size,
        max_depth=cfg.max_depth,
        runs=cfg.runs,
        base_seed=cfg.base_seed,
        max_rounds=cfg.max_rounds,
    )
    result = hierarchical_pipeline(ctx.core_graph, policy)
    ctx.tree = result.tree
    ctx.trace = result.root_trace
    leaves = ctx.tree.leaves()
    ctx.counts["clusters"] = {
        "leaves": len(leaves),
        "sizes": sorted((leaf.size for leaf in leaves), reverse=True),
        "rounds": ctx.trace[-1].round,
    }
    ctx.emit(report.write_clusters_json(ctx.tree, ctx.out_dir / "clusters.json"))
    ctx.emit(report.write_trace_csv(ctx.trace, ctx.out_dir / "trace.csv"))
    assignment = {
        genre: index for index, leaf in enumerate(leaves) for genre in leaf.genres
    }
    ctx.emit(report.write_partition_csv(assignment, ctx.out_dir / "partition.csv"))
    if cfg.figures:
        ctx.emit(figures.convergence_plot(ctx.trace, ctx.out_dir / "figures" / "convergence.png"))
        ctx.emit(figures.leaf_sizes_plot(ctx.tree, ctx.out_dir / "figures" / "leaf_sizes.png"))


def _stage_features(ctx: RunContext) -> None:
    cfg = ctx.config
    documents = read_documents(cfg.parses_path)
    parser = _parser_comment(cfg.parses_path)
    if parser:
        ctx.counts["parser"] = parser
    # the parses file covers every review with text; features describe the
    # positively reviewed albums only, matching the network construction
    positive_keys = {(r.user_id, r.album_id) for r in ctx.positive.reviews}
    kept = tuple(d for d in documents if (d.user_id, d.album_id) in positive_keys)
    leaves = ctx.tree.leaves()
    collected = textfeat.collect_cluster_features(kept, ctx.positive, leaves)
    ctx.scored = textfeat.modified_tfidf(collected.per_cluster)
    ctx.top = {
        label: textfeat.top_features(scores, cfg.top_n_features)
        for label, scores in ctx.scored.items()
    }
    ctx.counts["features"] = {
        "documents": len(documents),
        "documents_used": len(kept),
        "out_of_scope_reviews": collected.skipped,
        "per_cluster": {label: len(scores) for label, scores in sorted(ctx.scored.items())},
    }
    for label in sorted(ctx.top):
        path = ctx.out_dir / f"features_{report.safe_label(label)}.csv"
        ctx.emit(report.write_features_csv(ctx.top[label], path))
    if cfg.judgments_path:
        per_cluster, overall = textfeat.evaluate_accuracy(cfg.judgments_path, ctx.top)
        ctx.emit(report.write_accuracy_csv(per_cluster, overall, ctx.out_dir / "accuracy.csv"))
        ctx.counts["accuracy"] = {
            "overall": {"n_correct": overall.n_correct, "n_total": overall.n_total,
                        "accuracy": overall.accuracy},
        }


def _stage_export(ctx: RunContext) -> None:
    leaves = ctx.tree.leaves()
    if ctx.config.export_full:
        ctx.emit(report.export_network(
            ctx.core_graph, leaves, "full", ctx.out_dir / "network_full.graphml"
        ))
    if ctx.config.export_top3:
        ctx.emit(report.export_network(
            ctx.core_graph, leaves, "top3_out_edges", ctx.out_dir / "network_top3.graphml"
        ))


def _stage_stats(ctx: RunContext) -> None:
    cfg = ctx.config
    rows = report.genre_stats(ctx.corpus, threshold=cfg.score_threshold)
    ctx.emit(report.write_genre_stats_csv(rows, ctx.out_dir / "genre_stats.csv"))
    if ctx.tree is not None:
        for leaf in ctx.tree.leaves():
            table = report.country_table(ctx.corpus, leaf.genres, threshold=cfg.score_threshold)
            path = ctx.out_dir / f"country_{report.safe_label(leaf.label)}.csv"
            ctx.emit(report.write_country_csv(table, path))


def _stage_figures(ctx: RunContext) -> None:
    ctx.emit(figures.score_histogram(
        ctx.corpus, ctx.out_dir / "figures" / "scores.png",
        threshold=ctx.config.score_threshold,
    ))


_STAGE_FUNCS = {
    "ingest": _stage_ingest,
    "filter": _stage_filter,
    "bipartite": _stage_bipartite,
    "project": _stage_project,
    "core": _stage_core,
    "cluster": _stage_cluster,
    "features": _stage_features,
    "export": _stage_export,
    "stats": _stage_stats,
    "figures": _stage_figures,
}


def _stage_enabled(name: str, config: PipelineConfig, selected: set[str]) -> tuple[bool, str]:
    if name not in selected:
        return False, "not requested"
    if name == "features" and not config.parses_path:
        return False, "no parses_path configured"
    if name == "export" and not (config.export_full or config.export_top3):
        return False, "exports disabled"
    if name == "figures" and not config.figures:
        return False, "figures disabled"
    return True, ""


def run_pipeline(config: PipelineConfig, verb: str = "run") -> RunResult:
    """Execute the selected stages and write the manifest; never raises for stage errors."""
    if verb not in VERB_STAGES:
        raise GenrenetError(f"unknown verb {verb!r}")
    selected = VERB_STAGES[verb]
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ctx = RunContext(config=config, out_dir=out_dir)
    stages: list[dict] = []
    failed = False

    for name in STAGE_ORDER:
        enabled, reason = _stage_enabled(name, config, selected)
        if failed or not enabled:
            stages.append({"name": name, "status": "skipped",
                           "reason": "earlier stage failed" if failed else reason})
            continue
        started = time.perf_counter()
        try:
            _STAGE_FUNCS[name](ctx)
        except Exception as exc:
            log.error("stage %s failed: %s", name, exc)
            stages.append({
                "name": name,
                "status": "failed",
                "seconds": round(time.perf_counter() - started, 3),
                "error": str(exc),
            })
            failed = True
            continue
        stages.append({
            "name": name,
            "status": "ok",
            "seconds": round(time.perf_counter() - started, 3),
        })

    manifest = {
        "version": MANIFEST_VERSION,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "verb": verb,
        "seed": config.base_seed,
        "config": config.as_dict(),
        "config_hash": config.content_hash(),
        "status": "failed" if failed else "ok",
        "stages": stages,
        "artifacts": ctx.artifacts,
        "counts": ctx.counts,
    }
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    log.info("run %s: %s (%d artifacts) -> %s",
             verb, manifest["status"], len(ctx.artifacts), manifest_path)
    return RunResult(exit_code=1 if failed else 0, out_dir=out_dir, manifest=manifest)

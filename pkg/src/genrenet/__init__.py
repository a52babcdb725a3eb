"""Common-interest communities of music genres from user review data.

The pipeline: load reviews and albums, keep positive reviews, build the
user-genre bipartite graph, drop outlier reviewers, project onto genres
with distinct-user edge weights, prune to the main k-core, cluster by
repeated seeded modularity maximization driven to a co-assignment
fixpoint (with recursive splitting of oversized clusters), and finally
rank each cluster's adjective-noun review features by a modified tf-idf
that penalizes adjectives common to all clusters.
"""

from .bipartite import BipartiteGraph, build_bipartite, filter_positive, project, remove_outlier_users
from .community import Partition, louvain, louvain_trace, modularity
from .config import PipelineConfig, load_config, save_config
from .conllu import ParsedDocument, Sentence, Token, read_documents, read_sentences
from .consensus import (
    ClusterTree,
    ConsensusState,
    HierarchicalResult,
    SplitPolicy,
    consensus_round,
    epsilon_max,
    hierarchical_pipeline,
    run_to_convergence,
    split_cluster,
)
from .errors import ConfigError, ConvergenceError, DataError, GenrenetError
from .graphs import COASSIGNMENT_COUNT, USER_COUNT, WeightedGraph
from .ingest import (
    AlbumRecord,
    Corpus,
    ReviewRecord,
    join_corpus,
    load_albums,
    load_reviews,
    normalize_genre,
    save_albums_csv,
    save_reviews_jsonl,
)
from .kcore import CoreDecomposition, core_decompose, main_core
from .pipeline import RunResult, run_pipeline
from .report import country_table, export_network, genre_stats
from .textfeat import (
    AccuracyReport,
    Feature,
    FeatureScore,
    collect_cluster_features,
    evaluate_accuracy,
    match_patterns,
    modified_tfidf,
    top_features,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyReport",
    "AlbumRecord",
    "BipartiteGraph",
    "COASSIGNMENT_COUNT",
    "ClusterTree",
    "ConfigError",
    "ConsensusState",
    "ConvergenceError",
    "CoreDecomposition",
    "Corpus",
    "DataError",
    "Feature",
    "FeatureScore",
    "GenrenetError",
    "HierarchicalResult",
    "ParsedDocument",
    "Partition",
    "PipelineConfig",
    "ReviewRecord",
    "RunResult",
    "Sentence",
    "SplitPolicy",
    "Token",
    "USER_COUNT",
    "WeightedGraph",
    "build_bipartite",
    "collect_cluster_features",
    "consensus_round",
    "core_decompose",
    "country_table",
    "epsilon_max",
    "evaluate_accuracy",
    "export_network",
    "filter_positive",
    "genre_stats",
    "hierarchical_pipeline",
    "join_corpus",
    "load_albums",
    "load_config",
    "load_reviews",
    "louvain",
    "louvain_trace",
    "main_core",
    "match_patterns",
    "modified_tfidf",
    "modularity",
    "normalize_genre",
    "project",
    "read_documents",
    "read_sentences",
    "remove_outlier_users",
    "run_pipeline",
    "run_to_convergence",
    "save_albums_csv",
    "save_config",
    "save_reviews_jsonl",
    "split_cluster",
    "top_features",
]

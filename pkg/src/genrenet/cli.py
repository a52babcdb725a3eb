"""Command-line entry point.

Verbs select how far the pipeline runs; flags override config-file values
only when given explicitly, so a config file remains the single source of
truth for unattended runs.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import PipelineConfig, load_config
from .errors import GenrenetError
from .pipeline import VERB_STAGES, run_pipeline

log = logging.getLogger(__name__)

VERB_HELP = {
    "run": "full pipeline: ingest through clustering, features, exports, stats",
    "project": "stop after projection and main-core pruning (edge list, core report)",
    "cluster": "stop after consensus clustering (clusters.json, trace.csv)",
    "features": "cluster, then score adjective-noun features per cluster",
    "export": "cluster, then write GraphML network exports",
    "stats": "ingest only, write per-genre review statistics",
}

# (flag, config field, help)
_OVERRIDES = [
    ("--reviews", "reviews_path", "reviews file (jsonl or csv)"),
    ("--albums", "albums_path", "albums CSV"),
    ("--parses", "parses_path", "CoNLL-U parses for the text stage"),
    ("--judgments", "judgments_path", "judgment CSV for accuracy evaluation"),
    ("--out-dir", "out_dir", "artifact directory (default: out)"),
    ("--format", "reviews_format", "reviews file format: jsonl or csv"),
]

_INT_OVERRIDES = [
    ("--seed", "base_seed", "base random seed (default: 0)"),
    ("--threshold", "score_threshold", "positive-review score cutoff (default: 75)"),
    ("--runs", "runs", "detector runs per consensus round (default: 100)"),
    ("--max-depth", "max_depth", "maximum split depth (default: 3)"),
    ("--max-size", "max_size", "cluster size above which a split is attempted (default: 16)"),
    ("--max-rounds", "max_rounds", "consensus round limit (default: 50)"),
    ("--outliers", "outlier_user_count", "broadest users to drop (default: 2)"),
    ("--top-n", "top_n_features", "features kept per cluster (default: 50)"),
]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genrenet",
        description="Discover common-interest communities of music genres from review data.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(dest="verb", required=True, metavar="verb")
    for verb in VERB_STAGES:
        sub = subparsers.add_parser(verb, help=VERB_HELP[verb])
        sub.add_argument("--config", help="config file (flat key = value)")
        for flag, dest, help_text in _OVERRIDES:
            sub.add_argument(flag, dest=dest, help=help_text)
        for flag, dest, help_text in _INT_OVERRIDES:
            sub.add_argument(flag, dest=dest, type=int, help=help_text)
        sub.add_argument("--no-figures", action="store_true", help="skip diagnostic figures")
    return parser


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    config = load_config(args.config) if args.config else PipelineConfig()
    overrides = {}
    for _, dest, _ in _OVERRIDES + _INT_OVERRIDES:
        value = getattr(args, dest, None)
        if value is not None:
            overrides[dest] = value
    if args.no_figures:
        overrides["figures"] = False
    if overrides:
        config = config.replace(**overrides)
    return config


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = config_from_args(args)
        if not config.reviews_path or not config.albums_path:
            raise GenrenetError("reviews and albums paths are required (--reviews/--albums or --config)")
        result = run_pipeline(config, verb=args.verb)
    except GenrenetError as exc:
        log.error("%s", exc)
        return 2
    failed = [s["name"] for s in result.manifest["stages"] if s["status"] == "failed"]
    if failed:
        print(f"FAILED at stage {failed[0]}; partial artifacts in {result.out_dir}")
    else:
        print(f"ok: {len(result.manifest['artifacts'])} artifacts in {result.out_dir}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

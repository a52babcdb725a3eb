"""Pipeline configuration: a flat key = value file with a version field.

Only three value shapes exist — strings, integers, booleans — so the file
round-trips losslessly: load(save(config)) == config. Unknown keys and
out-of-range values are rejected up front, not at stage time.
"""

from __future__ import annotations

import dataclasses
import hashlib
import logging
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

log = logging.getLogger(__name__)

CONFIG_VERSION = 1


@dataclass(frozen=True)
class PipelineConfig:
    reviews_path: str = ""
    albums_path: str = ""
    parses_path: str = ""      # empty disables the text stage
    judgments_path: str = ""   # optional accuracy evaluation
    out_dir: str = "out"
    reviews_format: str = "jsonl"
    score_threshold: int = 75
    outlier_user_count: int = 2
    runs: int = 100
    base_seed: int = 0
    max_rounds: int = 50
    max_size: int = 16
    max_depth: int = 3
    top_n_features: int = 50
    export_full: bool = True
    export_top3: bool = True
    figures: bool = True

    def __post_init__(self):
        if self.reviews_format not in ("jsonl", "csv"):
            raise ConfigError(f"reviews_format must be jsonl or csv, got {self.reviews_format!r}")
        ranges = {
            "score_threshold": (self.score_threshold, 0, 100),
            "outlier_user_count": (self.outlier_user_count, 0, 10**6),
            "runs": (self.runs, 1, 10**6),
            "max_rounds": (self.max_rounds, 1, 10**6),
            "max_size": (self.max_size, 1, 10**6),
            "max_depth": (self.max_depth, 1, 100),
            "top_n_features": (self.top_n_features, 1, 10**6),
        }
        for name, (value, lo, hi) in ranges.items():
            if not isinstance(value, int) or not lo <= value <= hi:
                raise ConfigError(f"{name} must be an integer in [{lo}, {hi}], got {value!r}")

    def replace(self, **overrides) -> "PipelineConfig":
        return dataclasses.replace(self, **overrides)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    def content_hash(self) -> str:
        return hashlib.sha256(dumps_config(self).encode("utf-8")).hexdigest()[:16]


_FIELDS = {f.name: f.type for f in dataclasses.fields(PipelineConfig)}


def dumps_config(config: PipelineConfig) -> str:
    lines = [f"version = {CONFIG_VERSION}"]
    for name in _FIELDS:
        value = getattr(config, name)
        if isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{name} = {value}")
    return "\n".join(lines) + "\n"


def save_config(config: PipelineConfig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_config(config), encoding="utf-8")
    return path


def loads_config(text: str, source: str = "<string>") -> PipelineConfig:
    values: dict[str, object] = {}
    version = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{source} line {line_no}: expected 'key = value', got {raw!r}")
        key = key.strip()
        value = value.strip()
        if key == "version":
            version = value
            continue
        if key not in _FIELDS:
            raise ConfigError(f"{source} line {line_no}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source} line {line_no}: duplicate key {key!r}")
        kind = _FIELDS[key]
        if kind == "bool" or kind is bool:
            if value not in ("true", "false"):
                raise ConfigError(f"{source} line {line_no}: {key} must be true or false")
            values[key] = value == "true"
        elif kind == "int" or kind is int:
            try:
                values[key] = int(value)
            except ValueError:
                raise ConfigError(f"{source} line {line_no}: {key} must be an integer") from None
        else:
            values[key] = value
    if version is None:
        raise ConfigError(f"{source}: missing version field")
    if version != str(CONFIG_VERSION):
        raise ConfigError(f"{source}: unsupported config version {version!r}")
    return PipelineConfig(**values)


def load_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return loads_config(text, source=str(path))

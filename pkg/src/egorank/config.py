"""Declarative pipeline configuration.

One JSON file drives a whole run; every field can be overridden by a CLI
flag of the same name. Resource paths left null fall back to the files
shipped with the package.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping

from .corpus import CONTENT_DATASETS, Platform, parse_timestamp
from .errors import ConfigError, MissingDatasetError

# Wide-open default window: ingest everything unless the config narrows it.
DEFAULT_SINCE = datetime(1970, 1, 1, tzinfo=timezone.utc)
DEFAULT_UNTIL = datetime(9999, 12, 31, tzinfo=timezone.utc)

RESOURCE_KEYS = (
    "stop_list",
    "lemma_dictionary",
    "sentiment_lexicon",
    "negators",
    "boosters",
    "spelling_dictionary",
    "embeddings",
    "labeled_seed",
)


@dataclass
class PipelineConfig:
    platform: Platform
    ego_id: str
    datasets: dict[int, Path]
    window: tuple[datetime, datetime]
    resources: dict[str, Path | None]
    bucket: str = "all"
    n_it: int = 50
    threshold: int = 5000
    normalization: str = "raw"
    allow_small: bool = False
    seed: int = 0
    out_dir: Path = Path("out")
    workers: int = 1

    def canonical_dict(self) -> dict[str, Any]:
        # Only result-affecting fields: out_dir and workers change where and
        # how fast outputs are produced, never what they contain, so they
        # stay out of the provenance hash.
        return {
            "platform": self.platform.value,
            "ego_id": self.ego_id,
            "datasets": {str(no): str(p) for no, p in sorted(self.datasets.items())},
            "window": [self.window[0].isoformat(), self.window[1].isoformat()],
            "resources": {
                key: (str(self.resources.get(key)) if self.resources.get(key) else None)
                for key in RESOURCE_KEYS
            },
            "bucket": self.bucket,
            "n_it": self.n_it,
            "threshold": self.threshold,
            "normalization": self.normalization,
            "allow_small": self.allow_small,
            "seed": self.seed,
        }

    def config_hash(self) -> str:
        canon = json.dumps(self.canonical_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]

    def validate(self) -> None:
        if self.n_it < 1:
            raise ConfigError(f"n_it must be >= 1, got {self.n_it}")
        if self.threshold < 1:
            raise ConfigError(f"threshold must be >= 1, got {self.threshold}")
        if self.normalization not in ("raw", "mean"):
            raise ConfigError(f"normalization must be 'raw' or 'mean', got {self.normalization!r}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.window[0] > self.window[1]:
            raise ConfigError("window since is after until")
        for no in CONTENT_DATASETS + (5,):
            path = self.datasets.get(no)
            if path is None or not Path(path).is_file():
                raise MissingDatasetError(no)
        for key, path in self.resources.items():
            if path is not None and not Path(path).is_file():
                raise ConfigError(f"resource {key!r} not found: {path}")


def _as_path(value: Any, base: Path) -> Path | None:
    if value is None or value == "":
        return None
    p = Path(value)
    return p if p.is_absolute() else base / p


def load_config(path: str | Path, overrides: Mapping[str, Any] | None = None) -> PipelineConfig:
    """Read a config file and apply CLI overrides on top.

    Relative paths inside the file resolve against the file's directory.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    base = path.parent

    try:
        platform = Platform(raw.get("platform", "Facebook"))
    except ValueError:
        raise ConfigError(f"unknown platform {raw.get('platform')!r}") from None
    datasets_raw = raw.get("datasets", {})
    datasets: dict[int, Path] = {}
    for key, value in datasets_raw.items():
        resolved = _as_path(value, base)
        if resolved is not None:
            datasets[int(key)] = resolved
    window_raw = raw.get("window") or {}
    since = parse_timestamp(window_raw["since"]) if window_raw.get("since") else DEFAULT_SINCE
    until = parse_timestamp(window_raw["until"]) if window_raw.get("until") else DEFAULT_UNTIL
    resources_raw = raw.get("resources", {})
    resources = {key: _as_path(resources_raw.get(key), base) for key in RESOURCE_KEYS}

    cfg = PipelineConfig(
        platform=platform,
        ego_id=raw.get("ego_id", "ego"),
        datasets=datasets,
        window=(since, until),
        resources=resources,
        bucket=raw.get("bucket", "all"),
        n_it=int(raw.get("n_it", 50)),
        threshold=int(raw.get("threshold", 5000)),
        normalization=raw.get("normalization", "raw"),
        allow_small=bool(raw.get("allow_small", False)),
        seed=int(raw.get("seed", 0)),
        out_dir=_as_path(raw.get("out_dir", "out"), base) or base / "out",
        workers=int(raw.get("workers", 1)),
    )
    if overrides:
        cfg = apply_overrides(cfg, overrides)
    return cfg


def apply_overrides(cfg: PipelineConfig, overrides: Mapping[str, Any]) -> PipelineConfig:
    """Apply flag values (already typed) over a loaded config."""
    updates: dict[str, Any] = {}
    simple = ("ego_id", "bucket", "n_it", "threshold", "normalization",
              "allow_small", "seed", "workers")
    for key in simple:
        if overrides.get(key) is not None:
            updates[key] = overrides[key]
    if overrides.get("platform") is not None:
        try:
            updates["platform"] = Platform(overrides["platform"])
        except ValueError:
            raise ConfigError(f"unknown platform {overrides['platform']!r}") from None
    if overrides.get("out_dir") is not None:
        updates["out_dir"] = Path(overrides["out_dir"])
    if overrides.get("since") is not None or overrides.get("until") is not None:
        since = parse_timestamp(overrides["since"]) if overrides.get("since") else cfg.window[0]
        until = parse_timestamp(overrides["until"]) if overrides.get("until") else cfg.window[1]
        updates["window"] = (since, until)
    resources = dict(cfg.resources)
    touched = False
    for key in RESOURCE_KEYS:
        if overrides.get(key) is not None:
            resources[key] = Path(overrides[key])
            touched = True
    if touched:
        updates["resources"] = resources
    return replace(cfg, **updates) if updates else cfg

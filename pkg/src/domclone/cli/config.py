"""Run configuration: defaults, config-file parsing, and validation.

Config files are flat key=value lines (with `#` comments); command-line
flags override file values. The main parameters carry the platform's
table names: similarity_threshold, min_clone_size, string_metric,
hashing_algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..fingerprint import HashScheme
from ..matcher import MatchConfig
from ..metrics import UNSUPPORTED_METRIC_NAMES, Metric


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    input_roots: list[str] = field(default_factory=list)
    extensions: list[str] = field(default_factory=lambda: [".java"])
    match: MatchConfig = field(default_factory=MatchConfig)
    keep_call_names: bool = True
    output_path: str = "clones.csv"
    output_format: str = "csv"
    seed: int = 0
    dump_descsets: Optional[str] = None
    truth_path: Optional[str] = None
    line_overlap: float = 0.7

    def validate(self) -> None:
        if not self.input_roots:
            raise ConfigError("input: at least one input root is required")
        for root in self.input_roots:
            if not Path(root).exists():
                raise ConfigError(f"input: root does not exist: {root}")
        if self.output_format not in ("csv", "jsonl"):
            raise ConfigError(f"format: unknown output format {self.output_format!r}")
        if not 0.0 < self.line_overlap <= 1.0:
            raise ConfigError("line_overlap: must lie in (0, 1]")


def metric_from_name(name: str) -> Metric:
    norm = name.strip().lower().replace("-", "_")
    if norm in UNSUPPORTED_METRIC_NAMES or norm.replace("_", "-") in UNSUPPORTED_METRIC_NAMES:
        raise ConfigError(f"string_metric: {name!r} is recognized but not supported")
    try:
        return Metric(norm)
    except ValueError:
        raise ConfigError(f"string_metric: unknown metric {name!r}") from None


def scheme_from_name(name: str) -> HashScheme:
    norm = name.strip().lower().replace("-", "_")
    aliases = {"4byte": "prime4", "4_byte": "prime4", "prime": "prime4"}
    norm = aliases.get(norm, norm)
    try:
        return HashScheme(norm)
    except ValueError:
        raise ConfigError(f"hashing_algorithm: unknown scheme {name!r}") from None


def _parse_bool(key: str, value: str) -> bool:
    norm = value.strip().lower()
    if norm in ("1", "true", "yes", "on"):
        return True
    if norm in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def _parse_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {value!r}") from None


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None


def load_config_file(path: str) -> dict[str, str]:
    settings: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"config: cannot read {path}: {err}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"config: line {lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        settings[key.strip()] = value.strip()
    return settings


def apply_settings(config: RunConfig, settings: dict[str, str]) -> None:
    for key, value in settings.items():
        if key == "similarity_threshold":
            config.match.tau = _parse_float(key, value)
        elif key == "min_clone_size":
            config.match.min_clone_lines = _parse_int(key, value)
        elif key == "string_metric":
            config.match.metric = metric_from_name(value)
        elif key == "hashing_algorithm":
            config.match.hashing = scheme_from_name(value)
        elif key == "max_set_factor":
            config.match.max_set_factor = _parse_float(key, value)
        elif key == "max_path_length_diff":
            config.match.max_path_length_diff = _parse_int(key, value)
        elif key == "copy_strategy":
            config.match.copy_strategy = _parse_bool(key, value)
        elif key == "merge_paths":
            config.match.merge_paths = _parse_bool(key, value)
        elif key == "prefilter":
            config.match.prefilter = _parse_bool(key, value)
        elif key == "threads":
            config.match.threads = _parse_int(key, value)
        elif key == "keep_call_names":
            config.keep_call_names = _parse_bool(key, value)
        elif key == "extensions":
            config.extensions = [e.strip() for e in value.split(",") if e.strip()]
        elif key == "input":
            config.input_roots = [p.strip() for p in value.split(",") if p.strip()]
        elif key == "output":
            config.output_path = value
        elif key == "format":
            config.output_format = value
        elif key == "seed":
            config.seed = _parse_int(key, value)
        elif key == "line_overlap":
            config.line_overlap = _parse_float(key, value)
        else:
            raise ConfigError(f"config: unknown key {key!r}")
    _revalidate_match(config)


def _revalidate_match(config: RunConfig) -> None:
    m = config.match
    try:
        MatchConfig(
            tau=m.tau,
            min_clone_lines=m.min_clone_lines,
            metric=m.metric,
            hashing=m.hashing,
            max_set_factor=m.max_set_factor,
            max_path_length_diff=m.max_path_length_diff,
            copy_strategy=m.copy_strategy,
            merge_paths=m.merge_paths,
            prefilter=m.prefilter,
            threads=m.threads,
        )
    except ValueError as err:
        raise ConfigError(str(err)) from None

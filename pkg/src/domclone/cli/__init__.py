"""Corpus discovery, configuration, pipeline driver, report writers, and
the recall evaluation harness."""

from .config import ConfigError, RunConfig, apply_settings, load_config_file
from .evaluate import EvalReport, GroundTruth, evaluate
from .pipeline import RunResult, RunStats, analyze_corpus, discover_files, run
from .report import ReportRow, read_report, render_report, write_report

__all__ = [
    "ConfigError",
    "EvalReport",
    "GroundTruth",
    "ReportRow",
    "RunConfig",
    "RunResult",
    "RunStats",
    "analyze_corpus",
    "apply_settings",
    "discover_files",
    "evaluate",
    "load_config_file",
    "read_report",
    "render_report",
    "run",
    "write_report",
]

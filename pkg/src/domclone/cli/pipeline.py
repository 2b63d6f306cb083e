"""End-to-end pipeline driver.

Phases: discover files -> parse (parallel, pure per file) -> serial
lowering/abstraction pass in sorted file order (the constant pool is
interned here, so pool numbering never depends on thread scheduling) ->
optional LSH vocabulary pass -> fingerprinting -> matching -> report.

Per-file parse failures become diagnostics in the sidecar log; only
configuration and I/O problems abort a run.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath
from typing import Optional

from .. import descset as descset_mod
from ..descset import DescriptionSet, extract_description_set, merge_paths
from ..fingerprint import (
    FingerprintSet,
    HashScheme,
    LshIndex,
    build_lsh_index,
    corpus_vocabulary,
    fingerprint_set,
)
from ..frontend import (
    CodeFragment,
    ConstantPool,
    Diagnostic,
    build_cfg,
    build_dominator_tree,
    parse_methods,
)
from ..matcher import ClonePair, match_corpus
from .config import RunConfig
from .report import write_report


@dataclass
class RunStats:
    files: int = 0
    methods: int = 0
    eligible: int = 0
    pairs: int = 0
    elapsed: float = 0.0


@dataclass
class RunResult:
    pairs: list[ClonePair]
    diagnostics: list[Diagnostic]
    stats: RunStats
    report_path: Optional[str] = None


@dataclass
class FragmentData:
    fragment: CodeFragment
    dset: DescriptionSet


def discover_files(roots: list[str], extensions: list[str]) -> list[tuple[str, str]]:
    """(absolute path, root-relative posix path) for every matching file,
    sorted by relative path."""
    found: list[tuple[str, str]] = []
    exts = tuple(extensions)
    for root in roots:
        root_path = Path(root)
        if root_path.is_file():
            if root_path.name.endswith(exts):
                found.append((str(root_path), root_path.name))
            continue
        for path in root_path.rglob("*"):
            if path.is_file() and path.name.endswith(exts):
                rel = PurePosixPath(path.relative_to(root_path)).as_posix()
                found.append((str(path), rel))
    found.sort(key=lambda pair: pair[1])
    return found


def _parse_file(job: tuple[str, str]):
    abs_path, rel_path = job
    try:
        text = Path(abs_path).read_text(encoding="utf-8", errors="replace")
    except OSError as err:
        return rel_path, [], [Diagnostic(rel_path, 0, f"unreadable file: {err}")]
    parsed, diagnostics = parse_methods(text, rel_path)
    return rel_path, parsed, diagnostics


def analyze_corpus(
    config: RunConfig,
) -> tuple[list[FragmentData], ConstantPool, list[Diagnostic], int]:
    """Parse all inputs and produce one merged description set per
    non-degenerate method."""
    files = discover_files(config.input_roots, config.extensions)
    threads = config.match.threads

    if threads > 1 and len(files) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parsed_files = list(pool.map(_parse_file, files))
    else:
        parsed_files = [_parse_file(job) for job in files]

    pool_ = ConstantPool()
    diagnostics: list[Diagnostic] = []
    data: list[FragmentData] = []
    method_count = 0
    for rel_path, parsed, file_diags in parsed_files:
        diagnostics.extend(file_diags)
        for fragment, body in parsed:
            method_count += 1
            cfg_graph, notes = build_cfg(body, pool_, config.keep_call_names)
            for note in notes:
                diagnostics.append(
                    Diagnostic(rel_path, fragment.start_line, note, fragment.method_name)
                )
            if not cfg_graph.nodes:
                diagnostics.append(
                    Diagnostic(
                        rel_path,
                        fragment.start_line,
                        "degenerate method: no instruction-level statements",
                        fragment.method_name,
                    )
                )
                continue
            tree = build_dominator_tree(cfg_graph)
            dset = extract_description_set(tree, fragment)
            dset = merge_paths(dset, enabled=config.match.merge_paths)
            data.append(FragmentData(fragment, dset))
    return data, pool_, diagnostics, method_count


def build_fingerprints(
    data: list[FragmentData], scheme: HashScheme, seed: int
) -> tuple[list[FingerprintSet], Optional[LshIndex]]:
    index = None
    if scheme is HashScheme.LSH:
        index = build_lsh_index(corpus_vocabulary(d.dset for d in data), seed)
    return [fingerprint_set(d.dset, scheme, index) for d in data], index


def _dump_descsets(data: list[FragmentData], out_dir: str) -> None:
    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    for d in data:
        frag = d.fragment
        stem = frag.file_path.replace("/", "__")
        name = f"{stem}_{frag.start_line}-{frag.end_line}.txt"
        (target / name).write_text(
            descset_mod.dump_description_set(d.dset), encoding="utf-8", newline="\n"
        )


def write_log(path: str, diagnostics: list[Diagnostic], stats: RunStats) -> None:
    lines = [
        f"files={stats.files} methods={stats.methods}"
        f" eligible={stats.eligible} pairs={stats.pairs}"
        f" elapsed={stats.elapsed:.3f}s"
    ]
    for d in sorted(diagnostics, key=lambda d: (d.file_path, d.line, d.message)):
        where = f"{d.file_path}:{d.line}"
        who = f" [{d.method_name}]" if d.method_name else ""
        lines.append(f"{where}{who} {d.message}")
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8", newline="\n")


def run(config: RunConfig, write_outputs: bool = True) -> RunResult:
    """Execute the full pipeline and (optionally) write report and log."""
    started = time.monotonic()
    config.validate()
    data, _pool, diagnostics, method_count = analyze_corpus(config)
    fsets, _index = build_fingerprints(data, config.match.hashing, config.seed)
    if config.dump_descsets:
        _dump_descsets(data, config.dump_descsets)
    pairs = match_corpus(fsets, config.match)
    stats = RunStats(
        files=len(discover_files(config.input_roots, config.extensions)),
        methods=method_count,
        eligible=sum(
            1
            for d in data
            if d.fragment.source_line_count >= config.match.min_clone_lines
        ),
        pairs=len(pairs),
        elapsed=time.monotonic() - started,
    )
    report_path = None
    if write_outputs:
        write_report(pairs, config.output_path, config.output_format)
        write_log(config.output_path + ".log", diagnostics, stats)
        report_path = config.output_path
    return RunResult(pairs, diagnostics, stats, report_path)

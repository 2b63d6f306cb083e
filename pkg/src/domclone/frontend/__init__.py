"""Source frontend: method extraction, control flow, dominator trees,
and instruction abstraction for Java files."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import jast
from .cfg import ControlFlowGraph, build_cfg
from .dominators import DominatorTree, build_dominator_tree
from .instructions import (
    AbstractInstruction,
    ConstantPool,
    RawInstruction,
    abstract_instruction,
)
from .parser import ParsedMethod, parse_source

__all__ = [
    "AbstractInstruction",
    "CodeFragment",
    "ConstantPool",
    "ControlFlowGraph",
    "Diagnostic",
    "DominatorTree",
    "MethodAnalysis",
    "RawInstruction",
    "abstract_instruction",
    "analyze_source",
    "build_cfg",
    "build_dominator_tree",
    "jast",
    "parse_methods",
]


@dataclass(frozen=True)
class CodeFragment:
    """One method-granularity code fragment, addressed by file location
    and an inclusive 1-based line range."""

    file_path: str
    method_name: str
    start_line: int
    end_line: int
    source_line_count: int

    def __post_init__(self):
        if self.start_line > self.end_line:
            raise ValueError("fragment start_line must not exceed end_line")
        if self.source_line_count != self.end_line - self.start_line + 1:
            raise ValueError("source_line_count inconsistent with line range")


@dataclass
class Diagnostic:
    file_path: str
    line: int
    message: str
    method_name: Optional[str] = None


@dataclass
class MethodAnalysis:
    fragment: CodeFragment
    cfg: ControlFlowGraph
    tree: DominatorTree


def _fragment(method: ParsedMethod, file_path: str) -> CodeFragment:
    return CodeFragment(
        file_path=file_path,
        method_name=method.name,
        start_line=method.start_line,
        end_line=method.end_line,
        source_line_count=method.end_line - method.start_line + 1,
    )


def parse_methods(
    source_text: str, file_path: str
) -> tuple[list[tuple[CodeFragment, jast.Block]], list[Diagnostic]]:
    """Extract every method-like body with its line range.

    Bodies that fail to parse are skipped and reported as diagnostics;
    a file-level failure yields an empty list plus one diagnostic.
    """
    methods, issues = parse_source(source_text)
    fragments = [(_fragment(m, file_path), m.body) for m in methods]
    diagnostics = [
        Diagnostic(file_path, issue.line, issue.message, issue.method_name)
        for issue in issues
    ]
    return fragments, diagnostics


def analyze_source(
    source_text: str,
    file_path: str,
    pool: Optional[ConstantPool] = None,
    keep_call_names: bool = True,
) -> tuple[list[MethodAnalysis], list[Diagnostic]]:
    """Run the full frontend on one file: parse, lower to CFGs, and build
    dominator trees. Degenerate methods (no instruction nodes) are
    reported and dropped."""
    if pool is None:
        pool = ConstantPool()
    parsed, diagnostics = parse_methods(source_text, file_path)
    analyses: list[MethodAnalysis] = []
    for fragment, body in parsed:
        cfg, notes = build_cfg(body, pool, keep_call_names)
        for note in notes:
            diagnostics.append(
                Diagnostic(file_path, fragment.start_line, note, fragment.method_name)
            )
        if not cfg.nodes:
            diagnostics.append(
                Diagnostic(
                    file_path,
                    fragment.start_line,
                    "degenerate method: no instruction-level statements",
                    fragment.method_name,
                )
            )
            continue
        analyses.append(MethodAnalysis(fragment, cfg, build_dominator_tree(cfg)))
    return analyses, diagnostics

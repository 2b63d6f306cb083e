"""Shared test utilities."""

from __future__ import annotations

from domclone.frontend import ConstantPool, MethodAnalysis, analyze_source


def wrap_body(body: str) -> str:
    return "class T {\n    void m() {\n%s\n    }\n}\n" % body


def analyze_snippet(body: str, keep_call_names: bool = True, pool: ConstantPool | None = None) -> MethodAnalysis:
    """Parse a method body snippet and return its analysis."""
    analyses, diagnostics = analyze_source(
        wrap_body(body), "snippet.java", pool=pool, keep_call_names=keep_call_names
    )
    assert not diagnostics, diagnostics
    assert len(analyses) == 1, analyses
    return analyses[0]


def tokens_of(analysis: MethodAnalysis) -> list[list[str]]:
    return [list(n.tokens) for n in analysis.cfg.nodes]

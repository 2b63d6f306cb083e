"""Independent brute-force oracles used to validate the DP metrics and
the dominator builder.

The metric oracles are memoized recursions over sequence suffixes, written
as direct case analyses of the defining recurrences rather than as
bottom-up tables. The dominance oracle enumerates simple paths.
"""

from __future__ import annotations

from functools import lru_cache

from domclone.metrics import NW_GAP, NW_MATCH, NW_MISMATCH


@lru_cache(maxsize=None)
def levenshtein_oracle(p: tuple, q: tuple) -> int:
    if not p:
        return len(q)
    if not q:
        return len(p)
    if p[0] == q[0]:
        return levenshtein_oracle(p[1:], q[1:])
    return 1 + min(
        levenshtein_oracle(p[1:], q),
        levenshtein_oracle(p, q[1:]),
        levenshtein_oracle(p[1:], q[1:]),
    )


@lru_cache(maxsize=None)
def nw_score_oracle(p: tuple, q: tuple) -> int:
    """Best total score over all global alignments (explore every way of
    consuming a character from p, from q, or from both)."""
    if not p:
        return len(q) * NW_GAP
    if not q:
        return len(p) * NW_GAP
    sub = NW_MATCH if p[0] == q[0] else NW_MISMATCH
    return max(
        nw_score_oracle(p[1:], q[1:]) + sub,
        nw_score_oracle(p[1:], q) + NW_GAP,
        nw_score_oracle(p, q[1:]) + NW_GAP,
    )


@lru_cache(maxsize=None)
def lcs_oracle(p: tuple, q: tuple) -> int:
    if not p or not q:
        return 0
    if p[0] == q[0]:
        return 1 + lcs_oracle(p[1:], q[1:])
    return max(lcs_oracle(p[1:], q), lcs_oracle(p, q[1:]))


def simple_paths(edges: set[tuple[int, int]], start: int, target: int, n: int):
    """Yield all simple paths start -> target as node tuples."""
    succ = [[] for _ in range(n)]
    for a, b in sorted(edges):
        succ[a].append(b)
    path = [start]
    on_path = {start}

    def walk(node):
        if node == target:
            yield tuple(path)
            return
        for nxt in succ[node]:
            if nxt not in on_path:
                path.append(nxt)
                on_path.add(nxt)
                yield from walk(nxt)
                path.pop()
                on_path.remove(nxt)

    yield from walk(start)


def dominators_by_enumeration(n: int, edges: set[tuple[int, int]], start: int):
    """Full dominance sets: l dominates k iff l lies on every simple path
    from start to k."""
    doms = {}
    for target in range(n):
        common = None
        for p in simple_paths(edges, start, target, n):
            nodes = set(p)
            common = nodes if common is None else common & nodes
        doms[target] = common if common is not None else set()
    return doms


def idom_by_enumeration(n: int, edges: set[tuple[int, int]], start: int):
    """Immediate-dominator map derived from the enumeration oracle: the
    strict dominator that every other strict dominator dominates."""
    doms = dominators_by_enumeration(n, edges, start)
    parents = {}
    for node in range(n):
        if node == start or not doms[node]:
            continue
        strict = doms[node] - {node}
        for cand in strict:
            if all(other in doms[cand] for other in strict):
                parents[node] = cand
                break
    return parents

"""Dominator tree construction.

Node l dominates node k when l lies on every path from the start node
to k; the parent relation of the tree is immediate dominance. Computed
with the iterative dataflow fixed point over reverse postorder using
index-based intersection, which is simple and easy to validate against
a brute-force oracle on small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cfg import ControlFlowGraph
from .instructions import AbstractInstruction


@dataclass
class DominatorTree:
    nodes: list[AbstractInstruction]
    parent: dict[int, int]
    root: int
    children: dict[int, list[int]] = field(default_factory=dict)

    def leaves(self) -> list[int]:
        return [n for n in range(len(self.nodes)) if not self.children.get(n)]


def _reverse_postorder(cfg: ControlFlowGraph) -> list[int]:
    succ = cfg.successors()
    seen = [False] * len(cfg.nodes)
    order: list[int] = []
    # iterative DFS; long straight-line methods produce deep chains
    stack: list[tuple[int, int]] = [(cfg.start, 0)]
    seen[cfg.start] = True
    while stack:
        node, i = stack[-1]
        if i < len(succ[node]):
            stack[-1] = (node, i + 1)
            nxt = succ[node][i]
            if not seen[nxt]:
                seen[nxt] = True
                stack.append((nxt, 0))
        else:
            order.append(node)
            stack.pop()
    order.reverse()
    return order


def build_dominator_tree(cfg: ControlFlowGraph) -> DominatorTree:
    """Immediate dominators for every node of a rooted CFG.

    Raises ValueError when some node is unreachable from the start node;
    the frontend prunes those before calling in here.
    """
    if not cfg.nodes:
        raise ValueError("empty control flow graph")
    rpo = _reverse_postorder(cfg)
    if len(rpo) != len(cfg.nodes):
        raise ValueError("control flow graph has unreachable nodes")
    rpo_index = {node: i for i, node in enumerate(rpo)}
    pred = cfg.predecessors()

    idom: dict[int, int] = {cfg.start: cfg.start}

    def intersect(a: int, b: int) -> int:
        while a != b:
            while rpo_index[a] > rpo_index[b]:
                a = idom[a]
            while rpo_index[b] > rpo_index[a]:
                b = idom[b]
        return a

    changed = True
    while changed:
        changed = False
        for node in rpo:
            if node == cfg.start:
                continue
            candidate = None
            for p in pred[node]:
                if p in idom:
                    candidate = p if candidate is None else intersect(p, candidate)
            if candidate is not None and idom.get(node) != candidate:
                idom[node] = candidate
                changed = True

    parent = {n: d for n, d in idom.items() if n != cfg.start}
    children: dict[int, list[int]] = {n: [] for n in range(len(cfg.nodes))}
    for n, d in parent.items():
        children[d].append(n)
    for kids in children.values():
        kids.sort()
    return DominatorTree(cfg.nodes, parent, cfg.start, children)

import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domclone.frontend import analyze_source, build_dominator_tree
from domclone.frontend.cfg import ControlFlowGraph
from domclone.frontend.instructions import AbstractInstruction
from helpers import analyze_snippet
from oracles import idom_by_enumeration

DATA = Path(__file__).parent / "data"


def make_cfg(n: int, edges: set[tuple[int, int]]) -> ControlFlowGraph:
    nodes = [AbstractInstruction(("V",)) for _ in range(n)]
    return ControlFlowGraph(nodes, edges, start=0)


def random_cfg(rng: random.Random, max_nodes: int = 12) -> ControlFlowGraph:
    """CFG-shaped random graph: a spanning tree from node 0 plus extra
    edges, out-degree capped at 2."""
    n = rng.randint(1, max_nodes)
    edges: set[tuple[int, int]] = set()
    out = [0] * n
    for node in range(1, n):
        parent = rng.randrange(node)
        if out[parent] >= 2:
            parent = min(range(node), key=lambda p: out[p])
        edges.add((parent, node))
        out[parent] += 1
    for _ in range(n):
        a, b = rng.randrange(n), rng.randrange(n)
        if out[a] < 2 and (a, b) not in edges:
            edges.add((a, b))
            out[a] += 1
    return make_cfg(n, edges)


class TestLowering:
    def test_straight_line_chain(self):
        analysis = analyze_snippet("int a = 1; int b = 2; int c = 3; use(a, b, c);")
        cfg = analysis.cfg
        assert len(cfg.nodes) == 4
        assert cfg.edges == {(0, 1), (1, 2), (2, 3)}

    def test_for_loop_shape(self):
        # for (int j=0; j<m; j++) { acc=acc-j; proc(acc); }
        analysis = analyze_snippet(
            "for (int j = 0; j < m; j++) { acc = acc - j; proc(acc); }"
        )
        cfg = analysis.cfg
        # init, cond, body1, body2, update
        assert len(cfg.nodes) == 5
        succ = cfg.successors()
        cond = 1
        assert succ[0] == [cond]
        assert succ[cond] == [2]  # body entry; loop exit is the method end
        assert succ[2] == [3]
        assert succ[3] == [4]
        assert succ[4] == [cond]  # back edge from the update

    def test_if_else_join(self):
        analysis = analyze_snippet("if (c) { a(); } else { b(); } done();")
        cfg = analysis.cfg
        assert cfg.edges == {(0, 1), (0, 2), (1, 3), (2, 3)}

    def test_while_two_successors(self):
        analysis = analyze_snippet("while (c) { step(); } after();")
        succ = analysis.cfg.successors()
        assert succ[0] == [1, 2]
        assert succ[1] == [0]

    def test_break_and_continue_edges(self):
        analysis = analyze_snippet(
            "while (c) { if (x) { break; } if (y) { continue; } work(); } after();"
        )
        cfg = analysis.cfg
        # nodes: while-cond, if-x, if-y, work, after
        assert (1, 4) in cfg.edges  # break jumps to after()
        assert (2, 0) in cfg.edges  # continue jumps back to the condition
        assert (3, 0) in cfg.edges

    def test_switch_fanout_and_fallthrough(self):
        analysis = analyze_snippet(
            """
            switch (k) {
                case 1: one(); break;
                case 2: two();
                case 3: three(); break;
                default: other();
            }
            after();
            """
        )
        cfg = analysis.cfg
        sel, one, two, three, other, after = range(6)
        assert (sel, one) in cfg.edges
        assert (sel, two) in cfg.edges
        assert (sel, three) in cfg.edges
        assert (sel, other) in cfg.edges
        assert (two, three) in cfg.edges  # fall-through
        assert (sel, after) not in cfg.edges  # default present
        assert (one, after) in cfg.edges and (three, after) in cfg.edges

    def test_switch_without_default_exits(self):
        analysis = analyze_snippet("switch (k) { case 1: one(); break; } after();")
        assert (0, 2) in analysis.cfg.edges

    def test_try_finally_sequence(self):
        analysis = analyze_snippet("try { a(); b(); } finally { c(); } after();")
        cfg = analysis.cfg
        assert (0, 1) in cfg.edges and (1, 2) in cfg.edges and (2, 3) in cfg.edges

    def test_catch_entered_from_try_entry(self):
        analysis = analyze_snippet(
            "try { a(); b(); } catch (Exception e) { handle(); } after();"
        )
        cfg = analysis.cfg
        assert (0, 2) in cfg.edges  # first try node -> catch body
        assert (1, 3) in cfg.edges and (2, 3) in cfg.edges

    def test_unreachable_code_pruned(self):
        analysis = analyze_snippet("first(); return; never();")
        assert len(analysis.cfg.nodes) == 1

    def test_do_while_back_edge(self):
        analysis = analyze_snippet("do { step(); } while (c); after();")
        cfg = analysis.cfg
        assert (0, 1) in cfg.edges and (1, 0) in cfg.edges and (1, 2) in cfg.edges

    def test_every_node_reachable(self):
        analysis = analyze_snippet(
            "while (a) { if (b) { break; } c(); } for (;;) { if (d) { break; } e(); } f();"
        )
        cfg = analysis.cfg
        succ = cfg.successors()
        seen = {cfg.start}
        stack = [cfg.start]
        while stack:
            for nxt in succ[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        assert seen == set(range(len(cfg.nodes)))


class TestDominators:
    def test_chain_equals_chain(self):
        cfg = make_cfg(4, {(0, 1), (1, 2), (2, 3)})
        tree = build_dominator_tree(cfg)
        assert tree.parent == {1: 0, 2: 1, 3: 2}

    def test_diamond(self):
        cfg = make_cfg(4, {(0, 1), (0, 2), (1, 3), (2, 3)})
        tree = build_dominator_tree(cfg)
        assert tree.parent == {1: 0, 2: 0, 3: 0}

    def test_zipdir_tree_has_four_leaves(self):
        src = (DATA / "zipdir" / "ZipTreeWriter.java").read_text()
        analyses, _ = analyze_source(src, "ZipTreeWriter.java")
        tree = analyses[0].tree
        assert len(tree.leaves()) == 4

    def test_unreachable_rejected(self):
        cfg = make_cfg(3, {(0, 1)})
        with pytest.raises(ValueError):
            build_dominator_tree(cfg)

    def test_root_reachability_unique(self):
        src = (DATA / "zipdir" / "DirZipper.java").read_text()
        analyses, _ = analyze_source(src, "DirZipper.java")
        tree = analyses[0].tree
        for node in range(len(tree.nodes)):
            seen = set()
            cur = node
            while cur != tree.root:
                assert cur not in seen
                seen.add(cur)
                cur = tree.parent[cur]

    @settings(max_examples=200, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10**9))
    def test_matches_enumeration_oracle(self, seed):
        cfg = random_cfg(random.Random(seed))
        tree = build_dominator_tree(cfg)
        expected = idom_by_enumeration(len(cfg.nodes), cfg.edges, cfg.start)
        assert tree.parent == expected

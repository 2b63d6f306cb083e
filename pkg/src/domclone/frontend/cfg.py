"""Control-flow graph construction from method bodies.

Each statement-level instruction becomes a single node (no basic
blocks); control constructs contribute only edges. A node for
instruction l follows node k iff l can execute immediately after k.

Lowering notes:
  - break/continue and value-less returns are pure edges, not nodes;
  - loop conditions get two successors (body entry, loop exit) and a
    back edge from the loop tail;
  - switch selectors fan out to every case group, with fall-through
    edges between colon groups and an exit edge when default is absent;
  - try bodies run sequentially into the finally body; catch bodies are
    entered from the first try-body node (coarse exception flow);
  - statements left unreachable by terminating control flow are pruned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import jast
from .instructions import AbstractInstruction, ConstantPool, RawInstruction, abstract_instruction


@dataclass
class ControlFlowGraph:
    nodes: list[AbstractInstruction]
    edges: set[tuple[int, int]]
    start: int = 0

    def successors(self) -> list[list[int]]:
        succ = [[] for _ in self.nodes]
        for a, b in sorted(self.edges):
            succ[a].append(b)
        return succ

    def predecessors(self) -> list[list[int]]:
        pred = [[] for _ in self.nodes]
        for a, b in sorted(self.edges):
            pred[b].append(a)
        return pred


@dataclass
class _Ctx:
    kind: str  # loop | switch | labeled
    label: Optional[str] = None
    break_preds: list = field(default_factory=list)
    continue_preds: list = field(default_factory=list)


class _Lowerer:
    def __init__(self, pool: ConstantPool, keep_call_names: bool):
        self.pool = pool
        self.keep = keep_call_names
        self.nodes: list[AbstractInstruction] = []
        self.edges: set[tuple[int, int]] = set()
        self.ctx_stack: list[_Ctx] = []
        self.pending_label: Optional[str] = None
        self.notes: list[str] = []

    def new_node(self, kind: str, exprs: tuple, line: int, preds: list[int]) -> int:
        instr = abstract_instruction(RawInstruction(kind, exprs, line), self.pool, self.keep)
        idx = len(self.nodes)
        self.nodes.append(instr)
        self.connect(preds, idx)
        return idx

    def connect(self, preds: list[int], target: int) -> None:
        for p in preds:
            self.edges.add((p, target))

    def _find_ctx(self, kinds: tuple[str, ...], label: Optional[str]) -> Optional[_Ctx]:
        for ctx in reversed(self.ctx_stack):
            if label is not None:
                if ctx.label == label:
                    return ctx
            elif ctx.kind in kinds:
                return ctx
        return None

    def _take_label(self) -> Optional[str]:
        label, self.pending_label = self.pending_label, None
        return label

    # -- statement dispatch ------------------------------------------

    def lower(self, stmt, preds: list[int]) -> list[int]:
        method = getattr(self, f"_lower_{type(stmt).__name__.lower()}", None)
        if method is None:
            self.notes.append(f"unsupported statement {type(stmt).__name__}; passed through")
            return preds
        return method(stmt, preds)

    def lower_stmts(self, stmts, preds: list[int]) -> list[int]:
        for s in stmts:
            preds = self.lower(s, preds)
        return preds

    def _lower_block(self, stmt: jast.Block, preds):
        return self.lower_stmts(stmt.stmts, preds)

    def _lower_localdecl(self, stmt: jast.LocalDecl, preds):
        for _name, init in stmt.declarators:
            if init is not None:
                preds = [self.new_node("decl", (init,), stmt.line, preds)]
        return preds

    def _lower_exprstmt(self, stmt: jast.ExprStmt, preds):
        return [self.new_node("expr", (stmt.expr,), stmt.line, preds)]

    def _lower_if(self, stmt: jast.If, preds):
        c = self.new_node("cond", (stmt.cond,), stmt.line, preds)
        then_exits = self.lower(stmt.then, [c])
        else_exits = self.lower(stmt.orelse, [c]) if stmt.orelse is not None else [c]
        return then_exits + else_exits

    def _lower_while(self, stmt: jast.While, preds):
        label = self._take_label()
        c = self.new_node("cond", (stmt.cond,), stmt.line, preds)
        ctx = _Ctx("loop", label)
        self.ctx_stack.append(ctx)
        body_exits = self.lower(stmt.body, [c])
        self.ctx_stack.pop()
        self.connect(body_exits + ctx.continue_preds, c)
        return [c] + ctx.break_preds

    def _lower_dowhile(self, stmt: jast.DoWhile, preds):
        label = self._take_label()
        ctx = _Ctx("loop", label)
        self.ctx_stack.append(ctx)
        first = len(self.nodes)
        body_exits = self.lower(stmt.body, preds)
        body_created = len(self.nodes) > first
        self.ctx_stack.pop()
        c = self.new_node("cond", (stmt.cond,), stmt.line, body_exits + ctx.continue_preds)
        self.edges.add((c, first if body_created else c))
        return [c] + ctx.break_preds

    def _lower_for(self, stmt: jast.For, preds):
        label = self._take_label()
        if stmt.init is not None:
            preds = self.lower(stmt.init, preds)
        c = None
        if stmt.cond is not None:
            c = self.new_node("cond", (stmt.cond,), stmt.cond_line, preds)
            body_preds = [c]
        else:
            body_preds = preds
        ctx = _Ctx("loop", label)
        self.ctx_stack.append(ctx)
        body_first = len(self.nodes)
        body_exits = self.lower(stmt.body, body_preds)
        body_created = len(self.nodes) > body_first
        self.ctx_stack.pop()
        tail = body_exits + ctx.continue_preds
        update_first = None
        for upd in stmt.updates:
            n = self.new_node("expr", (upd,), stmt.update_line, tail)
            if update_first is None:
                update_first = n
            tail = [n]
        if c is not None:
            back = c
        elif body_created:
            back = body_first
        else:
            back = update_first
        if back is not None:
            self.connect(tail, back)
        exits = list(ctx.break_preds)
        if c is not None:
            exits.append(c)
        return exits

    def _lower_foreach(self, stmt: jast.ForEach, preds):
        label = self._take_label()
        c = self.new_node("foreach", (stmt.iterable,), stmt.line, preds)
        ctx = _Ctx("loop", label)
        self.ctx_stack.append(ctx)
        body_exits = self.lower(stmt.body, [c])
        self.ctx_stack.pop()
        self.connect(body_exits + ctx.continue_preds, c)
        return [c] + ctx.break_preds

    def _lower_switch(self, stmt: jast.Switch, preds):
        label = self._take_label()
        sel = self.new_node("switch", (stmt.selector,), stmt.line, preds)
        ctx = _Ctx("switch", label)
        self.ctx_stack.append(ctx)
        exits: list[int] = []
        fall: list[int] = []
        saw_default = False
        for group in stmt.groups:
            group_exits = self.lower_stmts(group.stmts, [sel] + fall)
            if group.arrow:
                exits.extend(group_exits)
                fall = []
            else:
                fall = group_exits
            saw_default = saw_default or group.is_default
        self.ctx_stack.pop()
        exits.extend(fall)
        exits.extend(ctx.break_preds)
        if not saw_default:
            exits.append(sel)
        return exits

    def _lower_break(self, stmt: jast.Break, preds):
        ctx = self._find_ctx(("loop", "switch", "labeled"), stmt.label)
        if ctx is None:
            self.notes.append("break outside loop/switch; treated as method exit")
            return []
        ctx.break_preds.extend(preds)
        return []

    def _lower_continue(self, stmt: jast.Continue, preds):
        ctx = self._find_ctx(("loop",), stmt.label)
        if ctx is None or ctx.kind != "loop":
            self.notes.append("continue outside loop; treated as method exit")
            return []
        ctx.continue_preds.extend(preds)
        return []

    def _lower_return(self, stmt: jast.Return, preds):
        if stmt.value is not None:
            self.new_node("return", (stmt.value,), stmt.line, preds)
        return []

    def _lower_throw(self, stmt: jast.Throw, preds):
        self.new_node("throw", (stmt.value,), stmt.line, preds)
        return []

    def _lower_yield(self, stmt: jast.Yield, preds):
        self.new_node("yield", (stmt.value,), stmt.line, preds)
        return []

    def _lower_try(self, stmt: jast.Try, preds):
        for res in stmt.resources:
            preds = self._lower_localdecl(res, preds)
        first = len(self.nodes)
        body_exits = self.lower(stmt.body, preds)
        catch_preds = [first] if first < len(self.nodes) else preds
        after = list(body_exits)
        for catch in stmt.catches:
            after.extend(self.lower(catch.body, catch_preds))
        if stmt.finally_block is not None:
            after = self.lower(stmt.finally_block, after)
        return after

    def _lower_sync(self, stmt: jast.Sync, preds):
        n = self.new_node("sync", (stmt.lock,), stmt.line, preds)
        return self.lower(stmt.body, [n])

    def _lower_assert(self, stmt: jast.Assert, preds):
        return [self.new_node("assert", (stmt.cond, stmt.msg), stmt.line, preds)]

    def _lower_labeled(self, stmt: jast.Labeled, preds):
        if isinstance(stmt.stmt, (jast.While, jast.DoWhile, jast.For, jast.ForEach, jast.Switch)):
            self.pending_label = stmt.label
            return self.lower(stmt.stmt, preds)
        ctx = _Ctx("labeled", stmt.label)
        self.ctx_stack.append(ctx)
        exits = self.lower(stmt.stmt, preds)
        self.ctx_stack.pop()
        return exits + ctx.break_preds

    def _lower_empty(self, stmt, preds):
        return preds

    def _lower_localtypedecl(self, stmt, preds):
        return preds


def build_cfg(
    body: jast.Block,
    pool: Optional[ConstantPool] = None,
    keep_call_names: bool = True,
) -> tuple[ControlFlowGraph, list[str]]:
    """Lower a parsed method body to its control-flow graph.

    The returned graph may be empty when the body contains no
    instruction-level statements (callers treat that as degenerate).
    """
    lowerer = _Lowerer(pool if pool is not None else ConstantPool(), keep_call_names)
    lowerer.lower(body, [])
    cfg = ControlFlowGraph(lowerer.nodes, lowerer.edges, start=0)
    return _prune_unreachable(cfg), lowerer.notes


def _prune_unreachable(cfg: ControlFlowGraph) -> ControlFlowGraph:
    if not cfg.nodes:
        return cfg
    succ = cfg.successors()
    seen = {cfg.start}
    stack = [cfg.start]
    while stack:
        for nxt in succ[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    if len(seen) == len(cfg.nodes):
        return cfg
    order = sorted(seen)
    remap = {old: new for new, old in enumerate(order)}
    nodes = [cfg.nodes[old] for old in order]
    edges = {(remap[a], remap[b]) for a, b in cfg.edges if a in seen and b in seen}
    return ControlFlowGraph(nodes, edges, start=remap[cfg.start])

"""Abstract instruction encoding.

Instructions are preorder token lists over a closed alphabet: operator
mnemonics, the joint variable symbol V, the joint literal symbol L, type
names, and constant-pool references #k for callee names. Consistent
identifier renaming therefore leaves the encoding unchanged, which is
what makes rename-only clones collapse to distance zero.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Optional

from . import jast


@dataclass(frozen=True)
class AbstractInstruction:
    tokens: tuple[str, ...]
    line: int = field(default=0, compare=False)

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("instruction must have at least one token")


class ConstantPool:
    """Interns callee names; `#k` tokens reference positions here.

    Interning is an atomic get-or-insert, so the pool may be shared across
    threads. Positions depend on interning order; matching only ever
    relies on equal names receiving equal positions within one run.
    """

    def __init__(self):
        self.entries: list[str] = []
        self.index: dict[str, int] = {}
        self._lock = threading.Lock()

    def intern(self, name: str) -> int:
        k = self.index.get(name)
        if k is not None:
            return k
        with self._lock:
            k = self.index.get(name)
            if k is None:
                k = len(self.entries)
                self.entries.append(name)
                self.index[name] = k
            return k

    def name_of(self, k: int) -> str:
        return self.entries[k]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class RawInstruction:
    """One lowered statement-level instruction, prior to abstraction.

    kind: decl | expr | cond | switch | foreach | return | throw |
          assert | sync | yield
    """

    kind: str
    exprs: tuple
    line: int


_RELATIONAL = {"<": "LT", "<=": "LE", ">": "GT", ">=": "GE", "==": "EQ", "!=": "NE"}
_PREFIX = {"-": "NEG", "+": "POS", "!": "NOT", "~": "BITNOT", "++": "PREINC", "--": "PREDEC"}
_POSTFIX = {"++": "POSTINC", "--": "POSTDEC"}


class _Emitter:
    def __init__(self, pool: ConstantPool, keep_call_names: bool):
        self.pool = pool
        self.keep = keep_call_names

    def callee(self, name: str, out: list[str]) -> None:
        if self.keep:
            out.append(f"#{self.pool.intern(name)}")

    def expr(self, e, out: list[str]) -> None:
        if isinstance(e, jast.Name):
            out.append("V")
        elif isinstance(e, jast.Literal):
            out.append("L")
        elif isinstance(e, jast.FieldAccess):
            out.append("FIELDREAD")
        elif isinstance(e, jast.ArrayAccess):
            out.append("V")
        elif isinstance(e, jast.Call):
            out.append("CALL")
            self.callee(e.name, out)
            for a in e.args:
                self.expr(a, out)
        elif isinstance(e, jast.New):
            out.append("NEW")
            self.callee(e.type_name, out)
            for a in e.args:
                self.expr(a, out)
        elif isinstance(e, jast.NewArray):
            out.append("NEWARRAY")
            if e.elem_type:
                out.append(e.elem_type)
        elif isinstance(e, jast.ArrayInit):
            out.append("NEWARRAY")
        elif isinstance(e, jast.Assign):
            out.append(e.op)
            self.expr(e.target, out)
            self.expr(e.value, out)
        elif isinstance(e, jast.Binary):
            out.append(_RELATIONAL.get(e.op, e.op))
            self.expr(e.left, out)
            self.expr(e.right, out)
        elif isinstance(e, jast.Unary):
            table = _PREFIX if e.prefix else _POSTFIX
            out.append(table[e.op])
            self.expr(e.operand, out)
        elif isinstance(e, jast.Ternary):
            out.append("TERNARY")
            self.expr(e.cond, out)
            self.expr(e.then, out)
            self.expr(e.orelse, out)
        elif isinstance(e, jast.InstanceOf):
            out.append("INSTANCEOF")
            self.expr(e.value, out)
            out.append(e.type_name)
        elif isinstance(e, jast.Lambda):
            out.append("LAMBDA")
        elif isinstance(e, jast.MethodRef):
            out.append("METHODREF")
        else:
            raise TypeError(f"cannot abstract expression {e!r}")


_HEAD = {
    "cond": ("COND",),
    "switch": ("SWITCH",),
    "foreach": ("COND", "ITER"),
    "return": ("RETURN",),
    "throw": ("THROW",),
    "assert": ("ASSERT",),
    "sync": ("SYNC",),
    "yield": ("YIELD",),
}


def abstract_instruction(
    raw: RawInstruction,
    pool: Optional[ConstantPool] = None,
    keep_call_names: bool = True,
) -> AbstractInstruction:
    """Encode one lowered instruction into its preorder token list.

    Identifiers map to V, literals to L, field accesses to FIELDREAD, and
    callee names get interned into the pool (emitted as `#k`) when
    keep_call_names is on.
    """
    em = _Emitter(pool if pool is not None else ConstantPool(), keep_call_names)
    out: list[str] = []
    if raw.kind == "decl":
        out.append("=")
        out.append("V")
        em.expr(raw.exprs[0], out)
    elif raw.kind == "expr":
        em.expr(raw.exprs[0], out)
    else:
        out.extend(_HEAD[raw.kind])
        for e in raw.exprs:
            if e is not None:
                em.expr(e, out)
    return AbstractInstruction(tuple(out), raw.line)

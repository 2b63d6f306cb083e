"""Syntax structures for method bodies.

Only the shape needed for control-flow lowering and instruction
abstraction is kept: expressions carry operator structure, statements
carry their sub-statements and source lines. Types, generics, and
annotations are consumed during parsing but not represented.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Expr = Union[
    "Name", "Literal", "FieldAccess", "ArrayAccess", "Call", "New",
    "NewArray", "ArrayInit", "Assign", "Binary", "Unary", "Ternary",
    "InstanceOf", "Lambda", "MethodRef",
]


@dataclass(frozen=True)
class Name:
    text: str


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class FieldAccess:
    receiver: Optional[Expr]
    name: str


@dataclass(frozen=True)
class ArrayAccess:
    array: Expr
    index: Expr


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple[Expr, ...]
    receiver: Optional[Expr] = None


@dataclass(frozen=True)
class New:
    type_name: str
    args: tuple[Expr, ...]


@dataclass(frozen=True)
class NewArray:
    elem_type: Optional[str]


@dataclass(frozen=True)
class ArrayInit:
    pass


@dataclass(frozen=True)
class Assign:
    op: str  # "=", "+=", ...
    target: Expr
    value: Expr


@dataclass(frozen=True)
class Binary:
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Unary:
    op: str  # "+", "-", "!", "~", "++", "--"
    operand: Expr
    prefix: bool


@dataclass(frozen=True)
class Ternary:
    cond: Expr
    then: Expr
    orelse: Expr


@dataclass(frozen=True)
class InstanceOf:
    value: Expr
    type_name: str


@dataclass(frozen=True)
class Lambda:
    pass


@dataclass(frozen=True)
class MethodRef:
    pass


# --- statements -------------------------------------------------------


@dataclass
class Block:
    stmts: list = field(default_factory=list)


@dataclass
class LocalDecl:
    declarators: list[tuple[str, Optional[Expr]]]
    line: int


@dataclass
class ExprStmt:
    expr: Expr
    line: int


@dataclass
class If:
    cond: Expr
    line: int
    then: "Stmt"
    orelse: Optional["Stmt"]


@dataclass
class While:
    cond: Expr
    line: int
    body: "Stmt"


@dataclass
class DoWhile:
    body: "Stmt"
    cond: Expr
    line: int


@dataclass
class For:
    init: Optional["Stmt"]  # LocalDecl or Block of ExprStmts
    cond: Optional[Expr]
    cond_line: int
    updates: list[Expr]
    update_line: int
    body: "Stmt"


@dataclass
class ForEach:
    var_name: str
    iterable: Expr
    line: int
    body: "Stmt"


@dataclass
class CaseGroup:
    is_default: bool
    stmts: list
    arrow: bool


@dataclass
class Switch:
    selector: Expr
    line: int
    groups: list[CaseGroup]


@dataclass
class Break:
    label: Optional[str]


@dataclass
class Continue:
    label: Optional[str]


@dataclass
class Return:
    value: Optional[Expr]
    line: int


@dataclass
class Throw:
    value: Expr
    line: int


@dataclass
class Yield:
    value: Expr
    line: int


@dataclass
class Catch:
    body: Block


@dataclass
class Try:
    resources: list[LocalDecl]
    body: Block
    catches: list[Catch]
    finally_block: Optional[Block]


@dataclass
class Sync:
    lock: Expr
    line: int
    body: Block


@dataclass
class Assert:
    cond: Expr
    msg: Optional[Expr]
    line: int


@dataclass
class Labeled:
    label: str
    stmt: "Stmt"


@dataclass
class Empty:
    pass


@dataclass
class LocalTypeDecl:
    pass


Stmt = Union[
    Block, LocalDecl, ExprStmt, If, While, DoWhile, For, ForEach, Switch,
    Break, Continue, Return, Throw, Yield, Try, Sync, Assert, Labeled,
    Empty, LocalTypeDecl,
]

"""AST node types for MiniLang.

All nodes are frozen dataclasses built from tuples, so a parsed program is
immutable, hashable and safe to share between threads and processes.
Source positions are excluded from equality: two programs compare equal when
their structure (including statement ids) matches.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

INT = "int"
FLOAT = "float"
BOOL = "bool"
VOID = "void"
PRIMITIVE_TYPES = (INT, FLOAT, BOOL)

Pos = tuple  # (line, column), 1-based

_nopos = field(default=(0, 0), compare=False, repr=False)


# -- expressions -------------------------------------------------------------

@dataclass(frozen=True)
class IntLit:
    value: int
    pos: Pos = _nopos


@dataclass(frozen=True)
class FloatLit:
    value: float
    pos: Pos = _nopos


@dataclass(frozen=True)
class BoolLit:
    value: bool
    pos: Pos = _nopos


@dataclass(frozen=True)
class Name:
    ident: str
    pos: Pos = _nopos


@dataclass(frozen=True)
class Unary:
    op: str  # "-" or "!"
    operand: "Expr"
    pos: Pos = _nopos


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    pos: Pos = _nopos


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple = ()
    pos: Pos = _nopos


Expr = Union[IntLit, FloatLit, BoolLit, Name, Unary, Binary, Call]


# -- statements --------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    stmts: tuple = ()


@dataclass(frozen=True)
class Declare:
    id: int
    name: str
    type: str
    value: Expr
    pos: Pos = _nopos
    kind = "declare"


@dataclass(frozen=True)
class Assign:
    id: int
    name: str
    value: Expr
    pos: Pos = _nopos
    kind = "assign"


@dataclass(frozen=True)
class IncDec:
    id: int
    name: str
    op: str  # "++" or "--"
    pos: Pos = _nopos

    @property
    def kind(self):
        return "increment" if self.op == "++" else "decrement"


@dataclass(frozen=True)
class If:
    id: int
    cond: Expr
    then: Block
    orelse: Optional[Block] = None
    pos: Pos = _nopos
    kind = "if"


@dataclass(frozen=True)
class While:
    id: int
    cond: Expr
    body: Block
    pos: Pos = _nopos
    kind = "while"


@dataclass(frozen=True)
class CallStmt:
    id: int
    call: Call
    pos: Pos = _nopos
    kind = "expression-call"


@dataclass(frozen=True)
class Return:
    id: int
    value: Optional[Expr] = None
    pos: Pos = _nopos
    kind = "return"


@dataclass(frozen=True)
class Skip:
    """Empty statement ``;``. Mutants use it in place of a deleted void call."""
    id: int
    pos: Pos = _nopos
    kind = "skip"


Stmt = Union[Declare, Assign, IncDec, If, While, CallStmt, Return, Skip]


@dataclass(frozen=True)
class Param:
    name: str
    type: str


@dataclass(frozen=True)
class FunctionDecl:
    name: str
    params: tuple
    return_type: str
    body: Block
    pos: Pos = _nopos

    @property
    def signature(self):
        return tuple(p.type for p in self.params), self.return_type


@dataclass(frozen=True)
class Program:
    functions: tuple
    source_name: str = field(default="<string>", compare=False)

    def function(self, name: str) -> FunctionDecl:
        for fn in self.functions:
            if fn.name == name:
                return fn
        raise KeyError(name)

    @property
    def function_names(self):
        return tuple(fn.name for fn in self.functions)


def child_blocks(stmt) -> tuple:
    """Blocks nested directly under a statement (if arms, loop body)."""
    if isinstance(stmt, If):
        return (stmt.then,) if stmt.orelse is None else (stmt.then, stmt.orelse)
    if isinstance(stmt, While):
        return (stmt.body,)
    return ()


def iter_statements(block: Block, depth: int = 1):
    """Yield ``(stmt, depth)`` in pre-order; depth 1 is the function body."""
    for stmt in block.stmts:
        yield stmt, depth
        for sub in child_blocks(stmt):
            yield from iter_statements(sub, depth + 1)


def iter_program_statements(program: Program):
    """Yield ``(stmt, depth, function)`` for every statement, in id order."""
    for fn in program.functions:
        for stmt, depth in iter_statements(fn.body):
            yield stmt, depth, fn

"""Static analyses: statement and branch enumeration, nesting depth."""
import dataclasses
from dataclasses import dataclass
from itertools import count

from . import ast


@dataclass(frozen=True)
class StatementInfo:
    id: int
    nesting_depth: int
    enclosing_function: str
    kind: str
    line: int = 0
    column: int = 0


@dataclass(frozen=True)
class BranchInfo:
    id: int
    owning_statement: int
    arm: bool


def enumerate_statements(program) -> list:
    """Executable statements sorted by id; blocks are not statements."""
    infos = [
        StatementInfo(s.id, depth, fn.name, s.kind, s.pos[0], s.pos[1])
        for s, depth, fn in ast.iter_program_statements(program)
    ]
    infos.sort(key=lambda info: info.id)
    return infos


def enumerate_branches(program) -> list:
    """Two arms (true, then false) per if/while header, in statement-id order."""
    owners = sorted(
        s.id for s, _, _ in ast.iter_program_statements(program)
        if isinstance(s, (ast.If, ast.While))
    )
    out = []
    for k, sid in enumerate(owners):
        out.append(BranchInfo(2 * k, sid, True))
        out.append(BranchInfo(2 * k + 1, sid, False))
    return out


def branch_map(program) -> dict:
    """statement id -> (true-arm branch id, false-arm branch id)."""
    arms = {}
    for b in enumerate_branches(program):
        arms.setdefault(b.owning_statement, [None, None])[0 if b.arm else 1] = b.id
    return {sid: tuple(pair) for sid, pair in arms.items()}


def statement_index(program) -> dict:
    return {s.id: s for s, _, _ in ast.iter_program_statements(program)}


def renumber(program):
    """Reassign dense pre-order statement ids (for ASTs built by hand)."""
    counter = count()

    def block(b):
        return ast.Block(tuple(stmt(s) for s in b.stmts))

    def stmt(s):
        s = dataclasses.replace(s, id=next(counter))
        if isinstance(s, ast.If):
            then = block(s.then)
            orelse = None if s.orelse is None else block(s.orelse)
            return dataclasses.replace(s, then=then, orelse=orelse)
        if isinstance(s, ast.While):
            return dataclasses.replace(s, body=block(s.body))
        return s

    fns = tuple(dataclasses.replace(fn, body=block(fn.body)) for fn in program.functions)
    return dataclasses.replace(program, functions=fns)

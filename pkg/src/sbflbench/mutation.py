"""The seven single-edit mutation operators and mutant construction.

Sub-operator tables beyond the canonical examples::

    ConditionalsBoundary  < <-> <=,  > <-> >=
    Increments            x++ <-> x--
    InvertNegatives       -e  -> e        (numeric operand)
    Math                  + -> -, - -> +, * -> /, / -> *, % -> *
    NegateConditionals    == -> !=, != -> ==, < -> >=, <= -> >, > -> <=, >= -> <
    VoidMethodCalls       f(...); -> ;    (f returns void)
    PrimitiveReturns      return e; -> return 0; / 0.0; / false;  (skipped if e is already that)

A mutant keeps every statement id of its base program; a deleted void call
becomes a ``;`` statement carrying the deleted call's id.
"""
import dataclasses
from dataclasses import dataclass
from enum import Enum

from .minilang import ast
from .minilang.analysis import enumerate_statements
from .minilang.printer import print_expr, print_stmt_head


class Operator(str, Enum):
    CONDITIONALS_BOUNDARY = "ConditionalsBoundary"
    INCREMENTS = "Increments"
    INVERT_NEGATIVES = "InvertNegatives"
    MATH = "Math"
    NEGATE_CONDITIONALS = "NegateConditionals"
    VOID_METHOD_CALLS = "VoidMethodCalls"
    PRIMITIVE_RETURNS = "PrimitiveReturns"


BOUNDARY = {"<": "<=", "<=": "<", ">": ">=", ">=": ">"}
MATH = {"+": "-", "-": "+", "*": "/", "/": "*", "%": "*"}
NEGATE = {"==": "!=", "!=": "==", "<": ">=", "<=": ">", ">": "<=", ">=": "<"}
ZERO = {ast.INT: ast.IntLit(0), ast.FLOAT: ast.FloatLit(0.0), ast.BOOL: ast.BoolLit(False)}

# expression-bearing fields of each statement type
_EXPR_FIELDS = {
    ast.Declare: ("value",), ast.Assign: ("value",), ast.If: ("cond",),
    ast.While: ("cond",), ast.CallStmt: ("call",), ast.Return: ("value",),
}


class MutationError(Exception):
    """A site does not resolve against the program it is applied to."""


@dataclass(frozen=True)
class MutationSite:
    operator: Operator
    statement: int
    expr_path: tuple  # field names / tuple indices from the statement node
    description: str


@dataclass(frozen=True)
class Mutant:
    id: int
    base_program: ast.Program
    site: MutationSite
    mutated_program: ast.Program
    fault_statement: int
    fault_depth: int

    @property
    def operator(self):
        return self.site.operator


def _walk_expr(e, path):
    yield path, e
    if isinstance(e, ast.Unary):
        yield from _walk_expr(e.operand, path + ("operand",))
    elif isinstance(e, ast.Binary):
        yield from _walk_expr(e.left, path + ("left",))
        yield from _walk_expr(e.right, path + ("right",))
    elif isinstance(e, ast.Call):
        for i, a in enumerate(e.args):
            yield from _walk_expr(a, path + ("args", i))


def _expr_replacements(node):
    """(operator, replacement) pairs for one expression node, in operator order."""
    out = []
    if isinstance(node, ast.Binary):
        if node.op in BOUNDARY:
            out.append((Operator.CONDITIONALS_BOUNDARY, dataclasses.replace(node, op=BOUNDARY[node.op])))
        if node.op in MATH:
            out.append((Operator.MATH, dataclasses.replace(node, op=MATH[node.op])))
        if node.op in NEGATE:
            out.append((Operator.NEGATE_CONDITIONALS, dataclasses.replace(node, op=NEGATE[node.op])))
    elif isinstance(node, ast.Unary) and node.op == "-":
        out.append((Operator.INVERT_NEGATIVES, node.operand))
    return out


def _stmt_replacements(stmt, fn, void_functions):
    """Statement-level (operator, path, replacement) triples."""
    if isinstance(stmt, ast.IncDec):
        flipped = dataclasses.replace(stmt, op="--" if stmt.op == "++" else "++")
        return [(Operator.INCREMENTS, (), flipped)]
    if isinstance(stmt, ast.CallStmt) and stmt.call.func in void_functions:
        return [(Operator.VOID_METHOD_CALLS, (), ast.Skip(stmt.id, stmt.pos))]
    if isinstance(stmt, ast.Return) and stmt.value is not None:
        zero = ZERO[fn.return_type]
        if stmt.value != zero:
            return [(Operator.PRIMITIVE_RETURNS, ("value",), zero)]
    return []


def _describe(stmt, path, old, new):
    if not path:
        return f"{print_stmt_head(stmt)} -> {print_stmt_head(new)}"
    if isinstance(stmt, ast.Return) and path == ("value",):
        return f"return {print_expr(old)}; -> return {print_expr(new)};"
    return f"{print_expr(old)} -> {print_expr(new)}"


def _candidates(program):
    """Yield (site, replacement) for every mutation site in source order."""
    void_functions = {fn.name for fn in program.functions if fn.return_type == ast.VOID}
    for fn in program.functions:
        for stmt, _ in ast.iter_statements(fn.body):
            for op, path, new in _stmt_replacements(stmt, fn, void_functions):
                old = resolve(stmt, path)
                yield MutationSite(op, stmt.id, path, _describe(stmt, path, old, new)), new
            for fname in _EXPR_FIELDS.get(type(stmt), ()):
                root = getattr(stmt, fname)
                if root is None:
                    continue
                for path, node in _walk_expr(root, (fname,)):
                    for op, new in _expr_replacements(node):
                        yield MutationSite(op, stmt.id, path, _describe(stmt, path, node, new)), new


def enumerate_mutation_sites(program) -> list:
    return [site for site, _ in _candidates(program)]


def resolve(node, path):
    for step in path:
        node = node[step] if isinstance(step, int) else getattr(node, step)
    return node


def _replace_at(node, path, new):
    if not path:
        return new
    head, rest = path[0], path[1:]
    if isinstance(head, int):
        items = list(node)
        items[head] = _replace_at(items[head], rest, new)
        return tuple(items)
    return dataclasses.replace(node, **{head: _replace_at(getattr(node, head), rest, new)})


def _replace_statement(program, sid, new_stmt):
    found = []

    def block(b):
        return ast.Block(tuple(stmt(s) for s in b.stmts))

    def stmt(s):
        if s.id == sid:
            found.append(s)
            return new_stmt
        if isinstance(s, ast.If):
            return dataclasses.replace(
                s, then=block(s.then), orelse=None if s.orelse is None else block(s.orelse))
        if isinstance(s, ast.While):
            return dataclasses.replace(s, body=block(s.body))
        return s

    fns = tuple(dataclasses.replace(fn, body=block(fn.body)) for fn in program.functions)
    return dataclasses.replace(program, functions=fns), (found[0] if found else None)


def _find_statement(program, sid):
    for s, depth, fn in ast.iter_program_statements(program):
        if s.id == sid:
            return s, depth, fn
    raise MutationError(f"no statement {sid}")


STATEMENT_OPERATORS = frozenset(
    [Operator.INCREMENTS, Operator.VOID_METHOD_CALLS, Operator.PRIMITIVE_RETURNS])


def mutate_statement(stmt, fn, site, void_functions):
    """The mutated form of ``stmt`` for ``site``; raises MutationError if stale."""
    if site.operator in STATEMENT_OPERATORS:
        for op, path, new in _stmt_replacements(stmt, fn, void_functions):
            if op is site.operator and path == site.expr_path:
                return _replace_at(stmt, path, new)
        raise MutationError(f"stale site {site}")
    try:
        node = resolve(stmt, site.expr_path)
    except (AttributeError, IndexError, TypeError):
        raise MutationError(f"stale site {site}") from None
    for op, new in _expr_replacements(node):
        if op is site.operator:
            return _replace_at(stmt, site.expr_path, new)
    raise MutationError(f"stale site {site}")


def apply_mutation(program, site, mutant_id=0) -> Mutant:
    stmt, depth, fn = _find_statement(program, site.statement)
    void_functions = {f.name for f in program.functions if f.return_type == ast.VOID}
    new_stmt = mutate_statement(stmt, fn, site, void_functions)
    mutated, _ = _replace_statement(program, site.statement, new_stmt)
    return Mutant(mutant_id, program, site, mutated, site.statement, depth)


def generate_all_mutants(program) -> list:
    return [apply_mutation(program, site, i)
            for i, site in enumerate(enumerate_mutation_sites(program))]


def statement_depths(program) -> dict:
    return {info.id: info.nesting_depth for info in enumerate_statements(program)}

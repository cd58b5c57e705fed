"""Canonical pretty printer. Output re-parses to a structurally equal AST."""
from . import ast
from .parser import BINARY_LEVELS

INDENT = "    "
_PREC = {op: i + 1 for i, ops in enumerate(BINARY_LEVELS) for op in ops}
_UNARY_PREC = len(BINARY_LEVELS) + 1
_ATOM_PREC = _UNARY_PREC + 1


def _prec(e):
    if isinstance(e, ast.Binary):
        return _PREC[e.op]
    if isinstance(e, ast.Unary):
        return _UNARY_PREC
    return _ATOM_PREC


def format_float(x: float) -> str:
    text = repr(float(x))
    if "e" not in text and "." not in text:  # pragma: no cover - repr always has one
        text += ".0"
    return text


def print_expr(e) -> str:
    if isinstance(e, ast.IntLit):
        return str(e.value)
    if isinstance(e, ast.FloatLit):
        return format_float(e.value)
    if isinstance(e, ast.BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, ast.Name):
        return e.ident
    if isinstance(e, ast.Call):
        return f"{e.func}({', '.join(print_expr(a) for a in e.args)})"
    if isinstance(e, ast.Unary):
        inner = print_expr(e.operand)
        # wrap nested unaries too, so "- -x" never lexes as "--"
        if _prec(e.operand) < _ATOM_PREC:
            inner = f"({inner})"
        return e.op + inner
    if isinstance(e, ast.Binary):
        p = _PREC[e.op]
        left = print_expr(e.left)
        if _prec(e.left) < p:
            left = f"({left})"
        right = print_expr(e.right)
        if _prec(e.right) <= p:
            right = f"({right})"
        return f"{left} {e.op} {right}"
    raise TypeError(f"not an expression: {e!r}")


def print_stmt_head(s) -> str:
    """One-line rendering of a statement (headers only for if/while)."""
    if isinstance(s, ast.Declare):
        return f"let {s.name}: {s.type} = {print_expr(s.value)};"
    if isinstance(s, ast.Assign):
        return f"{s.name} = {print_expr(s.value)};"
    if isinstance(s, ast.IncDec):
        return f"{s.name}{s.op};"
    if isinstance(s, ast.If):
        return f"if ({print_expr(s.cond)}) {{"
    if isinstance(s, ast.While):
        return f"while ({print_expr(s.cond)}) {{"
    if isinstance(s, ast.CallStmt):
        return print_expr(s.call) + ";"
    if isinstance(s, ast.Return):
        return "return;" if s.value is None else f"return {print_expr(s.value)};"
    if isinstance(s, ast.Skip):
        return ";"
    raise TypeError(f"not a statement: {s!r}")


def _block_lines(block, level, out):
    for s in block.stmts:
        pad = INDENT * level
        out.append(pad + print_stmt_head(s))
        if isinstance(s, ast.If):
            _block_lines(s.then, level + 1, out)
            if s.orelse is not None:
                out.append(pad + "} else {")
                _block_lines(s.orelse, level + 1, out)
            out.append(pad + "}")
        elif isinstance(s, ast.While):
            _block_lines(s.body, level + 1, out)
            out.append(pad + "}")


def print_function(fn) -> list:
    params = ", ".join(f"{p.name}: {p.type}" for p in fn.params)
    ret = "" if fn.return_type == ast.VOID else f": {fn.return_type}"
    lines = [f"fn {fn.name}({params}){ret} {{"]
    _block_lines(fn.body, 1, lines)
    lines.append("}")
    return lines


def pretty_print(program) -> str:
    chunks = ["\n".join(print_function(fn)) for fn in program.functions]
    return "\n\n".join(chunks) + "\n"

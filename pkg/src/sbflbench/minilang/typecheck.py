"""Static, monomorphic type checking. No implicit coercions anywhere."""
from . import ast
from .errors import TypeCheckError

NUMERIC = (ast.INT, ast.FLOAT)
ARITH_OPS = ("+", "-", "*", "/", "%")
ORDER_OPS = ("<", "<=", ">", ">=")
EQ_OPS = ("==", "!=")
LOGIC_OPS = ("&&", "||")


def _err(msg, node):
    line, col = getattr(node, "pos", (0, 0))
    raise TypeCheckError(msg, line, col)


class _Checker:
    def __init__(self, program):
        self.sigs = {}
        for fn in program.functions:
            if fn.name in self.sigs:
                _err(f"duplicate function {fn.name!r}", fn)
            self.sigs[fn.name] = fn.signature
        self.program = program

    def run(self):
        for fn in self.program.functions:
            self.function(fn)

    def function(self, fn):
        scope = {}
        for p in fn.params:
            if p.name in scope:
                _err(f"duplicate parameter {p.name!r} in {fn.name!r}", fn)
            scope[p.name] = p.type
        self.fn = fn
        self.scopes = [scope]
        self.block(fn.body)
        if fn.return_type != ast.VOID and not always_returns(fn.body):
            _err(f"function {fn.name!r} is missing a return on some path", fn)

    def lookup(self, name, node):
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        _err(f"undefined identifier {name!r}", node)

    def block(self, block):
        self.scopes.append({})
        for stmt in block.stmts:
            self.statement(stmt)
        self.scopes.pop()

    def statement(self, s):
        if isinstance(s, ast.Declare):
            t = self.expr(s.value)
            if t != s.type:
                _err(f"cannot initialise {s.type} variable {s.name!r} with {t}", s)
            if any(s.name in scope for scope in self.scopes):
                _err(f"redeclaration of {s.name!r}", s)
            self.scopes[-1][s.name] = s.type
        elif isinstance(s, ast.Assign):
            vt = self.lookup(s.name, s)
            t = self.expr(s.value)
            if t != vt:
                _err(f"cannot assign {t} to {vt} variable {s.name!r}", s)
        elif isinstance(s, ast.IncDec):
            if self.lookup(s.name, s) not in NUMERIC:
                _err(f"{s.op} needs a numeric variable", s)
        elif isinstance(s, ast.If):
            self.condition(s.cond)
            self.block(s.then)
            if s.orelse is not None:
                self.block(s.orelse)
        elif isinstance(s, ast.While):
            self.condition(s.cond)
            self.block(s.body)
        elif isinstance(s, ast.CallStmt):
            self.call(s.call, allow_void=True)
        elif isinstance(s, ast.Return):
            rt = self.fn.return_type
            if s.value is None:
                if rt != ast.VOID:
                    _err(f"function {self.fn.name!r} must return {rt}", s)
            else:
                if rt == ast.VOID:
                    _err(f"void function {self.fn.name!r} cannot return a value", s)
                t = self.expr(s.value)
                if t != rt:
                    _err(f"return type mismatch: expected {rt}, got {t}", s)
        elif isinstance(s, ast.Skip):
            pass
        else:  # pragma: no cover
            raise TypeError(f"unknown statement {s!r}")

    def condition(self, e):
        t = self.expr(e)
        if t != ast.BOOL:
            _err(f"condition must be bool, got {t}", e)

    def call(self, c, allow_void=False):
        if c.func not in self.sigs:
            _err(f"undefined function {c.func!r}", c)
        ptypes, rtype = self.sigs[c.func]
        if len(ptypes) != len(c.args):
            _err(f"{c.func!r} expects {len(ptypes)} arguments, got {len(c.args)}", c)
        for i, (pt, arg) in enumerate(zip(ptypes, c.args)):
            at = self.expr(arg)
            if at != pt:
                _err(f"argument {i + 1} of {c.func!r}: expected {pt}, got {at}", arg)
        if rtype == ast.VOID and not allow_void:
            _err(f"void function {c.func!r} used as a value", c)
        return rtype

    def expr(self, e):
        if isinstance(e, ast.IntLit):
            return ast.INT
        if isinstance(e, ast.FloatLit):
            return ast.FLOAT
        if isinstance(e, ast.BoolLit):
            return ast.BOOL
        if isinstance(e, ast.Name):
            return self.lookup(e.ident, e)
        if isinstance(e, ast.Call):
            return self.call(e)
        if isinstance(e, ast.Unary):
            t = self.expr(e.operand)
            if e.op == "-" and t in NUMERIC:
                return t
            if e.op == "!" and t == ast.BOOL:
                return t
            _err(f"bad operand type {t} for unary {e.op}", e)
        if isinstance(e, ast.Binary):
            lt, rt = self.expr(e.left), self.expr(e.right)
            if lt != rt:
                _err(f"operands of {e.op} differ in type: {lt} vs {rt}", e)
            if e.op in ARITH_OPS and lt in NUMERIC:
                return lt
            if e.op in ORDER_OPS and lt in NUMERIC:
                return ast.BOOL
            if e.op in EQ_OPS:
                return ast.BOOL
            if e.op in LOGIC_OPS and lt == ast.BOOL:
                return ast.BOOL
            _err(f"bad operand type {lt} for {e.op}", e)
        raise TypeError(f"unknown expression {e!r}")  # pragma: no cover


def always_returns(block) -> bool:
    """Conservative: loops never count, an if counts only with both arms returning."""
    for s in block.stmts:
        if isinstance(s, ast.Return):
            return True
        if isinstance(s, ast.If) and s.orelse is not None:
            if always_returns(s.then) and always_returns(s.orelse):
                return True
    return False


def check_program(program):
    _Checker(program).run()
    return program


def expr_type(program, fn, expr, scope):
    """Type of ``expr`` given a name->type mapping; used by tooling, not the parser."""
    c = _Checker(program)
    c.fn = fn
    c.scopes = [dict(scope)]
    return c.expr(expr)

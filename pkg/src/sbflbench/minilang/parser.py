"""Recursive-descent parser for MiniLang.

Statement ids are handed out in pre-order while parsing (an ``if`` header is
numbered before anything in its arms), so ids are dense from 0 across the
whole compilation unit.
"""
from . import ast
from .errors import ParseError
from .lexer import tokenize

INT_MAX = 2**63 - 1

# lowest to highest precedence; all binary levels are left-associative
BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("==", "!="),
    ("<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/", "%"),
)


class _Parser:
    def __init__(self, source):
        self.tokens = tokenize(source)
        self.i = 0
        self.next_id = 0

    # -- token helpers

    @property
    def tok(self):
        return self.tokens[self.i]

    def at(self, text, kind=None):
        t = self.tok
        return t.text == text and t.kind in ((kind,) if kind else ("op", "kw"))

    def advance(self):
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, text, what=None):
        if not self.at(text):
            self.fail(what or repr(text))
        return self.advance()

    def expect_ident(self, what="identifier"):
        if self.tok.kind != "ident":
            self.fail(what)
        return self.advance()

    def fail(self, expected):
        t = self.tok
        raise ParseError(f"expected {expected}, found {t.describe()}", t.line, t.col)

    def new_id(self):
        sid = self.next_id
        self.next_id += 1
        return sid

    # -- declarations

    def program(self, source_name):
        functions = []
        while self.tok.kind != "eof":
            functions.append(self.function())
        return ast.Program(tuple(functions), source_name)

    def function(self):
        start = self.expect("fn", "'fn'")
        name = self.expect_ident("function name").text
        self.expect("(")
        params = []
        if not self.at(")"):
            while True:
                pname = self.expect_ident("parameter name").text
                self.expect(":")
                ptype = self.type_name(allow_void=False)
                params.append(ast.Param(pname, ptype))
                if not self.at(","):
                    break
                self.advance()
        self.expect(")")
        rtype = ast.VOID
        if self.at(":"):
            self.advance()
            rtype = self.type_name(allow_void=True)
        body = self.block()
        return ast.FunctionDecl(name, tuple(params), rtype, body, (start.line, start.col))

    def type_name(self, allow_void):
        t = self.tok
        allowed = ast.PRIMITIVE_TYPES + ((ast.VOID,) if allow_void else ())
        if t.kind == "kw" and t.text in allowed:
            self.advance()
            return t.text
        self.fail("type (" + ", ".join(allowed) + ")")

    # -- statements

    def block(self):
        self.expect("{")
        stmts = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                self.fail("'}'")
            stmts.append(self.statement())
        self.advance()
        return ast.Block(tuple(stmts))

    def statement(self):
        t = self.tok
        pos = (t.line, t.col)
        if self.at("let"):
            self.advance()
            sid = self.new_id()
            name = self.expect_ident("variable name").text
            self.expect(":")
            vtype = self.type_name(allow_void=False)
            self.expect("=")
            value = self.expr()
            self.expect(";")
            return ast.Declare(sid, name, vtype, value, pos)
        if self.at("if"):
            return self.if_statement()
        if self.at("while"):
            self.advance()
            sid = self.new_id()
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            return ast.While(sid, cond, self.block(), pos)
        if self.at("return"):
            self.advance()
            sid = self.new_id()
            value = None if self.at(";") else self.expr()
            self.expect(";")
            return ast.Return(sid, value, pos)
        if self.at(";"):
            self.advance()
            return ast.Skip(self.new_id(), pos)
        if t.kind == "ident":
            sid = self.new_id()
            self.advance()
            if self.at("="):
                self.advance()
                value = self.expr()
                self.expect(";")
                return ast.Assign(sid, t.text, value, pos)
            if self.at("++") or self.at("--"):
                op = self.advance().text
                self.expect(";")
                return ast.IncDec(sid, t.text, op, pos)
            if self.at("("):
                call = self.call_rest(t)
                self.expect(";")
                return ast.CallStmt(sid, call, pos)
            self.fail("'=', '++', '--' or '(' after identifier")
        self.fail("statement")

    def if_statement(self):
        t = self.expect("if")
        sid = self.new_id()
        self.expect("(")
        cond = self.expr()
        self.expect(")")
        then = self.block()
        orelse = None
        if self.at("else"):
            self.advance()
            if self.at("if"):
                # else-if is sugar for an else block holding one if
                orelse = ast.Block((self.if_statement(),))
            else:
                orelse = self.block()
        return ast.If(sid, cond, then, orelse, (t.line, t.col))

    # -- expressions

    def expr(self, level=0):
        if level == len(BINARY_LEVELS):
            return self.unary()
        left = self.expr(level + 1)
        ops = BINARY_LEVELS[level]
        while self.tok.kind == "op" and self.tok.text in ops:
            t = self.advance()
            right = self.expr(level + 1)
            left = ast.Binary(t.text, left, right, (t.line, t.col))
        return left

    def unary(self):
        t = self.tok
        if t.kind == "op" and t.text in ("-", "!"):
            self.advance()
            return ast.Unary(t.text, self.unary(), (t.line, t.col))
        return self.primary()

    def primary(self):
        t = self.tok
        pos = (t.line, t.col)
        if t.kind == "int":
            self.advance()
            value = int(t.text)
            if value > INT_MAX:
                raise ParseError("integer literal out of range", t.line, t.col)
            return ast.IntLit(value, pos)
        if t.kind == "float":
            self.advance()
            return ast.FloatLit(float(t.text), pos)
        if t.kind == "kw" and t.text in ("true", "false"):
            self.advance()
            return ast.BoolLit(t.text == "true", pos)
        if t.kind == "ident":
            self.advance()
            if self.at("("):
                return self.call_rest(t)
            return ast.Name(t.text, pos)
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        self.fail("expression")

    def call_rest(self, name_tok):
        self.expect("(")
        args = []
        if not self.at(")"):
            while True:
                args.append(self.expr())
                if not self.at(","):
                    break
                self.advance()
        self.expect(")")
        return ast.Call(name_tok.text, tuple(args), (name_tok.line, name_tok.col))


def parse(source: str, source_name: str = "<string>", check: bool = True) -> ast.Program:
    """Parse and (by default) type-check a MiniLang compilation unit.

    Raises ParseError or TypeCheckError carrying line and column.
    """
    program = _Parser(source).program(source_name)
    if check:
        from .typecheck import check_program
        check_program(program)
    return program


def parse_file(path) -> ast.Program:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), source_name=str(path))

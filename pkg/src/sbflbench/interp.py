"""Deterministic tree-walking evaluator with coverage instrumentation.

Every executed statement id and every evaluated branch arm is recorded,
including those reached before a failure. Statement hits are binary (sets);
per-statement hit counts are not kept.

Integers are 64-bit two's complement (wrapping), integer division truncates
toward zero, and ``%`` takes the sign of the dividend. Division or modulo by
zero is a runtime failure for both ints and floats.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .minilang import ast
from .minilang.analysis import branch_map, enumerate_branches, enumerate_statements

DEFAULT_STEP_LIMIT = 1_000_000
FLOAT_TOLERANCE = 1e-9
MAX_CALL_DEPTH = 200

if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)


class Verdict(str, Enum):
    PASS = "pass"
    FAIL_ASSERTION = "fail_assertion"
    FAIL_RUNTIME = "fail_runtime"
    FAIL_TIMEOUT = "fail_timeout"


class SuiteConfigError(ValueError):
    """A test case does not fit the program (missing function, bad signature)."""


class CoverageError(ValueError):
    pass


@dataclass(frozen=True)
class Returns:
    value: object


@dataclass(frozen=True)
class RunsWithoutError:
    pass


RUNS = RunsWithoutError()


@dataclass(frozen=True)
class TestCase:
    name: str
    target_function: str
    args: tuple = ()
    expectation: object = RUNS

    __test__ = False  # keep pytest from collecting this class


@dataclass(frozen=True)
class TestSuite:
    name: str
    origin: str = "other"  # manual | generated | other
    cases: tuple = ()

    __test__ = False

    def __post_init__(self):
        names = [c.name for c in self.cases]
        if len(set(names)) != len(names):
            raise SuiteConfigError(f"duplicate case names in suite {self.name!r}")
        if self.origin not in ("manual", "generated", "other"):
            raise SuiteConfigError(f"unknown origin {self.origin!r}")

    def extended(self, cases, name=None):
        return TestSuite(name or self.name, self.origin, self.cases + tuple(cases))


@dataclass(frozen=True)
class TestExecution:
    case_name: str
    verdict: Verdict
    statements_hit: frozenset
    branches_hit: frozenset
    steps_used: int
    returned: object = None
    error: Optional[str] = None

    __test__ = False

    @property
    def passed(self):
        return self.verdict is Verdict.PASS


@dataclass(frozen=True)
class CoverageSpectrum:
    program_id: str
    suite_name: str
    executions: tuple
    statement_universe: tuple
    branch_universe: tuple = field(default=())

    @property
    def failed_count(self):
        return sum(not e.passed for e in self.executions)


def value_type(v):
    if isinstance(v, bool):
        return ast.BOOL
    if isinstance(v, int):
        return ast.INT
    if isinstance(v, float):
        return ast.FLOAT
    raise SuiteConfigError(f"unsupported value {v!r}")


def values_match(expected, actual):
    if actual is None or value_type(expected) != value_type(actual):
        return False
    if isinstance(expected, float):
        return abs(expected - actual) <= FLOAT_TOLERANCE
    return expected == actual


def check_case(program, case):
    """Raise SuiteConfigError unless ``case`` fits the program's signature."""
    try:
        fn = program.function(case.target_function)
    except KeyError:
        raise SuiteConfigError(
            f"case {case.name!r}: no function {case.target_function!r}") from None
    if len(fn.params) != len(case.args):
        raise SuiteConfigError(
            f"case {case.name!r}: {fn.name} takes {len(fn.params)} args, got {len(case.args)}")
    for p, a in zip(fn.params, case.args):
        if value_type(a) != p.type:
            raise SuiteConfigError(
                f"case {case.name!r}: parameter {p.name} is {p.type}, got {value_type(a)}")
    exp = case.expectation
    if isinstance(exp, Returns):
        if fn.return_type == ast.VOID:
            raise SuiteConfigError(f"case {case.name!r}: {fn.name} returns nothing")
        if value_type(exp.value) != fn.return_type:
            raise SuiteConfigError(
                f"case {case.name!r}: expected value is not {fn.return_type}")
    return fn


# -- evaluator ----------------------------------------------------------------

class _Timeout(Exception):
    pass


class _Fault(Exception):
    pass


_I64 = 2**64
_I64_HALF = 2**63


def _wrap(v):
    if -_I64_HALF <= v < _I64_HALF:
        return v
    return ((v + _I64_HALF) % _I64) - _I64_HALF


def _trunc_div(a, b):
    q = abs(a) // abs(b)
    return -q if (a < 0) != (b < 0) else q


def _div(a, b):
    if b == 0:
        raise _Fault("division by zero")
    if isinstance(a, float):
        return a / b
    return _wrap(_trunc_div(a, b))


def _mod(a, b):
    if b == 0:
        raise _Fault("modulo by zero")
    if isinstance(a, float):
        return math.fmod(a, b)
    return a - b * _trunc_div(a, b)


def _add(a, b):
    r = a + b
    return r if isinstance(r, float) else _wrap(r)


def _sub(a, b):
    r = a - b
    return r if isinstance(r, float) else _wrap(r)


def _mul(a, b):
    r = a * b
    return r if isinstance(r, float) else _wrap(r)


_BINOPS = {
    "+": _add, "-": _sub, "*": _mul, "/": _div, "%": _mod,
    "<": lambda a, b: a < b, "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b, ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b, "!=": lambda a, b: a != b,
}


class _Machine:
    def __init__(self, program, step_limit, branches=None):
        self.functions = {fn.name: fn for fn in program.functions}
        self.branches = branch_map(program) if branches is None else branches
        self.step_limit = step_limit
        self.steps = 0
        self.depth = 0
        self.hits = set()
        self.arms = set()
        self._exec = {
            ast.Declare: self._declare, ast.Assign: self._assign,
            ast.IncDec: self._incdec, ast.If: self._if, ast.While: self._while,
            ast.CallStmt: self._callstmt, ast.Return: self._return,
            ast.Skip: lambda s, env: None,
        }
        self._eval = {
            ast.IntLit: lambda e, env: e.value, ast.FloatLit: lambda e, env: e.value,
            ast.BoolLit: lambda e, env: e.value, ast.Name: lambda e, env: env[e.ident],
            ast.Unary: self._unary, ast.Binary: self._binary, ast.Call: self._call,
        }

    # statements return None, or a 1-tuple holding the function's return value

    def block(self, block, env):
        ex = self._exec
        for s in block.stmts:
            self.hits.add(s.id)
            self.steps += 1
            if self.steps > self.step_limit:
                raise _Timeout()
            r = ex[type(s)](s, env)
            if r is not None:
                return r
        return None

    def _declare(self, s, env):
        env[s.name] = self.eval(s.value, env)

    def _assign(self, s, env):
        env[s.name] = self.eval(s.value, env)

    def _incdec(self, s, env):
        v = env[s.name]
        env[s.name] = _add(v, 1 if isinstance(v, int) else 1.0) if s.op == "++" \
            else _sub(v, 1 if isinstance(v, int) else 1.0)

    def _if(self, s, env):
        taken = self.eval(s.cond, env)
        t, f = self.branches[s.id]
        if taken:
            self.arms.add(t)
            return self.block(s.then, env)
        self.arms.add(f)
        if s.orelse is not None:
            return self.block(s.orelse, env)
        return None

    def _while(self, s, env):
        t, f = self.branches[s.id]
        first = True
        while True:
            if not first:
                # re-evaluating the header is another execution of the statement
                self.steps += 1
                if self.steps > self.step_limit:
                    raise _Timeout()
            first = False
            if not self.eval(s.cond, env):
                self.arms.add(f)
                return None
            self.arms.add(t)
            r = self.block(s.body, env)
            if r is not None:
                return r

    def _callstmt(self, s, env):
        self._call(s.call, env)

    def _return(self, s, env):
        return (None if s.value is None else self.eval(s.value, env),)

    def eval(self, e, env):
        return self._eval[type(e)](e, env)

    def _unary(self, e, env):
        v = self.eval(e.operand, env)
        if e.op == "!":
            return not v
        return -v if isinstance(v, float) else _wrap(-v)

    def _binary(self, e, env):
        op = e.op
        if op == "&&":
            return bool(self.eval(e.left, env)) and bool(self.eval(e.right, env))
        if op == "||":
            return bool(self.eval(e.left, env)) or bool(self.eval(e.right, env))
        return _BINOPS[op](self.eval(e.left, env), self.eval(e.right, env))

    def _call(self, e, env):
        args = [self.eval(a, env) for a in e.args]
        return self.invoke(self.functions[e.func], args)

    def invoke(self, fn, args):
        if self.depth >= MAX_CALL_DEPTH:
            raise _Fault("call depth exceeded")
        self.depth += 1
        try:
            r = self.block(fn.body, {p.name: a for p, a in zip(fn.params, args)})
        finally:
            self.depth -= 1
        return None if r is None else r[0]


def run_test(program, case, step_limit=DEFAULT_STEP_LIMIT, _branches=None) -> TestExecution:
    """Execute one test case. Signature problems raise SuiteConfigError."""
    if step_limit < 1:
        raise ValueError("step_limit must be positive")
    fn = check_case(program, case)
    m = _Machine(program, step_limit, _branches)
    returned, error = None, None
    try:
        returned = m.invoke(fn, list(case.args))
    except _Timeout:
        verdict, error = Verdict.FAIL_TIMEOUT, f"step limit {step_limit} exceeded"
    except _Fault as exc:
        verdict, error = Verdict.FAIL_RUNTIME, str(exc)
    else:
        exp = case.expectation
        if isinstance(exp, Returns) and not values_match(exp.value, returned):
            verdict = Verdict.FAIL_ASSERTION
            error = f"expected {exp.value!r}, got {returned!r}"
        else:
            verdict = Verdict.PASS
    return TestExecution(
        case.name, verdict, frozenset(m.hits), frozenset(m.arms),
        min(m.steps, step_limit + 1), returned, error,
    )


def run_suite(program, suite, step_limit=DEFAULT_STEP_LIMIT, program_id=None) -> CoverageSpectrum:
    if not suite.cases:
        raise SuiteConfigError(f"suite {suite.name!r} has no cases")
    for case in suite.cases:
        check_case(program, case)
    branches = branch_map(program)
    executions = tuple(run_test(program, c, step_limit, branches) for c in suite.cases)
    return make_spectrum(program, suite.name, executions, program_id)


def make_spectrum(program, suite_name, executions, program_id=None):
    return CoverageSpectrum(
        program_id or program.source_name,
        suite_name,
        tuple(executions),
        tuple(s.id for s in enumerate_statements(program)),
        tuple(b.id for b in enumerate_branches(program)),
    )


def statement_coverage(spectrum) -> float:
    if not spectrum.statement_universe:
        raise CoverageError("empty statement universe")
    hit = set().union(*(e.statements_hit for e in spectrum.executions))
    return len(hit & set(spectrum.statement_universe)) / len(spectrum.statement_universe)


def branch_coverage(spectrum) -> float:
    if not spectrum.branch_universe:
        return 1.0
    hit = set().union(*(e.branches_hit for e in spectrum.executions))
    return len(hit & set(spectrum.branch_universe)) / len(spectrum.branch_universe)

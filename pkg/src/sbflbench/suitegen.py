"""Coverage-guided random test generation and coverage-preserving minimization.

A stand-in for search-based generators at desk scale: random inputs, a
regression oracle taken from the (fixed) program itself, and a greedy
keep-if-coverage-grows rule. No genetic search.
"""
import math
import random
from dataclasses import dataclass

from . import interp
from .interp import DEFAULT_STEP_LIMIT, RUNS, Returns, TestCase, TestSuite, Verdict
from .minilang import ast
from .minilang.analysis import branch_map, enumerate_branches, enumerate_statements

BOUNDARY_PROBABILITY = 0.25


class GenerationError(RuntimeError):
    def __init__(self, message, attempts, statement_coverage, branch_coverage):
        super().__init__(message)
        self.attempts = attempts
        self.statement_coverage = statement_coverage
        self.branch_coverage = branch_coverage


@dataclass(frozen=True)
class GenConfig:
    seed: int = 42
    budget: int = 200
    per_function: bool = False  # round-robin over functions instead of uniform draws
    int_range: tuple = (-100, 100)
    float_range: tuple = (-100.0, 100.0)
    step_limit: int = DEFAULT_STEP_LIMIT

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.int_range[0] > self.int_range[1] or self.float_range[0] > self.float_range[1]:
            raise ValueError("range lower bound exceeds upper bound")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def _sample_int(rng, lo, hi):
    if rng.random() < BOUNDARY_PROBABILITY:
        picks = [v for v in (lo, -1, 0, 1, hi) if lo <= v <= hi]
        return rng.choice(picks)
    return rng.randint(lo, hi)


def _sample_float(rng, lo, hi):
    if rng.random() < BOUNDARY_PROBABILITY:
        picks = [v for v in (lo, -1.0, 0.0, 1.0, hi) if lo <= v <= hi]
        return float(rng.choice(picks))
    return rng.uniform(lo, hi)


def sample_args(rng, fn, cfg):
    args = []
    for p in fn.params:
        if p.type == ast.INT:
            args.append(_sample_int(rng, *cfg.int_range))
        elif p.type == ast.FLOAT:
            args.append(_sample_float(rng, *cfg.float_range))
        else:
            args.append(rng.random() < 0.5)
    return tuple(args)


def generate_suite(program, cfg=GenConfig(), name=None) -> TestSuite:
    rng = random.Random(cfg.seed)
    functions = program.functions
    branches = branch_map(program)
    n_stmts = len(enumerate_statements(program))
    n_branches = len(enumerate_branches(program))
    covered_s, covered_b = set(), set()
    kept = []
    for attempt in range(cfg.budget):
        if cfg.per_function:
            fn = functions[attempt % len(functions)]
        else:
            fn = functions[rng.randrange(len(functions))]
        args = sample_args(rng, fn, cfg)
        probe = TestCase("probe", fn.name, args, RUNS)
        ex = interp.run_test(program, probe, cfg.step_limit, branches)
        if ex.verdict is not Verdict.PASS:
            continue
        if isinstance(ex.returned, float) and not math.isfinite(ex.returned):
            continue
        if ex.statements_hit <= covered_s and ex.branches_hit <= covered_b:
            continue
        covered_s |= ex.statements_hit
        covered_b |= ex.branches_hit
        expectation = RUNS if fn.return_type == ast.VOID else Returns(ex.returned)
        kept.append(TestCase(f"gen_{len(kept):04d}", fn.name, args, expectation))
        if len(covered_s) == n_stmts and len(covered_b) == n_branches:
            break
    if not kept:
        raise GenerationError(
            f"no passing test case found in {cfg.budget} attempts",
            cfg.budget, len(covered_s) / max(n_stmts, 1),
            len(covered_b) / n_branches if n_branches else 1.0,
        )
    name = name or f"{_stem(program.source_name)}_generated"
    return TestSuite(name, "generated", tuple(kept))


def _stem(source_name):
    base = source_name.replace("\\", "/").rsplit("/", 1)[-1]
    return base[:-5] if base.endswith(".mini") else base


def minimize_suite(program, suite, step_limit=DEFAULT_STEP_LIMIT) -> TestSuite:
    """Backward greedy pass: drop a case if the rest keeps the same union coverage."""
    spectrum = interp.run_suite(program, suite, step_limit)
    hits = [(e.statements_hit, e.branches_hit) for e in spectrum.executions]
    full_s = set().union(*(h[0] for h in hits))
    full_b = set().union(*(h[1] for h in hits))
    keep = list(range(len(suite.cases)))
    for i in reversed(range(len(suite.cases))):
        rest = [k for k in keep if k != i]
        if not rest:
            break
        rest_s = set().union(*(hits[k][0] for k in rest))
        rest_b = set().union(*(hits[k][1] for k in rest))
        if rest_s == full_s and rest_b == full_b:
            keep = rest
    return TestSuite(suite.name, suite.origin, tuple(suite.cases[k] for k in keep))

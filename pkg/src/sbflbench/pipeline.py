"""Mutant-based SBFL scoring of a test suite, and paired suite comparison.

For each mutant the suite is run, Ochiai suspiciousness is computed, and the
rank of the mutated statement is normalised into an rScore. The SBFL score
of a (program, suite) pair is the mean rScore over killed mutants. Survived
mutants carry no rScore (all suspiciousness is zero when nothing fails) and
are counted as exclusions instead.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import interp, sbfl
from .interp import DEFAULT_STEP_LIMIT
from .minilang.analysis import branch_map
from .mutation import generate_all_mutants
from .stats import summarize

SURVIVED = "survived"


@dataclass(frozen=True)
class MutantResult:
    mutant_id: int
    operator: str
    fault_statement: int
    fault_depth: int
    killed: bool
    fault_in_universe: bool
    rank: Optional[int]
    universe_size: int
    rscore: Optional[float]
    exclusion_reason: Optional[str] = None


@dataclass(frozen=True)
class SbflScoreResult:
    program_id: str
    suite_name: str
    mutant_results: tuple
    sbfl_score: Optional[float]  # None when no mutant was killed
    mutants_total: int
    mutants_killed: int
    mutants_excluded: int
    by_depth: dict = field(default_factory=dict)  # depth -> DistributionSummary
    by_operator: dict = field(default_factory=dict)  # operator -> DistributionSummary
    diagnostic: Optional[str] = None

    @property
    def scored(self):
        return [r for r in self.mutant_results if r.rscore is not None]


@dataclass(frozen=True)
class SuiteComparison:
    program_id: str
    suite_a: str
    suite_b: str
    statement_coverage_a: float
    statement_coverage_b: float
    branch_coverage_a: float
    branch_coverage_b: float
    score_a: SbflScoreResult
    score_b: SbflScoreResult
    paired: tuple  # (mutant_id, depth, operator, rscore_a, rscore_b), killed by both
    killed_only_a: int
    killed_only_b: int


def mutant_spectrum(mutant, suite, step_limit=DEFAULT_STEP_LIMIT, baseline=None):
    """Run ``suite`` on the mutant.

    With ``baseline`` (executions of the same suite on the base program),
    tests that never reached the mutated statement are reused unchanged: the
    programs differ only there, so such runs are identical by determinism.
    """
    program = mutant.mutated_program
    branches = branch_map(program)
    execs = []
    for i, case in enumerate(suite.cases):
        if baseline is not None and mutant.fault_statement not in baseline[i].statements_hit:
            execs.append(baseline[i])
        else:
            execs.append(interp.run_test(program, case, step_limit, branches))
    return interp.make_spectrum(program, suite.name, execs)


def result_from_spectrum(mutant, spectrum) -> MutantResult:
    killed = any(not e.passed for e in spectrum.executions)
    table = sbfl.build_table(spectrum)
    universe = len(table.executed_statements)
    op = mutant.operator.value
    if not killed:
        return MutantResult(mutant.id, op, mutant.fault_statement, mutant.fault_depth,
                            False, mutant.fault_statement in table.executed_statements,
                            None, universe, None, SURVIVED)
    ranked = sbfl.rank_statements(table)
    in_universe, rank, score = sbfl.fault_rscore(ranked, mutant.fault_statement)
    return MutantResult(mutant.id, op, mutant.fault_statement, mutant.fault_depth,
                        True, in_universe, rank, universe, score)


def evaluate_mutant(mutant, suite, step_limit=DEFAULT_STEP_LIMIT, baseline=None) -> MutantResult:
    return result_from_spectrum(mutant, mutant_spectrum(mutant, suite, step_limit, baseline))


# -- parallel evaluation -------------------------------------------------------

_worker_state = {}


def _init_worker(mutants, suite, step_limit, baseline):
    _worker_state.update(mutants=mutants, suite=suite, step_limit=step_limit, baseline=baseline)


def _evaluate_index(i):
    st = _worker_state
    return evaluate_mutant(st["mutants"][i], st["suite"], st["step_limit"], st["baseline"])


def evaluate_mutants(mutants, suite, step_limit=DEFAULT_STEP_LIMIT, baseline=None, jobs=1):
    """Evaluate every mutant; results are ordered by mutant id whatever ``jobs`` is."""
    if jobs <= 1 or len(mutants) < 2:
        results = [evaluate_mutant(m, suite, step_limit, baseline) for m in mutants]
    else:
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_worker,
            initargs=(list(mutants), suite, step_limit, baseline),
        ) as pool:
            chunk = max(1, len(mutants) // (4 * jobs))
            results = list(pool.map(_evaluate_index, range(len(mutants)), chunksize=chunk))
    return sorted(results, key=lambda r: r.mutant_id)


def aggregate(program_id, suite_name, results) -> SbflScoreResult:
    scored = [r for r in results if r.rscore is not None]
    by_depth, by_op = {}, {}
    for r in scored:
        by_depth.setdefault(r.fault_depth, []).append(r.rscore)
        by_op.setdefault(r.operator, []).append(r.rscore)
    killed = sum(r.killed for r in results)
    if scored:
        score, diag = math.fsum(r.rscore for r in scored) / len(scored), None
    else:
        score, diag = None, f"no mutant of {program_id} was killed by {suite_name}"
    return SbflScoreResult(
        program_id, suite_name, tuple(results), score, len(results), killed,
        len(results) - killed,
        {d: summarize(v) for d, v in sorted(by_depth.items())},
        {o: summarize(v) for o, v in sorted(by_op.items())},
        diag,
    )


def score_mutants(program_id, mutants, suite, baseline, step_limit=DEFAULT_STEP_LIMIT, jobs=1):
    results = evaluate_mutants(mutants, suite, step_limit, baseline, jobs)
    return aggregate(program_id, suite.name, results)


def sbfl_score(program, suite, step_limit=DEFAULT_STEP_LIMIT, jobs=1, program_id=None,
               mutants=None) -> SbflScoreResult:
    program_id = program_id or program.source_name
    if mutants is None:
        mutants = generate_all_mutants(program)
    if not mutants:
        raise ValueError(f"{program_id} has no mutation sites")
    baseline = interp.run_suite(program, suite, step_limit).executions
    return score_mutants(program_id, mutants, suite, baseline, step_limit, jobs)


def compare_suites(program, suite_a, suite_b, step_limit=DEFAULT_STEP_LIMIT, jobs=1,
                   program_id=None) -> SuiteComparison:
    program_id = program_id or program.source_name
    mutants = generate_all_mutants(program)
    if not mutants:
        raise ValueError(f"{program_id} has no mutation sites")
    spec_a = interp.run_suite(program, suite_a, step_limit, program_id)
    spec_b = interp.run_suite(program, suite_b, step_limit, program_id)
    res_a = score_mutants(program_id, mutants, suite_a, spec_a.executions, step_limit, jobs)
    res_b = score_mutants(program_id, mutants, suite_b, spec_b.executions, step_limit, jobs)
    paired = []
    only_a = only_b = 0
    for ra, rb in zip(res_a.mutant_results, res_b.mutant_results):
        if ra.killed and rb.killed:
            paired.append((ra.mutant_id, ra.fault_depth, ra.operator, ra.rscore, rb.rscore))
        elif ra.killed:
            only_a += 1
        elif rb.killed:
            only_b += 1
    return SuiteComparison(
        program_id, suite_a.name, suite_b.name,
        interp.statement_coverage(spec_a), interp.statement_coverage(spec_b),
        interp.branch_coverage(spec_a), interp.branch_coverage(spec_b),
        res_a, res_b, tuple(paired), only_a, only_b,
    )

"""Independent re-implementations used as test oracles.

Nothing here imports sbflbench.sbfl, sbflbench.pipeline or sbflbench.stats;
only the interpreter is shared, and mutants are re-run from scratch (no
baseline reuse).
"""
import functools
import itertools
import math
from fractions import Fraction

from sbflbench import interp


def executions(program, suite, step_limit):
    return [interp.run_test(program, case, step_limit) for case in suite.cases]


def fault_rank(execs, fault):
    """(killed, rank, universe, rscore) for one mutant's raw executions."""
    failed = [e for e in execs if e.verdict is not interp.Verdict.PASS]
    total_fail = len(failed)
    if total_fail == 0:
        return False, None, None, None
    universe = sorted(set().union(*(e.statements_hit for e in execs)))

    def sq_susp(s):
        f = sum(s in e.statements_hit for e in failed)
        n = sum(s in e.statements_hit for e in execs)
        return Fraction(f * f, total_fail * n)

    n = len(universe)
    if fault not in universe:
        return True, n, n, 0.0
    key = sq_susp(fault)
    rank = sum(1 for s in universe if sq_susp(s) >= key)
    score = 1.0 if n == 1 else 1.0 - (rank - 1) / (n - 1)
    return True, rank, n, score


def sbfl_score(mutants, suite, step_limit):
    """(mean rScore over killed mutants or None, per-mutant tuples)."""
    rows = []
    for m in mutants:
        rows.append((m.id,) + fault_rank(executions(m.mutated_program, suite, step_limit),
                                         m.fault_statement))
    scores = [r[4] for r in rows if r[1]]
    return (math.fsum(scores) / len(scores) if scores else None), rows


@functools.lru_cache(maxsize=None)
def enumerated_null(n):
    """W+ for every one of the 2**n sign vectors over ranks 1..n."""
    return tuple(sum(r for r, bit in zip(range(1, n + 1), signs) if bit)
                 for signs in itertools.product((0, 1), repeat=n))


def wilcoxon_enumeration(diffs):
    """Exact tail probabilities of W+ by listing all 2**n sign vectors.

    Returns (w_plus, P(W+ >= w), P(W+ <= w)). Requires distinct non-zero |d|.
    """
    absd = sorted(abs(d) for d in diffs)
    rank = {v: i + 1 for i, v in enumerate(absd)}
    w = sum(rank[abs(d)] for d in diffs if d > 0)
    null = enumerated_null(len(diffs))
    ge = sum(s >= w for s in null)
    le = sum(s <= w for s in null)
    return w, ge / len(null), le / len(null)


def greedy_minimal(hits):
    """Backward greedy removal over (statements, branches) hit pairs; kept indices."""
    full = (set().union(*(h[0] for h in hits)), set().union(*(h[1] for h in hits)))
    kept = list(range(len(hits)))
    for i in range(len(hits) - 1, -1, -1):
        trial = [k for k in kept if k != i]
        if trial and (set().union(*(hits[k][0] for k in trial)),
                      set().union(*(hits[k][1] for k in trial))) == full:
            kept = trial
    return kept

"""Ochiai suspiciousness, worst-rank tie ranking and rank normalisation."""
import math
from dataclasses import dataclass
from fractions import Fraction


class SbflError(ValueError):
    pass


@dataclass(frozen=True)
class StatementCounts:
    fail_count: int
    pass_count: int
    susp: float


@dataclass(frozen=True)
class SuspiciousnessTable:
    entries: dict  # statement id -> StatementCounts
    total_fail: int
    executed_statements: tuple  # ids hit by at least one test, ascending


@dataclass(frozen=True)
class RankedStatements:
    ranks: dict  # statement id -> rank (1 = most suspicious)
    universe_size: int


def ochiai(fail_s, pass_s, total_fail) -> float:
    """fail / sqrt(totalFail * (fail + pass)); 0 when the denominator is 0."""
    if fail_s < 0 or pass_s < 0 or total_fail < 0:
        raise SbflError("counts must be non-negative")
    if fail_s > total_fail:
        raise SbflError(f"fail count {fail_s} exceeds total failures {total_fail}")
    denom = total_fail * (fail_s + pass_s)
    if denom == 0:
        return 0.0
    return fail_s / math.sqrt(denom)


def _ochiai_key(c, total_fail):
    # exact squared Ochiai: orders and ties exactly where floats might round apart
    denom = total_fail * (c.fail_count + c.pass_count)
    return Fraction(c.fail_count * c.fail_count, denom) if denom else Fraction(0)


def build_table(spectrum) -> SuspiciousnessTable:
    """Tally fail/pass counts per statement; any non-pass verdict is a failure."""
    total_fail = 0
    fails, passes = {}, {}
    for ex in spectrum.executions:
        bucket = passes if ex.passed else fails
        if not ex.passed:
            total_fail += 1
        for sid in ex.statements_hit:
            bucket[sid] = bucket.get(sid, 0) + 1
    entries = {}
    for sid in spectrum.statement_universe:
        f, p = fails.get(sid, 0), passes.get(sid, 0)
        entries[sid] = StatementCounts(f, p, ochiai(f, p, total_fail))
    executed = tuple(sorted(set(fails) | set(passes)))
    return SuspiciousnessTable(entries, total_fail, executed)


def rank_scores(scores) -> dict:
    """Worst-rank ("modified competition") ranking of a mapping id -> score.

    Higher score ranks first; every member of a tie group gets the largest
    position of the group.
    """
    order = sorted(scores, key=lambda k: scores[k], reverse=True)
    ranks = {}
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        for k in order[i:j + 1]:
            ranks[k] = j + 1
        i = j + 1
    return ranks


def rank_statements(table) -> RankedStatements:
    if not table.executed_statements:
        raise SbflError("no executed statements to rank")
    keys = {sid: _ochiai_key(table.entries[sid], table.total_fail)
            for sid in table.executed_statements}
    return RankedStatements(rank_scores(keys), len(table.executed_statements))


def rscore(rank, universe_size) -> float:
    """1 - (rank - 1) / (n - 1); a single-statement universe scores 1."""
    if universe_size < 1 or not 1 <= rank <= universe_size:
        raise SbflError(f"rank {rank} out of range for universe of {universe_size}")
    if universe_size == 1:
        return 1.0
    return 1.0 - (rank - 1) / (universe_size - 1)


def fault_rscore(ranked, fault_statement):
    """(in_universe, rank, rScore) for a fault; unexecuted faults score 0."""
    if fault_statement in ranked.ranks:
        rank = ranked.ranks[fault_statement]
        return True, rank, rscore(rank, ranked.universe_size)
    return False, ranked.universe_size, 0.0

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sbflbench.interp import CoverageSpectrum, TestExecution, Verdict
from sbflbench.sbfl import (
    SbflError, SuspiciousnessTable, StatementCounts, build_table, fault_rscore, ochiai,
    rank_scores, rank_statements, rscore,
)


def execution(name, hits, passed=True):
    verdict = Verdict.PASS if passed else Verdict.FAIL_ASSERTION
    return TestExecution(name, verdict, frozenset(hits), frozenset(), 1)


def spectrum(execs, universe):
    return CoverageSpectrum("p", "s", tuple(execs), tuple(universe))


# -- ochiai ---------------------------------------------------------------------

def test_ochiai_examples():
    assert ochiai(1, 0, 1) == 1.0
    assert ochiai(0, 5, 3) == 0.0
    assert ochiai(2, 0, 4) == pytest.approx(0.7071067811865475, abs=1e-15)
    assert ochiai(0, 0, 0) == 0.0


def test_ochiai_contract():
    with pytest.raises(SbflError):
        ochiai(3, 0, 2)


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
def test_ochiai_monotone(f, p, extra):
    total = f + extra + 1
    s = ochiai(f, p, total)
    assert 0.0 <= s <= 1.0
    assert ochiai(f + 1, p, total) >= s
    assert ochiai(f, p + 1, total) <= s


# -- build_table ----------------------------------------------------------------

def test_one_fail_one_pass_example():
    t = build_table(spectrum([execution("f", {0}, False), execution("p", {0, 1})], [0, 1]))
    assert t.entries[0].susp == pytest.approx(1 / math.sqrt(2))
    assert t.entries[1].susp == 0.0
    assert t.total_fail == 1
    assert t.executed_statements == (0, 1)


def test_all_pass_all_zero():
    t = build_table(spectrum([execution("a", {0, 1}), execution("b", {2})], [0, 1, 2, 3]))
    assert all(c.susp == 0.0 for c in t.entries.values())
    assert t.executed_statements == (0, 1, 2)


def test_timeouts_count_as_failures():
    ex = TestExecution("t", Verdict.FAIL_TIMEOUT, frozenset({0}), frozenset(), 9)
    t = build_table(spectrum([ex], [0]))
    assert t.total_fail == 1 and t.entries[0].fail_count == 1


def random_spectrum(rng, n_stmts, n_tests):
    execs = []
    for i in range(n_tests):
        hits = {s for s in range(n_stmts) if rng.random() < 0.5}
        execs.append(execution(f"t{i}", hits, rng.random() < 0.6))
    return spectrum(execs, range(n_stmts))


def brute_force(spec):
    total_fail = sum(not e.passed for e in spec.executions)
    out = {}
    for s in spec.statement_universe:
        f = sum(1 for e in spec.executions if s in e.statements_hit and not e.passed)
        p = sum(1 for e in spec.executions if s in e.statements_hit and e.passed)
        out[s] = (f, p, f / math.sqrt(total_fail * (f + p)) if total_fail and f + p else 0.0)
    return out


def test_table_matches_brute_force_tally():
    rng = random.Random(1)
    for _ in range(200):
        spec = random_spectrum(rng, rng.randint(1, 20), rng.randint(1, 30))
        table = build_table(spec)
        for sid, (f, p, susp) in brute_force(spec).items():
            c = table.entries[sid]
            assert (c.fail_count, c.pass_count) == (f, p)
            assert abs(c.susp - susp) <= 1e-12
        assert table.total_fail >= max((c.fail_count for c in table.entries.values()), default=0)


def test_permutation_invariance():
    rng = random.Random(3)
    spec = random_spectrum(rng, 12, 20)
    shuffled = list(spec.executions)
    rng.shuffle(shuffled)
    a, b = build_table(spec), build_table(spectrum(shuffled, spec.statement_universe))
    assert a == b
    assert rank_statements(a) == rank_statements(b)


# -- ranking --------------------------------------------------------------------

def test_worked_tie_example():
    assert rank_scores({"s1": 1.0, "s2": 1.0, "s3": 0.8}) == {"s1": 2, "s2": 2, "s3": 3}


def test_distinct_scores():
    assert rank_scores({"a": 0.9, "b": 0.5, "c": 0.1}) == {"a": 1, "b": 2, "c": 3}


def test_all_equal():
    assert set(rank_scores({i: 0.3 for i in range(7)}).values()) == {7}


@given(st.lists(st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]), min_size=1, max_size=30))
def test_worst_rank_convention(values):
    ranks = rank_scores(dict(enumerate(values)))
    for i, v in enumerate(values):
        assert ranks[i] == sum(1 for w in values if w >= v)
    for i in range(len(values)):
        for j in range(len(values)):
            if values[i] > values[j]:
                assert ranks[i] < ranks[j]


def test_rank_statements_uses_exact_ties():
    # 1/sqrt(3) and 3/sqrt(27) are equal but their doubles differ in the last bit
    assert ochiai(1, 0, 3) != ochiai(3, 6, 3)
    entries = {0: StatementCounts(1, 0, ochiai(1, 0, 3)), 1: StatementCounts(3, 6, ochiai(3, 6, 3)),
               2: StatementCounts(0, 4, 0.0)}
    ranked = rank_statements(SuspiciousnessTable(entries, 3, (0, 1, 2)))
    assert ranked.ranks == {0: 2, 1: 2, 2: 3}
    assert ranked.universe_size == 3


def test_rank_statements_empty_universe():
    with pytest.raises(SbflError):
        rank_statements(SuspiciousnessTable({}, 0, ()))


def test_unexecuted_statements_excluded_from_universe():
    t = build_table(spectrum([execution("f", {0}, False), execution("p", {1})], [0, 1, 2, 3]))
    r = rank_statements(t)
    assert set(r.ranks) == {0, 1} and r.universe_size == 2
    assert fault_rscore(r, 3) == (False, 2, 0.0)
    assert fault_rscore(r, 0) == (True, 1, 1.0)


# -- rscore ---------------------------------------------------------------------

def test_rscore_examples():
    assert rscore(1, 10) == 1.0
    assert rscore(10, 10) == 0.0
    assert rscore(2, 10) == pytest.approx(8 / 9)
    assert rscore(1, 1) == 1.0


@pytest.mark.parametrize("rank, n", [(0, 5), (6, 5), (1, 0)])
def test_rscore_contract(rank, n):
    with pytest.raises(SbflError):
        rscore(rank, n)


@given(st.integers(2, 500), st.data())
def test_rscore_strictly_decreasing(n, data):
    r = data.draw(st.integers(1, n - 1))
    assert rscore(r, n) > rscore(r + 1, n)
    assert 0.0 <= rscore(r, n) <= 1.0

"""Wilcoxon signed-rank test, effect size r, and box-plot summaries.

Differences are ``a - b``. Zero differences are dropped; tied absolute
differences receive average ranks. The exact null distribution of W+ is used
when at most 25 non-zero differences remain and none of them tie; otherwise
the normal approximation with tie-corrected variance and a 0.5 continuity
correction applies. ``z`` (and therefore r = z / sqrt(n)) is positive when a
tends to exceed b.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

EXACT_MAX_N = 25
TWO_SIDED = "two-sided"
A_GREATER = "a-greater"
B_GREATER = "b-greater"
ALTERNATIVES = (TWO_SIDED, A_GREATER, B_GREATER)
EXACT = "exact"
NORMAL = "normal-approximation"


@dataclass(frozen=True)
class PairedSample:
    a_values: tuple
    b_values: tuple
    labels: tuple = ()

    def __post_init__(self):
        if len(self.a_values) != len(self.b_values) or not self.a_values:
            raise ValueError("paired sample needs two equal-length, non-empty lists")
        if not all(math.isfinite(v) for v in self.a_values + self.b_values):
            raise ValueError("paired sample values must be finite")
        if self.labels and len(self.labels) != len(self.a_values):
            raise ValueError("labels must match the sample length")

    @classmethod
    def of(cls, a, b, labels=()):
        return cls(tuple(float(x) for x in a), tuple(float(x) for x in b), tuple(labels))


@dataclass(frozen=True)
class WilcoxonResult:
    n_effective: int
    w_statistic: float  # W+, the rank sum of positive differences
    p_value: float
    alternative: str
    method: str
    z: float
    effect_size_r: float
    degenerate: bool = False
    diagnostic: Optional[str] = None


@dataclass(frozen=True)
class DistributionSummary:
    count: int
    mean: float
    min: float
    q1: float
    median: float
    q3: float
    max: float


def average_ranks(values):
    """1-based ranks, ties sharing the mean of their positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j + 2) / 2
        for k in order[i:j + 1]:
            ranks[k] = avg
        i = j + 1
    return ranks


@lru_cache(maxsize=None)
def signed_rank_counts(n):
    """counts[w] = number of sign assignments of ranks 1..n with W+ = w."""
    counts = [1]
    for r in range(1, n + 1):
        nxt = counts + [0] * r
        for w, c in enumerate(counts):
            nxt[w + r] += c
        counts = nxt
    return tuple(counts)


def _exact_tails(w_plus, n):
    counts = signed_rank_counts(n)
    total = 2**n
    w = int(round(w_plus))
    upper = sum(counts[w:]) / total
    lower = sum(counts[:w + 1]) / total
    return lower, upper


def _phi(x):
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def effect_size_r(z, n) -> float:
    if n < 1:
        raise ValueError("n must be positive")
    return max(-1.0, min(1.0, z / math.sqrt(n)))


def wilcoxon_signed_rank(sample, alternative=TWO_SIDED) -> WilcoxonResult:
    if alternative not in ALTERNATIVES:
        raise ValueError(f"unknown alternative {alternative!r}")
    diffs = [a - b for a, b in zip(sample.a_values, sample.b_values)]
    diffs = [d for d in diffs if d != 0]
    n = len(diffs)
    if n == 0:
        return WilcoxonResult(0, 0.0, 1.0, alternative, EXACT, 0.0, 0.0, True,
                              "all paired differences are zero")
    absd = [abs(d) for d in diffs]
    ranks = average_ranks(absd)
    w_plus = sum(r for r, d in zip(ranks, diffs) if d > 0)

    mean = n * (n + 1) / 4
    tie_groups = {}
    for v in absd:
        tie_groups[v] = tie_groups.get(v, 0) + 1
    tie_term = sum(t**3 - t for t in tie_groups.values())
    sigma = math.sqrt(n * (n + 1) * (2 * n + 1) / 24 - tie_term / 48)
    dev = w_plus - mean
    z = math.copysign(max(abs(dev) - 0.5, 0.0), dev) / sigma
    r = effect_size_r(z, n)

    if n <= EXACT_MAX_N and tie_term == 0:
        lower, upper = _exact_tails(w_plus, n)
        method = EXACT
    else:
        upper = 1.0 - _phi((dev - 0.5) / sigma)
        lower = _phi((dev + 0.5) / sigma)
        method = NORMAL
    if alternative == A_GREATER:
        p = upper
    elif alternative == B_GREATER:
        p = lower
    else:
        p = 2 * min(lower, upper)
    p = min(1.0, max(0.0, p))
    return WilcoxonResult(n, w_plus, p, alternative, method, z, r)


def quantile(sorted_values, q):
    """Linear interpolation between closest ranks."""
    pos = q * (len(sorted_values) - 1)
    lo = math.floor(pos)
    hi = min(lo + 1, len(sorted_values) - 1)
    frac = pos - lo
    return sorted_values[lo] + (sorted_values[hi] - sorted_values[lo]) * frac


def summarize(values) -> DistributionSummary:
    if not values:
        raise ValueError("cannot summarise an empty list")
    s = sorted(values)
    return DistributionSummary(
        len(s), math.fsum(s) / len(s), s[0],
        quantile(s, 0.25), quantile(s, 0.5), quantile(s, 0.75), s[-1],
    )

"""Optimal seed solver: dynamic program over read prefixes with divider pruning."""

from dataclasses import dataclass, field
from typing import Optional

from .profile import INF, SelectionError


@dataclass(frozen=True)
class Placement:
    start: int  # 1-based, inclusive
    end: int
    freq: int

    @property
    def length(self):
        return self.end - self.start + 1


@dataclass
class SeedSet:
    placements: list

    @property
    def total_freq(self):
        return sum(p.freq for p in self.placements)

    def __len__(self):
        return len(self.placements)

    def check(self, read_length, s_min=1, s_max=None):
        """Raise AssertionError unless placements are sorted, disjoint and in bounds."""
        s_max = read_length if s_max is None else s_max
        last_end = 0
        for p in self.placements:
            assert p.start > last_end, f"overlapping or unsorted seeds: {self.placements}"
            assert s_min <= p.length <= s_max, f"seed length {p.length} outside [{s_min}, {s_max}]"
            assert p.end <= read_length, f"seed {p} past read end {read_length}"
            last_end = p.end

    def format(self):
        return ";".join(f"{p.start}-{p.end}:{p.freq}" for p in self.placements)


@dataclass
class SolverCounters:
    divisions_examined: int = 0
    lookups: int = 0
    substrings_processed: list = field(default_factory=list)

    @property
    def substrings(self):
        return sum(self.substrings_processed)


@dataclass(frozen=True)
class OptCell:
    freq: float
    div: int


class OptTable:
    """Rows 1..x-1 by columns 1..L; cell (m, l) is the best m-seed split of read[1..l]."""

    def __init__(self, rows, length):
        self.rows = rows
        self.length = length
        self.freq = [None] + [[INF] * (length + 1) for _ in range(rows)]
        self.div = [None] + [[0] * (length + 1) for _ in range(rows)]

    def cell(self, m, l):
        return OptCell(self.freq[m][l], self.div[m][l])

    def set(self, m, l, freq, div):
        self.freq[m][l] = freq
        self.div[m][l] = div


@dataclass
class SelectionResult:
    scheme: str
    x: int
    seeds: Optional[SeedSet]
    lookups: int = 0
    divisions: int = 0
    substrings: int = 0
    fallback: bool = False
    table: Optional[OptTable] = None
    final_div: Optional[int] = None
    counters: Optional[SolverCounters] = None

    @property
    def total_freq(self):
        return self.seeds.total_freq


def first_opt_divider(profile, table, m, l, prev_div):
    """First optimal divider of read[1..l] split into m-1 seeds + 1 seed.

    Scans from ``prev_div`` (clamped to the last legal divider) towards the
    read start and stops as soon as the growth of the first part's frequency
    exceeds the previous second-part frequency. Returns (div, freq, examined).
    """
    s_min = profile.bounds.s_min
    lowest = (m - 1) * s_min + 1
    start = min(prev_div, l - s_min + 1)
    assert lowest <= start, (m, l, prev_div)
    first_row = table.freq[m - 1]
    opt1 = profile._opt1

    best_freq, best_div = INF, start
    prev_first = prev_second = INF
    examined = 0
    for div in range(start, lowest - 1, -1):
        first = first_row[div - 1]
        second = opt1[div][l]
        examined += 1
        if examined > 1 and first - prev_first > prev_second:
            break
        total = first + second
        if total <= best_freq:
            best_freq, best_div = total, div
        prev_first, prev_second = first, second
    return best_div, best_freq, examined


def full_divider_scan(profile, table, m, l):
    """Exhaustive version of :func:`first_opt_divider`."""
    s_min = profile.bounds.s_min
    first_row = table.freq[m - 1]
    opt1 = profile._opt1
    best_freq, best_div, examined = INF, None, 0
    for div in range((m - 1) * s_min + 1, l - s_min + 2):
        examined += 1
        total = first_row[div - 1] + opt1[div][l]
        if total < best_freq:
            best_freq, best_div = total, div
    return best_div, best_freq, examined


def _solve(profile, x, pruned, scheme):
    L, s_min = profile.length, profile.bounds.s_min
    if x < 1:
        raise ValueError("seed count must be >= 1")
    if L < x * s_min:
        raise SelectionError("read cannot host x seeds")
    counters = SolverCounters(lookups=profile.lookups)

    if x == 1:
        seeds = backtrack(profile, None, 1, 1)
        return SelectionResult(scheme, 1, seeds, lookups=profile.lookups, final_div=1, counters=counters)

    table = OptTable(x - 1, L)
    for l in range(s_min, L + 1):
        table.set(1, l, profile.opt1(1, l), 1)

    for m in range(2, x):
        prev_div = L - s_min + 1
        done = 0
        for l in range(L, m * s_min - 1, -1):
            if pruned:
                div, freq, examined = first_opt_divider(profile, table, m, l, prev_div)
            else:
                div, freq, examined = full_divider_scan(profile, table, m, l)
            table.set(m, l, freq, div)
            counters.divisions_examined += examined
            done += 1
            prev_div = div
        counters.substrings_processed.append(done)

    if pruned:
        final_div, opt_freq, examined = first_opt_divider(profile, table, x, L, L - s_min + 1)
    else:
        final_div, opt_freq, examined = full_divider_scan(profile, table, x, L)
    counters.divisions_examined += examined
    counters.substrings_processed.append(1)

    seeds = backtrack(profile, table, x, final_div)
    assert seeds.total_freq == opt_freq, "corrupt DP table"
    return SelectionResult(
        scheme,
        x,
        seeds,
        lookups=profile.lookups,
        divisions=counters.divisions_examined,
        substrings=counters.substrings,
        table=table,
        final_div=final_div,
        counters=counters,
    )


def optimal_seed_solver(profile, x):
    """Least-frequent set of ``x`` non-overlapping seeds of the profiled read."""
    return _solve(profile, x, pruned=True, scheme="oss")


def full_scan_solver(profile, x):
    """Same DP without divider cascading or early termination."""
    return _solve(profile, x, pruned=False, scheme="oss-full")


def backtrack(profile, table, x, final_div):
    """Recover the x seed placements from the dividers stored in ``table``."""
    L = profile.length
    intervals = [(final_div, L)]
    end = final_div - 1
    for m in range(x - 1, 1, -1):
        div = table.div[m][end]
        assert div >= 1, "corrupt DP table"
        intervals.append((div, end))
        end = div - 1
    if x > 1:
        intervals.append((1, end))
    placements = []
    for i, j in reversed(intervals):
        a, b = profile.best_seed(i, j)
        placements.append(Placement(a, b, profile.freq(a, b - a + 1)))
    return SeedSet(placements)


def table_violations(table, s_min):
    """Row-monotonicity and divider-cascading violations in a filled table."""
    out = []
    for m in range(1, table.rows + 1):
        for l in range(m * s_min, table.length):
            if table.freq[m][l] < table.freq[m][l + 1]:
                out.append(("monotonicity", m, l))
            if table.div[m][l] > table.div[m][l + 1]:
                out.append(("cascading", m, l))
    return out

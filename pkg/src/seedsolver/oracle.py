"""Ground-truth solvers used by the tests: exhaustive placement search and naive counting."""

import numpy as np

from .profile import SelectionError
from .solver import Placement, SeedSet, SelectionResult

MAX_COMBINATIONS = 10**8


def naive_count(text, pattern):
    """Overlapping occurrences of ``pattern`` in ``text`` by direct comparison."""
    if not pattern:
        raise ValueError("empty pattern")
    if set(pattern) - set("ACGT"):
        return 0
    n, at = 0, text.find(pattern)
    while at != -1:
        n += 1
        at = text.find(pattern, at + 1)
    return n


class PlacementEnumerator:
    """Every tuple of x non-overlapping seeds in lexicographic (start, end) order."""

    def __init__(self, length, x, s_min, s_max):
        self.length = length
        self.x = x
        self.s_min = s_min
        self.s_max = s_max

    def __iter__(self):
        yield from self._walk(1, self.x)

    def _walk(self, first_start, remaining):
        if remaining == 0:
            yield ()
            return
        reserve = (remaining - 1) * self.s_min
        for start in range(first_start, self.length - reserve - self.s_min + 2):
            top = min(start + self.s_max - 1, self.length - reserve)
            for end in range(start + self.s_min - 1, top + 1):
                for rest in self._walk(end + 1, remaining - 1):
                    yield ((start, end),) + rest

    def __len__(self):
        return count_placements(self.length, self.x, self.s_min, self.s_max)


def count_placements(length, x, s_min, s_max):
    """Number of x-seed placements, by counting over suffixes of the read."""
    # ways[m][p]: placements of m seeds inside positions p..length
    ways = [[1] * (length + 2)]
    for m in range(1, x + 1):
        row = [0] * (length + 2)
        for p in range(length, 0, -1):
            total = row[p + 1]
            for n in range(s_min, s_max + 1):
                if p + n - 1 > length:
                    break
                total += ways[m - 1][p + n]
            row[p] = total
        ways.append(row)
    return ways[x][1]


def brute_force_optimal(profile, x):
    """Minimum-total placement over every x-seed tuple; ties go to the lexicographically first.

    Each tuple's total is evaluated explicitly; the last two seeds are
    evaluated in numpy blocks for speed.
    """
    s_min, s_max = profile.bounds.s_min, profile.bounds.s_max
    L = profile.length
    if count_placements(L, x, s_min, s_max) > MAX_COMBINATIONS:
        raise ValueError("instance too large for oracle")
    if L < x * s_min:
        raise SelectionError("read cannot host x seeds")

    seeds = [
        (a, a + n - 1, profile.freq(a, n))
        for a in range(1, L - s_min + 2)
        for n in range(s_min, min(s_max, L - a + 1) + 1)
    ]
    starts = np.array([s[0] for s in seeds], dtype=np.int64)
    ends = np.array([s[1] for s in seeds], dtype=np.int64)
    freqs = np.array([s[2] for s in seeds], dtype=np.int64)
    n_seeds = len(seeds)
    nxt = np.searchsorted(starts, ends, side="right")

    if x == 1:
        best = [int(np.argmin(freqs))]
        return _result(seeds, best, profile)

    # all (j, k) pairs with k after j, grouped by j in order
    sizes = n_seeds - nxt
    offsets = np.concatenate(([0], np.cumsum(sizes)))
    pair_j = np.repeat(np.arange(n_seeds), sizes)
    pair_k = np.arange(offsets[-1]) - np.repeat(offsets[:-1], sizes) + np.repeat(nxt, sizes)
    pair_total = freqs[pair_j] + freqs[pair_k]

    best_total = None
    best_tuple = None

    def walk(depth, lowest, acc, chosen):
        nonlocal best_total, best_tuple
        if depth == x - 2:
            if lowest >= n_seeds:
                return
            block = pair_total[offsets[lowest] :]
            if block.size == 0:
                return
            at = int(np.argmin(block))
            total = acc + int(block[at])
            if best_total is None or total < best_total:
                row = offsets[lowest] + at
                best_total = total
                best_tuple = chosen + [int(pair_j[row]), int(pair_k[row])]
            return
        for i in range(lowest, n_seeds):
            walk(depth + 1, int(nxt[i]), acc + int(freqs[i]), chosen + [i])

    walk(0, 0, 0, [])
    return _result(seeds, best_tuple, profile)


def _result(seeds, chosen, profile):
    placements = [Placement(seeds[i][0], seeds[i][1], seeds[i][2]) for i in chosen]
    return SelectionResult("oracle", len(chosen), SeedSet(placements), lookups=profile.lookups)

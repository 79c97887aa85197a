"""Per-read seed frequencies and the optimal single-seed frequency of every interval."""

import math
from dataclasses import dataclass

INF = math.inf


class SelectionError(ValueError):
    """A read cannot host the requested seeds under the given scheme."""


@dataclass(frozen=True)
class SeedBounds:
    s_min: int = 10
    s_max: int = 30

    def __post_init__(self):
        if not 1 <= self.s_min <= self.s_max:
            raise ValueError(f"invalid seed bounds [{self.s_min}, {self.s_max}]")


class ReadProfile:
    """Frequency tables for one read.

    Positions are 1-based and intervals inclusive, so ``freq(i, n)`` is the
    count of ``read[i-1:i-1+n]`` and ``opt1(i, j)`` covers ``read[i-1:j]``.
    """

    def __init__(self, read, bounds, seed_freq, lookups):
        self.read = read
        self.bounds = bounds
        self.length = len(read)
        self.lookups = lookups
        # seed_freq[i][n - s_min]
        self._freq = seed_freq
        self._opt1 = _fill_opt1(self.length, bounds, seed_freq)

    def freq(self, i, n):
        s_min, s_max = self.bounds.s_min, self.bounds.s_max
        if not (s_min <= n <= s_max and 1 <= i and i + n - 1 <= self.length):
            raise ValueError(f"no seed of length {n} at {i}")
        return self._freq[i][n - s_min]

    def opt1(self, i, j):
        if not 1 <= i <= j <= self.length:
            raise ValueError(f"bad interval ({i}, {j})")
        return self._opt1[i][j]

    def best_seed(self, i, j):
        """Leftmost, shortest seed inside [i, j] achieving ``opt1(i, j)``."""
        target = self.opt1(i, j)
        if target == INF:
            raise ValueError(f"interval ({i}, {j}) cannot host a seed")
        s_min, s_max = self.bounds.s_min, self.bounds.s_max
        for a in range(i, j - s_min + 2):
            for n in range(s_min, min(s_max, j - a + 1) + 1):
                if self._freq[a][n - s_min] == target:
                    return a, a + n - 1
        raise AssertionError("opt1 table inconsistent with seed frequencies")


def _fill_opt1(L, bounds, freq):
    s_min, s_max = bounds.s_min, bounds.s_max
    opt = [[INF] * (L + 1) for _ in range(L + 2)]
    for n in range(s_min, L + 1):
        for i in range(1, L - n + 2):
            j = i + n - 1
            if n == s_min:
                opt[i][j] = freq[i][0]
                continue
            best = min(opt[i + 1][j], opt[i][j - 1])
            if n <= s_max:
                best = min(best, freq[i][n - s_min])
            opt[i][j] = best
    return opt


def build_read_profile(read, index, bounds):
    L = len(read)
    if L < bounds.s_min:
        raise SelectionError("read too short")
    read = read.upper()
    seed_freq = [None] * (L + 1)
    lookups = 0
    for i in range(1, L - bounds.s_min + 2):
        top = min(bounds.s_max, L - i + 1)
        seed_freq[i] = index.count_extensions(read, i - 1, bounds.s_min, top)
        lookups += top - bounds.s_min + 1
    return ReadProfile(read, bounds, seed_freq, lookups)


def opt1_lookup(profile, i, j):
    return profile.opt1(i, j)

import itertools
import random

import pytest

from seedsolver import SeedBounds, build_read_profile, full_scan_solver
from seedsolver.oracle import (
    MAX_COMBINATIONS,
    PlacementEnumerator,
    brute_force_optimal,
    count_placements,
    naive_count,
)

from conftest import make_index, random_dna


def test_single_seed_unbounded_count():
    e = PlacementEnumerator(10, 1, 1, 10)
    assert len(list(e)) == len(e) == 10 * 11 // 2


@pytest.mark.parametrize("L,s_min,s_max", [(10, 2, 4), (25, 3, 7), (7, 7, 9)])
def test_single_seed_bounded_count(L, s_min, s_max):
    expected = sum(L - n + 1 for n in range(s_min, min(s_max, L) + 1))
    assert len(list(PlacementEnumerator(L, 1, s_min, s_max))) == count_placements(L, 1, s_min, s_max) == expected


def test_forced_tiling_single_placement():
    assert list(PlacementEnumerator(12, 3, 4, 6)) == [((1, 4), (5, 8), (9, 12))]


@pytest.mark.parametrize("L,x,s_min,s_max", [(12, 2, 2, 4), (15, 3, 2, 5), (9, 2, 1, 9)])
def test_enumerator_exhaustive_and_ordered(L, x, s_min, s_max):
    got = list(PlacementEnumerator(L, x, s_min, s_max))
    intervals = [(a, b) for a in range(1, L + 1) for b in range(a + s_min - 1, min(a + s_max - 1, L) + 1)]
    brute = [c for c in itertools.combinations(intervals, x) if all(c[i][1] < c[i + 1][0] for i in range(x - 1))]
    assert got == sorted(brute)
    assert len(set(got)) == len(got) == count_placements(L, x, s_min, s_max)


def test_naive_count_examples():
    assert naive_count("ACGTACGTTT", "ACGT") == 2
    assert naive_count("AAAA", "AA") == 3
    assert naive_count("ACNT", "CN") == 0
    with pytest.raises(ValueError):
        naive_count("ACGT", "")


def test_naive_count_matches_index(rng):
    for _ in range(200):
        ref = random_dna(rng, rng.randint(1, 300), "ACGTN" if rng.random() < 0.3 else "AACGT")
        idx = make_index(ref, mask="")
        pat = ref[rng.randrange(len(ref)) :][: rng.randint(1, 6)] if rng.random() < 0.7 else random_dna(rng, 3)
        assert naive_count(ref, pat) == idx.count(pat)


def test_oracle_agrees_with_enumeration(rng):
    """The vectorised oracle against a plain loop over every enumerated tuple."""
    for _ in range(40):
        ref = random_dna(rng, 400, "AACGT")
        read = ref[rng.randrange(0, 380) :][:rng.randint(10, 18)]
        bounds = SeedBounds(2, rng.choice([3, 4, 6]))
        x = rng.randint(1, 4)
        if len(read) < x * bounds.s_min:
            continue
        p = build_read_profile(read, make_index(ref, mask=""), bounds)
        best = min(
            PlacementEnumerator(len(read), x, bounds.s_min, bounds.s_max),
            key=lambda tup: sum(p.freq(a, b - a + 1) for a, b in tup),
        )
        got = brute_force_optimal(p, x)
        assert [(s.start, s.end) for s in got.seeds.placements] == list(best)


def test_oracle_min_below_samples(rng):
    ref = random_dna(rng, 1000)
    read = ref[300:340]
    bounds = SeedBounds(3, 8)
    p = build_read_profile(read, make_index(ref, mask=""), bounds)
    o = brute_force_optimal(p, 3)
    sample = random.Random(1).sample(list(PlacementEnumerator(40, 3, 3, 8)), 500)
    for tup in sample:
        assert o.total_freq <= sum(p.freq(a, b - a + 1) for a, b in tup)
    assert o.total_freq == full_scan_solver(p, 3).total_freq


def test_oracle_guard(toy_index, monkeypatch):
    import seedsolver.oracle as oracle

    p = build_read_profile("ACGTACGTTT", toy_index, SeedBounds(1, 3))
    monkeypatch.setattr(oracle, "MAX_COMBINATIONS", 5)
    with pytest.raises(ValueError, match="too large"):
        oracle.brute_force_optimal(p, 2)
    assert MAX_COMBINATIONS == 10**8

"""Comparison seed-selection schemes: naive, CKS, OPS, ASF and spaced seeds."""

from .genome import apply_mask
from .profile import INF, SelectionError
from .solver import Placement, SeedSet, SelectionResult


class SchemeFailed(SelectionError):
    """The scheme cannot place the requested seeds on this read."""


def _seed(index, read, start, length):
    """1-based placement of read[start..start+length-1] with its count."""
    return Placement(start, start + length - 1, index.count(read[start - 1 : start - 1 + length]))


def naive_select(read, index, x, k):
    """Fixed-length seeds placed back to back from the start of the read."""
    if x * k > len(read):
        raise SchemeFailed("read too short for scheme")
    seeds = [_seed(index, read, 1 + i * k, k) for i in range(x)]
    return SelectionResult(f"naive:k={k}", x, SeedSet(seeds), lookups=x)


def cks_select(read, index, x, k):
    """Cheap k-mer selection: the x least frequent of the floor(L/k) tiled positions."""
    n_pos = len(read) // k
    if x > n_pos:
        raise SchemeFailed("not enough candidate positions")
    candidates = [_seed(index, read, 1 + i * k, k) for i in range(n_pos)]
    chosen = sorted(candidates, key=lambda p: (p.freq, p.start))[:x]
    chosen.sort(key=lambda p: p.start)
    return SelectionResult(f"cks:k={k}", x, SeedSet(chosen), lookups=n_pos)


def ops_select(read, index, x, k):
    """Optimal prefix selection: best x non-overlapping k-mers anywhere in the read."""
    L = len(read)
    if x * k > L:
        raise SchemeFailed("read too short for scheme")
    # window[j]: count of the k-mer ending at 1-based position j
    window = [None] * (L + 1)
    for j in range(k, L + 1):
        window[j] = index.count(read[j - k : j])
    best = [[0] * (L + 1)]
    take = [None]
    for m in range(1, x + 1):
        row = [INF] * (L + 1)
        took = [False] * (L + 1)
        prev = best[m - 1]
        for j in range(m * k, L + 1):
            skip = row[j - 1]
            use = prev[j - k] + window[j]
            if use < skip:
                row[j], took[j] = use, True
            else:
                row[j] = skip
        best.append(row)
        take.append(took)
    seeds = []
    j = L
    for m in range(x, 0, -1):
        while not take[m][j]:
            j -= 1
        seeds.append(Placement(j - k + 1, j, window[j]))
        j -= k
    seeds.reverse()
    return SelectionResult(f"ops:k={k}", x, SeedSet(seeds), lookups=L - k + 1)


def asf_select(read, index, x, t, bounds, fallback_k=12):
    """Adaptive seeds filter, retried with CKS when the read runs out of bases."""
    L = len(read)
    seeds = []
    lookups = 0
    cursor = 1
    while len(seeds) < x and cursor + bounds.s_min - 1 <= L:
        length = bounds.s_min
        while True:
            placement = _seed(index, read, cursor, length)
            lookups += 1
            if placement.freq <= t or length >= bounds.s_max:
                break
            if placement.end >= L:
                # still above threshold with no bases left to extend into
                placement = None
                break
            length += 1
        if placement is None:
            break
        seeds.append(placement)
        cursor = placement.end + 1
    label = f"asf:t={t},fallback_k={fallback_k}"
    if len(seeds) == x:
        return SelectionResult(label, x, SeedSet(seeds), lookups=lookups)
    try:
        fallback = cks_select(read, index, x, fallback_k)
    except SchemeFailed:
        raise SchemeFailed("scheme failed") from None
    return SelectionResult(label, x, fallback.seeds, lookups=lookups + fallback.lookups, fallback=True)


def spaced_select(read, spaced_index, x):
    """Consecutive mask-width windows scored by their spaced signature."""
    w = len(spaced_index.mask)
    if x * w > len(read):
        raise SchemeFailed("read too short for scheme")
    seeds = []
    for i in range(x):
        start = 1 + i * w
        window = read[start - 1 : start - 1 + w]
        seeds.append(Placement(start, start + w - 1, spaced_index.table.get(apply_mask(window, spaced_index.mask), 0)))
    return SelectionResult(f"spaced:mask={spaced_index.mask}", x, SeedSet(seeds), lookups=x)

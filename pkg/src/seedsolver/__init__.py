"""Least-frequent seed selection for read mapping, with baseline schemes and a benchmark CLI."""

from .genome import (
    DEFAULT_MASK,
    FrequencyIndex,
    PackedReference,
    SpacedIndex,
    apply_mask,
    build_spaced_index,
    build_suffix_array,
    count_occurrences,
    load_fasta,
    load_index,
    save_index,
)
from .profile import INF, ReadProfile, SeedBounds, SelectionError, build_read_profile, opt1_lookup
from .solver import (
    OptTable,
    Placement,
    SeedSet,
    SelectionResult,
    backtrack,
    first_opt_divider,
    full_scan_solver,
    optimal_seed_solver,
)

__version__ = "0.1.0"

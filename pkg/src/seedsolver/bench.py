"""Benchmark harness: run seed-selection schemes over a read set and write CSV reports."""

import csv
import io
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import baselines
from .genome import build_spaced_index, load_index
from .profile import SeedBounds, SelectionError, build_read_profile
from .solver import optimal_seed_solver

RESULT_FIELDS = [
    "read_id", "scheme", "x", "status", "total_freq", "placements",
    "lookups", "divisions", "substrings", "fallback",
]
AGGREGATE_FIELDS = [
    "scheme", "params", "x", "reads_processed", "reads_failed", "mean_seed_freq",
    "mean_total_freq", "mean_divisions_per_substring", "mean_lookups",
]
SCHEMES = ("oss", "naive", "cks", "ops", "asf", "spaced")


@dataclass(frozen=True)
class SchemeConfig:
    name: str
    k: int = None
    t: int = None
    mask: str = None
    fallback_k: int = None

    @property
    def params(self):
        if self.name in ("naive", "cks", "ops"):
            return f"k={self.k}"
        if self.name == "asf":
            return f"t={self.t},fallback_k={self.fallback_k}"
        if self.name == "spaced":
            return f"mask={self.mask}"
        return ""

    @property
    def label(self):
        return f"{self.name}:{self.params}" if self.params else self.name


def parse_scheme(text):
    name, _, rest = text.strip().partition(":")
    name = name.lower()
    if name not in SCHEMES:
        raise ValueError(f"unknown scheme {name!r}")
    opts = {}
    for item in filter(None, rest.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise ValueError(f"bad scheme option {item!r} in {text!r}")
        opts[key.strip()] = value.strip()
    allowed = {"oss": set(), "naive": {"k"}, "cks": {"k"}, "ops": {"k"},
               "asf": {"t", "fallback_k"}, "spaced": {"mask"}}[name]
    if set(opts) - allowed:
        raise ValueError(f"unexpected options {sorted(set(opts) - allowed)} for {name}")
    if name in ("naive", "cks", "ops"):
        k = int(opts.get("k", 12))
        if k < 1:
            raise ValueError("k must be >= 1")
        return SchemeConfig(name, k=k)
    if name == "asf":
        t = int(opts.get("t", 10))
        if t < 0:
            raise ValueError("t must be >= 0")
        return SchemeConfig(name, t=t, fallback_k=int(opts.get("fallback_k", 12)))
    if name == "spaced":
        return SchemeConfig(name, mask=opts.get("mask", "110100110010101111"))
    return SchemeConfig(name)


def parse_scheme_list(text):
    """Split ``oss,asf:t=10,fallback_k=12,cks:k=12``; bare ``key=value`` tokens extend the previous scheme."""
    groups = []
    for token in filter(None, (s.strip() for s in text.split(","))):
        if "=" in token and ":" not in token and groups:
            groups[-1] += "," + token
        else:
            groups.append(token)
    return [parse_scheme(g) for g in groups]


def parse_seed_counts(text):
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part.strip():
            out.append(int(part))
    if not out or min(out) < 1:
        raise ValueError(f"bad seed counts {text!r}")
    return out


@dataclass
class ExperimentConfig:
    index_path: str
    reads_path: str
    schemes: list
    seed_counts: list = field(default_factory=lambda: list(range(1, 7)))
    bounds: SeedBounds = field(default_factory=SeedBounds)
    max_reads: int = None
    skip_n_reads: bool = False
    out_dir: str = "results"
    workers: int = 1

    def __post_init__(self):
        if not self.schemes:
            raise ValueError("at least one scheme is required")
        if min(self.seed_counts) < 1:
            raise ValueError("seed counts must be >= 1")


def run_read(read_id, seq, index, schemes, seed_counts, bounds):
    """All (scheme, x) result rows for one read."""
    rows = []
    profile = None
    for scheme in schemes:
        for x in seed_counts:
            try:
                if scheme.name == "oss":
                    if profile is None:
                        profile = build_read_profile(seq, index, bounds)
                    result = optimal_seed_solver(profile, x)
                else:
                    result = _select_baseline(scheme, seq, index, x, bounds)
            except SelectionError:
                result = None
            rows.append(_row(read_id, scheme, x, result))
    return rows


def _select_baseline(scheme, seq, index, x, bounds):
    if scheme.name == "naive":
        return baselines.naive_select(seq, index, x, scheme.k)
    if scheme.name == "cks":
        return baselines.cks_select(seq, index, x, scheme.k)
    if scheme.name == "ops":
        return baselines.ops_select(seq, index, x, scheme.k)
    if scheme.name == "asf":
        return baselines.asf_select(seq, index, x, scheme.t, bounds, scheme.fallback_k)
    if scheme.name == "spaced":
        return baselines.spaced_select(seq, _spaced_for(index, scheme.mask), x)
    raise ValueError(scheme.name)


def _spaced_for(index, mask):
    if index.spaced is not None and index.spaced.mask == mask:
        return index.spaced
    cache = index.__dict__.setdefault("_spaced_cache", {})
    if mask not in cache:
        cache[mask] = build_spaced_index(index.ref, mask)
    return cache[mask]


def _row(read_id, scheme, x, result):
    if result is None:
        return {"read_id": read_id, "scheme": scheme.label, "x": x, "status": "failed",
                "total_freq": "", "placements": "", "lookups": "", "divisions": "",
                "substrings": "", "fallback": ""}
    is_oss = scheme.name == "oss"
    return {
        "read_id": read_id,
        "scheme": scheme.label,
        "x": x,
        "status": "ok",
        "total_freq": result.total_freq,
        "placements": result.seeds.format(),
        "lookups": result.lookups,
        "divisions": result.divisions if is_oss else "",
        "substrings": result.substrings if is_oss else "",
        "fallback": int(result.fallback),
    }


_WORKER = {}


def _init_worker(index_path, schemes, seed_counts, bounds):
    _WORKER.update(index=load_index(index_path), schemes=schemes, seed_counts=seed_counts, bounds=bounds)


def _work(batch):
    w = _WORKER
    return [run_read(rid, seq, w["index"], w["schemes"], w["seed_counts"], w["bounds"]) for rid, seq in batch]


def _batches(items, size):
    for i in range(0, len(items), size):
        yield items[i : i + size]


def collect_reads(reads, max_reads=None, skip_n_reads=False):
    out = []
    for rid, seq in reads:
        if max_reads is not None and len(out) >= max_reads:
            break
        if skip_n_reads and set(seq) - set("ACGT"):
            continue
        out.append((rid, seq))
    return out


def run_experiment(config, reads, index=None):
    """Run every scheme over ``reads``; returns (result rows, aggregate rows).

    Rows come back in read order, then scheme order, then seed count, whatever
    the worker count.
    """
    reads = collect_reads(reads, config.max_reads, config.skip_n_reads)
    if config.workers <= 1 or len(reads) < 2:
        if index is None:
            index = load_index(config.index_path)
        per_read = [run_read(rid, seq, index, config.schemes, config.seed_counts, config.bounds)
                    for rid, seq in reads]
    else:
        size = max(1, -(-len(reads) // (config.workers * 4)))
        with ProcessPoolExecutor(
            max_workers=config.workers,
            initializer=_init_worker,
            initargs=(config.index_path, config.schemes, config.seed_counts, config.bounds),
        ) as pool:
            per_read = [rows for chunk in pool.map(_work, _batches(reads, size)) for rows in chunk]
    rows = [row for read_rows in per_read for row in read_rows]
    return rows, aggregate(rows, config.schemes, config.seed_counts)


def aggregate(rows, schemes, seed_counts):
    groups = defaultdict(list)
    for row in rows:
        groups[(row["scheme"], int(row["x"]))].append(row)
    out = []
    for scheme in schemes:
        for x in seed_counts:
            members = groups.get((scheme.label, x), [])
            ok = [r for r in members if r["status"] == "ok"]
            n = len(ok)
            totals = [int(r["total_freq"]) for r in ok]
            divisions = sum(int(r["divisions"]) for r in ok if r["divisions"] != "")
            substrings = sum(int(r["substrings"]) for r in ok if r["substrings"] != "")
            out.append({
                "scheme": scheme.name,
                "params": scheme.params,
                "x": x,
                "reads_processed": n,
                "reads_failed": len(members) - n,
                "mean_seed_freq": _fmt(sum(totals) / (n * x)) if n else "",
                "mean_total_freq": _fmt(sum(totals) / n) if n else "",
                "mean_divisions_per_substring": _fmt(divisions / substrings) if substrings else "",
                "mean_lookups": _fmt(sum(int(r["lookups"]) for r in ok) / n) if n else "",
            })
    return out


def _fmt(value):
    return f"{value:.6f}"


def write_csv(path, fields, rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    Path(path).write_text(buf.getvalue())


def read_csv(path, required=()):
    """Parse a CSV into dict rows; malformed input raises ValueError naming the line."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: line 1: missing header") from None
        missing = [f for f in required if f not in header]
        if missing:
            raise ValueError(f"{path}: line 1: missing columns {missing}")
        rows = []
        for fields in reader:
            if len(fields) != len(header):
                raise ValueError(f"{path}: line {reader.line_num}: expected {len(header)} fields, got {len(fields)}")
            rows.append((reader.line_num, dict(zip(header, fields))))
    return rows


# --- frequency histograms ---------------------------------------------------

def bucket_label(freq):
    if freq < 10:
        return str(freq)
    lo = 10 ** (len(str(freq)) - 1)
    return f"{lo}-{lo * 10 - 1}"


def _bucket_key(label):
    return int(label.split("-")[0])


def runtime_histogram(results_path, scheme=None):
    """(bucket, count) rows over every seed chosen in a results CSV."""
    counts = defaultdict(int)
    for line, row in read_csv(results_path, required=("scheme", "status", "placements")):
        if row["status"] != "ok" or (scheme and row["scheme"] != scheme):
            continue
        for item in filter(None, row["placements"].split(";")):
            try:
                span, freq = item.rsplit(":", 1)
                start, end = span.split("-")
                int(start), int(end)
                freq = int(freq)
            except ValueError:
                raise ValueError(f"{results_path}: line {line}: bad placement {item!r}") from None
            counts[bucket_label(freq)] += 1
    return [{"bucket": b, "count": counts[b]} for b in sorted(counts, key=_bucket_key)]


def static_histogram(index, k_min, k_max):
    """(k, frequency, distinct seeds) over every unmasked k-mer of the reference."""
    if not 1 <= k_min <= k_max <= 31:
        raise ValueError("k range must lie within [1, 31]")
    codes = index.ref.codes().astype(np.int64)
    masked = index.ref.masked().astype(np.int64)
    n = index.ref.length
    bad = np.concatenate(([0], np.cumsum(masked)))
    rows = []
    for k in range(k_min, k_max + 1):
        if k > n:
            break
        windows = n - k + 1
        value = np.zeros(windows, dtype=np.int64)
        for j in range(k):
            value = value * 4 + codes[j : j + windows]
        valid = (bad[k:] - bad[:-k]) == 0
        _, per_kmer = np.unique(value[valid], return_counts=True)
        freqs, distinct = np.unique(per_kmer, return_counts=True)
        rows.extend({"k": k, "frequency": int(f), "distinct_seeds": int(d)} for f, d in zip(freqs, distinct))
    return rows


def static_mean_frequency(rows):
    """Mean frequency of a distinct seed, per k."""
    occ = defaultdict(int)
    distinct = defaultdict(int)
    for r in rows:
        occ[r["k"]] += r["frequency"] * r["distinct_seeds"]
        distinct[r["k"]] += r["distinct_seeds"]
    return {k: occ[k] / distinct[k] for k in sorted(occ)}


def write_run_outputs(out_dir, rows, agg):
    os.makedirs(out_dir, exist_ok=True)
    write_csv(Path(out_dir) / "results.csv", RESULT_FIELDS, rows)
    write_csv(Path(out_dir) / "aggregate.csv", AGGREGATE_FIELDS, agg)

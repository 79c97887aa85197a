"""Matplotlib figures written next to the CSV reports."""

from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, ax, path):
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    # fixed metadata keeps repeated renders byte-identical
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def plot_static_histogram(rows, path):
    """Distinct seeds per frequency, one line per seed length."""
    by_k = defaultdict(list)
    for r in rows:
        by_k[int(r["k"])].append((int(r["frequency"]), int(r["distinct_seeds"])))
    fig, ax = plt.subplots(figsize=(6, 4))
    for k in sorted(by_k):
        pts = sorted(by_k[k])
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker=".", lw=1, label=f"{k} bp")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("seed frequency")
    ax.set_ylabel("distinct seeds")
    ax.legend(fontsize=8)
    _finish(fig, ax, path)


def plot_runtime_histogram(rows, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [r["bucket"] for r in rows]
    ax.bar(range(len(labels)), [int(r["count"]) for r in rows])
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_yscale("log")
    ax.set_xlabel("seed frequency")
    ax.set_ylabel("selected seeds")
    _finish(fig, ax, path)


def plot_aggregate(rows, path):
    """Mean seed frequency against seed count, one line per scheme configuration."""
    series = defaultdict(list)
    for r in rows:
        if r["mean_seed_freq"] == "":
            continue
        label = f"{r['scheme']}:{r['params']}" if r["params"] else r["scheme"]
        series[label].append((int(r["x"]), float(r["mean_seed_freq"])))
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, pts in series.items():
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", lw=1, label=label)
    ax.set_yscale("log")
    ax.set_xlabel("number of seeds")
    ax.set_ylabel("average seed frequency")
    ax.legend(fontsize=7)
    _finish(fig, ax, path)

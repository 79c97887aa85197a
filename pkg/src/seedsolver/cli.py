"""Command-line entry point: ``seedsolver index|run|hist``."""

import argparse
import logging
import sys
from pathlib import Path

from . import bench
from .genome import DEFAULT_MASK, FrequencyIndex, load_index, save_index
from .profile import SeedBounds
from .reads import parse_fastq

log = logging.getLogger("seedsolver")


def cmd_index(args):
    mask = "" if args.mask.lower() == "none" else args.mask
    index = FrequencyIndex.from_fasta(args.ref, mask=mask)
    save_index(index, args.out)
    log.info("indexed %d bp into %s", index.ref.length, args.out)


def cmd_run(args):
    config = bench.ExperimentConfig(
        index_path=args.idx,
        reads_path=args.reads,
        schemes=[s for spec in args.schemes for s in bench.parse_scheme_list(spec)],
        seed_counts=bench.parse_seed_counts(args.seeds),
        bounds=SeedBounds(args.smin, args.smax),
        max_reads=args.max_reads,
        skip_n_reads=args.skip_n_reads,
        out_dir=args.out,
        workers=args.workers,
    )
    rows, agg = bench.run_experiment(config, parse_fastq(config.reads_path))
    bench.write_run_outputs(config.out_dir, rows, agg)
    if args.plot:
        from .plotting import plot_aggregate

        plot_aggregate(agg, Path(config.out_dir) / "aggregate.png")
    log.info("%d result rows written to %s", len(rows), config.out_dir)


def cmd_hist(args):
    out = Path(args.out)
    if args.mode == "static":
        if not args.idx:
            raise ValueError("--idx is required for static mode")
        rows = bench.static_histogram(load_index(args.idx), args.kmin, args.kmax)
        bench.write_csv(out, ["k", "frequency", "distinct_seeds"], rows)
    else:
        if not args.results:
            raise ValueError("--results is required for runtime mode")
        rows = bench.runtime_histogram(args.results, scheme=args.scheme)
        bench.write_csv(out, ["bucket", "count"], rows)
    if args.plot:
        from . import plotting

        draw = plotting.plot_static_histogram if args.mode == "static" else plotting.plot_runtime_histogram
        draw(rows, out.with_suffix(".png"))


def build_parser():
    p = argparse.ArgumentParser(prog="seedsolver", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    pi = sub.add_parser("index", help="build and save a reference index")
    pi.add_argument("--ref", required=True, help="reference FASTA")
    pi.add_argument("--out", required=True, help="index file to write")
    pi.add_argument("--mask", default=DEFAULT_MASK, help="spaced-seed mask, or 'none'")
    pi.set_defaults(func=cmd_index)

    pr = sub.add_parser("run", help="run seed-selection schemes over a FASTQ read set")
    pr.add_argument("--idx", required=True)
    pr.add_argument("--reads", required=True)
    pr.add_argument("--schemes", required=True, action="append",
                    help="e.g. oss,naive:k=12,cks:k=12,ops:k=13,asf:t=10,fallback_k=12")
    pr.add_argument("--seeds", default="1..6", help="seed counts, e.g. 1..6 or 2,4")
    pr.add_argument("--smin", type=int, default=10)
    pr.add_argument("--smax", type=int, default=30)
    pr.add_argument("--max-reads", type=int)
    pr.add_argument("--skip-n-reads", action="store_true", help="drop reads containing non-ACGT bases")
    pr.add_argument("--workers", type=int, default=1)
    pr.add_argument("--out", required=True, help="output directory")
    pr.add_argument("--plot", action="store_true", help="also render aggregate.png")
    pr.set_defaults(func=cmd_run)

    ph = sub.add_parser("hist", help="seed frequency histograms")
    ph.add_argument("--mode", choices=["static", "runtime"], required=True)
    ph.add_argument("--idx", help="index file (static mode)")
    ph.add_argument("--kmin", type=int, default=10)
    ph.add_argument("--kmax", type=int, default=14)
    ph.add_argument("--results", help="results.csv from 'run' (runtime mode)")
    ph.add_argument("--scheme", help="restrict runtime mode to one scheme label")
    ph.add_argument("--out", required=True, help="histogram CSV to write")
    ph.add_argument("--plot", action="store_true", help="also render a PNG next to the CSV")
    ph.set_defaults(func=cmd_hist)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        args.func(args)
    except (OSError, ValueError) as exc:
        print(f"seedsolver {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

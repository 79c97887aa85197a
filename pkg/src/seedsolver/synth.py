"""Synthetic references and read sets for desk-scale experiments."""

import random


def random_reference(length, seed=0, repeat_fraction=0.0, families=8, unit=(20, 300), divergence=0.02):
    """Uniform random DNA with optional copies of a few repeat families.

    ``repeat_fraction`` of the bases are overwritten with mutated copies of
    ``families`` random motifs, which gives the skewed seed-frequency
    distribution real genomes have.
    """
    rng = random.Random(seed)
    seq = [rng.choice("ACGT") for _ in range(length)]
    if repeat_fraction > 0:
        motifs = ["".join(rng.choice("ACGT") for _ in range(rng.randint(*unit))) for _ in range(families)]
        covered = 0
        while covered < repeat_fraction * length:
            motif = rng.choice(motifs)
            if len(motif) >= length:
                break
            at = rng.randrange(0, length - len(motif))
            for i, c in enumerate(motif):
                seq[at + i] = rng.choice("ACGT") if rng.random() < divergence else c
            covered += len(motif)
    return "".join(seq)


def mutate(seq, n_mutations, rng):
    s = list(seq)
    for pos in rng.sample(range(len(s)), min(n_mutations, len(s))):
        s[pos] = rng.choice([c for c in "ACGT" if c != s[pos]])
    return "".join(s)


def sample_reads(reference, n, length, seed=0, max_mutations=2):
    """``n`` (id, sequence) pairs drawn from ``reference`` with 0..max_mutations substitutions."""
    rng = random.Random(seed)
    reads = []
    for i in range(n):
        L = length if isinstance(length, int) else rng.randint(*length)
        at = rng.randrange(0, len(reference) - L + 1)
        reads.append((f"read{i}", mutate(reference[at : at + L], rng.randint(0, max_mutations), rng)))
    return reads


def write_fasta(path, seq, name="synthetic", width=80):
    with open(path, "w") as fh:
        fh.write(f">{name}\n")
        for i in range(0, len(seq), width):
            fh.write(seq[i : i + width] + "\n")


def write_fastq(path, reads):
    with open(path, "w") as fh:
        for rid, seq in reads:
            fh.write(f"@{rid}\n{seq}\n+\n{'I' * len(seq)}\n")

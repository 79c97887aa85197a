"""Reference loading, 2-bit packing, suffix-array counting and spaced-seed tables."""

import struct
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

BASES = "ACGT"
SENTINEL = "#"
DEFAULT_MASK = "110100110010101111"

INDEX_MAGIC = b"OSSIDX01"
INDEX_VERSION = 1

_CODE = np.full(256, 255, dtype=np.uint8)
for _i, _c in enumerate(BASES):
    _CODE[ord(_c)] = _i
    _CODE[ord(_c.lower())] = _i


class IndexFormatError(ValueError):
    """Raised for unreadable or incompatible index files."""


@dataclass
class PackedReference:
    """2-bit encoded reference; positions outside ACGT are flagged in ``n_mask``."""

    name: str
    length: int
    bases: np.ndarray  # uint8, 4 bases per byte, first base in the low bits
    n_mask: np.ndarray  # uint8 bitset, little bit order

    @classmethod
    def from_string(cls, seq, name=""):
        raw = np.frombuffer(seq.encode("ascii"), dtype=np.uint8)
        codes = _CODE[raw]
        masked = codes == 255
        codes = np.where(masked, 0, codes).astype(np.uint8)
        return cls(name, len(seq), pack_codes(codes), np.packbits(masked, bitorder="little"))

    def codes(self):
        """Per-position base codes (masked positions decode as A=0)."""
        return unpack_codes(self.bases, self.length)

    def masked(self):
        return np.unpackbits(self.n_mask, count=self.length, bitorder="little").astype(bool)

    def text(self, sentinel=SENTINEL):
        """Decoded sequence with masked positions replaced by ``sentinel``."""
        letters = np.frombuffer(b"ACGT", dtype=np.uint8)[self.codes()]
        letters[self.masked()] = ord(sentinel)
        return letters.tobytes().decode("ascii")


def pack_codes(codes):
    n = len(codes)
    padded = np.zeros((n + 3) // 4 * 4, dtype=np.uint8)
    padded[:n] = codes
    quads = padded.reshape(-1, 4)
    return (quads[:, 0] | (quads[:, 1] << 2) | (quads[:, 2] << 4) | (quads[:, 3] << 6)).astype(np.uint8)


def unpack_codes(packed, length):
    out = np.empty((len(packed), 4), dtype=np.uint8)
    for j in range(4):
        out[:, j] = (packed >> (2 * j)) & 3
    return out.reshape(-1)[:length]


def load_fasta(path):
    """Read every record of a FASTA file and concatenate them in file order."""
    name = None
    chunks = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith(">"):
                if name is None:
                    name = line[1:].split()[0] if len(line) > 1 else ""
                continue
            chunks.append(line)
    seq = "".join(chunks)
    if not seq:
        raise ValueError("empty reference")
    return PackedReference.from_string(seq, name or "")


def build_suffix_array(ref):
    """Prefix-doubling suffix array over the masked text.

    Ordering: end of text < masked sentinel < A < C < G < T.
    """
    n = ref.length
    rank = ref.codes().astype(np.int64) + 2
    rank[ref.masked()] = 1
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    k = 1
    while True:
        second = np.zeros(n, dtype=np.int64)
        second[: n - k] = rank[k:] if k < n else 0
        sa = np.lexsort((second, rank))
        r, s = rank[sa], second[sa]
        step = np.empty(n, dtype=np.int64)
        step[0] = 1
        step[1:] = (r[1:] != r[:-1]) | (s[1:] != s[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.cumsum(step)
        rank = new_rank
        if rank.max() == n:
            return sa.astype(np.int64)
        k *= 2


@dataclass
class SpacedIndex:
    mask: str
    table: dict = field(default_factory=dict)

    @property
    def weight(self):
        return self.mask.count("1")

    def lookup(self, window):
        return self.table.get(apply_mask(window, self.mask), 0)


def apply_mask(window, mask):
    if len(window) != len(mask):
        raise ValueError("mask/window length mismatch")
    return "".join(c for c, bit in zip(window, mask) if bit == "1")


def build_spaced_index(ref, mask):
    if not mask or set(mask) - {"0", "1"}:
        raise ValueError(f"bad mask {mask!r}")
    if "1" not in mask:
        raise ValueError("degenerate mask")
    w = len(mask)
    if w > ref.length:
        raise ValueError("mask longer than reference")
    codes = ref.codes().astype(np.int64)
    masked = ref.masked().astype(np.int64)
    n_windows = ref.length - w + 1
    bad = np.concatenate(([0], np.cumsum(masked)))
    valid = (bad[w:] - bad[:-w]) == 0
    sig = np.zeros(n_windows, dtype=np.int64)
    for pos in (i for i, bit in enumerate(mask) if bit == "1"):
        sig = sig * 4 + codes[pos : pos + n_windows]
    keys, counts = np.unique(sig[valid], return_counts=True)
    weight = mask.count("1")
    table = {decode_kmer(int(key), weight): int(c) for key, c in zip(keys, counts)}
    return SpacedIndex(mask, table)


def decode_kmer(value, k):
    out = []
    for _ in range(k):
        out.append(BASES[value & 3])
        value >>= 2
    return "".join(reversed(out))


class FrequencyIndex:
    """Exact occurrence counts over a reference via binary search on its suffix array."""

    def __init__(self, ref, sa=None, spaced=None):
        self.ref = ref
        self.sa = build_suffix_array(ref) if sa is None else np.asarray(sa, dtype=np.int64)
        self.spaced = spaced
        self.text = ref.text()
        self._sa_list = self.sa.tolist()

    @classmethod
    def from_fasta(cls, path, mask=DEFAULT_MASK):
        ref = load_fasta(path)
        return cls.build(ref, mask)

    @classmethod
    def build(cls, ref, mask=DEFAULT_MASK):
        spaced = build_spaced_index(ref, mask) if mask else None
        return cls(ref, spaced=spaced)

    def __len__(self):
        return self.ref.length

    def sa_range(self, pattern, lo=0, hi=None):
        """Half-open range of suffix-array rows whose suffix starts with ``pattern``.

        ``lo``/``hi`` may narrow the search to a range already known to hold
        every match, e.g. the range of a prefix of ``pattern``.
        """
        if hi is None:
            hi = len(self._sa_list)
        m = len(pattern)
        text = self.text

        def key(p):
            return text[p : p + m]

        lo = bisect_left(self._sa_list, pattern, lo, hi, key=key)
        hi = bisect_right(self._sa_list, pattern, lo, hi, key=key)
        return lo, hi

    def count(self, pattern):
        if not pattern:
            raise ValueError("empty pattern")
        if len(pattern) > self.ref.length or not _is_acgt(pattern):
            return 0
        lo, hi = self.sa_range(pattern)
        return hi - lo

    def count_extensions(self, seq, start, min_len, max_len):
        """Counts of ``seq[start:start+len]`` for every len in [min_len, max_len]."""
        out = []
        lo, hi = 0, len(self._sa_list)
        for length in range(min_len, max_len + 1):
            pattern = seq[start : start + length]
            if hi > lo:
                if not _is_acgt(pattern):
                    lo = hi
                else:
                    lo, hi = self.sa_range(pattern, lo, hi)
            out.append(hi - lo)
        return out


_ACGT = frozenset(BASES)


def _is_acgt(s):
    return _ACGT.issuperset(s)


def count_occurrences(index, pattern):
    return index.count(pattern)


def save_index(index, path):
    ref = index.ref
    parts = [
        INDEX_MAGIC,
        struct.pack("<IQ", INDEX_VERSION, ref.length),
        ref.bases.tobytes(),
        ref.n_mask.tobytes(),
        index.sa.astype("<u8").tobytes(),
    ]
    mask = index.spaced.mask if index.spaced else ""
    parts.append(struct.pack("<I", len(mask)))
    parts.append(mask.encode("ascii"))
    table = index.spaced.table if index.spaced else {}
    parts.append(struct.pack("<Q", len(table)))
    for key in sorted(table):
        parts.append(key.encode("ascii"))
        parts.append(struct.pack("<Q", table[key]))
    Path(path).write_bytes(b"".join(parts))


class _Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, n):
        if self.pos + n > len(self.data):
            raise IndexFormatError("corrupt index")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def load_index(path):
    data = Path(path).read_bytes()
    if len(data) < len(INDEX_MAGIC) + 4 or data[: len(INDEX_MAGIC)] != INDEX_MAGIC:
        raise IndexFormatError("incompatible index")
    r = _Reader(data)
    r.take(len(INDEX_MAGIC))
    (version,) = r.unpack("<I")
    if version != INDEX_VERSION:
        raise IndexFormatError("incompatible index")
    (length,) = r.unpack("<Q")
    bases = np.frombuffer(r.take((length + 3) // 4), dtype=np.uint8).copy()
    n_mask = np.frombuffer(r.take((length + 7) // 8), dtype=np.uint8).copy()
    sa = np.frombuffer(r.take(8 * length), dtype="<u8").astype(np.int64)
    (mask_len,) = r.unpack("<I")
    mask = r.take(mask_len).decode("ascii")
    (n_keys,) = r.unpack("<Q")
    weight = mask.count("1")
    table = {}
    for _ in range(n_keys):
        key = r.take(weight).decode("ascii")
        (table[key],) = r.unpack("<Q")
    if r.pos != len(data):
        raise IndexFormatError("corrupt index")
    ref = PackedReference("", length, bases, n_mask)
    spaced = SpacedIndex(mask, table) if mask else None
    return FrequencyIndex(ref, sa=sa, spaced=spaced)

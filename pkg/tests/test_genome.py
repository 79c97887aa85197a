import hashlib

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seedsolver import (
    DEFAULT_MASK,
    FrequencyIndex,
    PackedReference,
    apply_mask,
    build_spaced_index,
    build_suffix_array,
    load_fasta,
    load_index,
    save_index,
)
from seedsolver.genome import IndexFormatError
from seedsolver.oracle import naive_count

from conftest import make_index, random_dna

dna = st.text(alphabet="ACGT", min_size=1, max_size=80)


def naive_sa(seq):
    # masked bases sort below A, end of text below everything
    text = "".join(c if c in "ACGT" else "#" for c in seq.upper())
    return sorted(range(len(text)), key=lambda i: text[i:])


def test_fasta_direct_encoding(tmp_path):
    f = tmp_path / "g.fa"
    f.write_text(">g\nACGT\n")
    ref = load_fasta(f)
    assert ref.length == 4
    assert ref.codes().tolist() == [0, 1, 2, 3]
    assert not ref.masked().any()
    assert ref.name == "g"


def test_fasta_n_mask(tmp_path):
    f = tmp_path / "g.fa"
    f.write_text(">g\nACNT\n")
    ref = load_fasta(f)
    assert ref.length == 4
    assert np.flatnonzero(ref.masked()).tolist() == [2]
    assert ref.codes()[2] == 0


def test_fasta_records_concatenate_and_upcase(tmp_path):
    f = tmp_path / "g.fa"
    f.write_text(">a\nAc\n>b\ngT\n")
    assert load_fasta(f).codes().tolist() == [0, 1, 2, 3]


def test_fasta_empty(tmp_path):
    f = tmp_path / "g.fa"
    f.write_text(">only header\n")
    with pytest.raises(ValueError, match="empty reference"):
        load_fasta(f)


def test_fasta_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_fasta(tmp_path / "nope.fa")


@pytest.mark.parametrize("seq,expected", [("ACAC", [2, 0, 3, 1]), ("AAAA", [3, 2, 1, 0]), ("T", [0])])
def test_suffix_array_examples(seq, expected):
    assert naive_sa(seq) == expected
    assert build_suffix_array(PackedReference.from_string(seq)).tolist() == expected


@given(st.text(alphabet="ACGTN", min_size=1, max_size=120))
@settings(max_examples=200, deadline=None)
def test_suffix_array_matches_sorting(seq):
    sa = build_suffix_array(PackedReference.from_string(seq)).tolist()
    assert sorted(sa) == list(range(len(seq)))
    assert sa == naive_sa(seq)


def test_count_examples(toy_index):
    assert toy_index.count("ACGT") == 2
    assert toy_index.count("GG") == 0
    assert toy_index.count("ACG") == 2
    assert toy_index.count("ACGTA") == 1


def test_count_overlapping_and_masked():
    idx = make_index("AAAANAAA", mask="11")
    assert idx.count("AA") == naive_count("AAAANAAA", "AA") == 5
    assert idx.count("AAAA") == 1
    assert idx.count("ANA") == 0
    assert idx.count("AAAAA") == 0


def test_count_errors_and_edges(toy_index):
    with pytest.raises(ValueError, match="empty pattern"):
        toy_index.count("")
    assert toy_index.count("ACGTACGTTTA") == 0  # longer than the reference
    assert toy_index.count("ACNT") == 0


@given(dna, dna)
@settings(max_examples=200, deadline=None)
def test_count_matches_naive_scan(ref, pattern):
    assert make_index(ref, mask="").count(pattern) == naive_count(ref, pattern)


@given(dna, st.sampled_from("ACGT"))
@settings(max_examples=150, deadline=None)
def test_monotone_under_extension(ref, c):
    idx = make_index(ref * 3, mask="")
    for p in {ref[:3], ref[-2:], ref[1:5]} - {""}:
        assert idx.count(p + c) <= idx.count(p)
        assert idx.count(c + p) <= idx.count(p)


@given(dna)
@settings(max_examples=150, deadline=None)
def test_partition_property(ref):
    idx = make_index(ref, mask="")
    for n in (1, 2, 3):
        for start in range(0, len(ref) - n + 1, 7):
            p = ref[start : start + n]
            at_end = int(ref.endswith(p))
            assert idx.count(p) == sum(idx.count(p + c) for c in "ACGT") + at_end


def test_count_extensions_agree_with_count(rng):
    ref = random_dna(rng, 3000)
    idx = make_index(ref, mask="")
    read = ref[100:160] + "N" + ref[500:540]
    for start in range(0, 80, 3):
        counts = idx.count_extensions(read, start, 4, 12)
        assert counts == [idx.count(read[start : start + n]) for n in range(4, 13)]


def test_spaced_index_example():
    s = build_spaced_index(PackedReference.from_string("ACGTACGT"), "1101")
    assert s.table == {"ACT": 2, "CGA": 1, "GTC": 1, "TAG": 1}


def test_spaced_identity_mask_is_kmer_count(rng):
    ref = random_dna(rng, 500)
    s = build_spaced_index(PackedReference.from_string(ref), "1111")
    idx = make_index(ref, mask="")
    for key, value in list(s.table.items())[:50]:
        assert value == idx.count(key)
    assert s.table.get("ACGT", 0) == idx.count("ACGT")


def test_spaced_index_totals_and_key_length(rng):
    ref = random_dna(rng, 400) + "NN" + random_dna(rng, 200)
    s = build_spaced_index(PackedReference.from_string(ref), DEFAULT_MASK)
    assert s.weight == 11
    assert all(len(k) == 11 for k in s.table)
    w = len(DEFAULT_MASK)
    clean = sum(1 for p in range(len(ref) - w + 1) if "N" not in ref[p : p + w])
    assert sum(s.table.values()) == clean


def test_spaced_index_errors():
    ref = PackedReference.from_string("ACGTACGT")
    with pytest.raises(ValueError, match="degenerate mask"):
        build_spaced_index(ref, "0000")
    with pytest.raises(ValueError):
        build_spaced_index(ref, "1" * 9)


def test_apply_mask():
    assert apply_mask("ACGT", "1101") == "ACT"
    assert apply_mask("ACGT", "1111") == "ACGT"
    with pytest.raises(ValueError, match="length mismatch"):
        apply_mask("ACG", "1101")


def test_packing_round_trip(rng):
    seq = random_dna(rng, 1001, "ACGTN")
    ref = PackedReference.from_string(seq)
    assert ref.text() == seq.replace("N", "#")
    assert len(ref.bases) == (1001 + 3) // 4
    assert len(ref.n_mask) == (1001 + 7) // 8


def test_save_load_round_trip(tmp_path, rng):
    idx = make_index("ACGT", mask="11")
    path = tmp_path / "a.idx"
    save_index(idx, path)
    back = load_index(path)
    for n in range(1, 5):
        for start in range(0, 5 - n):
            p = "ACGT"[start : start + n]
            assert back.count(p) == idx.count(p)
    assert back.spaced.table == idx.spaced.table

    seq = random_dna(rng, 2000, "ACGTN")
    idx = make_index(seq, mask=DEFAULT_MASK)
    save_index(idx, path)
    back = load_index(path)
    assert np.array_equal(back.ref.bases, idx.ref.bases)
    assert np.array_equal(back.ref.n_mask, idx.ref.n_mask)
    assert np.array_equal(back.sa, idx.sa)
    assert back.spaced.mask == idx.spaced.mask and back.spaced.table == idx.spaced.table


def test_index_file_layout(tmp_path):
    path = tmp_path / "a.idx"
    save_index(make_index("ACGTN", mask="101"), path)
    data = path.read_bytes()
    assert data[:8] == b"OSSIDX01"
    assert int.from_bytes(data[8:12], "little") == 1
    assert int.from_bytes(data[12:20], "little") == 5
    assert data[20:22] == bytes([0b11100100, 0b00000000])  # ACGT packed low bits first, then masked A
    assert data[22] == 0b10000  # n_mask bit 4


def test_load_rejects_bad_magic(tmp_path):
    path = tmp_path / "a.idx"
    save_index(make_index("ACGT"), path)
    data = bytearray(path.read_bytes())
    data[:8] = b"NOTANIDX"
    path.write_bytes(bytes(data))
    with pytest.raises(IndexFormatError, match="incompatible index"):
        load_index(path)


def test_load_rejects_truncation(tmp_path, rng):
    path = tmp_path / "a.idx"
    save_index(make_index(random_dna(rng, 300)), path)
    data = path.read_bytes()
    path.write_bytes(data[: 22 + 75 + 100])  # stops inside the suffix array
    with pytest.raises(IndexFormatError, match="corrupt index"):
        load_index(path)


def test_build_is_deterministic(tmp_path, rng):
    seq = random_dna(rng, 5000, "ACGTN")
    a, b = tmp_path / "a.idx", tmp_path / "b.idx"
    save_index(make_index(seq, DEFAULT_MASK), a)
    save_index(make_index(seq, DEFAULT_MASK), b)
    assert hashlib.sha256(a.read_bytes()).digest() == hashlib.sha256(b.read_bytes()).digest()


def test_from_fasta(tmp_path):
    f = tmp_path / "g.fa"
    f.write_text(">x\nACGTACGT\nTT\n")
    idx = FrequencyIndex.from_fasta(f, mask="1101")
    assert idx.count("ACGT") == 2
    assert idx.spaced.table["ACT"] == 2
    with pytest.raises(ValueError, match="mask longer"):
        FrequencyIndex.from_fasta(f)

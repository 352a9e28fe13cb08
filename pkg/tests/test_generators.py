import random

import numpy as np
import pytest

from nsseq import bitword
from nsseq.bitword import BitWord
from nsseq.enumeration import count_necklace_words
from nsseq.generators import (
    SequenceBuffer,
    from_packed,
    generate_lex,
    generate_lex_acyclic,
    generate_merge,
    generate_merge_v,
    lex_lyndon_words,
    merge_bits,
    merge_successor,
    read_sequence,
    verify,
)
from nsseq.oracle import enumerate_ns_necklaces
from nsseq.vset import vset_instantiate, vset_layout


def window_set(seq):
    return {int(v) for v in seq.windows()}


def necklace_word_set(n, s):
    return {w.value for nk in enumerate_ns_necklaces(n, s) for w in nk.words()}


def test_merge_small_traces():
    # hand traces of the successor rule from 1^n
    assert str(generate_merge(3, 2)) == "1110010"
    assert str(generate_merge(3, 1)) == "1110"


def test_merge_5_2_covers_necklace_words():
    seq = generate_merge(5, 2)
    assert len(seq) == 21
    assert window_set(seq) == necklace_word_set(5, 2)


@pytest.mark.parametrize("n", range(3, 11))
def test_generators_are_maximal(n):
    for s in range(1, n - 1):
        target = necklace_word_set(n, s)
        for gen in (generate_merge, generate_lex):
            seq = gen(n, s)
            report = verify(seq)
            assert report.valid and report.is_maximum and report.covers_exactly_necklace_words
            assert len(seq) == count_necklace_words(n, s)
            assert window_set(seq) == target


def test_compiled_merge_matches_streaming_reference():
    for n in range(3, 11):
        for s in range(1, n - 1):
            assert str(generate_merge(n, s)) == "".join(map(str, merge_bits(n, s)))


def test_successor_makes_constant_number_of_rotations(monkeypatch):
    calls = []
    real = BitWord.rotate

    def counting(self, r):
        calls.append(r)
        return real(self, r)

    monkeypatch.setattr(BitWord, "rotate", counting)
    monkeypatch.setattr(bitword, "max_rotation", lambda w: pytest.fail("rotation search in successor"))
    vset = vset_instantiate(vset_layout(24, 2, 2), "0" * 12)
    rng = random.Random(0)
    for _ in range(500):
        calls.clear()
        merge_successor(rng.getrandbits(24) | 1 << 23, 24, 2, vset)
        assert len(calls) <= 1


def test_lex_examples():
    assert str(generate_lex(3, 2)) == "0010111"
    assert str(generate_lex(5, 2)) == "001010011101011011111"
    assert len(generate_lex(4, 1)) == 7


def test_lex_full_de_bruijn_when_unconstrained():
    seq = generate_lex(4, 4)
    assert str(seq) == "0000100110101111"


def brute_lyndon_words(n):
    out = []
    for d in range(1, n + 1):
        if n % d:
            continue
        for v in range(1 << d):
            w = BitWord(d, v)
            if all(w < w.rotate(r) for r in range(1, d)):
                out.append(str(w))
    return sorted(out)


@pytest.mark.parametrize("n", range(3, 11))
def test_lex_order_and_start(n):
    every = brute_lyndon_words(n)
    for s in range(1, n - 1):
        got = ["".join(map(str, z)) for z in lex_lyndon_words(n, s)]
        assert got == sorted(got) and len(set(got)) == len(got)
        start = "0" * (s + 1) + "1" * (n - s - 1)
        assert got[0] == every[every.index(start) + 1]
        expected = sorted(str(bitword.lyndon_rep(nk)) for nk in enumerate_ns_necklaces(n, s))
        assert sorted(got) == expected


def test_lex_acyclic():
    assert str(generate_lex_acyclic(5, 2)) == "001100101001110101101111100"
    assert str(generate_lex_acyclic(3, 2)) == "001011100"
    seq = generate_lex_acyclic(3, 1)
    assert len(seq) == 7
    wins = seq.windows()
    assert len(set(wins.tolist())) == 5
    for n in range(3, 11):
        for s in range(1, n):
            seq = generate_lex_acyclic(n, s)
            report = verify(seq)
            ell = count_necklace_words(n, s)
            extra = s if s < n - 1 else 0
            assert report.valid and report.is_maximum
            assert len(seq) == ell + extra + n - 1


def test_verify_reports():
    good = verify(SequenceBuffer.from_str("0010111", 3, 2))
    assert good.valid and good.is_maximum and good.covers_exactly_necklace_words
    short = verify(SequenceBuffer.from_str("00110101111101100101", 5, 2))
    assert short.valid and short.length == 20
    assert not short.is_maximum and not short.covers_exactly_necklace_words
    dup = verify(SequenceBuffer.from_str("0101", 3, 2))
    assert not dup.valid and not dup.distinct_windows


def test_verify_run_violation():
    report = verify(SequenceBuffer.from_str("0001011", 3, 2))
    assert not report.run_ok and not report.valid


@pytest.fixture(scope="module")
def keyed_20():
    spec = vset_layout(20, 2, 2)
    keys = [format(v, f"0{spec.K}b") for v in (0, 2**spec.K - 1, 0x5A, 0x33, 0x0F, 0xC1)]
    return spec, {k: generate_merge_v(20, 2, 2, k) for k in keys}


def test_merge_v_maximal_and_distinct(keyed_20):
    spec, seqs = keyed_20
    ell = count_necklace_words(20, 2)
    strings = set()
    for seq in seqs.values():
        report = verify(seq)
        assert report.valid and report.is_maximum and len(seq) == ell
        strings.add(str(seq))
    assert len(strings) == len(seqs)
    assert str(generate_merge(20, 2)) not in strings


def test_merge_v_matches_streaming_reference():
    spec = vset_layout(14, 2, 2)
    for key in ("00", "01", "10", "11"):
        vset = vset_instantiate(spec, key)
        assert str(generate_merge_v(14, 2, 2, key)) == "".join(map(str, merge_bits(14, 2, vset)))


def test_merge_v_changes_only_at_stored_necklaces():
    # the keyed run differs from the plain merge, but covers the same words
    plain = generate_merge(14, 2)
    keyed = generate_merge_v(14, 2, 2, "11")
    assert str(plain) != str(keyed)
    assert window_set(plain) == window_set(keyed)


def test_parameter_errors():
    for bad in [(1, 1), (25, 2), (5, 5), (5, 0)]:
        with pytest.raises(ValueError):
            generate_merge(*bad)
    with pytest.raises(ValueError):
        generate_lex(33, 2)


def test_packed_round_trip():
    seq = generate_lex(7, 2)
    data = seq.to_packed()
    assert data.startswith(f"{len(seq)}\n".encode())
    assert np.array_equal(from_packed(data), seq.bits)
    assert np.array_equal(read_sequence(data), seq.bits)
    assert np.array_equal(read_sequence(b"0010111\n"), generate_lex(3, 2).bits)
    with pytest.raises(ValueError):
        read_sequence(b"abc")

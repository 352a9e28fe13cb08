import math

import numpy as np
import pytest

from nsseq.bitword import BitWord, zero_run_max
from nsseq.enumeration import (
    CountOverflowError,
    EnumerationLimitError,
    CountTable,
    asymptotic_rate,
    count_necklace_words,
    count_weight_necklace_words,
    count_weight_words,
    count_words,
    count_words_closed,
    cyclic_zero_runs,
    fib_g,
    lambda_root,
    linear_zero_runs,
    metrics,
    necklace_words_formula,
    rate_table,
    rates_to_json,
)


def brute_h(n, s):
    return sum(1 for v in range(1 << n) if zero_run_max(BitWord(n, v)) <= s)


def brute_weight(n, k, cyclic):
    count = 0
    for v in range(1 << n):
        w = BitWord(n, v)
        if v.bit_count() == k and zero_run_max(w, cyclic=cyclic) <= 1:
            count += 1
    return count


@pytest.mark.parametrize("n, s, expected", [(5, 2, 24), (2, 2, 4), (3, 3, 8), (4, 3, 15), (11, 1, 233)])
def test_count_words(n, s, expected):
    assert count_words(n, s) == expected


def test_count_words_brute_force():
    for n in range(1, 13):
        for s in range(1, n + 1):
            assert count_words(n, s) == brute_h(n, s)
    # vectorized run counter for the larger n
    for n in range(13, 17):
        words = np.arange(1 << n, dtype=np.uint64)
        runs = linear_zero_runs(words, n)
        for s in range(1, n + 1):
            assert count_words(n, s) == int((runs <= s).sum())


def test_count_words_overflow_is_reported():
    assert count_words(63, 63) == 2**63
    with pytest.raises(CountOverflowError):
        count_words(70, 70)


def test_fib_g():
    assert [fib_g(n) for n in (-1, 0, 1, 2, 3)] == [1, 1, 2, 3, 5]
    for n in range(1, 30):
        assert fib_g(n) == count_words(n, 1)


@pytest.mark.parametrize("n, s, expected", [(5, 2, 21), (3, 1, 4), (4, 3, 15), (7, 7, 128), (11, 1, 199)])
def test_count_necklace_words(n, s, expected):
    assert count_necklace_words(n, s) == expected


def test_necklace_words_n1_is_fibonacci_difference():
    assert count_necklace_words(11, 1) == fib_g(11) - fib_g(7)
    for n in range(3, 25):
        assert count_necklace_words(n, 1) == fib_g(n) - fib_g(n - 4)
    for n in range(25, 41):
        # closed form against the formula once exhaustive counting gets expensive
        assert necklace_words_formula(n, 1) == fib_g(n) - fib_g(n - 4)


def test_necklace_words_formula_matches_direct_count():
    for n in range(2, 21):
        for s in range(1, n - 1):
            assert count_necklace_words(n, s) == necklace_words_formula(n, s)
    for n in range(2, 12):
        assert count_necklace_words(n, n - 1) == 2**n - 1
        assert count_necklace_words(n, n) == 2**n


def test_cyclic_run_counter_matches_scalar():
    n = 9
    words = np.arange(1 << n, dtype=np.uint64)
    runs = cyclic_zero_runs(words, n)
    for v in range(1 << n):
        assert runs[v] == zero_run_max(BitWord(n, v), cyclic=True)


@pytest.mark.parametrize("s, expected", [(1, 1.6180), (5, 1.9836), (12, 1.9999)])
def test_lambda_root(s, expected):
    assert abs(lambda_root(s, 1e-12) - expected) <= 5e-5


def test_lambda_monotone_below_two():
    roots = [lambda_root(s) for s in range(1, 21)]
    assert all(a < b for a, b in zip(roots, roots[1:]))
    assert all(1 < r < 2 for r in roots)
    for s, r in enumerate(roots, start=1):
        lhs, rhs = r ** (s + 1), sum(r**i for i in range(s + 1))
        assert abs(lhs - rhs) <= 1e-9 * rhs


@pytest.mark.parametrize("n, s, expected", [(5, 2, 24), (10, 3, 773), (4, 1, 8)])
def test_count_words_closed(n, s, expected):
    assert count_words_closed(n, s) == expected


def test_closed_form_matches_recursion():
    for n in range(1, 41):
        for s in range(1, 13):
            assert count_words_closed(n, s) == count_words(n, s)


def test_weight_counts_against_brute_force():
    assert count_weight_words(5, 3) == brute_weight(5, 3, False) == 6
    assert count_weight_words(5, 1) == brute_weight(5, 1, False) == 0
    assert count_weight_necklace_words(5, 3) == brute_weight(5, 3, True) == 5
    for n in range(1, 13):
        assert count_weight_words(n, n) == 1
        assert count_weight_necklace_words(n, n) == 1
        for k in range(n + 1):
            assert count_weight_words(n, k) == brute_weight(n, k, False)
            assert count_weight_necklace_words(n, k) == brute_weight(n, k, True)


def test_weight_sums():
    assert sum(count_weight_necklace_words(5, k) for k in range(6)) == 11
    for n in range(1, 31):
        assert sum(count_weight_words(n, k) for k in range(n + 1)) == count_words(n, 1)
        if n <= 24:
            ell = count_necklace_words(n, 1)
        else:
            ell = necklace_words_formula(n, 1)
        assert sum(count_weight_necklace_words(n, k) for k in range(n + 1)) == ell


def test_metrics():
    rate, red = metrics(5, 2)
    assert rate == pytest.approx(math.log2(21) / 5)
    assert red == pytest.approx(5 - math.log2(21))
    assert asymptotic_rate(1) == pytest.approx(0.6942, abs=1e-3)
    assert asymptotic_rate(2) == pytest.approx(0.8791, abs=1e-3)
    with pytest.raises(ValueError):
        metrics(1, 1)


def test_count_table_invariants():
    table = CountTable.build(11, 7)
    for (n, s), (ell, h) in table.entries.items():
        assert ell <= h
        if s >= n:
            assert ell == h == 2**n
    tsv = table.to_tsv().splitlines()
    assert tsv[0] == "n\ts\tell\th"
    assert "5\t2\t21\t24" in tsv


def test_rates_json_keys():
    import json

    rows = json.loads(rates_to_json(rate_table(3)))
    assert [set(r) for r in rows] == [{"s", "lambda", "rate"}] * 3
    assert rate_table(1)[0].redundancy_coeff == pytest.approx(1 - 0.6942, abs=1e-4)


def test_necklace_count_respects_enumeration_cap():
    with pytest.raises(EnumerationLimitError):
        count_necklace_words(29, 1)

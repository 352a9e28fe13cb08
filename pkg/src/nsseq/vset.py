"""Keyed sets of stored merge vertices.

A ``VSet`` holds ``k`` words ``V(0) .. V(k-1)``, one per necklace, that replace
the default merge vertex of those necklaces. Each word carries its own index in
a ones-separated prefix and ends with a unique longest run of ones followed by
a single zero, so membership of any candidate word can be decided by one pass
over its bits. The remaining positions are free key bits.

Positions below are 0-indexed from the first (leftmost) bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitword import BitWord, ones_runs, zero_run_max


class LayoutInfeasible(ValueError):
    pass


@dataclass(frozen=True)
class VSetSpec:
    n: int
    s: int
    k: int
    m: int
    blocks: int  # ceil(m / s)
    index_positions: tuple[int, ...]
    fixed_ones: frozenset[int]
    fixed_zeros: frozenset[int]
    free_positions: tuple[int, ...]

    @property
    def prefix_len(self) -> int:
        # P = (s+1) * ceil(m/s); the prefix spans positions 0..P
        return (self.s + 1) * self.blocks

    @property
    def run_len(self) -> int:
        return self.prefix_len + 2

    @property
    def theta(self) -> int:
        return len(self.free_positions)

    @property
    def K(self) -> int:
        return self.k * self.theta

    def base_word(self) -> int:
        return sum(1 << (self.n - 1 - p) for p in self.fixed_ones)

    def word(self, index: int, free: str) -> int:
        value = self.base_word()
        width = len(self.index_positions)
        for t, p in enumerate(self.index_positions):
            if (index >> (width - 1 - t)) & 1:
                value |= 1 << (self.n - 1 - p)
        for bit, p in zip(free, self.free_positions):
            if bit == "1":
                value |= 1 << (self.n - 1 - p)
        return value

    def describe(self) -> str:
        row = []
        for p in range(self.n):
            if p in self.fixed_ones:
                row.append("1")
            elif p in self.fixed_zeros:
                row.append("0")
            elif p in self.index_positions:
                row.append("i")
            else:
                row.append("*")
        return "".join(row)


def _extremes(n, fixed_ones, loose):
    """The all-zero and all-one fillings of every position in ``loose``."""
    low = sum(1 << (n - 1 - p) for p in fixed_ones)
    high = low | sum(1 << (n - 1 - p) for p in loose)
    return BitWord(n, low), BitWord(n, high)


def _zero_ok(w: BitWord, s: int) -> bool:
    return zero_run_max(w, cyclic=True) <= s


def _ones_ok(w: BitWord, run_len: int) -> bool:
    # the only run reaching run_len must be the reserved one, of exactly run_len
    long_runs = [length for _, length in ones_runs(w, cyclic=True) if length >= run_len]
    return long_runs == [run_len]


def vset_layout(n: int, s: int, k: int) -> VSetSpec:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if s < 1 or s >= n - 1:
        raise ValueError(f"need 1 <= s < n-1, got n={n}, s={s}")
    if n > 62:
        raise ValueError("n must be at most 62")
    m = math.ceil(math.log2(k))
    blocks = math.ceil(m / s)
    P = (s + 1) * blocks
    suffix_start = n - P - 4
    mid_lo, mid_hi = P + 2, suffix_start - 1
    if mid_lo > mid_hi:
        raise LayoutInfeasible(f"n={n} too small: prefix and suffix need {2 * P + 6} bits plus a middle")

    ones = {(s + 1) * j for j in range(blocks + 1)}
    index_positions = tuple(p for p in range(P + 1) if p not in ones)
    zeros = {P + 1, suffix_start, n - 1}
    ones |= set(range(suffix_start + 1, n - 1))

    # breakers keep every other run of ones shorter than the reserved run
    breakers = set()
    j = 1
    while (P + 2) * j <= n - P - 3:
        p = (P + 2) * j - 2  # 1-indexed position (P+2)j - 1
        if mid_lo <= p <= mid_hi:
            breakers.add(p)
        j += 1
    zeros |= breakers

    # a one closing every s+1 positions, pulled one step early on a breaker
    last = P
    while True:
        p = last + s + 1
        if p in breakers:
            p -= 1
        if p > mid_hi:
            break
        ones.add(p)
        last = p

    unresolved = [p for p in range(mid_lo, mid_hi + 1) if p not in ones and p not in zeros]
    free: list[int] = []
    for pos, p in enumerate(unresolved):
        loose = list(index_positions) + free + unresolved[pos:]
        low, high = _extremes(n, ones, loose)
        zero_ok = _zero_ok(low, s)
        ones_ok = _ones_ok(high, P + 2)
        if zero_ok and ones_ok:
            free.append(p)
        elif not zero_ok:
            ones.add(p)
        else:
            zeros.add(p)

    low, high = _extremes(n, ones, list(index_positions) + free)
    if not _zero_ok(low, s) or not _ones_ok(high, P + 2):
        raise LayoutInfeasible(f"fixed positions violate the constraints for n={n}, s={s}, k={k}")
    if not free:
        raise LayoutInfeasible(f"no free positions for n={n}, s={s}, k={k}")
    return VSetSpec(
        n=n,
        s=s,
        k=k,
        m=m,
        blocks=blocks,
        index_positions=index_positions,
        fixed_ones=frozenset(ones),
        fixed_zeros=frozenset(zeros),
        free_positions=tuple(free),
    )


@dataclass(frozen=True)
class VSet:
    spec: VSetSpec
    words: tuple[BitWord, ...]

    def as_array(self) -> np.ndarray:
        return np.array([w.value for w in self.words], dtype=np.int64)


def key_to_bits(key_hex: str, K: int) -> str:
    """Big-endian hex key of ceil(K/4) digits to a K-bit string (extra high bits dropped)."""
    digits = math.ceil(K / 4)
    if len(key_hex) != digits:
        raise ValueError(f"key must have {digits} hex digits for K={K}, got {len(key_hex)}")
    value = int(key_hex, 16) & ((1 << K) - 1)
    return format(value, f"0{K}b")


def vset_instantiate(spec: VSetSpec, free_bits: str) -> VSet:
    if len(free_bits) != spec.K or set(free_bits) - {"0", "1"}:
        raise ValueError(f"free_bits must be a bit string of length K={spec.K}")
    theta = spec.theta
    words = tuple(
        BitWord(spec.n, spec.word(i, free_bits[i * theta:(i + 1) * theta]))
        for i in range(spec.k)
    )
    vset = VSet(spec, words)
    check_vset(vset)
    return vset


def check_vset(vset: VSet) -> None:
    """Raise AssertionError unless every stored-word invariant holds."""
    spec = vset.spec
    run_len = spec.run_len
    for i, w in enumerate(vset.words):
        assert zero_run_max(w, cyclic=True) <= spec.s, f"V({i}) breaks the zero-run limit"
        runs = ones_runs(w, cyclic=True)
        longest = max(length for _, length in runs)
        assert longest == run_len, f"V({i}) longest ones run {longest} != {run_len}"
        assert [r for r in runs if r[1] == run_len] == [(spec.n - 1 - run_len, run_len)], (
            f"V({i}) reserved run is not unique or misplaced"
        )
    assert len({w.value for w in vset.words}) == spec.k


def match_v(y: BitWord, vset: VSet) -> int | None:
    """Index ``i`` with ``y`` on the necklace of ``V(i)``, else None."""
    spec = vset.spec
    n, s = spec.n, spec.s
    if y.value in (0, y.mask):
        return None
    runs = ones_runs(y, cyclic=True)
    best = max(length for _, length in runs)
    hits = [(start, length) for start, length in runs if length == best]
    if best != spec.run_len or len(hits) != 1:
        return None
    start, length = hits[0]
    end = (start + length - 1) % n
    u = y.rotate(end + 2)
    if any(u[(s + 1) * j] == 0 for j in range(spec.blocks + 1)):
        return None
    index = 0
    for p in spec.index_positions:
        index = (index << 1) | u[p]
    if index >= spec.k or u != vset.words[index]:
        return None
    return index

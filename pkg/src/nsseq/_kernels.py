"""Compiled inner loops for the successor rules and exhaustive counting.

Words are int64 with bit ``n-1`` holding the first symbol. Each successor step
makes a constant number of linear scans over the ``n`` bits of the candidate
word; nothing here enumerates rotations.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def bit_at(x, i, n):
    return (x >> (n - 1 - i)) & 1


@numba.njit(cache=True)
def rotl(x, r, n):
    r = r % n
    if r == 0:
        return x
    mask = (np.int64(1) << n) - 1
    return ((x << r) | (x >> (n - r))) & mask


@numba.njit(cache=True)
def cyclic_zero_run(x, n):
    mask = (np.int64(1) << n) - 1
    zeros = ~x & mask
    acc = zeros
    run = 0
    # acc marks positions that start a cyclic run of more than `run` zeros
    while acc != 0 and run < n:
        run += 1
        acc &= rotl(zeros, run, n)
    return run


@numba.njit(cache=True)
def is_max_rotation(x, n):
    """x is the largest of its rotations iff its complement is a necklace."""
    p = 1
    for i in range(1, n):
        a = 1 - bit_at(x, i - p, n)
        b = 1 - bit_at(x, i, n)
        if a > b:
            return False
        if a < b:
            p = i + 1
    return n % p == 0


@numba.njit(cache=True)
def match_v(y, n, s, c, run_len, vwords, index_positions):
    """Index of the stored word sharing a necklace with ``y``, or -1."""
    mask = (np.int64(1) << n) - 1
    if y == mask or y == 0:
        return -1
    last_zero = 0
    for i in range(n):
        if bit_at(y, i, n) == 0:
            last_zero = i
    best = 0
    count = 0
    best_end = -1
    run = 0
    for t in range(1, n + 1):
        pos = (last_zero + t) % n
        if bit_at(y, pos, n) == 1:
            run += 1
        else:
            if run > 0:
                if run > best:
                    best = run
                    count = 1
                    best_end = (pos - 1) % n
                elif run == best:
                    count += 1
            run = 0
    if best != run_len or count != 1:
        return -1
    # place the run so that it ends one position before the last bit
    u = rotl(y, best_end + 2, n)
    for j in range(c + 1):
        if bit_at(u, (s + 1) * j, n) == 0:
            return -1
    idx = 0
    for t in range(index_positions.shape[0]):
        idx = (idx << 1) | bit_at(u, index_positions[t], n)
    if idx >= vwords.shape[0]:
        return -1
    if u != vwords[idx]:
        return -1
    return idx


@numba.njit(cache=True)
def merge_successor(w, n, s, use_v, c, run_len, vwords, index_positions):
    mask = (np.int64(1) << n) - 1
    first = (w >> (n - 1)) & 1
    y = (w << 1) & mask
    if cyclic_zero_run(y, n) > s:
        return first
    if use_v:
        idx = match_v(y, n, s, c, run_len, vwords, index_positions)
        if idx >= 0:
            if y == vwords[idx]:
                return 1 - first
            return first
    if is_max_rotation(y, n):
        return 1 - first
    return first


@numba.njit(cache=True)
def merge_run(n, s, use_v, c, run_len, vwords, index_positions, out):
    """Fill ``out`` with the merged cycle starting at 1^n; return its length or -1."""
    mask = (np.int64(1) << n) - 1
    target = mask >> 1  # 0 1^(n-1)
    w = mask
    for t in range(n):
        out[t] = 1
    i = 0
    cap = out.shape[0]
    while w != target:
        if i + n >= cap:
            return -1
        b = merge_successor(w, n, s, use_v, c, run_len, vwords, index_positions)
        out[i + n] = b
        w = ((w << 1) & mask) | b
        i += 1
    return i + 1


@numba.njit(cache=True)
def cyclic_run_hist(n, start, stop, hist):
    for x in range(start, stop):
        hist[cyclic_zero_run(np.int64(x), n)] += 1

"""Brute-force ground truth on small instances.

Everything here is exhaustive and deliberately independent of the counting
formulas and the generators: the longest cycles and paths of the constrained
de Bruijn graph are found by depth-first search, and necklaces are classified
by comparing all rotations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .bitword import BitWord, Necklace
from .enumeration import count_necklace_words, linear_zero_runs

WORDS_CAP = 20
NECKLACES_CAP = 24
SEARCH_CAP = 6


class SearchLimitError(RuntimeError):
    pass


def _all_words(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.uint64)


def enumerate_ns_words(n: int, s: int) -> list[BitWord]:
    if n > WORDS_CAP:
        raise SearchLimitError(f"n={n} exceeds the word enumeration cap {WORDS_CAP}")
    words = _all_words(n)
    keep = words[linear_zero_runs(words, n) <= s]
    return [BitWord(n, int(v)) for v in keep]


def enumerate_ns_necklaces(n: int, s: int) -> list[Necklace]:
    """Every (n,s)-necklace, by least rotation, found by comparing all rotations."""
    if n > NECKLACES_CAP:
        raise SearchLimitError(f"n={n} exceeds the necklace enumeration cap {NECKLACES_CAP}")
    mask = np.uint64((1 << n) - 1)
    out = []
    chunk = 1 << min(n, 20)
    for start in range(0, 1 << n, chunk):
        words = np.arange(start, start + chunk, dtype=np.uint64)
        zeros = ~words & mask
        least = words.copy()
        rotations = [words]
        for r in range(1, n):
            rot = ((words << np.uint64(r)) | (words >> np.uint64(n - r))) & mask
            rotations.append(rot)
            np.minimum(least, rot, out=least)
        canon = words == least
        # a run of s+1 zeros somewhere, counted cyclically
        run = zeros.copy()
        for r in range(1, min(s, n - 1) + 1):
            run &= ~rotations[r] & mask
        ok = canon & ((run == 0) if s < n else True)
        for v in words[ok]:
            v = int(v)
            period = next(
                d for d in range(1, n + 1)
                if n % d == 0 and ((v << d) | (v >> (n - d))) & int(mask) == v
            )
            out.append(Necklace(BitWord(n, v), period))
    return out


@dataclass(frozen=True)
class GraphNS:
    """The de Bruijn graph of order ``n`` restricted to (n,s)-words."""

    n: int
    s: int
    vertices: tuple[int, ...]
    adjacency: dict[int, tuple[int, ...]]

    @classmethod
    def build(cls, n: int, s: int) -> "GraphNS":
        vertices = tuple(w.value for w in enumerate_ns_words(n, s))
        present = set(vertices)
        mask = (1 << n) - 1
        adjacency = {}
        for u in vertices:
            succ = (((u << 1) & mask) | b for b in (0, 1))
            adjacency[u] = tuple(v for v in succ if v in present)
        return cls(n, s, vertices, adjacency)


class _Search:
    """Longest simple cycle or path by DFS over bitmask states."""

    def __init__(self, g: GraphNS, seed: int | None):
        order = list(g.vertices)
        rng = random.Random(seed) if seed is not None else None
        if rng:
            rng.shuffle(order)
        self.order = order
        self.index = {v: i for i, v in enumerate(order)}
        succ = []
        for v in order:
            nbrs = [self.index[u] for u in g.adjacency[v]]
            if rng:
                rng.shuffle(nbrs)
            succ.append(nbrs)
        self.succ = succ
        self.size = len(order)

    def reach_count(self, start: int, allowed: int) -> int:
        """Vertices in ``allowed`` reachable from ``start`` (start excluded)."""
        seen = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self.succ[v]:
                bit = 1 << u
                if allowed & bit and not seen & bit:
                    seen |= bit
                    stack.append(u)
        return seen.bit_count()

    def longest_cycle(self, collect: bool = False, stop_at: int | None = None):
        best = 0
        best_sets: set[int] = set()
        for root in range(self.size):
            # each cycle is found once, from its lowest-indexed vertex
            allowed_all = ~((1 << (root + 1)) - 1) & ((1 << self.size) - 1)
            stack = [(root, 1 << root, 1, iter(self.succ[root]))]
            while stack:
                v, visited, depth, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    stack.pop()
                    continue
                if nxt == root:
                    if depth > best:
                        best, best_sets = depth, {visited}
                    elif depth == best and collect:
                        best_sets.add(visited)
                    if stop_at is not None and best >= stop_at and not collect:
                        return best, best_sets
                    continue
                bit = 1 << nxt
                if visited & bit or not allowed_all & bit:
                    continue
                visited2 = visited | bit
                bound = depth + 1 + self.reach_count(nxt, allowed_all & ~visited2)
                if bound < best or (bound == best and not collect):
                    continue
                stack.append((nxt, visited2, depth + 1, iter(self.succ[nxt])))
        return best, best_sets

    def longest_path(self, stop_at: int | None = None) -> int:
        best = 0
        full = (1 << self.size) - 1
        for root in range(self.size):
            stack = [(root, 1 << root, 1, iter(self.succ[root]))]
            best = max(best, 1)
            while stack:
                v, visited, depth, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    stack.pop()
                    continue
                bit = 1 << nxt
                if visited & bit:
                    continue
                visited2 = visited | bit
                if depth + 1 > best:
                    best = depth + 1
                    if stop_at is not None and best >= stop_at:
                        return best
                bound = depth + 1 + self.reach_count(nxt, full & ~visited2)
                if bound <= best:
                    continue
                stack.append((nxt, visited2, depth + 1, iter(self.succ[nxt])))
        return best


def _check_search(n: int, s: int) -> None:
    if n > SEARCH_CAP:
        raise SearchLimitError(f"n={n} exceeds the exhaustive search cap {SEARCH_CAP}")
    if n < 1 or s < 1:
        raise ValueError(f"need n >= 1 and s >= 1, got n={n}, s={s}")


def max_cycle_words(n: int, s: int, seed: int | None = None) -> int:
    """Most distinct windows in any cyclic (n,s)-sequence, by exhaustive search.

    For n = 6 the search stops as soon as a cycle reaches the necklace word
    count, which is a proven upper bound; below that it is fully exhaustive.
    """
    _check_search(n, s)
    stop = count_necklace_words(n, s) if n == SEARCH_CAP else None
    best, _ = _Search(GraphNS.build(n, s), seed).longest_cycle(stop_at=stop)
    return best


def max_path_words(n: int, s: int, seed: int | None = None) -> int:
    """Most distinct windows in any acyclic (n,s)-sequence (vertices on a simple path)."""
    _check_search(n, s)
    stop = None
    if n == SEARCH_CAP:
        ell = count_necklace_words(n, s)
        stop = ell + s if s < n - 1 else ell
    return _Search(GraphNS.build(n, s), seed).longest_path(stop_at=stop)


def maximum_cycles(n: int, s: int) -> tuple[int, list[frozenset[int]]]:
    """Length and vertex sets of every longest cycle (n <= 5)."""
    if n > 5:
        raise SearchLimitError("collecting all maximum cycles is limited to n <= 5")
    _check_search(n, s)
    search = _Search(GraphNS.build(n, s), None)
    best, sets = search.longest_cycle(collect=True)
    decoded = []
    for mask in sets:
        decoded.append(frozenset(search.order[i] for i in range(search.size) if mask >> i & 1))
    return best, decoded


def check_exact_cover(n: int, s: int) -> bool:
    """True iff every longest cycle visits exactly the words of the (n,s)-necklaces."""
    _, cycles = maximum_cycles(n, s)
    target = {w.value for nk in enumerate_ns_necklaces(n, s) for w in nk.words()}
    return all(c == target for c in cycles)

"""Window-to-position decoding.

Positions are 0-indexed from the first bit a generator emits. A window that
wraps around the end of a cyclic sequence is located at its start position.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitword import BitWord, zero_run_max
from .generators import SequenceBuffer, lex_lyndon_words, _check_lex_params


class NotPresent(LookupError):
    """The word is not a window of the sequence."""


@dataclass(frozen=True)
class SequenceIndex:
    n: int
    s: int
    keys: np.ndarray  # sorted window values
    positions: np.ndarray  # positions[i] is where keys[i] starts

    @property
    def length(self) -> int:
        return len(self.keys)

    def lookup(self, values: np.ndarray) -> np.ndarray:
        """Vectorized locate; -1 marks a value that is not a window."""
        values = np.asarray(values, dtype=np.uint64)
        i = np.searchsorted(self.keys, values)
        i_clipped = np.minimum(i, len(self.keys) - 1)
        found = self.keys[i_clipped] == values
        return np.where(found, self.positions[i_clipped], -1)


def build_index(seq: SequenceBuffer) -> SequenceIndex:
    wins = seq.windows()
    order = np.argsort(wins, kind="stable")
    keys = wins[order]
    if len(keys) > 1 and (keys[1:] == keys[:-1]).any():
        raise ValueError("sequence has repeated windows and cannot be indexed")
    return SequenceIndex(seq.n, seq.s, keys, order.astype(np.int64))


def _as_word(w: BitWord | str, n: int) -> BitWord:
    if isinstance(w, str):
        w = BitWord.from_str(w)
    if w.length != n:
        raise ValueError(f"window must have {n} bits, got {w.length}")
    return w


def locate(idx: SequenceIndex, w: BitWord | str) -> int:
    w = _as_word(w, idx.n)
    pos = int(idx.lookup(np.array([w.value], dtype=np.uint64))[0])
    if pos < 0:
        raise NotPresent(f"{w} is not a window of the sequence")
    return pos


def locate_lex_stream(n: int, s: int, w: BitWord | str) -> int:
    """Position of ``w`` in ``generate_lex(n, s)`` without materializing the sequence.

    Only the current window and the first ``n-1`` bits are kept while the
    Lyndon words are regenerated in order.
    """
    _check_lex_params(n, s)
    w = _as_word(w, n)
    if zero_run_max(w, cyclic=True) > s:
        raise NotPresent(f"{w} is not in an ({n},{s})-necklace")
    mask = (1 << n) - 1
    window = 0
    head: list[int] = []
    t = 0
    for z in lex_lyndon_words(n, s):
        for b in z:
            if len(head) < n - 1:
                head.append(b)
            window = ((window << 1) | b) & mask
            t += 1
            if t >= n and window == w.value:
                return t - n
    for b in head:
        window = ((window << 1) | b) & mask
        t += 1
        if window == w.value:
            return t - n
    raise NotPresent(f"{w} was not found in the stream")

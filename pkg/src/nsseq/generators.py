"""Maximum-length (n,s)-sequences: necklace merging, keyed merging, Lyndon concatenation.

A cyclic (n,s)-sequence has all of its length-n windows (wrapping around)
distinct and free of runs of more than ``s`` zeros. The generators here reach
the largest possible length, which is the number of words lying in necklaces
whose cyclic zero runs are at most ``s``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterator

import numpy as np

from . import _kernels
from .bitword import BitWord, is_necklace_bits, zero_run_max
from .enumeration import count_necklace_words, cyclic_zero_runs, linear_zero_runs
from .vset import VSet, match_v, vset_instantiate, vset_layout

MERGE_MAX_N = 24
LEX_MAX_N = 32


@dataclass
class SequenceBuffer:
    bits: np.ndarray
    n: int
    s: int
    cyclic: bool = True

    def __post_init__(self) -> None:
        self.bits = np.asarray(self.bits, dtype=np.uint8)
        if self.bits.ndim != 1 or (self.bits > 1).any():
            raise ValueError("bits must be a flat array of 0/1 values")
        if not self.cyclic and len(self.bits) < self.n:
            raise ValueError("an acyclic sequence needs at least n bits")

    @classmethod
    def from_str(cls, text: str, n: int, s: int, cyclic: bool = True) -> "SequenceBuffer":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError("sequence must be a non-empty string of 0/1")
        return cls(np.frombuffer(text.encode(), dtype=np.uint8) - ord("0"), n, s, cyclic)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return (self.bits + ord("0")).tobytes().decode()

    @property
    def window_count(self) -> int:
        return len(self.bits) if self.cyclic else len(self.bits) - self.n + 1

    def window_at(self, p: int) -> BitWord:
        L = len(self.bits)
        idx = [(p + j) % L for j in range(self.n)]
        return BitWord.from_bits(self.bits[idx])

    def windows(self) -> np.ndarray:
        """Integer value of every window, in order of start position."""
        L = len(self.bits)
        count = self.window_count
        ext = self.bits[np.arange(count + self.n - 1) % L].astype(np.uint64)
        out = np.zeros(count, dtype=np.uint64)
        for j in range(self.n):
            out = (out << np.uint64(1)) | ext[j:j + count]
        return out

    def to_packed(self) -> bytes:
        return f"{len(self.bits)}\n".encode() + np.packbits(self.bits).tobytes()


def from_packed(data: bytes) -> np.ndarray:
    header, _, body = data.partition(b"\n")
    length = int(header.decode("ascii"))
    if len(body) != math.ceil(length / 8):
        raise ValueError(f"packed body has {len(body)} bytes, expected {math.ceil(length / 8)}")
    return np.unpackbits(np.frombuffer(body, dtype=np.uint8))[:length]


def read_sequence(data: bytes) -> np.ndarray:
    """Accept either an ASCII bit string or the packed form (decimal length header)."""
    header, sep, body = data.partition(b"\n")
    stripped = data.strip()
    if stripped and set(stripped.decode("latin-1")) <= {"0", "1"}:
        return np.frombuffer(stripped, dtype=np.uint8) - ord("0")
    if sep and header.strip().isdigit():
        return from_packed(data)
    raise ValueError("input is neither a 0/1 string nor a packed sequence")


def _check_merge_params(n: int, s: int) -> None:
    if not 2 <= n <= MERGE_MAX_N:
        raise ValueError(f"n must be in [2, {MERGE_MAX_N}], got {n}")
    if not 1 <= s <= n - 1:
        raise ValueError(f"s must be in [1, n-1], got s={s} for n={n}")


def merge_successor(window: int, n: int, s: int, vset: VSet | None = None) -> int:
    """Next bit after the n-bit ``window`` in the merged cycle."""
    first = window >> (n - 1)
    y = BitWord(n, (window << 1) & ((1 << n) - 1))
    if zero_run_max(y, cyclic=True) > s:
        return first
    if vset is not None:
        i = match_v(y, vset)
        if i is not None:
            return 1 - first if y == vset.words[i] else first
    # y is its own largest rotation iff its complement is a necklace
    if is_necklace_bits(y.complement().bits()):
        return 1 - first
    return first


def merge_bits(n: int, s: int, vset: VSet | None = None) -> Iterator[int]:
    """Stream the merged cycle bit by bit, holding only the current window."""
    _check_merge_params(n, s)
    mask = (1 << n) - 1
    target = mask >> 1
    window = mask
    # the cycle is emitted through b_i where window i is 0 1^(n-1); the first
    # n bits are the starting window itself
    pending = [1] * n
    while window != target:
        b = merge_successor(window, n, s, vset)
        pending.append(b)
        yield pending.pop(0)
        window = ((window << 1) & mask) | b
    yield pending[0]


def _run_merge(n: int, s: int, vset: VSet | None) -> SequenceBuffer:
    out = np.zeros((1 << n) + n, dtype=np.uint8)
    if vset is None:
        vwords = np.zeros(0, dtype=np.int64)
        index_positions = np.zeros(0, dtype=np.int64)
        length = _kernels.merge_run(n, s, False, 0, 0, vwords, index_positions, out)
    else:
        spec = vset.spec
        length = _kernels.merge_run(
            n, s, True, spec.blocks, spec.run_len, vset.as_array(),
            np.array(spec.index_positions, dtype=np.int64), out,
        )
    if length < 0:
        raise RuntimeError(f"merge did not close for n={n}, s={s}")
    return SequenceBuffer(out[:length].copy(), n, s, cyclic=True)


def generate_merge(n: int, s: int) -> SequenceBuffer:
    """Join all (n,s)-necklaces through their largest word ending in zero."""
    _check_merge_params(n, s)
    return _run_merge(n, s, None)


def generate_merge_v(n: int, s: int, k: int, free_bits: str) -> SequenceBuffer:
    """Like :func:`generate_merge`, but the necklaces of a keyed V-set merge at V(i)."""
    _check_merge_params(n, s)
    vset = vset_instantiate(vset_layout(n, s, k), free_bits)
    return _run_merge(n, s, vset)


def lex_lyndon_words(n: int, s: int) -> Iterator[list[int]]:
    """Lyndon words of the (n,s)-necklaces in increasing lexicographic order.

    Periodic necklaces contribute one period. The walk starts just after
    ``0^(s+1) 1^(n-s-1)``, the last Lyndon word whose necklace has a longer
    zero run.
    """
    if n < 1 or s < 1:
        raise ValueError(f"need n >= 1 and s >= 1, got n={n}, s={s}")
    if s >= n:
        yield [0]
        y = [0] * n
    else:
        y = [0] * (s + 1) + [1] * (n - s - 1)
    while 0 in y:
        j = n - 1 - y[::-1].index(0)
        z = y[:j] + [1]
        y = (z * (n // (j + 1) + 1))[:n]
        if n % (j + 1) == 0:
            yield z


def _check_lex_params(n: int, s: int) -> None:
    if not 1 <= n <= LEX_MAX_N:
        raise ValueError(f"n must be in [1, {LEX_MAX_N}], got {n}")
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")


def generate_lex(n: int, s: int) -> SequenceBuffer:
    """Concatenate the Lyndon words of the (n,s)-necklaces in lexicographic order."""
    _check_lex_params(n, s)
    bits: list[int] = []
    for z in lex_lyndon_words(n, s):
        bits.extend(z)
    return SequenceBuffer(np.array(bits, dtype=np.uint8), n, s, cyclic=True)


def generate_lex_acyclic(n: int, s: int) -> SequenceBuffer:
    """Longest acyclic (n,s)-sequence: ``0^s 1^(n-s-1)``, the Lyndon words, then ``0^s``."""
    cyc = generate_lex(n, s)
    if s < n - 1:
        bits = np.concatenate([
            np.zeros(s, dtype=np.uint8),
            np.ones(n - s - 1, dtype=np.uint8),
            cyc.bits,
            np.zeros(s, dtype=np.uint8),
        ])
    else:
        bits = np.concatenate([cyc.bits, cyc.bits[: n - 1]])
    return SequenceBuffer(bits, n, s, cyclic=False)


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    length: int
    windows: int
    distinct_windows: bool
    run_ok: bool
    is_maximum: bool
    covers_exactly_necklace_words: bool

    def as_dict(self) -> dict:
        return asdict(self)


def verify(seq: SequenceBuffer) -> VerifyReport:
    """Check window distinctness, the zero-run limit, and maximality.

    ``covers_exactly_necklace_words`` means the (n,s)-necklace words all appear
    as windows; for a cyclic sequence it also means no other window appears.
    """
    n, s = seq.n, seq.s
    if seq.window_count < 1:
        return VerifyReport(False, len(seq), 0, False, False, False, False)
    wins = seq.windows()
    count = len(wins)
    distinct = len(np.unique(wins)) == count
    run_ok = bool((linear_zero_runs(wins, n) <= s).all())
    ell = count_necklace_words(n, s)
    in_necklaces = cyclic_zero_runs(wins, n) <= s
    necklace_hits = len(np.unique(wins[in_necklaces]))
    covers = necklace_hits == ell and (not seq.cyclic or bool(in_necklaces.all()))
    valid = distinct and run_ok
    if seq.cyclic:
        target = ell
    else:
        target = ell + s if s < n - 1 else ell
    return VerifyReport(
        valid=valid,
        length=len(seq),
        windows=count,
        distinct_windows=distinct,
        run_ok=run_ok,
        is_maximum=valid and count == target,
        covers_exactly_necklace_words=covers,
    )

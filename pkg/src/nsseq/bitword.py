"""Fixed-length binary words and their rotation classes.

Bit ``x_0`` is stored in the most significant position, so comparing two
equal-length words numerically is the same as comparing their written strings
lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_LEN = 64


@dataclass(frozen=True, order=True)
class BitWord:
    """A binary word ``x_0 x_1 ... x_{len-1}`` packed into an integer."""

    length: int
    value: int

    def __post_init__(self) -> None:
        if not 1 <= self.length <= MAX_LEN:
            raise ValueError(f"word length must be in [1, {MAX_LEN}], got {self.length}")
        if self.value < 0 or self.value >> self.length:
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_str(cls, bits: str) -> "BitWord":
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        return cls(len(bits), int(bits, 2))

    @classmethod
    def from_bits(cls, bits) -> "BitWord":
        value = 0
        for b in bits:
            value = (value << 1) | int(b)
        return cls(len(bits), value)

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b")

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not -self.length <= i < self.length:
            raise IndexError(i)
        i %= self.length
        return (self.value >> (self.length - 1 - i)) & 1

    def bits(self) -> list[int]:
        return [int(c) for c in str(self)]

    @property
    def mask(self) -> int:
        return (1 << self.length) - 1

    def rotate(self, r: int) -> "BitWord":
        """Cyclic left shift by ``r``: ``x_r x_{r+1} ... x_{r-1}``."""
        return BitWord(self.length, rotl(self.value, r, self.length))

    def complement(self) -> "BitWord":
        return BitWord(self.length, self.value ^ self.mask)


@dataclass(frozen=True)
class Necklace:
    canonical: BitWord
    period: int

    @property
    def order(self) -> int:
        return self.canonical.length

    @property
    def full_order(self) -> bool:
        return self.period == self.order

    def words(self) -> list[BitWord]:
        return [self.canonical.rotate(r) for r in range(self.period)]


def rotl(value: int, r: int, n: int) -> int:
    r %= n
    mask = (1 << n) - 1
    return ((value << r) | (value >> (n - r))) & mask


def zero_run_max(w: BitWord, cyclic: bool = False) -> int:
    """Length of the longest run of zeros; wraps around the end iff ``cyclic``."""
    if w.value == 0:
        return w.length
    bits = w.bits()
    if cyclic:
        # start right after a one so no run is split by the seam
        last_one = max(i for i, b in enumerate(bits) if b)
        bits = bits[last_one + 1:] + bits[: last_one + 1]
    best = run = 0
    for b in bits:
        run = 0 if b else run + 1
        best = max(best, run)
    return best


def ones_runs(w: BitWord, cyclic: bool = False) -> list[tuple[int, int]]:
    """Runs of ones as ``(start, length)`` pairs; a cyclic run may wrap past the end."""
    n = w.length
    if w.value == w.mask:
        return [(0, n)]
    bits = w.bits()
    runs = []
    i = 0
    while i < n:
        if bits[i]:
            j = i
            while j < n and bits[j]:
                j += 1
            runs.append((i, j - i))
            i = j
        else:
            i += 1
    if cyclic and len(runs) > 1 and bits[0] and bits[-1]:
        first_len = runs[0][1]
        start, length = runs.pop()
        runs[0] = (start, length + first_len)
    return runs


def is_ns_word(w: BitWord, s: int) -> bool:
    return zero_run_max(w, cyclic=False) <= s


def is_ns_necklace(w: BitWord, s: int) -> bool:
    return zero_run_max(w, cyclic=True) <= s


def weight(w: BitWord) -> int:
    return w.value.bit_count()


def companion(w: BitWord) -> BitWord:
    """Complement the last bit."""
    return BitWord(w.length, w.value ^ 1)


def least_rotation_index(bits: list[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    n = len(bits)
    s = bits + bits
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            # i == -1 here
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


def min_rotation(w: BitWord) -> BitWord:
    return w.rotate(least_rotation_index(w.bits()))


def max_rotation(w: BitWord) -> BitWord:
    # the largest rotation of w is the complement of the least rotation of ~w
    return min_rotation(w.complement()).complement()


def period(w: BitWord) -> int:
    """Smallest p dividing len(w) with rotate(w, p) == w."""
    n = w.length
    for p in range(1, n + 1):
        if n % p == 0 and rotl(w.value, p, n) == w.value:
            return p
    raise AssertionError("unreachable")


def necklace_of(w: BitWord) -> Necklace:
    return Necklace(min_rotation(w), period(w))


def lyndon_rep(nk: Necklace) -> BitWord:
    """One period of the least rotation."""
    c = nk.canonical
    return BitWord(nk.period, c.value >> (c.length - nk.period))


def is_necklace_bits(bits) -> bool:
    """True iff ``bits`` is the least of its own rotations (single linear scan)."""
    n = len(bits)
    p = 1
    for i in range(1, n):
        a, b = bits[i - p], bits[i]
        if a > b:
            return False
        if a < b:
            p = i + 1
    return n % p == 0

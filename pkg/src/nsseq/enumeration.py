"""Exact and asymptotic counts of run-length-limited words and necklace words.

``h(n, s)`` counts n-bit words with no run of more than ``s`` zeros;
``ell(n, s)`` counts the words lying in necklaces whose cyclic zero runs are all
at most ``s``, which is the maximum length of a cyclic sequence with that
constraint.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import numpy as np

from . import _kernels

U64_MAX = (1 << 64) - 1
ENUMERATION_CAP = 28


class CountOverflowError(OverflowError):
    """An exact count does not fit in an unsigned 64-bit integer."""


class PrecisionError(ArithmeticError):
    """The closed-form value falls too close to a rounding boundary to trust."""


class EnumerationLimitError(RuntimeError):
    pass


def _checked(value: int, what: str) -> int:
    if value > U64_MAX:
        raise CountOverflowError(f"{what} = {value} exceeds the unsigned 64-bit range")
    return value


def _check_ns(n: int, s: int) -> None:
    if n < 1 or s < 1:
        raise ValueError(f"need n >= 1 and s >= 1, got n={n}, s={s}")


@lru_cache(maxsize=None)
def _h_table(s: int, n_max: int) -> tuple[int, ...]:
    # index i holds h_{i,s}; h_{0,s} = 1
    h = [1]
    for i in range(1, n_max + 1):
        if i <= s:
            h.append(2**i)
        elif i == s + 1:
            h.append(2 ** (s + 1) - 1)
        else:
            h.append(sum(h[i - j] for j in range(1, s + 2)))
    return tuple(h)


def count_words(n: int, s: int) -> int:
    """Number of n-bit words whose longest zero run is at most ``s``."""
    _check_ns(n, s)
    return _checked(_h_table(s, n)[n], f"h({n},{s})")


def fib_g(n: int) -> int:
    """Number of (n,1)-words, extended downward with g(0) = g(-1) = 1."""
    if n < -1:
        raise ValueError(f"fib_g is defined for n >= -1, got {n}")
    a, b = 1, 1  # g(-1), g(0)
    for _ in range(n + 1):
        a, b = b, a + b
    return _checked(a, f"g({n})")


def _rotl_array(x: np.ndarray, r: int, n: int) -> np.ndarray:
    mask = np.uint64((1 << n) - 1)
    return ((x << np.uint64(r)) | (x >> np.uint64(n - r))) & mask


def cyclic_zero_runs(words: np.ndarray, n: int) -> np.ndarray:
    """Longest cyclic zero run of every word in a uint64 array (all-zero -> n)."""
    mask = np.uint64((1 << n) - 1)
    zeros = ~words & mask
    runs = np.zeros(words.shape, dtype=np.int64)
    acc = zeros.copy()
    # acc holds positions that start a cyclic run of at least r zeros
    for r in range(1, n + 1):
        alive = acc != 0
        if not alive.any():
            break
        runs[alive] = r
        acc &= _rotl_array(zeros, r, n)
    return runs


def linear_zero_runs(words: np.ndarray, n: int) -> np.ndarray:
    """Longest (non-wrapping) zero run of every word in a uint64 array."""
    mask = np.uint64((1 << n) - 1)
    zeros = ~words & mask
    runs = np.zeros(words.shape, dtype=np.int64)
    acc = zeros.copy()
    for r in range(1, n + 1):
        alive = acc != 0
        if not alive.any():
            break
        runs[alive] = r
        acc &= zeros >> np.uint64(r)
    return runs


@lru_cache(maxsize=None)
def cyclic_run_histogram(n: int) -> tuple[int, ...]:
    """``hist[r]`` = number of n-bit words whose longest cyclic zero run is ``r``."""
    if n > ENUMERATION_CAP:
        raise EnumerationLimitError(f"n={n} exceeds the enumeration cap {ENUMERATION_CAP}")
    hist = np.zeros(n + 1, dtype=np.int64)
    _kernels.cyclic_run_hist(n, 0, 1 << n, hist)
    return tuple(int(v) for v in hist)


def count_necklace_words(n: int, s: int) -> int:
    """Total number of words in all necklaces with cyclic zero runs at most ``s``.

    Every word of such a necklace has cyclic zero run at most ``s`` and every
    word with that property belongs to one, so the count is taken directly over
    all ``2**n`` words. This equals the sum of the periods of the necklaces.
    """
    _check_ns(n, s)
    hist = cyclic_run_histogram(n)
    return sum(hist[: min(s, n) + 1])


def necklace_words_formula(n: int, s: int) -> int:
    """Closed expression ``h(n-1) + sum_i i*h(n-i-2)``, valid for ``s <= n-2``."""
    _check_ns(n, s)
    if s > n - 2:
        raise ValueError(f"formula only holds for s <= n-2, got n={n}, s={s}")
    h = _h_table(s, n)

    def hh(i: int) -> int:
        return 1 if i <= 0 else h[i]

    total = hh(n - 1) + sum(i * hh(n - i - 2) for i in range(1, s + 1))
    return _checked(total, f"ell({n},{s})")


def _char_poly(x, s: int):
    return x ** (s + 1) - sum(x**i for i in range(s + 1))


def lambda_root(s: int, tol: float = 1e-12) -> float:
    """Positive root of ``x^(s+1) = 1 + x + ... + x^s``, by bisection on [1, 2]."""
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi = 1.0, 2.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _char_poly(mid, s) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@lru_cache(maxsize=None)
def _lambda_mp(s: int, dps: int = 60):
    with mpmath.workdps(dps):
        lo, hi = mpmath.mpf(1), mpmath.mpf(2)
        for _ in range(4 * dps):
            mid = (lo + hi) / 2
            if _char_poly(mid, s) < 0:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


def count_words_closed(n: int, s: int) -> int:
    """``h(n, s)`` from the dominant-root closed form, evaluated at high precision."""
    _check_ns(n, s)
    with mpmath.workdps(60):
        lam = _lambda_mp(s)
        value = lam ** (n + 1) * (lam - 1) / ((s + 2) * lam - 2 * (s + 1))
        if abs(value - mpmath.floor(value) - mpmath.mpf("0.5")) < mpmath.mpf("0.01"):
            raise PrecisionError(f"h({n},{s}) closed form = {value} is near a rounding boundary")
        return _checked(int(mpmath.floor(value + mpmath.mpf("0.5"))), f"h({n},{s})")


def count_weight_words(n: int, k: int) -> int:
    """Number of (n,1)-words with exactly ``k`` ones."""
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}")
    if k + 1 < n - k:
        return 0
    return math.comb(k + 1, n - k)


def count_weight_necklace_words(n: int, k: int) -> int:
    """Number of weight-``k`` words lying in (n,1)-necklaces."""
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}")
    if k + 1 < n - k:
        return 0

    def comb(a: int, b: int) -> int:
        if b == 0:
            return 1
        return math.comb(a, b) if 0 < b <= a else 0

    return comb(k, n - k) + comb(k - 1, n - k - 1)


def metrics(n: int, s: int) -> tuple[float, float]:
    """Rate ``log2(ell)/n`` and redundancy ``n - log2(ell)`` of a maximum-length sequence."""
    if n < 2 or s < 1:
        raise ValueError(f"need n >= 2 and s >= 1, got n={n}, s={s}")
    bits = math.log2(count_necklace_words(n, s))
    return bits / n, n - bits


def asymptotic_rate(s: int) -> float:
    return math.log2(lambda_root(s))


BASELINE_RATE = 0.5


def baseline_redundancy(n: int) -> int:
    # window of 2n slots over a sequence of 2^(n+1) slots
    return 2 * n - (n + 1)


@dataclass
class CountTable:
    n_max: int
    s_max: int
    entries: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    @classmethod
    def build(cls, n_max: int, s_max: int) -> "CountTable":
        table = cls(n_max, s_max)
        for n in range(1, n_max + 1):
            for s in range(1, min(s_max, n) + 1):
                table.entries[n, s] = (count_necklace_words(n, s), count_words(n, s))
        return table

    def rows(self) -> list[dict[str, int]]:
        return [
            {"n": n, "s": s, "ell": ell, "h": h}
            for (n, s), (ell, h) in sorted(self.entries.items())
        ]

    def to_tsv(self) -> str:
        lines = ["n\ts\tell\th"]
        lines += [f"{r['n']}\t{r['s']}\t{r['ell']}\t{r['h']}" for r in self.rows()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.rows(), indent=1)


@dataclass(frozen=True)
class RateEntry:
    s: int
    lam: float
    log_lambda: float

    @property
    def redundancy_coeff(self) -> float:
        return 1.0 - self.log_lambda

    def as_dict(self) -> dict[str, float]:
        return {"s": self.s, "lambda": self.lam, "rate": self.log_lambda}


def rate_table(s_max: int) -> list[RateEntry]:
    out = []
    for s in range(1, s_max + 1):
        lam = lambda_root(s)
        out.append(RateEntry(s, lam, math.log2(lam)))
    return out


def rates_to_tsv(entries: list[RateEntry]) -> str:
    lines = ["s\tlambda\trate"]
    lines += [f"{e.s}\t{e.lam:.4f}\t{e.log_lambda:.4f}" for e in entries]
    return "\n".join(lines) + "\n"


def rates_to_json(entries: list[RateEntry]) -> str:
    return json.dumps([e.as_dict() for e in entries], indent=1)

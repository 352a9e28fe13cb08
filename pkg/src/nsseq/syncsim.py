"""Beacon acquisition from a single n-slot window.

A receiver sees ``n`` consecutive pulse slots of a verified sequence, each slot
possibly inverted, and must name the offset it was looking at. Random numbers
come from numpy's PCG64 generator seeded with the configured seed, which is
reproducible across platforms.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .enumeration import BASELINE_RATE, baseline_redundancy, count_necklace_words, metrics
from .generators import SequenceBuffer, verify
from .locate import build_index

PRNG_NAME = "PCG64"


@dataclass(frozen=True)
class ChannelConfig:
    flip_prob: float = 0.0
    trials: int = 1000
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.flip_prob < 1.0:
            raise ValueError(f"flip_prob must be in [0, 1), got {self.flip_prob}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class SyncReport:
    trials: int
    successes: int
    success_rate: float
    window_slots: int
    sequence_slots: int
    rate: float
    redundancy: float

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def simulate(seq: SequenceBuffer, cfg: ChannelConfig) -> SyncReport:
    report = verify(seq)
    if not report.valid:
        raise ValueError("cannot simulate acquisition on an invalid sequence")
    n = seq.n
    index = build_index(seq)
    windows = seq.windows()
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    offsets = rng.integers(0, len(windows), size=cfg.trials)
    received = windows[offsets]
    if cfg.flip_prob > 0:
        flips = rng.random((cfg.trials, n)) < cfg.flip_prob
        weights = np.uint64(1) << np.arange(n - 1, -1, -1, dtype=np.uint64)
        received = received ^ (flips.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    found = index.lookup(received)
    successes = int((found == offsets).sum())
    length = len(seq)
    bits = math.log2(length)
    return SyncReport(
        trials=cfg.trials,
        successes=successes,
        success_rate=successes / cfg.trials,
        window_slots=n,
        sequence_slots=length,
        rate=bits / n,
        redundancy=n - bits,
    )


def baseline_metrics(n: int) -> SyncReport:
    """The doubled-slot de Bruijn scheme ('11' for one, '10' for zero), analytically.

    It spends ``2n`` slots per window over ``2**(n+1)`` slots; the rate is
    quoted as its limiting value 0.5. No trials are run: the scheme is
    noiseless by construction, so the success rate is reported as 1.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return SyncReport(
        trials=0,
        successes=0,
        success_rate=1.0,
        window_slots=2 * n,
        sequence_slots=2 ** (n + 1),
        rate=BASELINE_RATE,
        redundancy=float(baseline_redundancy(n)),
    )


def compare(n: int, s: int) -> tuple[SyncReport, SyncReport]:
    """A maximum-length (n,s)-sequence against the baseline at the same n."""
    rate, redundancy = metrics(n, s)
    ours = SyncReport(
        trials=0,
        successes=0,
        success_rate=1.0,
        window_slots=n,
        sequence_slots=count_necklace_words(n, s),
        rate=rate,
        redundancy=redundancy,
    )
    return ours, baseline_metrics(n)

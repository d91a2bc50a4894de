"""Seeded randomness: one counter-based generator family (Philox).

Every random draw in the package flows from a user seed plus a fixed stream
identifier, so identical (input, seed, config) runs reproduce byte-identical
reports.
"""

from __future__ import annotations

import numpy as np

STREAM_SHEAR = 1
STREAM_HARDY_G = 2
STREAM_CLASSIFY_W = 3
STREAM_VARIETY_NODES = 4
STREAM_SWEEP = 5


def rng_for(seed: int, stream: int) -> np.random.Generator:
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(stream)])
    return np.random.Generator(np.random.Philox(key=key))

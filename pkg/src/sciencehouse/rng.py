"""Seed derivation for deterministic sub-streams.

Every source of randomness in the engine flows through one
``random.Random`` owned by the world; distinct systems (variation
generation, episode rollouts) derive their seeds from a stable tag so
there is no hidden coupling between call sites. Python's built-in
``hash()`` is process-randomized and must never be used here.
"""

from __future__ import annotations

import random
import zlib


def derive_seed(base_seed: int, *tags: object) -> int:
    """Mix a base seed with string/int tags into a stable 32-bit seed."""
    acc = int(base_seed) & 0xFFFFFFFF
    for tag in tags:
        crc = zlib.crc32(str(tag).encode("utf-8")) & 0xFFFFFFFF
        acc = (acc * 1000003 + crc) & 0xFFFFFFFF
    return acc


def derived_rng(base_seed: int, *tags: object) -> random.Random:
    return random.Random(derive_seed(base_seed, *tags))

"""Seed derivation.

Every random stream is a numpy ``Philox`` (Philox-4x64, counter based) keyed by
a ``SeedSequence`` built from a master seed plus integer tags. Streams are
therefore independent of evaluation order and of how work is split across
processes.
"""

from __future__ import annotations

import zlib

import numpy as np

RNG_ALGORITHM = "Philox-4x64 via numpy.random.SeedSequence"

_MASK64 = (1 << 64) - 1


def _tag(t: int | str) -> int:
    if isinstance(t, str):
        return zlib.crc32(t.encode())
    if t < 0:
        raise ValueError("seed tags must be non-negative")
    return int(t)


def seed_sequence(seed: int, *tags: int | str) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=tuple(_tag(t) for t in tags))


def make_rng(seed: int, *tags: int | str) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed_sequence(seed, *tags)))


def derive_seed(seed: int, *tags: int | str) -> int:
    """A 64-bit child seed for ``(seed, *tags)``."""
    return int(seed_sequence(seed, *tags).generate_state(1, dtype=np.uint64)[0])

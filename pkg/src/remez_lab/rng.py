"""Counter-based random streams.

Every random draw in the package comes from a Philox generator keyed by a
tuple of non-negative integers, typically ``(seed, stream_tag, instance)``.
The same key always yields the same stream, no matter which worker process
asks for it or in which order.
"""

from __future__ import annotations

import zlib

import numpy as np


def tag(name: str) -> int:
    """Stable 32-bit integer for a stream name."""
    return zlib.crc32(name.encode("utf-8"))


def stream(*key: int | str) -> np.random.Generator:
    """Return a Philox generator for the given key.

    String components are hashed with :func:`tag`, so ``stream(7, "pilot", 3)``
    is a valid key.
    """
    words = [tag(k) if isinstance(k, str) else int(k) for k in key]
    if any(w < 0 for w in words):
        raise ValueError(f"stream key components must be non-negative, got {key!r}")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(words)))

"""Deterministic random-stream derivation.

Every random decision in the package draws from a named counter-based
stream derived from ``(master_seed, role, index)``.  Streams are
independent, order-free (creating one never perturbs another) and stable
across processes, so any component can be re-run in isolation and
reproduce its draws exactly.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """A named, independently seeded random stream.

    The underlying generator is Philox (counter-based); the stream key is
    ``SeedSequence(master_seed, spawn_key=(crc32(role), index))``, so the
    same triple always yields the same draw sequence regardless of how
    many other streams were created before it.
    """

    master_seed: int
    role: str
    index: int = 0

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError(f"stream index must be non-negative, got {self.index}")

    def seed_sequence(self) -> np.random.SeedSequence:
        key = (zlib.crc32(self.role.encode("utf-8")), self.index)
        return np.random.SeedSequence(self.master_seed & _MASK64, spawn_key=key)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(self.seed_sequence()))


def stream(master_seed: int, role: str, index: int = 0) -> np.random.Generator:
    """Shorthand for ``RngStream(master_seed, role, index).generator()``."""
    return RngStream(master_seed, role, index).generator()

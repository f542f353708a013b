"""Deterministic, splittable random number generation.

Every stochastic component in this package receives an explicit Rng.
Child generators are derived from a parent seed and a text label via
SHA-256, so the stream consumed by one component never depends on how
much randomness another component used.  The underlying bit generator
is numpy's PCG64, seeded with the derived 64-bit integer.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["Rng", "derive_rng"]


def _child_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(
        seed.to_bytes(8, "little") + label.encode("utf-8")
    ).digest()
    return int.from_bytes(digest[:8], "little")


class Rng:
    """A seeded generator that can spawn labelled, independent children."""

    def __init__(self, seed: int):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.gen = np.random.Generator(np.random.PCG64(self.seed))

    def derive(self, label: str) -> "Rng":
        """Deterministic child generator for `label`."""
        if not label:
            raise ValueError("derivation label must be nonempty")
        return Rng(_child_seed(self.seed, label))

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed})"


def derive_rng(parent: Rng, label: str) -> Rng:
    return parent.derive(label)

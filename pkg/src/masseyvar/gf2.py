"""GF(2) linear algebra on int bitsets."""

from __future__ import annotations

import random
from typing import Iterable, Optional, Sequence

import numpy as np


def pack(bits: np.ndarray) -> int:
    """Bit i of the result is entry i of the flattened array."""
    flat = np.asarray(bits, dtype=np.uint8).ravel() & 1
    return int.from_bytes(np.packbits(flat, bitorder="little").tobytes(), "little")


def unpack(value: int, shape) -> np.ndarray:
    size = int(np.prod(shape))
    raw = np.frombuffer(value.to_bytes((size + 7) // 8 or 1, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].reshape(shape)


class Eliminator:
    """Incremental row echelon form that remembers how each basis vector was built.

    Vectors are added with a label; ``reduce`` expresses a vector modulo the
    span and reports which labels were used.
    """

    def __init__(self):
        self._pivots: dict[int, tuple[int, int]] = {}  # pivot bit -> (vector, label mask)
        self._relations: list[int] = []
        self.labels: list = []

    def __len__(self) -> int:
        return len(self._pivots)

    def reduce(self, vec: int) -> tuple[int, int]:
        """Return (residual, label mask); the residual has no bit at any pivot."""
        combo, out = 0, 0
        while vec:
            top = vec.bit_length() - 1
            hit = self._pivots.get(top)
            if hit is None:
                out |= 1 << top
                vec ^= 1 << top
            else:
                vec ^= hit[0]
                combo ^= hit[1]
        return out, combo

    def add(self, vec: int, label=None) -> bool:
        """Add a labelled vector; returns False if it was already in the span."""
        self.labels.append(label)
        bit = 1 << (len(self.labels) - 1)
        residual, combo = self.reduce(vec)
        if residual == 0:
            self._relations.append(combo ^ bit)
            return False
        self._pivots[residual.bit_length() - 1] = (residual, combo ^ bit)
        return True

    def relations(self) -> list[int]:
        """Label masks of combinations summing to zero, one per dependent vector added."""
        return list(self._relations)

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0

    def label_combo(self, mask: int) -> list:
        return [self.labels[i] for i in range(len(self.labels)) if mask >> i & 1]


def solve(columns: Sequence[int], target: int, seed: Optional[int] = None) -> Optional[list[int]]:
    """Indices of columns summing to ``target``, or None.  ``seed`` shuffles the pivot order."""
    order = list(range(len(columns)))
    if seed is not None:
        random.Random(seed).shuffle(order)
    elim = Eliminator()
    for i in order:
        elim.add(columns[i], i)
    residual, combo = elim.reduce(target)
    if residual:
        return None
    return sorted(elim.label_combo(combo))


def rank(vectors: Iterable[int]) -> int:
    elim = Eliminator()
    for v in vectors:
        elim.add(v)
    return len(elim)


def kernel(columns: Sequence[int]) -> list[int]:
    """Basis of {mask : XOR of columns[i] over bits i of mask = 0}."""
    elim = Eliminator()
    for i, col in enumerate(columns):
        elim.add(col, i)
    return elim.relations()


def span(vectors: Sequence[int]) -> list[int]:
    """All 2^k combinations of the given vectors (k small)."""
    out = [0]
    for v in vectors:
        out += [w ^ v for w in out]
    return out

"""Finite groups given by multiplication tables, plus a small zoo of 2-groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np


class GroupTableError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group of order n on indices 0..n-1 with identity 0; ``table[g, h]`` is the index of g*h."""

    table: np.ndarray
    generators: tuple[int, ...]
    name: str = field(default="G")

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))
        self._validate()

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def _validate(self):
        t = self.table
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupTableError("multiplication table must be a nonempty square array")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise GroupTableError("table entries out of range")
        idx = np.arange(n)
        if not (np.array_equal(t[0], idx) and np.array_equal(t[:, 0], idx)):
            raise GroupTableError("index 0 is not a two-sided identity")
        if not all(len(set(row)) == n for row in t) or not all(len(set(col)) == n for col in t.T):
            raise GroupTableError("table is not a Latin square, so inverses fail")
        # (gh)k == g(hk) for all triples
        lhs = t[t[:, :, None], idx[None, None, :]]
        rhs = t[idx[:, None, None], t[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise GroupTableError("table is not associative")
        if any(not 0 <= g < n for g in self.generators):
            raise GroupTableError("generator index out of range")
        if len(self.closure(self.generators)) != n:
            raise GroupTableError("generators do not generate the group")

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inverse(self, g: int) -> int:
        return int(np.flatnonzero(self.table[g] == 0)[0])

    def closure(self, gens: Sequence[int]) -> set[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = int(self.table[g, s])
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return seen

    def element_order(self, g: int) -> int:
        k, h = 1, g
        while h != 0:
            h = int(self.table[h, g])
            k += 1
        return k

    def to_text(self) -> str:
        lines = [str(self.order), " ".join(map(str, self.generators))]
        lines += [" ".join(map(str, row)) for row in self.table]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "G") -> "FiniteGroup":
        """Parse: line 1 the order n, line 2 generator indices, then n table rows."""
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        if len(lines) < 2:
            raise GroupTableError("group file needs an order line and a generator line")
        try:
            n = int(lines[0][0])
            gens = [int(x) for x in lines[1]]
            rows = [[int(x) for x in ln] for ln in lines[2:]]
        except ValueError as exc:
            raise GroupTableError(f"non-integer entry: {exc}") from exc
        if len(lines[0]) != 1 or len(rows) != n or any(len(r) != n for r in rows):
            raise GroupTableError(f"expected {n} rows of {n} entries")
        return cls(np.array(rows, dtype=np.int64).reshape(n, n), tuple(gens), name)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "FiniteGroup":
        path = Path(path)
        return cls.from_text(path.read_text(), path.stem)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def cyclic(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, (1,) if n > 1 else (), f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Element (x, y) has index x + |g| * y."""
    m, n = g.order, h.order
    x = np.arange(m * n) % m
    y = np.arange(m * n) // m
    table = g.table[x[:, None], x[None, :]] + m * h.table[y[:, None], y[None, :]]
    gens = tuple(s for s in g.generators) + tuple(m * s for s in h.generators)
    return FiniteGroup(table, gens, f"{g.name}x{h.name}")


def dihedral(m: int) -> FiniteGroup:
    """Symmetries of the m-gon, order 2m; r^i s^j has index i + m j."""
    n = 2 * m
    i, j = np.arange(n) % m, np.arange(n) // m
    sign = np.where(j == 1, -1, 1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % m
    ref = (j[:, None] + j[None, :]) % 2
    return FiniteGroup(rot + m * ref, (1, m), f"D{m}")


def quaternion() -> FiniteGroup:
    """Q8 with index 2*u + s for unit u in (1, i, j, k) and sign bit s."""
    # unit products: (result unit, sign bit)
    prod = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }
    table = np.zeros((8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            u, s = prod[x // 2, y // 2]
            table[x, y] = 2 * u + (s ^ (x % 2) ^ (y % 2))
    return FiniteGroup(table, (2, 4), "Q8")


def matrix_group(generators: Sequence[np.ndarray], name: str = "M") -> FiniteGroup:
    """Group generated by invertible square matrices over F_2; the identity matrix gets index 0."""
    gens = [np.asarray(g, dtype=np.uint8) % 2 for g in generators]
    size = gens[0].shape[0]
    key = lambda m: m.tobytes()
    elems = [np.eye(size, dtype=np.uint8)]
    index = {key(elems[0]): 0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for g in gens:
                m = (elems[i].astype(np.int64) @ g) % 2
                m = m.astype(np.uint8)
                if key(m) not in index:
                    index[key(m)] = len(elems)
                    elems.append(m)
                    nxt.append(index[key(m)])
        frontier = nxt
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            table[i, j] = index[key(((x.astype(np.int64) @ y) % 2).astype(np.uint8))]
    gen_idx = tuple(index[key(g)] for g in gens)
    return FiniteGroup(table, gen_idx, name)


def zoo() -> dict[str, FiniteGroup]:
    z2 = cyclic(2)
    z2sq = direct_product(z2, z2)
    return {
        "Z2": z2,
        "Z4": cyclic(4),
        "Z8": cyclic(8),
        "Z2xZ2": z2sq,
        "Z2^3": direct_product(z2sq, z2),
        "Z2xZ4": direct_product(z2, cyclic(4)),
        "D4": dihedral(4),
        "Q8": quaternion(),
    }

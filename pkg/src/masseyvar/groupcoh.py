"""Mod-2 inhomogeneous cochains on a finite group, triple Massey products and U_4 lifts.

1-cochains are uint8 arrays of shape (n,), 2-cochains (n, n), 3-cochains
(n, n, n); all arithmetic is mod 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Optional

import numpy as np

from . import gf2
from .groups import FiniteGroup

UNDEFINED = "undefined"
CONTAINS_ZERO = "containsZero"
NONVANISHING = "nonvanishing"

BRUTE_FORCE_MAX_ORDER = 8
MAX_LIFT_GENERATORS = 4


class CochainError(ValueError):
    pass


def _bits(f) -> np.ndarray:
    return np.asarray(f, dtype=np.uint8) & 1


def d1(G: FiniteGroup, f) -> np.ndarray:
    """(d1 f)(g, h) = f(g) + f(h) + f(gh)."""
    f = _bits(f)
    return f[:, None] ^ f[None, :] ^ f[G.table]


def d2(G: FiniteGroup, F) -> np.ndarray:
    """(d2 F)(g, h, k) = F(h, k) + F(gh, k) + F(g, hk) + F(g, h)."""
    F = _bits(F)
    t = G.table
    n = G.order
    idx = np.arange(n)
    return (
        F[None, :, :]
        ^ F[t[:, :, None], idx[None, None, :]]
        ^ F[idx[:, None, None], t[None, :, :]]
        ^ F[:, :, None]
    )


def cup(f, g) -> np.ndarray:
    """(f cup g)(g_1..g_p, h_1..h_q) = f(g_1..g_p) g(h_1..h_q), cochains of any degree."""
    return np.multiply.outer(_bits(f), _bits(g)) & 1


def is_homomorphism(G: FiniteGroup, f) -> bool:
    return not d1(G, f).any()


@lru_cache(maxsize=64)
def _d1_columns(G: FiniteGroup) -> tuple[int, ...]:
    n = G.order
    cols = []
    for g in range(n):
        e = np.zeros(n, dtype=np.uint8)
        e[g] = 1
        cols.append(gf2.pack(d1(G, e)))
    return tuple(cols)


def _from_mask(mask: int, n: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=np.uint8)


def cocycle_basis(G: FiniteGroup) -> list[np.ndarray]:
    """Basis of Z^1(G; F_2) = Hom(G, Z/2)."""
    return [_from_mask(m, G.order) for m in gf2.kernel(_d1_columns(G))]


def homomorphisms(G: FiniteGroup) -> list[np.ndarray]:
    """Every homomorphism G -> Z/2 as a 1-cochain, the trivial one first."""
    masks = gf2.span([gf2.pack(z) for z in cocycle_basis(G)])
    return [_from_mask(m, G.order) for m in sorted(masks)]


def solve_coboundary(G: FiniteGroup, F, seed: Optional[int] = None) -> Optional[np.ndarray]:
    """Some f with d1 f = F, or None.  ``seed`` shuffles the elimination order."""
    combo = gf2.solve(_d1_columns(G), gf2.pack(F), seed=seed)
    if combo is None:
        return None
    f = np.zeros(G.order, dtype=np.uint8)
    f[combo] = 1
    return f


def h2_class_is_zero(G: FiniteGroup, F) -> Optional[np.ndarray]:
    """A 1-cochain bounding the 2-cocycle F, or None when its class is nonzero."""
    if d2(G, F).any():
        raise CochainError("not a 2-cocycle")
    return solve_coboundary(G, F)


@dataclass
class MasseyResult:
    status: str
    base_class: Optional[np.ndarray] = None
    indeterminacy_basis: list[np.ndarray] = field(default_factory=list)
    witnesses: Optional[tuple[np.ndarray, np.ndarray]] = None
    # canonical H^2 representatives reached, filled by the brute-force route
    values: Optional[frozenset[int]] = None

    @property
    def defined(self) -> bool:
        return self.status != UNDEFINED

    def to_dict(self) -> dict:
        def bits(x):
            return "".join(map(str, np.asarray(x).ravel()))

        out = {"status": self.status}
        if self.base_class is not None:
            out["base_class"] = bits(self.base_class)
            out["indeterminacy_rank"] = len(self.indeterminacy_basis)
        if self.witnesses is not None:
            out["E_ab"], out["E_bc"] = bits(self.witnesses[0]), bits(self.witnesses[1])
        if self.values is not None:
            out["classes_reached"] = len(self.values)
        return out


def _require_homs(G: FiniteGroup, *fs):
    for f in fs:
        if len(f) != G.order:
            raise CochainError(f"character has length {len(f)}, group has order {G.order}")
        if not is_homomorphism(G, f):
            raise CochainError("character is not a homomorphism G -> Z/2")


def triple_massey(G: FiniteGroup, a, b, c, seed: Optional[int] = None) -> MasseyResult:
    """<a, b, c> for homomorphisms a, b, c : G -> Z/2 by linear algebra over F_2.

    Picks particular E_ab, E_bc with d1 E_ab = a cup b and d1 E_bc = b cup c,
    then tests whether E_ab cup c + a cup E_bc lies in B^2 plus the
    indeterminacy a H^1 + H^1 c.
    """
    a, b, c = _bits(a), _bits(b), _bits(c)
    _require_homs(G, a, b, c)
    e_ab = solve_coboundary(G, cup(a, b), seed=seed)
    e_bc = solve_coboundary(G, cup(b, c), seed=None if seed is None else seed + 1)
    if e_ab is None or e_bc is None:
        return MasseyResult(UNDEFINED)
    base = cup(e_ab, c) ^ cup(a, e_bc)

    elim = gf2.Eliminator()
    cols = list(_d1_columns(G))
    order = list(range(len(cols)))
    if seed is not None:
        np.random.default_rng(seed).shuffle(order)
    for i in order:
        elim.add(cols[i], ("d", i))
    indeterminacy = []
    for z in cocycle_basis(G):
        for gen in (cup(a, z), cup(z, c)):
            if elim.add(gf2.pack(gen), ("i", len(indeterminacy))):
                indeterminacy.append(gen)
    status = CONTAINS_ZERO if elim.contains(gf2.pack(base)) else NONVANISHING
    return MasseyResult(status, base, indeterminacy, (e_ab, e_bc))


def coboundaries(G: FiniteGroup) -> frozenset[int]:
    """B^2 enumerated as d1 of every 1-cochain (no elimination)."""
    if G.order > 16:
        raise CochainError("coboundary enumeration limited to order 16")
    return frozenset(gf2.pack(d1(G, f)) for f in product((0, 1), repeat=G.order))


def canonical_class(vec: int, boundaries: frozenset[int]) -> int:
    """Least packed representative of vec + B^2."""
    return min(vec ^ bnd for bnd in boundaries)


def brute_force_massey(G: FiniteGroup, a, b, c) -> MasseyResult:
    """<a, b, c> over all defining systems, enumerating every 1-cochain.

    Independent of the elimination route: solutions of d1 E = a cup b are found
    by trying all 2^n cochains and classes are compared through the explicit set B^2.
    """
    if G.order > BRUTE_FORCE_MAX_ORDER:
        raise CochainError(f"brute force limited to groups of order <= {BRUTE_FORCE_MAX_ORDER}")
    a, b, c = _bits(a), _bits(b), _bits(c)
    _require_homs(G, a, b, c)
    all_f = [np.array(f, dtype=np.uint8) for f in product((0, 1), repeat=G.order)]
    ab, bc = cup(a, b), cup(b, c)
    e_abs = [f for f in all_f if np.array_equal(d1(G, f), ab)]
    e_bcs = [f for f in all_f if np.array_equal(d1(G, f), bc)]
    if not e_abs or not e_bcs:
        return MasseyResult(UNDEFINED, values=frozenset())
    bnd = coboundaries(G)
    values = frozenset(
        canonical_class(gf2.pack(cup(e1, c) ^ cup(a, e2)), bnd) for e1 in e_abs for e2 in e_bcs
    )
    status = CONTAINS_ZERO if 0 in values else NONVANISHING
    return MasseyResult(status, witnesses=(e_abs[0], e_bcs[0]), values=values)


def coset_classes(G: FiniteGroup, result: MasseyResult) -> frozenset[int]:
    """Canonical classes of base_class + span(indeterminacy_basis)."""
    if not result.defined:
        return frozenset()
    bnd = coboundaries(G)
    base = gf2.pack(result.base_class)
    return frozenset(
        canonical_class(base ^ v, bnd) for v in gf2.span([gf2.pack(x) for x in result.indeterminacy_basis])
    )


# --- U_4 over F_2 -----------------------------------------------------------

# bit positions of the strictly upper entries (0-based row, col)
U4_POSITIONS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def u4_matrix(g: int) -> np.ndarray:
    m = np.eye(4, dtype=np.int64)
    for k, (i, j) in enumerate(U4_POSITIONS):
        if g >> k & 1:
            m[i, j] = 1
    return m


def u4_encode(m: np.ndarray) -> int:
    m = np.asarray(m) % 2
    if not np.array_equal(np.tril(m), np.eye(4, dtype=m.dtype)):
        raise ValueError("not unipotent upper triangular")
    return sum(1 << k for k, (i, j) in enumerate(U4_POSITIONS) if m[i, j])


def u4_entry(g: int, i: int, j: int) -> int:
    """Entry a_ij (1-based) of the element g."""
    return g >> U4_POSITIONS.index((i - 1, j - 1)) & 1


def u4_element(**entries: int) -> int:
    """u4_element(a12=1, a34=1) etc."""
    g = 0
    for key, v in entries.items():
        i, j = int(key[1]), int(key[2])
        if v % 2:
            g |= 1 << U4_POSITIONS.index((i - 1, j - 1))
    return g


@lru_cache(maxsize=None)
def u4_table() -> np.ndarray:
    t = np.zeros((64, 64), dtype=np.int64)
    for g in range(64):
        for h in range(64):
            t[g, h] = u4_encode(u4_matrix(g) @ u4_matrix(h))
    return t


def u4_mul(g: int, h: int) -> int:
    return int(u4_table()[g, h])


def _extend(G: FiniteGroup, gens, images) -> Optional[dict[int, int]]:
    """Extend generator images along right multiplication; None on a conflict."""
    t, ut = G.table, u4_table()
    phi = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for g in frontier:
            for s, img in zip(gens, images):
                h = int(t[g, s])
                val = int(ut[phi[g], img])
                old = phi.get(h)
                if old is None:
                    phi[h] = val
                    nxt.append(h)
                elif old != val:
                    return None
        frontier = nxt
    return phi


def u4_lift_exists(G: FiniteGroup, a, b, c) -> Optional[list[int]]:
    """A homomorphism G -> U_4 with superdiagonal (a, b, c), as the image of each element, or None.

    Generators are assigned one at a time; each of them has 8 candidate images
    once its superdiagonal is prescribed, and a partial assignment is dropped as
    soon as it fails to extend over the subgroup it generates.
    """
    a, b, c = _bits(a), _bits(b), _bits(c)
    _require_homs(G, a, b, c)
    gens = G.generators
    if len(gens) > MAX_LIFT_GENERATORS:
        raise CochainError(f"lift search limited to {MAX_LIFT_GENERATORS} generators")

    def candidates(s):
        fixed = u4_element(a12=a[s], a23=b[s], a34=c[s])
        for x13, x14, x24 in product((0, 1), repeat=3):
            yield fixed | u4_element(a13=x13, a14=x14, a24=x24)

    def search(images):
        k = len(images)
        phi = _extend(G, gens[:k], images)
        if phi is None:
            return None
        if k == len(gens):
            return phi
        for img in candidates(gens[k]):
            found = search(images + [img])
            if found is not None:
                return found
        return None

    phi = search([])
    if phi is None:
        return None
    lift = [phi[g] for g in range(G.order)]
    ut = u4_table()
    t = G.table
    assert all(ut[lift[g], lift[h]] == lift[t[g, h]] for g in range(G.order) for h in range(G.order))
    assert all(
        (u4_entry(lift[g], 1, 2), u4_entry(lift[g], 2, 3), u4_entry(lift[g], 3, 4)) == (a[g], b[g], c[g])
        for g in range(G.order)
    )
    return lift

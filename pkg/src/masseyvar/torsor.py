"""The U_4 representation behind X(a,b,c) and exact checks of its polynomial identities.

U_4 elements are the 6-bit integers of ``groupcoh``. The representation V is
induced from the character (-1)^{a14} of the subgroup of elements with
a12 = a13 = 0, with coset representatives 1, E12, E13, E12 E13, written in
the basis u1 = e1 + e3, u2 = e1 - e3, u3 = e2 + e4, u4 = e2 - e4.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Optional

import numpy as np

from .groupcoh import u4_element, u4_entry, u4_table
from .masseyq import norm_form_eval
from .poly import PolyRing, SparsePoly

E12 = u4_element(a12=1)
E13 = u4_element(a13=1)
E14 = u4_element(a14=1)
E23 = u4_element(a23=1)
E24 = u4_element(a24=1)
E34 = u4_element(a34=1)
ELEMENTARY = {"E12": E12, "E13": E13, "E14": E14, "E23": E23, "E24": E24, "E34": E34}

# u_i as columns in the coset basis
_CHANGE = np.array([[1, 1, 0, 0], [0, 0, 1, 1], [1, -1, 0, 0], [0, 0, 1, -1]], dtype=np.int64)


class RepMatrix:
    """A 4x4 signed permutation matrix."""

    __slots__ = ("m",)

    def __init__(self, m):
        m = np.array(m, dtype=np.int64)
        if m.shape != (4, 4) or not np.isin(m, (-1, 0, 1)).all():
            raise ValueError("expected a 4x4 matrix with entries in {-1, 0, 1}")
        if not ((m != 0).sum(axis=0) == 1).all() or not ((m != 0).sum(axis=1) == 1).all():
            raise ValueError("not a signed permutation matrix")
        self.m = m

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        return RepMatrix(self.m @ other.m)

    def __eq__(self, other):
        return isinstance(other, RepMatrix) and np.array_equal(self.m, other.m)

    def __hash__(self):
        return hash(self.m.tobytes())

    def is_identity(self) -> bool:
        return np.array_equal(self.m, np.eye(4, dtype=np.int64))

    def transpose_inverse(self) -> "RepMatrix":
        # a signed permutation matrix is orthogonal
        return RepMatrix(self.m)

    def diagonal(self) -> Optional[tuple[int, ...]]:
        """Eigenvalues per basis vector if the matrix is diagonal, else None."""
        if not np.array_equal(self.m, np.diag(np.diag(self.m))):
            return None
        return tuple(int(x) for x in np.diag(self.m))

    def permutation(self) -> tuple[int, ...]:
        """Image index of each basis vector (0-based), ignoring signs."""
        return tuple(int(np.flatnonzero(self.m[:, i])[0]) for i in range(4))

    def signs(self) -> tuple[int, ...]:
        return tuple(int(self.m[:, i].sum()) for i in range(4))

    def __repr__(self):
        return f"RepMatrix({self.m.tolist()})"


def _inverse(g: int) -> int:
    return int(np.flatnonzero(u4_table()[g] == 0)[0])


def coset_representatives() -> tuple[int, int, int, int]:
    return (0, E12, E13, int(u4_table()[E12, E13]))


def _in_subgroup(h: int) -> bool:
    return u4_entry(h, 1, 2) == 0 and u4_entry(h, 1, 3) == 0


def induced_matrix(g: int, signed: bool = True) -> RepMatrix:
    """Matrix of g on V in the u-basis; ``signed=False`` induces the trivial character instead."""
    t = u4_table()
    reps = coset_representatives()
    coset = np.zeros((4, 4), dtype=np.int64)
    for i, r in enumerate(reps):
        gr = int(t[g, r])
        for j, s in enumerate(reps):
            h = int(t[_inverse(s), gr])
            if _in_subgroup(h):
                coset[j, i] = (-1) ** u4_entry(h, 1, 4) if signed else 1
    # P^{-1} = P^T / 2 since the columns of P are orthogonal of squared length 2
    num = _CHANGE.T @ coset @ _CHANGE
    if (num % 2).any():
        raise ArithmeticError("change of basis is not integral")
    return RepMatrix(num // 2)


def build_induced_rep(signed: bool = True) -> dict[str, RepMatrix]:
    return {name: induced_matrix(g, signed) for name, g in ELEMENTARY.items()}


# Claimed behaviour of the generators on (u1, u2, u3, u4).
DIAGONAL_CLAIMS = {
    "E13": (1, -1, 1, -1),
    "E24": (1, 1, -1, -1),
    "E14": (-1, -1, -1, -1),
    "E23": (1, 1, 1, -1),
}
PERMUTATION_CLAIMS = {
    "E12": (2, 3, 0, 1),  # (u1 u3)(u2 u4)
    "E34": (1, 0, 3, 2),  # (u1 u2)(u3 u4)
}
# Eigenvalues of (E12, E23, E34) on d1..d4.
D_EIGEN_CLAIMS = ((1, 1, 1), (-1, 1, 1), (1, 1, -1), (-1, 1, -1))


def _d_polys(ring: PolyRing) -> list[SparsePoly]:
    s = [ring.var(f"u{i}") ** 2 for i in range(1, 5)]
    return [
        s[0] + s[1] + s[2] + s[3],
        s[0] + s[1] - s[2] - s[3],
        s[0] - s[1] + s[2] - s[3],
        s[0] - s[1] - s[2] + s[3],
    ]


def _act_on_coordinates(rep: RepMatrix, ring: PolyRing) -> dict[str, SparsePoly]:
    """Substitution u_i* -> g* u_i* through the transpose-inverse."""
    d = rep.transpose_inverse().m
    return {
        f"u{i + 1}": sum((int(d[i, j]) * ring.var(f"u{j + 1}") for j in range(4)), ring.const(0))
        for i in range(4)
    }


def eigen_report(signed: bool = True) -> dict[str, bool]:
    """Each claim about the generators, checked separately."""
    reps = build_induced_rep(signed)
    out = {}
    for name, claim in DIAGONAL_CLAIMS.items():
        out[f"{name} diagonal {claim}"] = reps[name].diagonal() == claim
    for name, perm in PERMUTATION_CLAIMS.items():
        m = reps[name]
        out[f"{name} permutes {perm}"] = m.permutation() == perm and m.signs() == (1, 1, 1, 1)
    ring = PolyRing(["u1", "u2", "u3", "u4"])
    ds = _d_polys(ring)
    for k, name in enumerate(("E12", "E23", "E34")):
        sub = _act_on_coordinates(reps[name], ring)
        for i, d in enumerate(ds):
            out[f"d{i + 1} eigenvalue under {name}"] = d.substitute(sub) == D_EIGEN_CLAIMS[i][k] * d
    return out


def verify_eigen_properties(mutate: bool = False) -> bool:
    """Mutation: induce the trivial character, which makes E14 act as +1."""
    return all(eigen_report(signed=not mutate).values())


def _norm_ring() -> PolyRing:
    return PolyRing(["y1", "ya", "yg", "yag", "alpha", "gamma"])


def norm_product(ring: PolyRing) -> SparsePoly:
    """Product of the four conjugates of y1 + ya alpha + yg gamma + yag alpha gamma."""
    y1, ya, yg, yag, al, ga = (ring.var(n) for n in ("y1", "ya", "yg", "yag", "alpha", "gamma"))
    out = ring.const(1)
    for i, j in product((0, 1), repeat=2):
        out = out * (y1 + (-1) ** i * ya * al + (-1) ** j * yg * ga + (-1) ** (i + j) * yag * al * ga)
    return out


def _compact_norm(ring: PolyRing, c_sign: int = -1) -> SparsePoly:
    y1, ya, yg, yag, al, ga = (ring.var(n) for n in ("y1", "ya", "yg", "yag", "alpha", "gamma"))
    a, c = al**2, ga**2
    p = y1**2 - a * ya**2 + c * yg**2 - a * c * yag**2
    q = 2 * y1 * yg - 2 * a * ya * yag
    return p**2 + c_sign * c * q**2


def verify_norm_expansion(mutate: bool = False) -> bool:
    """Mutation: flip the sign of the c(...)^2 term."""
    ring = _norm_ring()
    return (norm_product(ring) - _compact_norm(ring, 1 if mutate else -1)).is_zero()


def verify_norm_expansion_restricted() -> bool:
    """With ya = yag = 0 both forms collapse to (y1^2 - c yg^2)^2."""
    ring = _norm_ring()
    zero = {"ya": ring.const(0), "yag": ring.const(0)}
    y1, yg, ga = ring.var("y1"), ring.var("yg"), ring.var("gamma")
    target = (y1**2 - ga**2 * yg**2) ** 2
    return norm_product(ring).substitute(zero) == target == _compact_norm(ring).substitute(zero)


@dataclass(frozen=True)
class QuotientCheck:
    numerator: SparsePoly
    denominator: SparsePoly

    @property
    def holds(self) -> bool:
        return self.numerator.is_zero()


def quotient_substitution(scale: int = 16) -> QuotientCheck:
    """b x^2 - N(y) under x -> scale u1u2u3u4/beta, y -> (d1, d2/alpha, d3/gamma, d4/(alpha gamma))."""
    src = PolyRing(["x", "y1", "ya", "yg", "yag", "a", "b", "c"])
    x, y1, ya, yg, yag, a, b, c = src.gens()
    expr = b * x**2 - norm_form_eval((y1, ya, yg, yag), a, c)

    tgt = PolyRing(["u1", "u2", "u3", "u4", "alpha", "beta", "gamma"])
    u = [tgt.var(f"u{i}") for i in range(1, 5)]
    al, be, ga = tgt.var("alpha"), tgt.var("beta"), tgt.var("gamma")
    d = _d_polys(tgt)
    one = tgt.const(1)
    mapping = {
        "x": (scale * u[0] * u[1] * u[2] * u[3], be),
        "y1": (d[0], one),
        "ya": (d[1], al),
        "yg": (d[2], ga),
        "yag": (d[3], al * ga),
        "a": (al**2, one),
        "b": (be**2, one),
        "c": (ga**2, one),
    }
    num, den = expr.substitute_fractions(mapping, tgt)
    return QuotientCheck(num, den)


def verify_quotient_identity(mutate: bool = False) -> bool:
    """Mutation: use 2^3 in place of 2^4."""
    return quotient_substitution(8 if mutate else 16).holds


def verify_core_identity() -> bool:
    """256 (u1u2u3u4)^2 = (d1^2 - d2^2 + d3^2 - d4^2)^2 - (2 d1 d3 - 2 d2 d4)^2."""
    ring = PolyRing(["u1", "u2", "u3", "u4"])
    u1, u2, u3, u4 = ring.gens()
    d1, d2, d3, d4 = _d_polys(ring)
    rhs = (d1**2 - d2**2 + d3**2 - d4**2) ** 2 - (2 * d1 * d3 - 2 * d2 * d4) ** 2
    return 256 * (u1 * u2 * u3 * u4) ** 2 == rhs


def moved_coordinates(g: int, with_u: bool = True) -> list[str]:
    """Coordinate functions among alpha, beta, gamma, u1*..u4* not fixed by g."""
    moved = [
        name
        for name, (i, j) in (("alpha", (1, 2)), ("beta", (2, 3)), ("gamma", (3, 4)))
        if u4_entry(g, i, j)
    ]
    if with_u:
        d = induced_matrix(g).transpose_inverse().m
        moved += [f"u{i + 1}*" for i in range(4) if not np.array_equal(d[i], np.eye(4, dtype=np.int64)[i])]
    return moved


def verify_free_action(mutate: bool = False) -> bool:
    """Every nontrivial g moves some coordinate.  Mutation: forget the u_i* coordinates."""
    if moved_coordinates(0):
        return False
    return all(moved_coordinates(g, with_u=not mutate) for g in range(1, 64))


def _biquadratic_mul(p, q, rel_a, rel_c):
    """Product in the free module on 1, alpha, gamma, alpha gamma with alpha^2 = rel_a, gamma^2 = rel_c."""
    out = [0, 0, 0, 0]
    for i, j in product(range(4), repeat=2):
        # basis index bit 0: alpha, bit 1: gamma
        coef = p[i] * q[j]
        if i & j & 1:
            coef = coef * rel_a
        if i & j & 2:
            coef = coef * rel_c
        k = i ^ j
        out[k] = out[k] + coef
    return out


def norm_multiplicativity_gap(mutate: bool = False) -> SparsePoly:
    ring = PolyRing(["a", "c"] + [f"y{i}" for i in range(1, 5)] + [f"z{i}" for i in range(1, 5)])
    a, c = ring.var("a"), ring.var("c")
    y = [ring.var(f"y{i}") for i in range(1, 5)]
    z = [ring.var(f"z{i}") for i in range(1, 5)]
    # coordinates (y1, y2, y3, y4) sit on 1, alpha, gamma, alpha gamma
    prod = _biquadratic_mul(y, z, -a if mutate else a, c)
    return norm_form_eval(prod, a, c) - norm_form_eval(y, a, c) * norm_form_eval(z, a, c)


def verify_norm_multiplicativity(mutate: bool = False) -> bool:
    """Mutation: multiply with the wrong relation alpha^2 = -a."""
    return norm_multiplicativity_gap(mutate).is_zero()


CHECKS: dict[str, Callable[[bool], bool]] = {
    "expansion": verify_norm_expansion,
    "quotient": verify_quotient_identity,
    "eigen": verify_eigen_properties,
    "free-action": verify_free_action,
    "multiplicativity": verify_norm_multiplicativity,
}


def run_checks(mutate: bool = False, only: Optional[str] = None) -> dict[str, bool]:
    if only is not None and only not in CHECKS:
        raise KeyError(f"unknown check {only!r}; choose from {', '.join(CHECKS)}")
    names = [only] if only else list(CHECKS)
    return {name: CHECKS[name](mutate) for name in names}


@lru_cache(maxsize=None)
def homomorphism_holds() -> bool:
    """matrix(g) matrix(h) = matrix(gh) for all of U_4."""
    t = u4_table()
    mats = [induced_matrix(g) for g in range(64)]
    return all(mats[g] @ mats[h] == mats[int(t[g, h])] for g in range(64) for h in range(64))

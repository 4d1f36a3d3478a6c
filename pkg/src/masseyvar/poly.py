"""Exact sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class PolyRing:
    """Q[x_1, ..., x_n] with a fixed variable order."""

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    def gens(self) -> tuple["SparsePoly", ...]:
        return tuple(self.var(n) for n in self.names)

    def var(self, name: str) -> "SparsePoly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return SparsePoly(self, {tuple(e): Fraction(1)})

    def const(self, c: Scalar) -> "SparsePoly":
        c = Fraction(c)
        return SparsePoly(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Mapping[str, int], coeff: Scalar = 1) -> "SparsePoly":
        e = [0] * self.nvars
        for n, k in exps.items():
            e[self.index(n)] = k
        return SparsePoly(self, {tuple(e): Fraction(coeff)})

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.names == self.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"


class SparsePoly:
    """Map from exponent vectors to nonzero Fractions; equality is map equality."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, Scalar] = ()):
        self.ring = ring
        self.terms: dict[Exponent, Fraction] = {}
        for e, c in dict(terms).items():
            if len(e) != ring.nvars:
                raise ValueError("exponent vector length does not match the ring")
            if c:
                self.terms[tuple(e)] = Fraction(c)

    # arithmetic

    def _lift(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparsePoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = self.ring.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # structure

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set[str]:
        return {self.ring.names[i] for e in self.terms for i, k in enumerate(e) if k}

    def monomial_gcd(self) -> Exponent:
        """Exponentwise minimum over all terms (the largest monomial dividing self)."""
        if not self.terms:
            return (0,) * self.ring.nvars
        return tuple(min(col) for col in zip(*self.terms))

    def divide_monomial(self, e: Exponent) -> "SparsePoly":
        out = {}
        for t, c in self.terms.items():
            q = tuple(x - y for x, y in zip(t, e))
            if min(q, default=0) < 0:
                raise ValueError("monomial does not divide the polynomial")
            out[q] = c
        return SparsePoly(self.ring, out)

    def substitute(self, mapping: Mapping[str, "SparsePoly"], target: PolyRing = None) -> "SparsePoly":
        """Replace variables by polynomials of ``target``; unmapped variables must exist in ``target``."""
        target = target or self.ring
        images = []
        for n in self.ring.names:
            if n in mapping:
                img = mapping[n]
                images.append(img if isinstance(img, SparsePoly) else target.const(img))
            else:
                try:
                    images.append(target.var(n))
                except KeyError:
                    raise ValueError(f"variable {n!r} has no image in {target}") from None
        for img in images:
            if img.ring != target:
                raise ValueError("substitution image lives in the wrong ring")
        out = target.const(0)
        powers: dict[tuple[int, int], SparsePoly] = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[i, k] = images[i] ** k
                    term = term * powers[i, k]
            out = out + term
        return out

    def substitute_fractions(
        self, mapping: Mapping[str, tuple["SparsePoly", "SparsePoly"]], target: PolyRing
    ) -> tuple["SparsePoly", "SparsePoly"]:
        """Substitute var -> numerator / monomial and return (numerator, monomial denominator).

        Each term is brought over the common denominator prod den_v^(deg_v self);
        the monomial shared by numerator and denominator is then cancelled, so
        the result is the reduced fraction with a monomial denominator.
        """
        dens = {}
        nums = {}
        for n in self.ring.names:
            num, den = mapping[n] if n in mapping else (target.var(n), target.const(1))
            if not den.is_monomial():
                raise ValueError("denominators must be monomials")
            nums[n], dens[n] = num, den
        degs = {n: self.degree_in(n) for n in self.ring.names}
        total_den = target.const(1)
        for n in self.ring.names:
            total_den = total_den * dens[n] ** degs[n]
        out = target.const(0)
        for e, c in self.terms.items():
            term = target.const(c)
            for n, k in zip(self.ring.names, e):
                if k:
                    term = term * nums[n] ** k
                if degs[n] - k:
                    term = term * dens[n] ** (degs[n] - k)
            out = out + term
        if out.is_zero():
            return out, target.const(1)
        common = tuple(min(x, y) for x, y in zip(out.monomial_gcd(), total_den.monomial_gcd()))
        return out.divide_monomial(common), total_den.divide_monomial(common)

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for n, k in zip(self.ring.names, e):
                if k:
                    v *= Fraction(values[n]) ** k
            total += v
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mon = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append(f"-{mon}")
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

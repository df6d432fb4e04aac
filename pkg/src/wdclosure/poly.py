"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Exps = tuple[int, ...]


class Poly:
    """Polynomial in ``nvars`` variables as a map ``exponents -> coefficient``.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, Rational] | None = None):
        self.nvars = nvars
        clean: dict[Exps, Fraction] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            coef = Fraction(coef)
            if coef:
                clean[exps] = clean.get(exps, Fraction(0)) + coef
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, c: Rational = 1) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def linear(cls, coeffs: Sequence[Rational], const: Rational = 0) -> "Poly":
        """``sum(coeffs[i] * x_i) + const``."""
        n = len(coeffs)
        terms: dict[Exps, Rational] = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial reports ``-1``."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, point: Sequence[int]) -> Fraction:
        total = Fraction(0)
        for exps, coef in self.terms.items():
            v = coef
            for x, e in zip(point, exps):
                if e:
                    v *= x ** e
            total += v
        return total

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        terms: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.constant(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def integer_normalized(self) -> "Poly":
        """Positive multiple with coprime integer coefficients and positive leading term."""
        if not self.terms:
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        lead = ints[self.sorted_exponents()[0]]
        if lead < 0:
            g = -g
        return Poly(self.nvars, {e: v // g for e, v in ints.items()})

    def sorted_exponents(self) -> list[Exps]:
        """Exponents in graded order, highest degree first, then lexicographically descending."""
        return sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))

    def vanishes_on(self, points: Iterable[Sequence[int]]) -> bool:
        return all(self(p) == 0 for p in points)

    def zero_set(self, points: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
        return [tuple(p) for p in points if self(p) == 0]

    def to_json(self) -> list[dict]:
        return [{"exps": list(e), "coef": str(self.terms[e])} for e in self.sorted_exponents()]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable[Mapping]) -> "Poly":
        return cls(nvars, {tuple(t["exps"]): Fraction(t["coef"]) for t in data})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e in self.sorted_exponents():
            c = self.terms[e]
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self})"


def product(polys: Iterable[Poly], nvars: int) -> Poly:
    out = Poly.constant(nvars)
    for p in polys:
        out = out * p
    return out

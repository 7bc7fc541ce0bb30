"""Sparse bivariate integer polynomials in ``x`` and ``y``.

E-polynomials here are weighted by ``(-1)^(k-p-q)`` so that a compact smooth
projective variety contributes its Hodge numbers with a plus sign, e.g. an
elliptic curve has ``E = 1 + x + y + xy``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]


class EPolynomial:
    """Immutable polynomial ``sum c[p, q] * x^p * y^q`` with integer ``c``.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], int] = {}
        for (p, q), c in items:
            p, q = int(p), int(q)
            if p < 0 or q < 0:
                raise ValueError(f"negative exponent ({p}, {q}) not allowed")
            if not isinstance(c, int):
                raise TypeError(f"coefficient must be an integer, got {c!r}")
            acc[(p, q)] = acc.get((p, q), 0) + c
        self._terms = {k: v for k, v in acc.items() if v != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[tuple[int, int], int]) -> "EPolynomial":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: int) -> "EPolynomial":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, p: int, q: int, c: int = 1) -> "EPolynomial":
        return cls({(p, q): c})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def coefficient(self, p: int, q: int) -> int:
        return self._terms.get((p, q), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = EPolynomial.constant(other)
        if not isinstance(other, EPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = EPolynomial.constant(other)
        if not isinstance(other, EPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return EPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return EPolynomial._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = EPolynomial.constant(other)
        if not isinstance(other, EPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return EPolynomial()
            return EPolynomial._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, EPolynomial):
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (p1, q1), c1 in self._terms.items():
            for (p2, q2), c2 in other._terms.items():
                key = (p1 + p2, q1 + q2)
                out[key] = out.get(key, 0) + c1 * c2
        return EPolynomial._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result = EPolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x0: Rational, y0: Rational) -> Fraction:
        return evaluate(self, x0, y0)

    def swap(self) -> "EPolynomial":
        """Exchange the roles of ``x`` and ``y``."""
        return EPolynomial._raw({(q, p): c for (p, q), c in self._terms.items()})

    def min_diagonal_degree(self) -> int:
        """Largest ``k`` such that ``(xy)^k`` divides this polynomial (0 for zero)."""
        if not self._terms:
            return 0
        return min(min(p, q) for p, q in self._terms)

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        return [(p, q, c) for (p, q), c in sorted(self._terms.items())]

    def to_text(self) -> str:
        """Canonical rendering, terms in ascending ``(p, q)`` order."""
        if not self._terms:
            return "0"
        parts = []
        for p, q, c in self.sorted_terms():
            factors = []
            if p:
                factors.append("x" if p == 1 else f"x^{p}")
            if q:
                factors.append("y" if q == 1 else f"y^{q}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    def to_json(self) -> list[list]:
        return [[p, q, str(c)] for p, q, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "EPolynomial":
        if not isinstance(data, list):
            raise ValueError("epoly must be a list of [p, q, coefficient] triples")
        terms = []
        for entry in data:
            if not (isinstance(entry, list) and len(entry) == 3):
                raise ValueError(f"malformed epoly term {entry!r}")
            p, q, c = entry
            if not (isinstance(p, int) and isinstance(q, int)):
                raise ValueError(f"exponents must be integers in {entry!r}")
            if not isinstance(c, str):
                raise ValueError(f"coefficient must be a decimal string in {entry!r}")
            terms.append(((p, q), int(c)))
        return cls(terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"EPolynomial({self.to_text()!r})"


ZERO = EPolynomial()
ONE = EPolynomial.constant(1)
X = EPolynomial.monomial(1, 0)
Y = EPolynomial.monomial(0, 1)
XY = EPolynomial.monomial(1, 1)


def add(a: EPolynomial, b: EPolynomial) -> EPolynomial:
    return a + b


def mul(a: EPolynomial, b: EPolynomial) -> EPolynomial:
    return a * b


def scale_monomial(P: EPolynomial, k: int) -> EPolynomial:
    """Multiply ``P`` by ``(xy)^k``."""
    if k < 0:
        raise ValueError("shift must be nonnegative")
    return EPolynomial._raw({(p + k, q + k): c for (p, q), c in P._terms.items()})


def e_abelian_variety(d: int) -> EPolynomial:
    """E-polynomial ``(1+x)^d (1+y)^d`` of a d-dimensional complex torus."""
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    return EPolynomial._raw(
        {(p, q): comb(d, p) * comb(d, q) for p in range(d + 1) for q in range(d + 1)}
    )


def evaluate(P: EPolynomial, x0: Rational, y0: Rational) -> Fraction:
    x0, y0 = Fraction(x0), Fraction(y0)
    return sum((c * x0**p * y0**q for (p, q), c in P._terms.items()), Fraction(0))

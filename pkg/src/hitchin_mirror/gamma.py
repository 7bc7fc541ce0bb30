"""The group of n-torsion points of a genus-g Jacobian, ``(Z/n)^(2g)``.

Phases in U(1) are never materialized; a phase is stored as its exponent
``a`` mod ``n`` and stands for ``exp(2*pi*i*a/n)``.  Classes in
``H^2(Gamma, U(1))`` are represented by alternating forms mod ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

DEFAULT_ENUMERATION_BOUND = 10**6


class GroupMismatchError(ValueError):
    """Objects built over different ``(n, g)`` were combined."""


class EnumerationLimitError(ValueError):
    def __init__(self, required: int, bound: int):
        super().__init__(
            f"enumeration needs {required} elements, above the bound {bound}"
        )
        self.required = required
        self.bound = bound


@dataclass(frozen=True)
class GammaGroup:
    n: int
    g: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"exponent n must be >= 2, got {self.n}")
        if self.g < 1:
            raise ValueError(f"genus g must be >= 1, got {self.g}")

    @property
    def rank(self) -> int:
        return 2 * self.g

    @property
    def order(self) -> int:
        return self.n ** (2 * self.g)

    @property
    def identity(self) -> "GammaElement":
        return GammaElement(self.n, (0,) * self.rank)

    def element(self, coords: Sequence[int]) -> "GammaElement":
        if len(coords) != self.rank:
            raise GroupMismatchError(
                f"expected {self.rank} coordinates, got {len(coords)}"
            )
        return GammaElement(self.n, tuple(coords))

    def character(self, coords: Sequence[int]) -> "GammaCharacter":
        if len(coords) != self.rank:
            raise GroupMismatchError(
                f"expected {self.rank} coordinates, got {len(coords)}"
            )
        return GammaCharacter(self.n, tuple(coords))

    def trivial_character(self) -> "GammaCharacter":
        return GammaCharacter(self.n, (0,) * self.rank)

    def contains(self, obj) -> bool:
        return obj.n == self.n and len(obj.coords) == self.rank


def _reduce(n: int, coords) -> tuple[int, ...]:
    return tuple(int(c) % n for c in coords)


@dataclass(frozen=True)
class GammaElement:
    n: int
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _reduce(self.n, self.coords))

    @property
    def group(self) -> GammaGroup:
        return GammaGroup(self.n, len(self.coords) // 2)

    def is_identity(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        k = 1
        while any((k * c) % self.n for c in self.coords):
            k += 1
        return k

    def __add__(self, other: "GammaElement") -> "GammaElement":
        _check_same(self, other)
        return GammaElement(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return GammaElement(self.n, tuple(-a for a in self.coords))

    def to_json(self) -> list[int]:
        return list(self.coords)


@dataclass(frozen=True)
class GammaCharacter:
    """Character ``delta -> exp(2 pi i <coords, delta> / n)``."""

    n: int
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _reduce(self.n, self.coords))

    def is_trivial(self) -> bool:
        return not any(self.coords)

    def pair(self, delta: GammaElement) -> int:
        _check_same(self, delta)
        return sum(a * b for a, b in zip(self.coords, delta.coords)) % self.n

    def __mul__(self, other: "GammaCharacter") -> "GammaCharacter":
        _check_same(self, other)
        return GammaCharacter(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def to_json(self) -> list[int]:
        return list(self.coords)


@dataclass(frozen=True)
class TorsionClass:
    """Alternating form mod ``n`` standing for a class in H^2(Gamma, U(1))."""

    n: int
    form: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.n
        form = tuple(tuple(int(v) % n for v in row) for row in self.form)
        size = len(form)
        if size % 2 or any(len(row) != size for row in form):
            raise ValueError("torsion form must be a square matrix of even size")
        for i in range(size):
            if form[i][i]:
                raise ValueError(f"torsion form has nonzero diagonal entry at {i}")
            for j in range(i + 1, size):
                if (form[i][j] + form[j][i]) % n:
                    raise ValueError(f"torsion form is not skew at ({i}, {j})")
        object.__setattr__(self, "form", form)

    @property
    def group(self) -> GammaGroup:
        return GammaGroup(self.n, len(self.form) // 2)

    def scaled(self, c: int) -> "TorsionClass":
        return TorsionClass(self.n, tuple(tuple(c * v for v in row) for row in self.form))

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.form]


def _check_same(a, b):
    if a.n != b.n or len(a.coords) != len(b.coords):
        raise GroupMismatchError(
            f"objects over (Z/{a.n})^{len(a.coords)} and (Z/{b.n})^{len(b.coords)}"
        )


def _check_form(rho: TorsionClass, x) -> None:
    if rho.n != x.n or len(rho.form) != len(x.coords):
        raise GroupMismatchError(
            f"torsion form over (Z/{rho.n})^{len(rho.form)} applied to an element "
            f"of (Z/{x.n})^{len(x.coords)}"
        )


def standard_rho(G: GammaGroup) -> TorsionClass:
    """Sum over i of the pullbacks of the generator of H^2(Z_n^2, U(1))
    along the projections onto coordinates (2i-1, 2i)."""
    size = G.rank
    form = [[0] * size for _ in range(size)]
    for i in range(G.g):
        form[2 * i][2 * i + 1] = 1
        form[2 * i + 1][2 * i] = -1
    return TorsionClass(G.n, tuple(map(tuple, form)))


def epsilon_exponent(rho: TorsionClass, gamma: GammaElement, delta: GammaElement) -> int:
    _check_form(rho, gamma)
    _check_form(rho, delta)
    n = rho.n
    total = 0
    for i, a in enumerate(gamma.coords):
        if a:
            row = rho.form[i]
            total += a * sum(r * b for r, b in zip(row, delta.coords))
    return total % n


def induced_character(rho: TorsionClass, gamma: GammaElement, c: int) -> GammaCharacter:
    """The character ``delta -> eps(gamma, delta)^c`` attached to the sector of gamma."""
    _check_form(rho, gamma)
    size = len(rho.form)
    row = [0] * size
    for i, a in enumerate(gamma.coords):
        if a:
            for j in range(size):
                row[j] += a * rho.form[i][j]
    return GammaCharacter(rho.n, tuple(c * v for v in row))


def enumerate_elements(
    G: GammaGroup, bound: int = DEFAULT_ENUMERATION_BOUND
) -> Iterator[GammaElement]:
    """All elements in lexicographic order (identity first)."""
    if G.order > bound:
        raise EnumerationLimitError(G.order, bound)
    n = G.n
    return (GammaElement(n, coords) for coords in product(range(n), repeat=G.rank))

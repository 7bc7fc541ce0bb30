"""Orbifold sectors and stringy E-polynomials of global quotients X/Gamma.

Gamma is abelian, so conjugacy classes are single elements and every
centralizer is all of Gamma.  Each sector stores the cohomology of the fixed
locus X^gamma split into Gamma-isotypic pieces; the piece on the trivial
character is E(X^gamma / Gamma).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .epoly import ZERO, EPolynomial, scale_monomial
from .gamma import (
    GammaCharacter,
    GammaElement,
    GammaGroup,
    GroupMismatchError,
    TorsionClass,
    induced_character,
)


class PresentationFormatError(ValueError):
    """Malformed presentation JSON; the message names the offending location."""


@dataclass(frozen=True)
class Sector:
    gamma: GammaElement
    shift: int
    isotypic: Mapping[GammaCharacter, EPolynomial] = field(default_factory=dict)

    def __post_init__(self):
        if self.shift < 0:
            raise ValueError(f"fermionic shift must be nonnegative, got {self.shift}")
        if self.gamma.is_identity() and self.shift != 0:
            raise ValueError("the identity sector must have shift 0")
        for chi in self.isotypic:
            if chi.n != self.gamma.n or len(chi.coords) != len(self.gamma.coords):
                raise GroupMismatchError(
                    f"isotypic character {chi.coords} does not belong to the group of "
                    f"gamma {self.gamma.coords}"
                )
        object.__setattr__(self, "isotypic", dict(self.isotypic))

    def component(self, chi: GammaCharacter) -> EPolynomial:
        return self.isotypic.get(chi, ZERO)

    def invariant_part(self) -> EPolynomial:
        """E(X^gamma / Gamma), the trivial-character component."""
        return self.component(self.gamma.group.trivial_character())


@dataclass(frozen=True)
class OrbifoldPresentation:
    group: GammaGroup
    sectors: tuple[Sector, ...] = ()

    def __post_init__(self):
        sectors = tuple(self.sectors)
        seen = set()
        for idx, s in enumerate(sectors):
            if not self.group.contains(s.gamma):
                raise GroupMismatchError(
                    f"sector {idx} has gamma {s.gamma.coords} outside "
                    f"(Z/{self.group.n})^{self.group.rank}"
                )
            if s.gamma in seen:
                raise ValueError(f"duplicate sector for gamma {s.gamma.coords}")
            seen.add(s.gamma)
            if s.gamma.is_identity() and idx != 0:
                raise ValueError("the identity sector must be listed first")
        object.__setattr__(self, "sectors", sectors)

    def nonidentity_sectors(self) -> tuple[Sector, ...]:
        return tuple(s for s in self.sectors if not s.gamma.is_identity())

    def to_json(self) -> dict:
        return {
            "n": self.group.n,
            "g": self.group.g,
            "sectors": [
                {
                    "gamma": s.gamma.to_json(),
                    "shift": s.shift,
                    "isotypic": [
                        {"character": chi.to_json(), "epoly": poly.to_json()}
                        for chi, poly in sorted(
                            s.isotypic.items(), key=lambda kv: kv[0].coords
                        )
                    ],
                }
                for s in self.sectors
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, data) -> "OrbifoldPresentation":
        return _parse_presentation(data)

    @classmethod
    def loads(cls, text: str) -> "OrbifoldPresentation":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PresentationFormatError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        return _parse_presentation(data)


def _require(obj, key, where):
    if not isinstance(obj, dict):
        raise PresentationFormatError(f"{where}: expected an object")
    if key not in obj:
        raise PresentationFormatError(f"{where}: missing key {key!r}")
    return obj[key]


def _int_list(value, where) -> list[int]:
    if not isinstance(value, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in value
    ):
        raise PresentationFormatError(f"{where}: expected a list of integers")
    return value


def _parse_presentation(data) -> OrbifoldPresentation:
    n = _require(data, "n", "presentation")
    g = _require(data, "g", "presentation")
    raw_sectors = _require(data, "sectors", "presentation")
    if not isinstance(n, int) or not isinstance(g, int):
        raise PresentationFormatError("presentation: 'n' and 'g' must be integers")
    if not isinstance(raw_sectors, list):
        raise PresentationFormatError("presentation.sectors: expected a list")
    try:
        group = GammaGroup(n, g)
        sectors = []
        for i, raw in enumerate(raw_sectors):
            where = f"sectors[{i}]"
            gamma = group.element(_int_list(_require(raw, "gamma", where), where + ".gamma"))
            shift = _require(raw, "shift", where)
            if not isinstance(shift, int):
                raise PresentationFormatError(f"{where}.shift: expected an integer")
            iso_raw = _require(raw, "isotypic", where)
            if not isinstance(iso_raw, list):
                raise PresentationFormatError(f"{where}.isotypic: expected a list")
            isotypic: dict[GammaCharacter, EPolynomial] = {}
            for j, entry in enumerate(iso_raw):
                w = f"{where}.isotypic[{j}]"
                chi = group.character(_int_list(_require(entry, "character", w), w + ".character"))
                try:
                    poly = EPolynomial.from_json(_require(entry, "epoly", w))
                except (ValueError, TypeError) as exc:
                    raise PresentationFormatError(f"{w}.epoly: {exc}") from exc
                if chi in isotypic:
                    raise PresentationFormatError(f"{w}: duplicate character {chi.coords}")
                isotypic[chi] = poly
            sectors.append(Sector(gamma, shift, isotypic))
        return OrbifoldPresentation(group, tuple(sectors))
    except PresentationFormatError:
        raise
    except GroupMismatchError:
        raise
    except ValueError as exc:
        raise PresentationFormatError(str(exc)) from exc


def stringy_e(P: OrbifoldPresentation) -> EPolynomial:
    """Sum over sectors of E(X^gamma / Gamma) * (xy)^F(gamma)."""
    total = ZERO
    for s in P.sectors:
        total = total + scale_monomial(s.invariant_part(), s.shift)
    return total


def twisted_stringy_e(P: OrbifoldPresentation, rho: TorsionClass, c: int) -> EPolynomial:
    """Stringy E-polynomial with discrete torsion ``c * rho``.

    The sector of gamma contributes the isotypic piece on which Gamma acts
    through the character induced by ``c * rho`` at gamma, i.e. cohomology of
    X^gamma / Gamma with coefficients in the corresponding local system.
    """
    if rho.n != P.group.n or len(rho.form) != P.group.rank:
        raise GroupMismatchError(
            f"torsion class over (Z/{rho.n})^{len(rho.form)} does not match the "
            f"presentation group (Z/{P.group.n})^{P.group.rank}"
        )
    total = ZERO
    for s in P.sectors:
        chi = induced_character(rho, s.gamma, c)
        total = total + scale_monomial(s.component(chi), s.shift)
    return total


def fermionic_shift(age_numerators: Iterable[int], n: int) -> int:
    """Age of an element acting on the normal space with eigenvalues
    ``exp(2 pi i c_j / n)``, i.e. ``sum(c_j) / n``; must be an integer."""
    nums = list(age_numerators)
    for c in nums:
        if not 0 <= c < n:
            raise ValueError(f"age numerator {c} outside [0, {n})")
    total = sum(nums)
    if total % n:
        raise ValueError(f"age {total}/{n} is not an integer")
    return total // n

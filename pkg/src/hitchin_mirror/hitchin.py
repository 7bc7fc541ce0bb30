"""Hitchin-system numerology and the SL(n)/PGL(n) sector generators.

Dimensions are for traceless (parabolic) Higgs bundles of rank ``n`` on a
genus ``g`` curve with ``m`` marked points carrying full-flag generic
weights.  The Hitchin base is spanned by characteristic coefficients
``a_i`` in ``H^0(K^i((i-1)D))`` with ``D`` the puncture divisor, which is the
choice reproducing the half-dimension ``3g-3+m`` in rank 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable

from .epoly import XY, EPolynomial, e_abelian_variety
from .gamma import GammaElement, GammaGroup, enumerate_elements
from .orbifold import OrbifoldPresentation, Sector


@dataclass(frozen=True)
class CurveSetup:
    g: int
    n: int
    m: int = 0
    c: int = 0
    d: int = 0
    generic_weights: bool = False
    coprime_case: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"rank n must be >= 2, got {self.n}")
        if self.g < 1:
            raise ValueError(f"genus g must be >= 1, got {self.g}")
        if self.m < 0:
            raise ValueError(f"puncture count m must be >= 0, got {self.m}")
        if 2 * self.g - 2 + self.m <= 0:
            raise ValueError(
                f"2g - 2 + m = {2 * self.g - 2 + self.m} must be positive"
            )
        if self.coprime_case and (
            self.m != 0 or gcd(self.n, self.c) != 1 or gcd(self.n, self.d) != 1
        ):
            raise ValueError("coprime case needs m = 0 and c, d coprime to n")
        if self.generic_weights and self.m < 1:
            raise ValueError("generic weights need at least one puncture")

    @property
    def line_degree(self) -> int:
        return 2 * self.g - 2 + self.m

    def spectral_data(self) -> "SpectralData":
        return SpectralData(self.n, self.g, self.line_degree)

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "m": self.m,
            "c": self.c,
            "d": self.d,
            "generic_weights": self.generic_weights,
            "coprime_case": self.coprime_case,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CurveSetup":
        keys = ("g", "n", "m", "c", "d", "generic_weights", "coprime_case")
        return cls(**{k: data[k] for k in keys if k in data})


@dataclass(frozen=True)
class SpectralData:
    """Degree-n spectral cover inside the total space of a line bundle of
    degree ``line_degree`` on a genus-g curve."""

    n: int
    g: int
    line_degree: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cover degree must be positive")
        if self.g < 0:
            raise ValueError("genus must be nonnegative")
        if self.line_degree < 2 * self.g - 2:
            raise ValueError(
                f"line degree {self.line_degree} is below 2g - 2 = {2 * self.g - 2}"
            )


def h0_line_bundle(degree: int, g: int) -> int:
    """h^0 of a line bundle on a genus-g curve when it is determined by degree.

    Only the nonspecial range ``degree > 2g - 2`` and negative degrees are
    accepted; in between h^0 depends on the bundle.
    """
    if degree < 0:
        return 0
    if degree > 2 * g - 2:
        return degree - g + 1
    raise ValueError(f"h^0 of degree {degree} on genus {g} is not determined by the degree")


def moduli_dim(s: CurveSetup) -> int:
    return 2 * (s.n**2 - 1) * (s.g - 1) + s.n * (s.n - 1) * s.m


def hitchin_base_dim(s: CurveSetup) -> int:
    total = 0
    for i in range(2, s.n + 1):
        degree = i * (2 * s.g - 2) + (i - 1) * s.m
        total += h0_line_bundle(degree, s.g)
    return total


def spectral_genus(sd: SpectralData) -> int:
    # adjunction for a degree-n cover in Tot(L): 2g~ - 2 = n(2g - 2) + n(n-1) deg L
    return 1 + sd.n * (sd.g - 1) + sd.n * (sd.n - 1) * sd.line_degree // 2


def prym_dim(sd: SpectralData) -> int:
    return spectral_genus(sd) - sd.g


def unramified_prym_dim(n: int, g: int) -> int:
    """Prym dimension of a connected unramified cyclic n-sheeted cover of a
    genus-g curve: the cover has genus n(g-1)+1."""
    return (n - 1) * (g - 1)


def _check_rank2_args(g: int, m: int) -> None:
    if g < 1 or m < 1:
        raise ValueError(f"need g >= 1 and m >= 1, got g={g}, m={m}")
    if 2 * g - 2 + m <= 0:
        raise ValueError(f"2g - 2 + m = {2 * g - 2 + m} must be positive")


def closed_form_rank2(g: int, m: int) -> EPolynomial:
    """``2^(m-1) (2^(2g) - 1) (xy)^(3g-3+m) (1+x)^(g-1) (1+y)^(g-1)``."""
    _check_rank2_args(g, m)
    coeff = 2 ** (m - 1) * (2 ** (2 * g) - 1)
    return coeff * XY ** (3 * g - 3 + m) * e_abelian_variety(g - 1)


SectorModel = Callable[[CurveSetup, GammaElement], "tuple[EPolynomial, int]"]


def default_sector_model(setup: CurveSetup, gamma: GammaElement) -> tuple[EPolynomial, int]:
    """Uniform per-gamma data: ``n^(m-1)`` copies of the Prym of the unramified
    cyclic cover attached to gamma, shifted by the half-dimension.

    At n = 2 this is exactly the rank-2 data.
    """
    n, g, m = setup.n, setup.g, setup.m
    component = n ** (m - 1) * e_abelian_variety(unramified_prym_dim(n, g))
    return component, hitchin_base_dim(setup)


def _generate(setup: CurveSetup, model) -> OrbifoldPresentation:
    group = GammaGroup(setup.n, setup.g)
    trivial = group.trivial_character()
    sectors = []
    for gamma in enumerate_elements(group):
        if gamma.is_identity():
            continue
        component, shift = model(setup, gamma)
        sectors.append(Sector(gamma, shift, {trivial: component} if component else {}))
    return OrbifoldPresentation(group, tuple(sectors))


def generate_rank2_presentation(g: int, m: int) -> OrbifoldPresentation:
    """Nonidentity sectors of the Gamma = (Z/2)^(2g) action on the rank-2
    parabolic Higgs moduli space.

    Every gamma != 1 fixes ``2^(m-1)`` copies of a (g-1)-dimensional Prym
    family (at the level of E-polynomials), with shift ``3g-3+m``.  The
    identity sector is omitted.
    """
    _check_rank2_args(g, m)
    setup = CurveSetup(g=g, n=2, m=m, generic_weights=True)
    component = 2 ** (m - 1) * e_abelian_variety(g - 1)
    shift = 3 * g - 3 + m
    return _generate(setup, lambda _s, _gamma: (component, shift))


def generate_rank3_presentation(
    g: int, m: int, sector_model: SectorModel = default_sector_model
) -> OrbifoldPresentation:
    """Nonidentity sectors for rank 3; per-gamma data come from ``sector_model``.

    No rank-3 closed form is available to compare with, so the default model is
    only a structural stand-in mirroring the rank-2 pattern.
    """
    _check_rank2_args(g, m)
    setup = CurveSetup(g=g, n=3, m=m, generic_weights=True)
    return _generate(setup, sector_model)

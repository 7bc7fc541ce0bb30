"""Stringy E-polynomials and SYZ fiber duality for SL(n)/PGL(n) Hitchin systems."""

from .epoly import EPolynomial, add, e_abelian_variety, evaluate, mul, scale_monomial
from .gamma import (
    GammaCharacter,
    GammaElement,
    GammaGroup,
    TorsionClass,
    enumerate_elements,
    epsilon_exponent,
    induced_character,
    standard_rho,
)
from .hitchin import (
    CurveSetup,
    SpectralData,
    closed_form_rank2,
    generate_rank2_presentation,
    generate_rank3_presentation,
    hitchin_base_dim,
    moduli_dim,
    prym_dim,
    spectral_genus,
)
from .orbifold import (
    OrbifoldPresentation,
    Sector,
    fermionic_shift,
    stringy_e,
    twisted_stringy_e,
)

__version__ = "0.1.0"

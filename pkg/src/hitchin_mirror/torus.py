"""Polarized lattices as models of abelian-variety fibers and their duals.

A torus ``T = (Lambda ⊗ R) / Lambda`` with ``Lambda = Z^(2k)`` is polarized by
an integral nondegenerate alternating form.  Any such form is congruent over
Z to ``diag(d_1 J, ..., d_k J)`` with ``J = [[0, 1], [-1, 0]]`` and
``d_1 | d_2 | ... | d_k`` positive; the ``d_i`` are its elementary divisors
(the polarization type) and that block matrix is its canonical form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .hitchin import CurveSetup, SpectralData, prym_dim

IntMatrix = tuple[tuple[int, ...], ...]

SL = "SL"
PGL = "PGL"


class DegeneratePairingError(ValueError):
    pass


def _freeze(rows) -> IntMatrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


def _matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def _transpose(A):
    return [list(col) for col in zip(*A)]


def block_form(divisors: Sequence[int]) -> IntMatrix:
    size = 2 * len(divisors)
    rows = [[0] * size for _ in range(size)]
    for i, d in enumerate(divisors):
        rows[2 * i][2 * i + 1] = d
        rows[2 * i + 1][2 * i] = -d
    return _freeze(rows)


def alternating_normal_form(A: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], IntMatrix]:
    """Return ``(divisors, P)`` with ``P`` unimodular and
    ``P^T A P = block_form(divisors)``.

    Divisors of a degenerate form include zeros (listed last).
    """
    size = len(A)
    M = [list(map(int, row)) for row in A]
    P = [[int(i == j) for j in range(size)] for i in range(size)]

    def swap(a, b):
        if a == b:
            return
        M[a], M[b] = M[b], M[a]
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in P:
            row[a], row[b] = row[b], row[a]

    def add(dst, src, q):
        # basis change e_dst += q e_src
        if q == 0:
            return
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        for row in M:
            row[dst] += q * row[src]
        for row in P:
            row[dst] += q * row[src]

    divisors = []
    for t in range(0, size - 1, 2):
        while True:
            best = None
            for i in range(t, size):
                for j in range(i + 1, size):
                    v = M[i][j]
                    if v and (best is None or abs(v) < abs(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            swap(t, i)
            swap(t + 1, j)
            if M[t][t + 1] < 0:
                swap(t, t + 1)
            d = M[t][t + 1]
            reduced = True
            for l in range(t + 2, size):
                # M[t][l] -> M[t][l] - q d using e_l -= q e_{t+1}
                add(l, t + 1, -(M[t][l] // d))
                # M[t+1][l] -> M[t+1][l] + q' d... using e_l += q' e_t
                add(l, t, M[t + 1][l] // d)
                if M[t][l] or M[t + 1][l]:
                    reduced = False
            if not reduced:
                continue
            bad = next(
                (
                    (a, b)
                    for a in range(t + 2, size)
                    for b in range(a + 1, size)
                    if M[a][b] % d
                ),
                None,
            )
            if bad is None:
                break
            # e_t += e_a makes M[t][b] = M[a][b], not divisible by d
            add(t, bad[0], 1)
        if best is None:
            divisors.extend([0] * ((size - t) // 2))
            break
        divisors.append(M[t][t + 1])
    assert _matmul(_matmul(_transpose(P), A), P) == [list(r) for r in block_form(divisors)]
    return tuple(divisors), _freeze(P)


def _det(A) -> Fraction:
    M = [[Fraction(v) for v in row] for row in A]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def _inverse(A) -> list[list[Fraction]]:
    n = len(A)
    M = [
        [Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(A)
    ]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [v / piv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def _int_inverse(P) -> list[list[int]]:
    inv = _inverse(P)
    out = [[int(v) for v in row] for row in inv]
    assert all(Fraction(o) == v for orow, row in zip(out, inv) for o, v in zip(orow, row))
    return out


@dataclass(frozen=True)
class PolarizedLatticeTorus:
    pairing: IntMatrix

    def __post_init__(self):
        A = _freeze(self.pairing)
        size = len(A)
        if size == 0 or size % 2 or any(len(row) != size for row in A):
            raise ValueError("pairing must be a nonempty square matrix of even size")
        for i in range(size):
            if A[i][i]:
                raise ValueError(f"pairing has nonzero diagonal entry at {i}")
            for j in range(i + 1, size):
                if A[i][j] != -A[j][i]:
                    raise ValueError(f"pairing is not antisymmetric at ({i}, {j})")
        divisors, basis = alternating_normal_form(A)
        if 0 in divisors:
            raise DegeneratePairingError("pairing is degenerate (zero determinant)")
        object.__setattr__(self, "pairing", A)
        object.__setattr__(self, "_normal", (divisors, basis))

    @property
    def rank2k(self) -> int:
        return len(self.pairing)

    @property
    def dim(self) -> int:
        """Complex dimension k of the torus."""
        return len(self.pairing) // 2

    def elementary_divisors(self) -> tuple[int, ...]:
        return self._normal[0]

    def symplectic_basis(self) -> IntMatrix:
        """Columns form a Z-basis in which the pairing is ``canonical_form()``."""
        return self._normal[1]

    def canonical_form(self) -> IntMatrix:
        return block_form(self.elementary_divisors())

    def is_principal(self) -> bool:
        return all(d == 1 for d in self.elementary_divisors())

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.pairing]

    @classmethod
    def from_json(cls, data) -> "PolarizedLatticeTorus":
        return cls(_freeze(data))


def principal_torus(k: int) -> PolarizedLatticeTorus:
    return PolarizedLatticeTorus(block_form([1] * k))


def canonically_isomorphic(a: PolarizedLatticeTorus, b: PolarizedLatticeTorus) -> bool:
    return a.canonical_form() == b.canonical_form()


def isomorphism(a: PolarizedLatticeTorus, b: PolarizedLatticeTorus) -> IntMatrix:
    """Unimodular ``Q`` with ``Q^T a.pairing Q = b.pairing``."""
    if not canonically_isomorphic(a, b):
        raise ValueError("polarized lattices of different types are not isomorphic")
    Pa, Pb = a.symplectic_basis(), b.symplectic_basis()
    return _freeze(_matmul(Pa, _int_inverse(Pb)))


def induced_dual_pairing(T: PolarizedLatticeTorus) -> list[list[Fraction]]:
    """The form on ``Hom(Lambda, Z)`` transported from Lambda through
    ``v -> pairing(v, .)``; in dual coordinates it is ``-A^(-1)``."""
    inv = _inverse(T.pairing)
    return [[-v for v in row] for row in inv]


def dual_lattice_index(T: PolarizedLatticeTorus) -> int:
    """Index of Lambda in its dual lattice, ``|det A| = prod(d_i)^2``."""
    return abs(int(_det(T.pairing)))


def dualize(T: PolarizedLatticeTorus) -> PolarizedLatticeTorus:
    """Dual polarized lattice on ``Hom(Lambda, Z)``.

    In the dual symplectic basis the induced form is ``diag(J/d_i)``; each
    block is cleared by its own divisor squared, giving a form of the same
    type.  For a principal polarization this is exactly ``-A^(-1)``.
    """
    divisors = T.elementary_divisors()
    P = T.symplectic_basis()
    # dual basis to the columns of P is given by the columns of P^(-T);
    # in that basis the cleared form is block_form(divisors)
    dual = _matmul(_matmul(P, block_form(divisors)), _transpose(P))
    return PolarizedLatticeTorus(_freeze(dual))


def syz_dual_fiber(T: PolarizedLatticeTorus) -> PolarizedLatticeTorus:
    """Fiber of the SYZ partner: the character torus ``Hom(pi_1(T), U(1))``.

    Its lattice ``Hom(Lambda, Z)`` carries the induced rational form, whose
    symplectic blocks ``J/d_i`` are cleared to ``d_i J``.
    """
    induced = induced_dual_pairing(T)
    denom = lcm(*(v.denominator for row in induced for v in row))
    scaled = [[int(v * denom) for v in row] for row in induced]
    blocks, Q = alternating_normal_form(scaled)
    # block value e = denom / d  ->  cleared value d = denom / e
    cleared = [denom // e for e in blocks]
    Qinv = _int_inverse(Q)
    form = _matmul(_matmul(_transpose(Qinv), block_form(cleared)), Qinv)
    return PolarizedLatticeTorus(_freeze(form))


@dataclass(frozen=True)
class TorsorLabel:
    """A principal homogeneous space ``Pic^degree`` over ``base``."""

    base: PolarizedLatticeTorus
    degree: int
    side: str

    def __post_init__(self):
        if self.side not in (SL, PGL):
            raise ValueError(f"side must be {SL!r} or {PGL!r}, got {self.side!r}")

    @property
    def has_section(self) -> bool:
        # a Lagrangian section exists in degree 0
        return self.degree == 0

    def to_json(self) -> dict:
        return {"side": self.side, "degree": self.degree, "base": self.base.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "TorsorLabel":
        return cls(PolarizedLatticeTorus.from_json(data["base"]), data["degree"], data["side"])


def _flip(side: str) -> str:
    return PGL if side == SL else SL


def pic_torsor(T: TorsorLabel, d: int) -> TorsorLabel:
    """``Pic^d`` of the fiber: a degree-d torsor over the dual on the other side.

    The degree of ``T`` itself plays no role.
    """
    return TorsorLabel(dualize(T.base), d, _flip(T.side))


def mirror_fiber_pair(s: CurveSetup, side_dims_from: SpectralData) -> tuple[TorsorLabel, TorsorLabel]:
    k = prym_dim(side_dims_from)
    if k < 1:
        raise ValueError(f"Prym dimension {k} leaves no torus to model")
    base = principal_torus(k)
    left = TorsorLabel(base, s.c, SL)
    right = TorsorLabel(dualize(base), s.d, PGL)
    assert left.base.dim == right.base.dim
    assert canonically_isomorphic(dualize(left.base), right.base)
    return left, right


def random_unimodular(size: int, rng: random.Random, steps: int = 12) -> list[list[int]]:
    U = [[int(i == j) for j in range(size)] for i in range(size)]
    for _ in range(steps):
        i, j = rng.sample(range(size), 2) if size > 1 else (0, 0)
        if i == j:
            continue
        q = rng.randint(-3, 3)
        for row in U:
            row[i] += q * row[j]
        if rng.random() < 0.3:
            for row in U:
                row[i], row[j] = row[j], row[i]
    return U


def random_divisor_chain(k: int, rng: random.Random, max_factor: int = 3) -> list[int]:
    chain = [rng.randint(1, max_factor)]
    for _ in range(k - 1):
        chain.append(chain[-1] * rng.randint(1, max_factor))
    return chain


def random_polarized_lattice(rng: random.Random, max_rank: int = 8) -> PolarizedLatticeTorus:
    k = rng.randint(1, max_rank // 2)
    N = block_form(random_divisor_chain(k, rng))
    U = random_unimodular(2 * k, rng)
    return PolarizedLatticeTorus(_freeze(_matmul(_matmul(_transpose(U), N), U)))

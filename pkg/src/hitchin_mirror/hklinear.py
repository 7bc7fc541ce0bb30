"""Flat hyperkähler models on H^k with exact rational arithmetic.

Coordinates of each quaternionic block are ordered ``(1, i, j, k)``; the
standard complex structures J1, J2, J3 are left multiplication by i, j, k.
The complex 2-forms are taken cyclically::

    wc1 = w2 + i w3,   wc2 = w3 + i w1,   wc3 = w1 + i w2

and Omega_1 = wc1^k is the J1-holomorphic volume form.
"""

from __future__ import annotations

import random
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


# -- exact linear algebra ------------------------------------------------------

def as_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def identity(size: int) -> Matrix:
    return tuple(
        tuple(Fraction(int(i == j)) for j in range(size)) for i in range(size)
    )


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def _dot(u: Sequence, v: Sequence) -> Fraction:
    # the structure matrices are sparse; skipping zeros matters for Fractions
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(_dot(row, col) for col in Bt) for row in A)


def matvec(A: Matrix, v: Sequence) -> Vector:
    return tuple(_dot(row, v) for row in A)


def bilinear(W: Matrix, u: Sequence, v: Sequence) -> Fraction:
    return _dot(u, matvec(W, v))


def neg(A: Matrix) -> Matrix:
    return tuple(tuple(-a for a in row) for row in A)


def row_reduce(vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """Reduced row echelon form; zero rows are dropped."""
    rows = [list(map(Fraction, v)) for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][col]
        rows[r] = [a / lead for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return rows[:r]


def rank(vectors: Sequence[Sequence]) -> int:
    return len(row_reduce(vectors))


def pfaffian(A):
    """Pfaffian of a skew-symmetric matrix over any exact field.

    Entries need ``+ - * /`` and comparison with 0; the matrix is reduced by
    congruences that fix the Pfaffian, so no expansion is needed.
    """
    size = len(A)
    if size % 2:
        return 0 * A[0][0]
    M = [list(row) for row in A]
    if size == 0:
        return 1
    result = None
    for k in range(0, size - 1, 2):
        j = next((j for j in range(k + 1, size) if M[k][j] != 0), None)
        if j is None:
            return 0 * M[0][0]
        sign = 1
        if j != k + 1:
            M[k + 1], M[j] = M[j], M[k + 1]
            for row in M:
                row[k + 1], row[j] = row[j], row[k + 1]
            sign = -1
        pivot = M[k][k + 1]
        term = pivot if sign == 1 else -pivot
        result = term if result is None else result * term
        for i in range(k + 2, size):
            if M[k][i] != 0:
                f = M[k][i] / pivot
                M[i] = [a - f * b for a, b in zip(M[i], M[k + 1])]
                for row in M:
                    row[i] = row[i] - f * row[k + 1]
    return result


@dataclass(frozen=True)
class GaussianRational:
    """``re + i*im`` with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __add__(self, o):
        o = _gauss(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-_gauss(o))

    def __rsub__(self, o):
        return _gauss(o) - self

    def __mul__(self, o):
        o = _gauss(o)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _gauss(o)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(o.re / norm, -o.im / norm)

    def __eq__(self, o):
        try:
            o = _gauss(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))


def _gauss(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(Fraction(x))
    raise TypeError(f"cannot coerce {x!r} to a Gaussian rational")


I_UNIT = GaussianRational(Fraction(0), Fraction(1))


def complex_form(real: Matrix, imag: Matrix):
    return [
        [GaussianRational(a, b) for a, b in zip(r_row, i_row)]
        for r_row, i_row in zip(real, imag)
    ]


# -- models ---------------------------------------------------------------------

@dataclass(frozen=True)
class HyperkahlerModel:
    k: int
    J1: Matrix
    J2: Matrix
    J3: Matrix
    metric: Matrix

    def __post_init__(self):
        size = 4 * self.k
        for name in ("J1", "J2", "J3", "metric"):
            M = as_matrix(getattr(self, name))
            if len(M) != size or any(len(r) != size for r in M):
                raise ValueError(f"{name} must be {size}x{size}")
            object.__setattr__(self, name, M)
        problems = model_violations(self)
        if problems:
            raise ValueError("not a hyperkähler model: " + "; ".join(problems))

    @property
    def dim(self) -> int:
        return 4 * self.k

    def J(self, i: int) -> Matrix:
        return {1: self.J1, 2: self.J2, 3: self.J3}[i]


def _is_positive_definite(G: Matrix) -> bool:
    # Gaussian elimination without pivoting; all pivots positive iff PD
    M = [list(r) for r in G]
    n = len(M)
    for c in range(n):
        if M[c][c] <= 0:
            return False
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return True


def model_violations(M: HyperkahlerModel) -> list[str]:
    minus_id = neg(identity(M.dim))
    out = []
    if M.metric != transpose(M.metric):
        out.append("metric is not symmetric")
    elif not _is_positive_definite(M.metric):
        out.append("metric is not positive definite")
    Js = {1: M.J1, 2: M.J2, 3: M.J3}
    for i, J in Js.items():
        if matmul(J, J) != minus_id:
            out.append(f"J{i}^2 != -1")
        if matmul(matmul(transpose(J), M.metric), J) != M.metric:
            out.append(f"J{i} is not an isometry")
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        if matmul(Js[a], Js[b]) != Js[c]:
            out.append(f"J{a} J{b} != J{c}")
    return out


# left multiplication by i, j, k on a quaternion a + b i + c j + d k
_LEFT_I = ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0))
_LEFT_J = ((0, 0, -1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, -1, 0, 0))
_LEFT_K = ((0, 0, 0, -1), (0, 0, -1, 0), (0, 1, 0, 0), (1, 0, 0, 0))


def _block_diag(block, copies: int) -> Matrix:
    size = 4 * copies
    rows = [[0] * size for _ in range(size)]
    for b in range(copies):
        for r in range(4):
            for c in range(4):
                rows[4 * b + r][4 * b + c] = block[r][c]
    return as_matrix(rows)


def standard_model(k: int) -> HyperkahlerModel:
    if k < 1:
        raise ValueError("quaternionic dimension must be positive")
    return HyperkahlerModel(
        k,
        _block_diag(_LEFT_I, k),
        _block_diag(_LEFT_J, k),
        _block_diag(_LEFT_K, k),
        identity(4 * k),
    )


@lru_cache(maxsize=64)
def kahler_form(M: HyperkahlerModel, i: int) -> Matrix:
    """Matrix of ``w_i(u, v) = g(J_i u, v)``."""
    if i not in (1, 2, 3):
        raise ValueError("i must be 1, 2 or 3")
    return matmul(transpose(M.J(i)), M.metric)


def holomorphic_symplectic_form(M: HyperkahlerModel, i: int):
    """``wc_i`` as a matrix of Gaussian rationals (cyclic convention)."""
    a, b = {1: (2, 3), 2: (3, 1), 3: (1, 2)}[i]
    return complex_form(kahler_form(M, a), kahler_form(M, b))


@dataclass(frozen=True)
class LinearSubspace:
    basis: tuple[Vector, ...]

    def __post_init__(self):
        basis = tuple(tuple(Fraction(v) for v in vec) for vec in self.basis)
        if not basis:
            raise ValueError("subspace needs at least one basis vector")
        if len({len(v) for v in basis}) != 1:
            raise ValueError("basis vectors have different lengths")
        if rank(basis) != len(basis):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.basis[0])

    def contains(self, v: Sequence) -> bool:
        return rank(self.basis + (tuple(v),)) == self.dim

    def transformed(self, T: Matrix) -> "LinearSubspace":
        return LinearSubspace(tuple(matvec(T, v) for v in self.basis))

    def reduced(self) -> "LinearSubspace":
        """Same subspace with its row-reduced echelon basis."""
        return LinearSubspace(tuple(map(tuple, row_reduce(self.basis))))


def _check_dims(M: HyperkahlerModel, L: LinearSubspace) -> None:
    if L.ambient_dim != M.dim:
        raise ValueError(
            f"subspace lives in dimension {L.ambient_dim}, model has {M.dim}"
        )
    if L.dim != 2 * M.k:
        raise ValueError(f"subspace has dimension {L.dim}, expected {2 * M.k}")


def restrict(W: Matrix, L: LinearSubspace) -> Matrix:
    images = [matvec(W, v) for v in L.basis]
    return tuple(
        tuple(_dot(u, Wv) for Wv in images) for u in L.basis
    )


def _vanishes_on(W: Matrix, L: LinearSubspace) -> bool:
    return all(v == 0 for row in restrict(W, L) for v in row)


def verify_holomorphic_lagrangian(M: HyperkahlerModel, L: LinearSubspace) -> bool:
    """J2-complex subspace on which ``wc2 = w3 + i w1`` vanishes."""
    _check_dims(M, L)
    if not all(L.contains(matvec(M.J2, v)) for v in L.basis):
        return False
    return _vanishes_on(kahler_form(M, 3), L) and _vanishes_on(kahler_form(M, 1), L)


def restricted_volume(M: HyperkahlerModel, L: LinearSubspace) -> GaussianRational:
    """Value of ``Omega_1 = wc1^k`` on the basis of L, i.e. ``k! Pf(wc1|_L)``."""
    _check_dims(M, L)
    R = complex_form(restrict(kahler_form(M, 2), L), restrict(kahler_form(M, 3), L))
    return factorial(M.k) * _gauss(pfaffian(R))


def verify_special_lagrangian(M: HyperkahlerModel, L: LinearSubspace) -> bool:
    _check_dims(M, L)
    if not _vanishes_on(kahler_form(M, 1), L):
        return False
    return restricted_volume(M, L).im == 0


# -- random J2-holomorphic Lagrangians ------------------------------------------

def reference_lagrangian(k: int) -> LinearSubspace:
    """``span{1, j}`` in every quaternionic block."""
    basis = []
    for b in range(k):
        for coord in (0, 2):
            v = [0] * (4 * k)
            v[4 * b + coord] = 1
            basis.append(v)
    return LinearSubspace(tuple(map(tuple, basis)))


def _rand_fraction(rng: random.Random, bound: int = 2) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def j2_transvection(M: HyperkahlerModel, u: Sequence, lam: GaussianRational) -> Matrix:
    """``v -> v + lam * wc2(u, v) * u`` with complex scalars acting through J2.

    Commutes with J2 and preserves w1 and w3.
    """
    W3, W1 = kahler_form(M, 3), kahler_form(M, 1)
    u = tuple(Fraction(a) for a in u)
    J2u = matvec(M.J2, u)
    # row vectors of the functionals v -> w3(u, v), v -> w1(u, v)
    f3 = [sum(u[i] * W3[i][j] for i in range(M.dim)) for j in range(M.dim)]
    f1 = [sum(u[i] * W1[i][j] for i in range(M.dim)) for j in range(M.dim)]
    rows = []
    for r in range(M.dim):
        row = []
        for c in range(M.dim):
            # z(v) = lam * (f3 v + i f1 v); z acts as re*u + im*J2u
            re = lam.re * f3[c] - lam.im * f1[c]
            im = lam.re * f1[c] + lam.im * f3[c]
            row.append(Fraction(int(r == c)) + re * u[r] + im * J2u[r])
        rows.append(tuple(row))
    return tuple(rows)


def random_holomorphic_lagrangian(
    M: HyperkahlerModel, rng: random.Random, steps: int = 3
) -> LinearSubspace:
    L = reference_lagrangian(M.k)
    for _ in range(steps):
        u = [_rand_fraction(rng) for _ in range(M.dim)]
        lam = GaussianRational(_rand_fraction(rng), _rand_fraction(rng))
        L = L.transformed(j2_transvection(M, u, lam)).reduced()
    return L


# -- serialization ----------------------------------------------------------------

def fraction_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def matrix_to_json(A) -> list[list[str]]:
    return [[fraction_to_str(v) for v in row] for row in A]


def matrix_from_json(data) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in data)


def model_to_json(M: HyperkahlerModel) -> dict:
    return {
        "k": M.k,
        "J1": matrix_to_json(M.J1),
        "J2": matrix_to_json(M.J2),
        "J3": matrix_to_json(M.J3),
        "metric": matrix_to_json(M.metric),
    }


def model_from_json(data: dict) -> HyperkahlerModel:
    return HyperkahlerModel(
        data["k"],
        matrix_from_json(data["J1"]),
        matrix_from_json(data["J2"]),
        matrix_from_json(data["J3"]),
        matrix_from_json(data["metric"]),
    )


def subspace_to_json(L: LinearSubspace) -> list[list[str]]:
    return matrix_to_json(L.basis)


def subspace_from_json(data) -> LinearSubspace:
    return LinearSubspace(matrix_from_json(data))

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from hitchin_mirror.hitchin import CurveSetup, SpectralData
from hitchin_mirror.torus import (
    PGL,
    SL,
    DegeneratePairingError,
    PolarizedLatticeTorus,
    TorsorLabel,
    alternating_normal_form,
    block_form,
    canonically_isomorphic,
    dual_lattice_index,
    dualize,
    induced_dual_pairing,
    isomorphism,
    mirror_fiber_pair,
    pic_torsor,
    principal_torus,
    random_polarized_lattice,
    syz_dual_fiber,
)

seeds = st.integers(0, 2**32)


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def transpose(A):
    return [list(c) for c in zip(*A)]


def congruent(P, A):
    return matmul(matmul(transpose(P), A), P)


def sympy_divisors(A):
    # invariant factors of an alternating form come in equal pairs
    factors = [abs(int(f)) for f in invariant_factors(Matrix(A), domain=ZZ)]
    assert factors[0::2] == factors[1::2]
    return tuple(factors[0::2])


def test_block_form():
    assert block_form([1, 2]) == ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 2), (0, 0, -2, 0))


def test_normal_form_examples():
    A = [[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]]
    divisors, P = alternating_normal_form(A)
    assert divisors == (1, 6)
    assert congruent(P, A) == [list(r) for r in block_form(divisors)]
    assert alternating_normal_form([[0, -4], [4, 0]])[0] == (4,)


def test_normal_form_degenerate():
    assert alternating_normal_form([[0, 0], [0, 0]])[0] == (0,)
    A = [[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    assert alternating_normal_form(A)[0] == (2, 0)


@given(seeds)
def test_normal_form_matches_smith(seed):
    T = random_polarized_lattice(random.Random(seed))
    divisors, P = alternating_normal_form(T.pairing)
    assert divisors == sympy_divisors(T.pairing)
    assert abs(Matrix(P).det()) == 1
    assert congruent(P, T.pairing) == [list(r) for r in block_form(divisors)]
    assert all(b % a == 0 for a, b in zip(divisors, divisors[1:]))


def test_validation():
    with pytest.raises(DegeneratePairingError):
        PolarizedLatticeTorus(((0, 0), (0, 0)))
    with pytest.raises(ValueError):
        PolarizedLatticeTorus(((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        PolarizedLatticeTorus(((1, 1), (-1, 0)))
    with pytest.raises(ValueError):
        PolarizedLatticeTorus(((0,),))


def test_principal_self_dual():
    for k in (1, 2, 3):
        T = principal_torus(k)
        assert T.is_principal()
        assert dualize(T) == T
        assert dual_lattice_index(T) == 1
        assert [[Fraction(v) for v in row] for row in T.pairing] == induced_dual_pairing(T)


def test_type_12_index():
    T = PolarizedLatticeTorus(block_form([1, 2]))
    assert dual_lattice_index(T) == 4
    assert not T.is_principal()
    assert dualize(T).elementary_divisors() == (1, 2)


def test_induced_pairing_is_inverse():
    T = PolarizedLatticeTorus(block_form([2, 6]))
    D = induced_dual_pairing(T)
    product = matmul(T.pairing, D)
    assert product == [[-int(i == j) for j in range(4)] for i in range(4)]


@given(seeds)
def test_dualize_preserves_type(seed):
    T = random_polarized_lattice(random.Random(seed))
    D = dualize(T)
    assert D.elementary_divisors() == T.elementary_divisors()
    assert canonically_isomorphic(dualize(D), T)
    assert canonically_isomorphic(syz_dual_fiber(T), D)
    assert dual_lattice_index(D) == dual_lattice_index(T)


@given(seeds)
def test_principal_dual_is_minus_inverse(seed):
    T = random_polarized_lattice(random.Random(seed))
    N = block_form([1] * T.dim)
    P = T.symplectic_basis()
    principal = PolarizedLatticeTorus(tuple(map(tuple, congruent(P, N))))
    assert principal.is_principal()
    assert [[Fraction(v) for v in row] for row in dualize(principal).pairing] == induced_dual_pairing(principal)


@given(seeds, seeds)
def test_isomorphism_matrix(s1, s2):
    a = random_polarized_lattice(random.Random(s1))
    U = [[int(i == j) for j in range(a.rank2k)] for i in range(a.rank2k)]
    rng = random.Random(s2)
    for _ in range(6):
        i, j = rng.sample(range(a.rank2k), 2)
        q = rng.randint(-2, 2)
        for row in U:
            row[i] += q * row[j]
    b = PolarizedLatticeTorus(tuple(map(tuple, congruent(U, a.pairing))))
    Q = isomorphism(a, b)
    assert abs(Matrix(Q).det()) == 1
    assert congruent(Q, a.pairing) == [list(r) for r in b.pairing]


def test_isomorphism_rejects_different_types():
    with pytest.raises(ValueError):
        isomorphism(principal_torus(2), PolarizedLatticeTorus(block_form([1, 2])))


def test_pic_torsor_degree_zero_twice():
    T = TorsorLabel(PolarizedLatticeTorus(block_form([1, 3])), 0, SL)
    once = pic_torsor(T, 0)
    twice = pic_torsor(once, 0)
    assert once.side == PGL and twice.side == SL
    assert once.has_section and twice.has_section
    assert canonically_isomorphic(twice.base, T.base)


@given(seeds, st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_pic_torsor_ignores_input_degree(seed, d0, d1, d):
    base = random_polarized_lattice(random.Random(seed))
    a = pic_torsor(TorsorLabel(base, d0, SL), d)
    b = pic_torsor(TorsorLabel(base, d1, SL), d)
    assert a == b
    assert a.degree == d
    assert a.has_section == (d == 0)


def test_torsor_side_validation():
    with pytest.raises(ValueError):
        TorsorLabel(principal_torus(1), 0, "GL")


def test_mirror_fiber_pair():
    s = CurveSetup(g=2, n=2, m=0, c=1, d=1, coprime_case=True)
    left, right = mirror_fiber_pair(s, s.spectral_data())
    # spectral genus 5, Prym dimension 3
    assert left.base.rank2k == right.base.rank2k == 6
    assert (left.degree, left.side) == (1, SL)
    assert (right.degree, right.side) == (1, PGL)
    assert not left.has_section
    assert canonically_isomorphic(dualize(left.base), right.base)


def test_mirror_fiber_pair_records_degrees():
    s = CurveSetup(g=3, n=3, c=2, d=0)
    left, right = mirror_fiber_pair(s, SpectralData(3, 3, 4))
    assert (left.degree, right.degree) == (2, 0)
    assert right.has_section


def test_json_round_trip():
    T = PolarizedLatticeTorus(block_form([2, 4]))
    assert PolarizedLatticeTorus.from_json(T.to_json()) == T
    L = TorsorLabel(T, 3, PGL)
    assert L.to_json()["side"] == "PGL"
    assert TorsorLabel.from_json(L.to_json()) == L

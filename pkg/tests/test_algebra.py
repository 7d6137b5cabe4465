"""Cayley-Dickson arithmetic: composition, alternativity, serialization."""

from fractions import Fraction

import numpy as np
import pytest

from octavia.algebra import (
    AlgElem,
    associator,
    basis_unit,
    cd_multiply,
    commutator,
    conj,
    find_sedenion_zero_divisors,
    from_text,
    inner,
    invert,
    left_mult_matrix,
    moufang_residuals,
    norm_sq,
    one,
    right_mult_matrix,
    to_text,
    verify_octonion_table,
    zero,
)


def _rand(rng, dim, span=3):
    return AlgElem.from_coords2(
        dim, [rng.randint(-span, span) for _ in range(dim)])


def test_octonion_table_consistent():
    images = verify_octonion_table()
    assert len(images) == 7  # signed images of the imaginary units


@pytest.mark.parametrize("dim", [1, 2, 4, 8])
def test_norm_composition(rng, dim):
    for _ in range(40):
        a, b = _rand(rng, dim), _rand(rng, dim)
        assert norm_sq(cd_multiply(a, b)) == norm_sq(a) * norm_sq(b)


def test_sedenions_do_not_compose():
    p, q, nz, np_, nq = find_sedenion_zero_divisors()
    assert nz == 0 and np_ > 0 and nq > 0


@pytest.mark.parametrize("dim", [4, 8])
def test_alternativity(rng, dim):
    for _ in range(30):
        a, b = _rand(rng, dim), _rand(rng, dim)
        assert associator(a, a, b).is_zero()
        assert associator(a, b, b).is_zero()


def test_quaternions_associate_octonions_do_not(rng):
    for _ in range(30):
        x, y, z = (_rand(rng, 4) for _ in range(3))
        assert associator(x, y, z).is_zero()
    found = False
    for _ in range(30):
        x, y, z = (_rand(rng, 8) for _ in range(3))
        found = found or not associator(x, y, z).is_zero()
    assert found


def test_moufang_identities(rng):
    for _ in range(20):
        a, x, y = (_rand(rng, 8) for _ in range(3))
        assert all(m.is_zero() for m in moufang_residuals(a, x, y))


def test_conjugation_and_inverse(rng):
    for dim in (2, 4, 8):
        for _ in range(20):
            a = _rand(rng, dim)
            assert cd_multiply(a, conj(a)) == norm_sq(a) * one(dim)
            if not a.is_zero():
                assert cd_multiply(a, invert(a)) == one(dim)
            b = _rand(rng, dim)
            # anti-homomorphism of conjugation
            assert conj(cd_multiply(a, b)) == cd_multiply(conj(b), conj(a))


def test_commutator_center(rng):
    for _ in range(20):
        a = _rand(rng, 8)
        assert commutator(a, one(8)).is_zero()


def test_inner_polarizes_norm(rng):
    for _ in range(20):
        a, b = _rand(rng, 4), _rand(rng, 4)
        assert 2 * inner(a, b) == norm_sq(a + b) - norm_sq(a) - norm_sq(b)


def test_mult_matrices_match_multiplication(rng):
    for dim in (4, 8):
        for _ in range(10):
            a, b = _rand(rng, dim), _rand(rng, dim)
            av = np.array([float(c) for c in a.coords])
            bv = np.array([float(c) for c in b.coords])
            ab = np.array([float(c) for c in cd_multiply(a, b).coords])
            assert np.allclose(left_mult_matrix(av, dim) @ bv, ab)
            assert np.allclose(right_mult_matrix(bv, dim) @ av, ab)


def test_text_round_trip(rng):
    for dim in (1, 2, 4, 8, 16):
        a = _rand(rng, dim)
        assert from_text(to_text(a)) == a
    with pytest.raises(ValueError):
        from_text("quat:1,2,3")
    with pytest.raises(ValueError):
        from_text("nope:1")


def test_basis_units_square_to_minus_one():
    for dim in (2, 4, 8):
        for k in range(1, dim):
            e = basis_unit(dim, k)
            assert cd_multiply(e, e) == -one(dim)


def test_half_integer_coordinates_exact():
    a = AlgElem.from_coords2(4, [1, 1, 1, 1])
    assert a.coords == (Fraction(1, 2),) * 4
    assert norm_sq(a) == 1
    assert zero(4).is_zero()

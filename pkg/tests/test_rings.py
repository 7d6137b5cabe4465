"""Integer rings: membership, units, Euclid, coprimality, lattices."""

import numpy as np
import pytest

from octavia.algebra import (
    AlgElem,
    basis_unit,
    cd_multiply,
    conj,
    norm_sq,
    one,
)
from octavia.rings import (
    HURWITZ,
    OCTAVIAN,
    Z,
    ball_elements,
    common_right_divisors,
    commutator_ideal_index,
    enumerate_ball,
    hurwitz_left_content,
    is_left_coprime,
    is_member,
    is_right_coprime,
    is_unit,
    left_euclid,
    nearest,
    nearest_shells,
    octavian_left_content,
    octavian_unit_classes,
    random_element,
    right_euclid,
    ring_by_name,
    shell_counts,
    units,
)


def test_ring_lookup():
    assert ring_by_name("hurwitz") is HURWITZ
    assert ring_by_name("Z") is Z
    assert ring_by_name("octavian") is OCTAVIAN
    with pytest.raises(ValueError):
        ring_by_name("gauss")


def test_unit_counts():
    assert len(units(Z)) == 2
    assert len(units(HURWITZ)) == 24
    assert len(units(OCTAVIAN)) == 240


def test_octavian_unit_partition():
    real, brandt, imag = octavian_unit_classes()
    assert (len(real), len(brandt), len(imag)) == (2, 112, 126)
    for u in real + brandt + imag:
        assert norm_sq(u) == 1 and is_member(OCTAVIAN, u)


def test_ring_closure_under_multiplication(rng):
    from octavia.rings import D4_SIMPLE_ROOTS, E8_SIMPLE_ROOTS
    for ring, basis in ((HURWITZ, D4_SIMPLE_ROOTS), (OCTAVIAN, E8_SIMPLE_ROOTS)):
        for x in basis:
            for y in basis:
                assert is_member(ring, cd_multiply(x, y))
        us = units(ring)
        for _ in range(300):
            x, y = rng.choice(us), rng.choice(us)
            assert is_member(ring, cd_multiply(x, y))


def test_units_closed_and_invertible():
    for ring in (HURWITZ, OCTAVIAN):
        us = set(units(ring))
        for u in list(us)[:40]:
            assert conj(u) in us
            for w in list(us)[:10]:
                assert cd_multiply(u, w) in us


def test_membership_parity():
    assert is_member(HURWITZ, AlgElem.from_coords2(4, [1, 1, 1, 1]))
    assert not is_member(HURWITZ, AlgElem.from_coords2(4, [1, 1, 0, 0]))
    assert is_member(OCTAVIAN, one(8)) and is_member(OCTAVIAN, basis_unit(8, 3))


@pytest.mark.parametrize("ring", [HURWITZ, OCTAVIAN], ids=lambda r: r.name)
def test_euclid_replays(ring, rng):
    for _ in range(150):
        a = random_element(ring, rng)
        c = random_element(ring, rng)
        if c.is_zero():
            continue
        for runner in (right_euclid, left_euclid):
            tr = runner(ring, a, c)
            assert tr.replay_ok()


def test_euclid_gcd_matches_brute_force_hurwitz(rng):
    # |last divisor| = 1 iff no common one-sided factor with |g| > 1
    for _ in range(60):
        a = random_element(HURWITZ, rng, max_coord2=4)
        c = random_element(HURWITZ, rng, max_coord2=4)
        if a.is_zero() or c.is_zero():
            continue
        copr = is_right_coprime(HURWITZ, a, c)
        assert copr == (not common_right_divisors(HURWITZ, a, c, max_norm=9))


def test_nearest_properties(rng):
    for ring in (Z, HURWITZ, OCTAVIAN):
        pts = enumerate_ball(ring, 4 if ring is OCTAVIAN else 9).astype(float) / 2.0
        for _ in range(10):
            x = np.array([rng.uniform(-1, 1) for _ in range(ring.dim)])
            best = nearest(ring, x)
            d0 = min(sum((float(c) - t) ** 2 for c, t in zip(b.coords, x))
                     for b in best)
            # no ball element is closer
            assert ((pts - x) ** 2).sum(axis=1).min() >= d0 - 1e-9


def test_nearest_shells_are_sorted():
    shells = nearest_shells(HURWITZ, [0.3, 0.3, 0.1, 0.1], n_shells=2)
    assert len(shells) == 2 and len(shells[0]) >= 1
    for e in shells[0]:
        assert is_member(HURWITZ, e)


def test_shell_counts_oracles():
    assert shell_counts(HURWITZ, 5) == [24, 24, 96, 24, 144]
    assert shell_counts(OCTAVIAN, 2) == [240, 2160]
    assert shell_counts(Z, 4) == [2, 0, 0, 2]


def test_enumerate_ball_matches_shell_counts():
    pts = enumerate_ball(HURWITZ, 3)
    norms = (pts * pts).sum(axis=1) // 4
    assert [(norms == k).sum() for k in (1, 2, 3)] == [24, 24, 96]


def test_vectorized_left_content_matches_scalar(rng):
    for ring, content in ((HURWITZ, hurwitz_left_content),
                          (OCTAVIAN, octavian_left_content)):
        cs, ds, expect = [], [], []
        for _ in range(60):
            c = random_element(ring, rng, max_coord2=3)
            d = random_element(ring, rng, max_coord2=3)
            if c.is_zero() or d.is_zero():
                continue
            cs.append(c.coords2)
            ds.append(d.coords2)
            expect.append(is_left_coprime(ring, d, c))
        got = content(np.array(cs), np.array(ds)) == 4
        assert list(got) == expect


def test_commutator_ideal_index_is_four():
    assert commutator_ideal_index() == 4


def test_is_unit():
    assert is_unit(HURWITZ, AlgElem.from_coords2(4, [1, 1, 1, -1]))
    assert not is_unit(HURWITZ, AlgElem.from_coords2(4, [2, 2, 0, 0]))


def test_random_element_members(rng):
    for ring in (Z, HURWITZ, OCTAVIAN):
        for _ in range(50):
            assert is_member(ring, random_element(ring, rng))

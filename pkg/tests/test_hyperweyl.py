"""Hyperbolic Weyl group action on 2x2 Hermitian matrices."""

from fractions import Fraction

import pytest

from octavia.algebra import (
    basis_unit,
    cd_multiply,
    conj,
    norm_sq,
    one,
    zero,
)
from octavia.hyperweyl import (
    GroupWord,
    HermMat,
    Inv,
    Rot,
    Trans,
    apply_word,
    build_w_ac,
    build_w_tilde_cd,
    canonical_pair,
    coset_reps,
    delta,
    matrix_of_word,
    minus_delta,
    orbit_target,
    psl0_membership,
    psl_det,
    psl_det_real_crosscheck,
    psl_inverse,
    row_act,
    simple_alpha,
)
from octavia.rings import (
    HURWITZ,
    OCTAVIAN,
    Z,
    D4_SIMPLE_ROOTS,
    E8_SIMPLE_ROOTS,
    is_left_coprime,
    is_right_coprime,
    random_element,
    units,
)

RINGS = [(Z, ()), (HURWITZ, D4_SIMPLE_ROOTS), (OCTAVIAN, E8_SIMPLE_ROOTS)]


def _coprime_pairs(ring, rng, count, side="right"):
    pred = is_right_coprime if side == "right" else is_left_coprime
    out = []
    while len(out) < count:
        a = random_element(ring, rng, max_coord2=4)
        c = random_element(ring, rng, max_coord2=4)
        if a.is_zero() or c.is_zero():
            continue
        if pred(ring, a, c):
            out.append((a, c))
    return out


def test_delta_is_null():
    for dim in (1, 4, 8):
        assert delta(dim).norm_sq() == 0
        assert minus_delta(dim).norm_sq() == 0


@pytest.mark.parametrize("ring,simple", RINGS, ids=lambda x: getattr(x, "name", ""))
def test_overextended_cartan_shape(ring, simple):
    n = len(simple)
    alphas = [simple_alpha(ring, i, simple) for i in range(-1, n + 1)]
    gram = [[2 * a.bilinear(b) for b in alphas] for a in alphas]
    for i, row in enumerate(gram):
        assert row[i] == 2
        for j, v in enumerate(row):
            assert v == gram[j][i]
            if i != j:
                assert v in (0, -1)
    # over-extended node attaches only to the affine node
    assert gram[0][1] == -1
    assert all(v == 0 for v in gram[0][2:])


def test_tokens_preserve_quadratic_form(rng):
    for ring in (HURWITZ, OCTAVIAN):
        us = units(ring)
        for _ in range(30):
            X = HermMat(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)),
                        random_element(ring, rng, max_coord2=3))
            toks = tuple(
                rng.choice([Inv(), Trans(random_element(ring, rng, max_coord2=2)),
                            Rot(rng.choice(us))])
                for _ in range(5))
            Y = apply_word(GroupWord(ring, toks), X)
            assert Y.norm_sq() == X.norm_sq()


def test_translations_and_rotations_fix_delta(rng):
    for ring in (HURWITZ, OCTAVIAN):
        d = delta(ring.dim)
        w = GroupWord(ring, (Trans(random_element(ring, rng)),
                             Rot(rng.choice(units(ring))),
                             Trans(one(ring.dim))))
        assert apply_word(w, d) == d
        assert apply_word(GroupWord(ring, (Inv(),)), d) != d


@pytest.mark.parametrize("ring", [Z, HURWITZ, OCTAVIAN], ids=lambda r: r.name)
def test_orbit_lemma(ring, rng):
    for a, c in _coprime_pairs(ring, rng, 40, side="right"):
        w = build_w_ac(ring, a, c)
        assert apply_word(w, minus_delta(ring.dim)) == orbit_target(a, c)


@pytest.mark.parametrize("ring", [Z, HURWITZ, OCTAVIAN], ids=lambda r: r.name)
def test_row_lemma(ring, rng):
    base = (zero(ring.dim), one(ring.dim))
    for c, d in _coprime_pairs(ring, rng, 40, side="left"):
        wt = build_w_tilde_cd(ring, c, d)
        r1, r2 = row_act(base, wt)
        assert (r1, r2) == (c, d) or (r1, r2) == (-c, -d)


def test_s_pair_squared_row_identity(rng):
    imag = [basis_unit(8, k) for k in range(1, 8)]
    for _ in range(40):
        ei, ej = rng.choice(imag), rng.choice(imag)
        p = cd_multiply(ei, ej)
        if cd_multiply(p, p) not in (one(8), -one(8)):
            continue
        w = GroupWord(OCTAVIAN, (Rot(ei), Rot(ej), Rot(ei), Rot(ej)))
        row = (random_element(OCTAVIAN, rng, max_coord2=3),
               random_element(OCTAVIAN, rng, max_coord2=3))
        r1, r2 = row_act(row, w)
        assert (r1, r2) == row or (r1, r2) == (-row[0], -row[1])


def test_psl_det_and_inverse(rng):
    o, zz = one(4), zero(4)
    for _ in range(20):
        w = GroupWord(HURWITZ, (Trans(random_element(HURWITZ, rng, max_coord2=2)),
                                Inv(), Rot(rng.choice(units(HURWITZ)))))
        S = matrix_of_word(w)
        assert psl_det(S) == 1
        assert psl_det_real_crosscheck(S) == pytest.approx(1.0, abs=1e-6)
        Sinv = psl_inverse(S)
        prod = tuple(
            tuple(cd_multiply(S[i][0], Sinv[0][j]) + cd_multiply(S[i][1], Sinv[1][j])
                  for j in range(2)) for i in range(2))
        assert prod == ((o, zz), (zz, o))


def test_psl0_membership():
    o, zz = one(4), zero(4)
    gens = [
        GroupWord(HURWITZ, (Inv(),)),
        GroupWord(HURWITZ, (Trans(o),)),
        GroupWord(HURWITZ, (Rot(units(HURWITZ)[5]),)),
    ]
    for w in gens:
        assert psl0_membership(matrix_of_word(w))
    # diag(a, b) with ab outside the quaternion subgroup Q is a triality
    # element of PSL(2, H) and must be rejected
    omega = units(HURWITZ)[
        [u.coords for u in units(HURWITZ)].index(
            tuple(Fraction(1, 2) for _ in range(4)))]
    assert not psl0_membership(((-o, zz), (zz, -omega)))


def test_psl0_diag_count_is_96():
    from octavia.rootsys import _qset
    zz = zero(4)
    q = set(_qset())
    cnt = 0
    for a in units(HURWITZ):
        for b in units(HURWITZ):
            m = psl0_membership(((a, zz), (zz, b)))
            assert m == (cd_multiply(a, b) in q)
            cnt += m
    assert cnt // 2 == 96


def test_canonical_pair_invariance(rng):
    # Hurwitz classes are unit orbits: e(c, d) must map to one representative
    for c, d in _coprime_pairs(HURWITZ, rng, 15, side="left"):
        rep = canonical_pair(HURWITZ, c, d)
        for e in list(units(HURWITZ))[:8]:
            assert canonical_pair(
                HURWITZ, cd_multiply(e, c), cd_multiply(e, d)) == rep


def test_coset_reps_counts():
    # mod sign: (0,1), (1,0), (1,1), (1,-1)
    reps_z = coset_reps(Z, 1)
    assert len(reps_z) == 4
    reps_h = coset_reps(HURWITZ, 1)
    assert len(reps_h) == 26
    for c, d in reps_h:
        assert (c, d) == canonical_pair(HURWITZ, c, d)


def test_word_errors():
    with pytest.raises(ValueError):
        build_w_ac(HURWITZ, 2 * one(4), zero(4))
    with pytest.raises(ValueError):
        matrix_of_word(GroupWord(OCTAVIAN, (Inv(),)))

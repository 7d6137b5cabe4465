"""Truncated Eisenstein series, Fourier modes, Bessel and Green kernels."""

import math

import numpy as np
import pytest
import scipy.special as sps

from octavia.autoforms import (
    SeriesParams,
    _periodic_series_value,
    bessel_k,
    critical_line_diagnostic,
    dual_basis,
    eisenstein_truncated,
    fourier_coefficient,
    green_function,
    green_pde_residual,
    lattice_basis,
    poincare_truncated,
    poincare_via_words,
    zeta_partial,
    zeta_relation_check,
)
from octavia.hyperweyl import GroupWord, Inv, Rot, Trans
from octavia.rings import HURWITZ, OCTAVIAN, Z, units
from octavia.uhp import UhpPoint, act_word, laplace_beltrami_numeric


def _z(dim, u0=0.0, v=1.0):
    u = [0.0] * dim
    u[0] = u0
    return UhpPoint(u, v)


def test_series_params_validation():
    with pytest.raises(ValueError):
        SeriesParams(HURWITZ, 5.0, 0, _z(4))
    with pytest.raises(ValueError):
        SeriesParams(HURWITZ, 5.0, 4, _z(8))
    with pytest.warns(UserWarning):
        SeriesParams(HURWITZ, 1.5, 4, _z(4))


def test_eisenstein_exact_invariance():
    for ring, s, radius in ((HURWITZ, 5.0, 4), (OCTAVIAN, 6.0, 2)):
        z = UhpPoint([0.11] * ring.dim, 0.9)
        ref = eisenstein_truncated(SeriesParams(ring, s, radius, z))
        for w in (GroupWord(ring, (Inv(),)),
                  GroupWord(ring, (Rot(units(ring)[3]),)),
                  GroupWord(ring, (Inv(), Rot(units(ring)[7]), Inv()))):
            val = eisenstein_truncated(SeriesParams(ring, s, radius, act_word(w, z)))
            # the truncation set is carried to itself, so the only error is
            # float rounding of the transformed point
            assert abs(val - ref) <= 1e-9 * max(1.0, abs(ref))


def test_eigenrelation_of_truncated_series():
    # Lap E_R ~ s(s - n) E_R away from the truncation boundary
    s, n, radius = 5.0, 4, 16
    z = _z(4, 0.0, 1.0)
    f = lambda p: eisenstein_truncated(SeriesParams(HURWITZ, s, radius, p)).real
    lhs = laplace_beltrami_numeric(f, z, h=1e-3)
    rhs = s * (s - n) * f(z)
    assert abs(lhs - rhs) < 1e-4 * abs(rhs)


def test_zeta_partial_integer_ring():
    # sum_{a != 0} |a|^(-2s) over Z is 2 zeta(2s)
    for s in (2.0, 3.5):
        assert zeta_partial(Z, s, 10000).real == pytest.approx(
            2 * sps.zeta(2 * s), rel=1e-5)


def test_hurwitz_shell_sigma_formula():
    from octavia.autoforms import _sigma_counts
    counts = _sigma_counts(HURWITZ, 20)
    for k in range(1, 21):
        odd = k
        while odd % 2 == 0:
            odd //= 2
        divsum = sum(d for d in range(1, odd + 1) if odd % d == 0)
        assert counts[k - 1] == 24 * divsum


def test_zeta_relation_monotone():
    z = _z(4, 0.0, 1.0)
    res = [zeta_relation_check(HURWITZ, z, 5.0, r) for r in (4, 9, 16)]
    assert res[0] > res[1] > res[2] > 0


def test_poincare_two_evaluation_paths_agree():
    for ring, radius in ((Z, 9), (HURWITZ, 3)):
        z = UhpPoint([0.2] * ring.dim, 1.1)
        p = SeriesParams(ring, ring.dim + 1.0, radius, z)
        a = poincare_truncated(p)
        b = poincare_via_words(p)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


def test_dual_basis_is_dual():
    for ring in (Z, HURWITZ, OCTAVIAN):
        b = lattice_basis(ring)
        assert np.allclose(dual_basis(ring) @ b.T, np.eye(ring.dim))


def test_periodic_truncation_is_periodic():
    u = np.array([0.37, -0.21, 0.05, 0.6])
    shift = np.array([1.0, 1.0, 0.0, 0.0])
    a = _periodic_series_value(HURWITZ, 5.0, 9, u, 0.7)
    b = _periodic_series_value(HURWITZ, 5.0, 9, u + shift, 0.7)
    assert abs(a - b) < 1e-12 * abs(a)


def test_fourier_rejects_non_dual_mu():
    with pytest.raises(ValueError):
        fourier_coefficient([0.3, 0, 0, 0], 1.0, 5.0, 4, HURWITZ)
    with pytest.raises(ValueError):
        fourier_coefficient([1, 0, 0, 0], -1.0, 5.0, 4, HURWITZ)


def test_zero_mode_leading_exponent():
    s = 5.0
    vals = [fourier_coefficient([0.0] * 4, v, s, 9, HURWITZ, grid=2).coefficient
            for v in (6.0, 9.0)]
    slope = math.log(abs(vals[0] / vals[1])) / math.log(6.0 / 9.0)
    assert slope == pytest.approx(s, abs=1e-3)


def test_zero_mode_matches_partial_zeta_term():
    # the c = 0 stratum of the zero mode is exactly zeta_R(s) v^s
    s, radius, v = 5.0, 4, 6.0
    a0 = fourier_coefficient([0.0] * 4, v, s, radius, HURWITZ, grid=2)
    lead = zeta_partial(HURWITZ, s, radius) * v ** s
    assert abs(a0.coefficient - lead) < 1e-3 * abs(lead)


def test_nonzero_mode_bessel_ratio():
    s, n, radius = 5.0, 4, 4
    mu = [1.0, 1.0, 0.0, 0.0]
    v1, v2 = 0.4, 0.6
    a1 = fourier_coefficient(mu, v1, s, radius, HURWITZ, grid=4).coefficient
    a2 = fourier_coefficient(mu, v2, s, radius, HURWITZ, grid=4).coefficient
    x = 2 * math.pi * math.sqrt(2.0)
    pred = (v1 / v2) ** (n / 2) * (bessel_k(s - n / 2, x * v1)
                                   / bessel_k(s - n / 2, x * v2))
    assert abs(a1 / a2 - pred) < 0.02 * abs(pred)


def test_weyl_orbit_symmetry_of_modes():
    # coordinate-signed copies of mu in one lattice Weyl orbit agree exactly
    s, radius, v = 5.0, 4, 0.4
    a = fourier_coefficient([1, 1, 0, 0], v, s, radius, HURWITZ, grid=3)
    c = fourier_coefficient([0, 0, 1, 1], v, s, radius, HURWITZ, grid=3)
    assert abs(a.coefficient - c.coefficient) < 1e-12 * max(
        1.0, abs(a.coefficient))


def test_bessel_k_matches_scipy():
    for nu in (0.0, 0.5, 3.0, 4.0):
        for x in (0.3, 1.0, 7.5):
            assert bessel_k(nu, x).real == pytest.approx(
                float(sps.kv(nu, x)), rel=1e-10)


def test_bessel_k_half_closed_form():
    for x in (0.5, 2.0, 9.0):
        assert bessel_k(0.5, x).real == pytest.approx(
            math.sqrt(math.pi / (2 * x)) * math.exp(-x), rel=1e-12)


def test_bessel_k_imaginary_order_is_real():
    v = bessel_k(2.5j, 1.3)
    assert abs(v.imag) < 1e-12 * max(1.0, abs(v.real))
    # x^2 f'' + x f' - (x^2 + nu^2) f = 0 with nu^2 = -6.25
    x, h = 1.3, 1e-3
    f = lambda t: bessel_k(2.5j, t).real
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    d2 = (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)
    res = x * x * d2 + x * d1 - (x * x - 6.25) * f(x)
    assert abs(res) < 1e-6 * max(1.0, abs(f(x)))


def test_green_function_validation():
    with pytest.raises(ValueError):
        green_function(-1.0, 4.0, 4)
    with pytest.raises(ValueError):
        green_function(1.0, 1.0, 4)


def test_green_function_monotone_in_lam():
    vals = [green_function(lam, 4.0, 4) for lam in (0.01, 0.1, 1.0, 10.0)]
    assert all(a > b > 0 for a, b in zip(vals, vals[1:]))


def test_green_small_lam_slope():
    # G_s(lam) ~ lam^(-(n-1)/2) as lam -> 0 for s above the wall
    lams = (1e-5, 1e-6)
    g = [green_function(lam, 4.0, 4) for lam in lams]
    slope = math.log(g[0] / g[1]) / math.log(lams[0] / lams[1])
    assert slope == pytest.approx(-1.5, abs=0.02)


def test_green_pde_residual():
    # well-separated points: the finite-difference error stays below 1e-6
    z = UhpPoint([2.0, 0.0, 0.0, 0.0], 1.0)
    w = UhpPoint([0.0, 0.0, 0.0, 0.0], 1.0)
    assert abs(green_pde_residual(z, w, 4.0)) < 1e-6


def test_critical_line_diagnostic_flags_diagonal():
    on = critical_line_diagnostic(2.0, 2.0, 4)
    off = critical_line_diagnostic(2.0, 4.0, 4)
    assert on["linear_growth"] and not off["linear_growth"]
    assert on["eigenvalue"] == pytest.approx(4 + 4.0)

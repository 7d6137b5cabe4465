"""Numerical automorphic objects on the generalized upper half plane.

Truncated Eisenstein and Poincare series over the modular pairs (c, d),
the zeta/sigma relation tying them together, Fourier coefficients with
their Bessel profile, the resolvent Green function, and a critical-line
overlap diagnostic.  Everything here is floating point; truncation radii
are exact squared-norm bounds on the lattice shells.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate

from fractions import Fraction

from .algebra import AlgElem, norm_sq, right_mult_matrix
from .rings import (
    D4_SIMPLE_ROOTS,
    E8_SIMPLE_ROOTS,
    HURWITZ,
    OCTAVIAN,
    Ring,
    Z,
    ball_elements,
    enumerate_ball,
    hurwitz_left_content,
    is_left_coprime,
    octavian_left_content,
    shell_counts,
    units,
)
from .hyperweyl import build_w_tilde_cd
from .uhp import UhpPoint, act_word

__all__ = [
    "FourierDatum",
    "SeriesParams",
    "bessel_k",
    "critical_line_diagnostic",
    "dual_basis",
    "eisenstein_truncated",
    "fourier_coefficient",
    "green_function",
    "green_pde_residual",
    "lattice_basis",
    "poincare_truncated",
    "poincare_via_words",
    "zeta_partial",
    "zeta_relation_check",
]


@dataclass(frozen=True)
class SeriesParams:
    """Truncation data for a modular series: max(|c|^2, |d|^2) <= radius."""

    ring: Ring
    s: complex
    radius: int
    z: UhpPoint
    exploratory: bool = field(default=False)

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError("radius must be >= 1")
        if self.z.dim != self.ring.dim:
            raise ValueError("point dimension does not match ring")
        if complex(self.s).real <= self.ring.dim / 2 and not self.exploratory:
            warnings.warn(
                "Re(s) <= n/2: outside the certified convergence region",
                stacklevel=2,
            )


@dataclass(frozen=True)
class FourierDatum:
    """One Fourier coefficient estimate of a truncated series."""

    mu: tuple
    v: float
    coefficient: complex
    error_estimate: float


# -- modular pair bookkeeping ------------------------------------------------


@lru_cache(maxsize=32)
def _ball_data(ring: Ring, radius: int):
    """Ball points (doubled int and float coordinates) with squared norms."""
    pts2 = enumerate_ball(ring, radius)
    pts = pts2.astype(float) / 2.0
    nrm = (pts * pts).sum(axis=1)
    return pts2, pts, nrm


def _coprime_block(ring: Ring, pts2, nrm, rows, cols) -> np.ndarray:
    """Left-coprimality of the pairs (c, d) = (pts[rows_i], pts[cols_j])
    as a (len(rows), len(cols)) boolean block."""
    ci, di = np.meshgrid(rows, cols, indexing="ij")
    ci, di = ci.ravel(), di.ravel()
    out = np.zeros(len(ci), dtype=bool)
    czero = nrm[ci] == 0
    dzero = nrm[di] == 0
    out[czero] = nrm[di[czero]] == 1
    out[dzero] = nrm[ci[dzero]] == 1
    both = ~czero & ~dzero
    if ring is Z:
        g = np.gcd(np.abs(pts2[ci[both], 0]) // 2,
                   np.abs(pts2[di[both], 0]) // 2)
        out[both] = g == 1
    elif ring is HURWITZ:
        out[both] = hurwitz_left_content(pts2[ci[both]], pts2[di[both]]) == 4
    else:
        out[both] = octavian_left_content(pts2[ci[both]], pts2[di[both]]) == 4
    return out.reshape(len(rows), len(cols))


def _series_sum(p: SeriesParams, coprime_only: bool = False) -> complex:
    """Shell-major compensated sum of v^s / |cz+d|^(2s).

    Pairs are processed in fixed c-chunks; each term is bucketed by its
    shell key max(|c|^2, |d|^2) and the per-shell totals are reduced in
    increasing shell order, so the result is deterministic and the
    summation order matches the truncation geometry.
    """
    ring, z, s = p.ring, p.z, complex(p.s)
    pts2, pts, nrm = _ball_data(ring, p.radius)
    u, v = z.u_vector(), z.v
    cu = pts @ right_mult_matrix(u, ring.dim).T  # row i: coords of c_i * u
    shell_id = np.rint(nrm).astype(np.int64)  # squared norms are integers
    n_shell = p.radius + 1
    acc_re = np.zeros(n_shell)
    acc_im = np.zeros(n_shell)
    m = len(pts)
    chunk = max(1, (1 << 21) // m)
    for lo in range(0, m, chunk):
        hi = min(lo + chunk, m)
        rows = np.arange(lo, hi)
        denom = ((cu[rows] ** 2).sum(axis=1)[:, None] + nrm[None, :]
                 + 2.0 * cu[rows] @ pts.T + (nrm[rows] * v * v)[:, None])
        keep = (nrm[rows][:, None] > 0) | (nrm[None, :] > 0)
        if coprime_only:
            keep &= _coprime_block(ring, pts2, nrm, rows, np.arange(m))
        vals = np.where(keep, np.exp(-s * np.log(np.where(keep, denom, 1.0))), 0.0)
        key = np.maximum(shell_id[rows][:, None], shell_id[None, :]).ravel()
        acc_re += np.bincount(key, weights=vals.real.ravel(), minlength=n_shell)
        acc_im += np.bincount(key, weights=vals.imag.ravel(), minlength=n_shell)
    total = complex(math.fsum(acc_re), math.fsum(acc_im))
    return np.exp(s * np.log(v)) * total


def eisenstein_truncated(p: SeriesParams) -> complex:
    """Unrestricted series sum v^s / |cz+d|^(2s) over all nonzero pairs
    with max(|c|^2, |d|^2) <= radius."""
    return _series_sum(p)


def poincare_truncated(p: SeriesParams) -> complex:
    """Restricted series (1/N) sum over left-coprime pairs, N = #units."""
    return _series_sum(p, coprime_only=True) / len(units(p.ring))


@lru_cache(maxsize=8)
def _coset_class_words(ring: Ring, radius: int):
    """One coset word per unit-orbit class {(ec, ed)} of the left-coprime
    pairs inside the truncation ball.

    Associative rings only: the orbit reduction uses |e c z + e d| =
    |cz + d|, and every orbit has exactly N = #units members.
    """
    if ring is OCTAVIAN:
        raise ValueError("octavian pairs do not reduce to unit orbits; "
                         "use the term-level Lemma check instead")
    pts2, _, nrm = _ball_data(ring, radius)
    m = len(pts2)
    shell4 = np.rint(4 * nrm).astype(np.int64)
    # coprime mask over all pairs (chunked rows)
    us = units(ring)
    # unit left-multiplication matrices on doubled coordinates
    from .algebra import left_mult_matrix
    mats = [left_mult_matrix([float(c) for c in u.coords], ring.dim).T
            for u in us]
    reps = set()
    chunk = max(1, (1 << 20) // m)
    for lo in range(0, m, chunk):
        rows = np.arange(lo, min(lo + chunk, m))
        cop = _coprime_block(ring, pts2, nrm, rows, np.arange(m))
        ci, di = np.nonzero(cop)
        if len(ci) == 0:
            continue
        c2 = pts2[rows[ci]].astype(float)
        d2 = pts2[di].astype(float)
        best = None
        for mat in mats:
            cand = np.concatenate([c2 @ mat, d2 @ mat], axis=1)
            cand = np.rint(cand).astype(np.int64)
            if best is None:
                best = cand
            else:
                # lexicographic elementwise minimum over the unit orbit
                diff = cand - best
                first = (diff != 0).argmax(axis=1)
                take = diff[np.arange(len(diff)), first] < 0
                best[take] = cand[take]
        reps.update(map(tuple, best))
    dim = ring.dim
    words = []
    for row in sorted(reps):
        c = AlgElem.from_coords2(dim, row[:dim])
        d = AlgElem.from_coords2(dim, row[dim:])
        words.append(build_w_tilde_cd(ring, c, d))
    return tuple(words)


def poincare_via_words(p: SeriesParams) -> complex:
    """Independent Poincare path: sum I_s(w_cd(z)) over the coset words of
    the left-coprime pairs, one per unit orbit (the orbit members share
    |cz+d|, so the 1/N in the pair sum cancels against the orbit size)."""
    s = complex(p.s)
    terms = [act_word(w, p.z).v for w in _coset_class_words(p.ring, p.radius)]
    vals = np.exp(s * np.log(np.array(terms)))
    return complex(math.fsum(vals.real), math.fsum(vals.imag))


# -- zeta relation -----------------------------------------------------------


@lru_cache(maxsize=16)
def _sigma_counts(ring: Ring, n_max: int) -> tuple:
    """Shell counts sigma(k) = #{a : |a|^2 = k} by divisor sieve.

    Z: 2 per square; Hurwitz: 24 sum of odd divisors; octavians: 240 sum
    of cubed divisors.  Cross-checked against lattice enumeration in the
    test suite.
    """
    counts = np.zeros(n_max + 1, dtype=np.int64)
    if ring is Z:
        for a in range(1, int(math.isqrt(n_max)) + 1):
            counts[a * a] = 2
    elif ring is HURWITZ:
        for d in range(1, n_max + 1, 2):
            counts[d::d] += 24 * d
    elif ring is OCTAVIAN:
        for d in range(1, n_max + 1):
            counts[d::d] += 240 * d ** 3
    else:
        raise ValueError(f"unknown ring {ring}")
    return tuple(int(c) for c in counts[1:])


def zeta_partial(ring: Ring, s: complex, n_max: int) -> complex:
    """Partial sum of sum_{a != 0} (|a|^2)^(-s) = sum_k sigma(k) k^(-s)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    counts = _sigma_counts(ring, n_max)
    s = complex(s)
    ks = np.arange(1, n_max + 1, dtype=float)
    vals = np.array(counts) * np.exp(-s * np.log(ks))
    return complex(math.fsum(vals.real), math.fsum(vals.imag))


def zeta_relation_check(ring: Ring, z: UhpPoint, s: complex, radius: int) -> float:
    """Residual |E_R - zeta_R * P_R| of the factorization of the
    unrestricted series into zeta times the coprime-restricted series."""
    p = SeriesParams(ring, s, radius, z)
    e = eisenstein_truncated(p)
    zeta = zeta_partial(ring, s, radius)
    pval = poincare_truncated(p)
    return abs(e - zeta * pval)


# -- Fourier coefficients ----------------------------------------------------


def lattice_basis(ring: Ring) -> np.ndarray:
    """Rows: a Z-basis of the ring lattice (the simple-root basis)."""
    if ring is Z:
        return np.array([[1.0]])
    roots = D4_SIMPLE_ROOTS if ring is HURWITZ else E8_SIMPLE_ROOTS
    return np.array([[float(c) for c in r.coords] for r in roots])


def dual_basis(ring: Ring) -> np.ndarray:
    """Rows: the dual-lattice basis, B* = G^(-1) B with Gram G = B B^T."""
    b = lattice_basis(ring)
    return np.linalg.solve(b @ b.T, b)


def _in_dual_lattice(ring: Ring, mu: np.ndarray) -> bool:
    b = lattice_basis(ring)
    coeffs = mu @ b.T  # inner products with the primal basis
    return bool(np.all(np.abs(coeffs - np.round(coeffs)) < 1e-9))


def _nearest_lattice2(ring: Ring, targets: np.ndarray) -> np.ndarray:
    """Doubled coordinates of a lattice point near each row (true coords);
    always within the margin allowed by _margin_norm."""
    if ring is Z:
        return (2 * np.rint(targets)).astype(np.int64)
    if ring is OCTAVIAN:
        from .rings import _oct_decode2
        return _oct_decode2(2.0 * targets)
    a2 = 2.0 * np.rint(targets)
    b2 = 2.0 * np.rint(targets - 0.5) + 1.0
    da = ((2.0 * targets - a2) ** 2).sum(axis=1)
    db = ((2.0 * targets - b2) ** 2).sum(axis=1)
    return np.rint(np.where((da <= db)[:, None], a2, b2)).astype(np.int64)


def _margin_norm(radius: int) -> int:
    # d-candidate ball: truncation radius plus covering-distance slack
    return int(math.ceil((math.sqrt(radius) + 1.5) ** 2 + 1e-9))


def _periodic_series_value(ring: Ring, s: complex, radius: int,
                           u: np.ndarray, v: float) -> complex:
    """Series value at u + iv under a translation-covariant truncation:
    c over |c|^2 <= radius and, per c, d over the lattice ball
    |cu + d|^2 <= radius centered at -cu.

    The index set is carried to itself by u -> u + o for ring elements o,
    so the value is exactly periodic on the ring lattice.  The fixed-ball
    truncation of eisenstein_truncated is not periodic, and its
    aperiodicity would swamp the exponentially small Fourier modes.
    """
    s = complex(s)
    _, cpts, cnrm = _ball_data(ring, radius)
    off = enumerate_ball(ring, _margin_norm(radius)).astype(float) / 2.0
    cu = cpts @ right_mult_matrix(u, ring.dim).T
    disp = cu + _nearest_lattice2(ring, -cu).astype(float) / 2.0
    total = 0.0 + 0.0j
    chunk = max(1, (1 << 19) // len(off))
    for lo in range(0, len(cpts), chunk):
        hi = min(lo + chunk, len(cpts))
        cud = disp[lo:hi, None, :] + off[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", cud, cud)
        denom = d2 + cnrm[lo:hi, None] * v * v
        keep = d2 <= radius + 1e-9
        keep &= denom > 1e-12  # drops only the (c, d) = (0, 0) term
        vals = np.where(keep, np.exp(-s * np.log(np.where(keep, denom, 1.0))),
                        0.0)
        total += vals.sum()
    return np.exp(s * np.log(v)) * complex(total)


def fourier_coefficient(mu, v: float, s: complex, radius: int, ring: Ring,
                        grid: int = 8) -> FourierDatum:
    """Midpoint-rule integral of the truncated series at height v against
    e^(-2 pi i (mu, u)) over one fundamental cell of the ring lattice.

    Uses the translation-covariant truncation (see _periodic_series_value)
    so that the integrand is exactly periodic.  The midpoint rule on a
    periodic smooth integrand is spectrally accurate; the error estimate
    compares against the half-resolution grid.
    """
    mu = np.array([float(c) for c in mu.coords]) if isinstance(mu, AlgElem) \
        else np.asarray(mu, dtype=float)
    if not _in_dual_lattice(ring, mu):
        raise ValueError("mu is not in the dual lattice")
    if not v > 0:
        raise ValueError("v must be positive")

    def estimate(m: int) -> complex:
        b = lattice_basis(ring)
        n = ring.dim
        ticks = (np.arange(m) + 0.5) / m
        mesh = np.meshgrid(*([ticks] * n), indexing="ij")
        t = np.stack([ax.ravel() for ax in mesh], axis=1)
        us = t @ b
        vals = np.array([
            _periodic_series_value(ring, s, radius, uu, v) for uu in us
        ])
        phases = np.exp(-2j * np.pi * (us @ mu))
        return complex((vals * phases).mean())

    full = estimate(grid)
    half = estimate(max(grid // 2, 1))
    return FourierDatum(tuple(mu), float(v), full, abs(full - half))


def bessel_k(nu: complex, x: float) -> complex:
    """Modified Bessel K_nu(x) by quadrature of
    int_0^inf exp(-x cosh t) cosh(nu t) dt with adaptive truncation."""
    if x <= 0:
        raise ValueError("x must be positive")
    nu = complex(nu)
    # truncate where the integrand is below 1e-20 relative to the peak
    t_max = 1.0
    for _ in range(60):
        new = math.asinh((50.0 + abs(nu) * t_max + x) / x)
        if abs(new - t_max) < 1e-12:
            break
        t_max = new
    re, _ = integrate.quad(
        lambda t: math.exp(-x * math.cosh(t)) * np.cosh(nu * t).real,
        0.0, t_max, epsabs=1e-300, epsrel=1e-13, limit=400)
    if nu.imag == 0:
        return complex(re)
    im, _ = integrate.quad(
        lambda t: math.exp(-x * math.cosh(t)) * np.cosh(nu * t).imag,
        0.0, t_max, epsabs=1e-300, epsrel=1e-13, limit=400)
    return complex(re, im)


# -- Green function ----------------------------------------------------------


def green_function(lam: float, s: float, n: int) -> float:
    """Resolvent kernel G_s(lam) = int_0^1 [xi(1-xi)]^(s-(n+1)/2)
    (xi+lam)^(-s) dxi, integrated as xi = sin^2(theta)."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    if not s > (n - 1) / 2:
        raise ValueError("need s > (n-1)/2")
    p = s - (n + 1) / 2

    def integrand(theta):
        sc = math.sin(theta) * math.cos(theta)
        xi = math.sin(theta) ** 2
        return 2.0 * sc ** (2 * p + 1) * (xi + lam) ** (-s)

    val, _ = integrate.quad(integrand, 0.0, math.pi / 2,
                            epsabs=1e-300, epsrel=1e-12, limit=400)
    return val


def _point_pair(z: UhpPoint, w: UhpPoint) -> float:
    du = z.u_vector() - w.u_vector()
    return (float(du @ du) + (z.v - w.v) ** 2) / (4.0 * z.v * w.v)


def green_pde_residual(z: UhpPoint, w: UhpPoint, s: float,
                       h: float = 1e-3) -> float:
    """[Lap + s(n-s)] G_s(lam(z, w)) at z != w; zero off the diagonal."""
    from .uhp import laplace_beltrami_numeric

    n = z.dim
    f = lambda p: green_function(_point_pair(p, w), s, n)
    return laplace_beltrami_numeric(f, z, h) + s * (n - s) * f(z)


# -- critical line -----------------------------------------------------------


def critical_line_diagnostic(r: float, r_prime: float, n: int,
                             windows=(2.0, 4.0, 8.0), samples: int = 4001) -> dict:
    """Overlap of the leading critical-line terms v^(n/2+ir) against
    v^(n/2+ir') in the invariant measure over log-v windows.

    Exploratory output: the overlap grows linearly in the window length
    when r' = r and stays bounded otherwise.
    """
    out = {"r": r, "r_prime": r_prime,
           "eigenvalue": n * n / 4.0 + r * r, "overlaps": []}
    for L in windows:
        xi = np.linspace(-L / 2, L / 2, samples)
        vals = np.exp(1j * (r - r_prime) * xi)
        overlap = integrate.trapezoid(vals, xi)
        out["overlaps"].append({"window": float(L),
                                "overlap": complex(overlap),
                                "magnitude": float(abs(overlap))})
    mags = [o["magnitude"] for o in out["overlaps"]]
    out["linear_growth"] = bool(
        mags[-1] > 0.8 * (windows[-1] / windows[0]) * mags[0])
    return out

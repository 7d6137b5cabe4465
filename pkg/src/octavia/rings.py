"""Integer rings inside the division algebras.

Three rings are supported: the rational integers Z (dim 1), the Hurwitz
quaternions H (dim 4: all-integer or all-half-integer coordinates, the
D4 root lattice) and the octavians O (dim 8, the E8 root lattice).

Provides membership tests, unit enumeration, nearest-lattice-point
decoding, sided Euclidean algorithms with backtracking, coprimality,
shell counts and the Hurwitz commutator ideal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import (
    AlgElem,
    basis_unit,
    cd_multiply,
    commutator,
    conj,
    invert,
    norm_sq,
    one,
    zero,
)

__all__ = [
    "BRANDT_TRIPLES",
    "D4_SIMPLE_ROOTS",
    "E8_SIMPLE_ROOTS",
    "EuclTrace",
    "HURWITZ",
    "IMAGINARY_QUADS",
    "OCTAVIAN",
    "Ring",
    "Z",
    "ball_elements",
    "commutator_ideal_basis",
    "commutator_ideal_index",
    "common_right_divisors",
    "enumerate_ball",
    "hurwitz_left_content",
    "is_in_commutator_ideal",
    "is_left_coprime",
    "is_member",
    "is_right_coprime",
    "is_unit",
    "left_euclid",
    "nearest",
    "nearest_shells",
    "octavian_glue_code",
    "octavian_left_content",
    "random_element",
    "right_euclid",
    "ring_by_name",
    "shell_counts",
    "units",
]

# Index triples/quadruples of the octavian unit classification: Brandt
# numbers are (±1 ± e_i ± e_j ± e_k)/2, imaginary units are
# (±e_m ± e_n ± e_p ± e_q)/2 together with ±e_r.
BRANDT_TRIPLES = ((1, 2, 4), (1, 3, 7), (1, 5, 6), (2, 3, 6), (2, 5, 7), (3, 4, 5), (4, 6, 7))
IMAGINARY_QUADS = ((3, 5, 6, 7), (2, 4, 5, 6), (2, 3, 4, 7), (1, 4, 5, 7), (1, 3, 4, 6), (1, 2, 6, 7), (1, 2, 3, 5))


@dataclass(frozen=True)
class Ring:
    """One of the supported integer rings."""

    name: str
    dim: int
    unit_count: int

    def __repr__(self):
        return f"Ring({self.name})"


Z = Ring("Z", 1, 2)
HURWITZ = Ring("hurwitz", 4, 24)
OCTAVIAN = Ring("octavian", 8, 240)

_RINGS = {r.name.lower(): r for r in (Z, HURWITZ, OCTAVIAN)}


def ring_by_name(name: str) -> Ring:
    try:
        return _RINGS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown ring {name!r}; expected one of {sorted(_RINGS)}")


def _elem(dim, coords2):
    return AlgElem.from_coords2(dim, coords2)


# Simple roots.  D4 in quaternion coordinates (1, e1, e5, e6); E8 in
# octonion coordinates, chosen so the E7 roots are imaginary, the extra
# 112 roots are Brandt numbers and the highest root is 1.
D4_SIMPLE_ROOTS = (
    _elem(4, (0, 2, 0, 0)),       # e1
    _elem(4, (1, -1, -1, -1)),    # (1 - e1 - e5 - e6)/2
    _elem(4, (0, 0, 2, 0)),       # e5
    _elem(4, (0, 0, 0, 2)),       # e6
)

E8_SIMPLE_ROOTS = (
    _elem(8, (1, -1, 0, 0, 0, -1, -1, 0)),
    _elem(8, (0, 2, 0, 0, 0, 0, 0, 0)),
    _elem(8, (0, -1, -1, 0, 0, 0, 1, 1)),
    _elem(8, (0, 0, 2, 0, 0, 0, 0, 0)),
    _elem(8, (0, 0, -1, -1, -1, 0, 0, -1)),
    _elem(8, (0, 0, 0, 2, 0, 0, 0, 0)),
    _elem(8, (0, 0, 0, -1, 0, 1, -1, 1)),
    _elem(8, (0, 0, 0, 0, 2, 0, 0, 0)),
)


# -- units -----------------------------------------------------------------


@lru_cache(maxsize=None)
def units(ring: Ring) -> tuple[AlgElem, ...]:
    """All invertible ring elements, in a fixed deterministic order."""
    if ring is Z:
        out = [one(1), -one(1)]
    elif ring is HURWITZ:
        out = []
        for k in range(4):
            for s in (1, -1):
                out.append(s * basis_unit(4, k))
        for signs in itertools.product((1, -1), repeat=4):
            out.append(_elem(4, signs))
    elif ring is OCTAVIAN:
        real, brandt, imag = octavian_unit_classes()
        out = list(real) + list(brandt) + list(imag)
    else:
        raise ValueError(f"unknown ring {ring}")
    assert len(out) == ring.unit_count
    return tuple(sorted(out, key=lambda u: u.coords))


@lru_cache(maxsize=None)
def octavian_unit_classes() -> tuple[tuple[AlgElem, ...], tuple[AlgElem, ...], tuple[AlgElem, ...]]:
    """The 240 unit octavians partitioned into (2 real, 112 Brandt, 126 imaginary)."""
    real = (one(8), -one(8))
    brandt = []
    for (i, j, k) in BRANDT_TRIPLES:
        for s0, s1, s2, s3 in itertools.product((1, -1), repeat=4):
            c2 = [0] * 8
            c2[0], c2[i], c2[j], c2[k] = s0, s1, s2, s3
            brandt.append(_elem(8, c2))
    imag = []
    for (m, n, p, q) in IMAGINARY_QUADS:
        for s0, s1, s2, s3 in itertools.product((1, -1), repeat=4):
            c2 = [0] * 8
            c2[m], c2[n], c2[p], c2[q] = s0, s1, s2, s3
            imag.append(_elem(8, c2))
    for r in range(1, 8):
        for s in (1, -1):
            imag.append(s * basis_unit(8, r))
    assert (len(real), len(brandt), len(imag)) == (2, 112, 126)
    return real, tuple(brandt), tuple(imag)


def is_unit(ring: Ring, x: AlgElem) -> bool:
    return is_member(ring, x) and norm_sq(x) == 1


# -- membership ------------------------------------------------------------


@lru_cache(maxsize=None)
def _e8_basis_inverse() -> tuple[tuple[Fraction, ...], ...]:
    """Inverse of the column matrix of the E8 simple roots (exact)."""
    n = 8
    cols = [r.coords for r in E8_SIMPLE_ROOTS]
    # augmented Gauss-Jordan over Fractions
    mat = [[cols[j][i] for j in range(n)] + [Fraction(int(i == k)) for k in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        pv = mat[col][col]
        mat[col] = [x / pv for x in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    return tuple(tuple(row[n:]) for row in mat)


def octavian_root_coordinates(x: AlgElem) -> tuple[Fraction, ...]:
    """Exact coordinates of x in the E8 simple-root basis."""
    binv = _e8_basis_inverse()
    return tuple(sum(binv[i][j] * x.coords[j] for j in range(8)) for i in range(8))


def is_member(ring: Ring, x: AlgElem) -> bool:
    """True iff x lies on the ring lattice."""
    if x.dim != ring.dim:
        raise ValueError(f"dimension mismatch: element dim {x.dim}, ring dim {ring.dim}")
    if ring is Z:
        return x.coords[0].denominator == 1
    if ring is HURWITZ:
        doubled = [2 * c for c in x.coords]
        if any(d.denominator != 1 for d in doubled):
            return False
        parities = {d.numerator % 2 for d in doubled}
        return len(parities) == 1
    if ring is OCTAVIAN:
        return all(c.denominator == 1 for c in octavian_root_coordinates(x))
    raise ValueError(f"unknown ring {ring}")


# -- the octavian glue code (construction-A frame) -------------------------


@lru_cache(maxsize=None)
def octavian_glue_code() -> tuple[tuple[int, ...], ...]:
    """Binary [8,4] code C with 2*O = {x in Z^8 : x mod 2 in C}.

    Derived from the doubled coordinates of the 240 units; asserted to be
    linear of size 16 (it is the extended Hamming code).
    """
    words = set()
    for cls in octavian_unit_classes():
        for u in cls:
            words.add(tuple(c % 2 for c in u.coords2))
    # close under XOR and check linearity
    closed = set(words)
    closed.add((0,) * 8)
    while True:
        new = {tuple((a[i] ^ b[i]) for i in range(8)) for a in closed for b in closed} - closed
        if not new:
            break
        closed |= new
    assert closed == words | {(0,) * 8} or words <= closed
    assert len(closed) == 16, f"glue code has size {len(closed)}"
    assert all(sum(w) in (0, 4, 8) for w in closed)
    return tuple(sorted(closed))


# -- nearest-point decoding ------------------------------------------------


def _nearest_residues(y: Fraction, parity: int) -> list[int]:
    """Nearest integer(s) to y congruent to parity mod 2 (1 or 2 of them)."""
    # candidates around y with the right parity
    base = (y - parity) / 2
    fl = base.numerator // base.denominator
    cands = sorted({parity + 2 * (fl + k) for k in (-1, 0, 1, 2)}, key=lambda v: (abs(y - v), v))
    best = abs(y - cands[0])
    return [v for v in cands if abs(y - v) == best]


def nearest(ring: Ring, x) -> list[AlgElem]:
    """Complete set of ring elements at minimal distance from x.

    x may be an AlgElem or a coordinate sequence (exact rationals
    recommended when ties matter).  Deterministic ordering by coords.
    """
    return nearest_shells(ring, x, n_shells=1)[0]


def nearest_shells(ring: Ring, x, n_shells: int = 1) -> list[list[AlgElem]]:
    """The n_shells closest-distance groups of ring elements to x."""
    coords = x.coords if isinstance(x, AlgElem) else tuple(Fraction(c) for c in x)
    if len(coords) != ring.dim:
        raise ValueError("coordinate count does not match ring dimension")
    y2 = [2 * c for c in coords]  # work in doubled coordinates
    if ring is Z:
        cosets = [(0,)]
    elif ring is HURWITZ:
        cosets = [(0, 0, 0, 0), (1, 1, 1, 1)]
    elif ring is OCTAVIAN:
        cosets = octavian_glue_code()
    else:
        raise ValueError(f"unknown ring {ring}")

    if n_shells == 1:
        # fast path: the minimum over each codeword coset is the sum of
        # per-coordinate minima, so only tied codewords need the product
        # expansion of their per-coordinate tie lists
        rows = []
        for cw in cosets:
            per_coord = [_nearest_residues(y2[i], cw[i]) for i in range(ring.dim)]
            d2 = sum((y2[i] - pc[0]) ** 2 for i, pc in enumerate(per_coord))
            rows.append((d2, per_coord))
        d_min = min(d2 for d2, _ in rows)
        pts = set()
        for d2, per_coord in rows:
            if d2 == d_min:
                pts.update(itertools.product(*per_coord))
        return [[AlgElem(ring.dim, tuple(Fraction(v, 2) for v in c2))
                 for c2 in sorted(pts)]]

    candidates = {}
    for cw in cosets:
        per_coord = [_nearest_residues(y2[i], cw[i]) for i in range(ring.dim)]
        if n_shells > 1:
            # widen to the two nearest residues per coordinate
            per_coord = [
                sorted({parity_vals[0], parity_vals[0] + 2, parity_vals[0] - 2} | set(parity_vals),
                       key=lambda v, i=i: (abs(y2[i] - v), v))[:3]
                for i, parity_vals in enumerate(per_coord)
            ]
        for combo in itertools.product(*per_coord):
            d2 = sum((y2[i] - combo[i]) ** 2 for i in range(ring.dim))
            candidates.setdefault(tuple(combo), d2)
    by_dist = {}
    for c2, d2 in candidates.items():
        by_dist.setdefault(d2, []).append(c2)
    shells = []
    for d2 in sorted(by_dist)[:n_shells]:
        pts = sorted(by_dist[d2])
        shells.append([AlgElem(ring.dim, tuple(Fraction(v, 2) for v in c2)) for c2 in pts])
    return shells


# -- Euclidean algorithms --------------------------------------------------


@dataclass(frozen=True)
class EuclTrace:
    """Record of a sided Euclidean run.

    Right (on inputs a, c):   a = q1 c - r1, c = q2 r1 - r2, ...,
                              r_{n-1} = q_{n+1} r_n.
    Left (on inputs d, c):    d = c q1 - r1, c = r1 q2 - r2, ...,
                              r_{n-1} = r_n q_{n+1}.
    """

    side: str
    ring: Ring
    inputs: tuple[AlgElem, AlgElem]
    quotients: tuple[AlgElem, ...]
    remainders: tuple[AlgElem, ...]

    def replay_ok(self) -> bool:
        """Exactly re-substitute the division chain."""
        first, c = self.inputs
        seq = [first, c] + list(self.remainders) + [zero(self.ring.dim)]
        if len(self.quotients) != len(self.remainders) + 1:
            return False
        for i, q in enumerate(self.quotients):
            prev, cur, nxt = seq[i], seq[i + 1], seq[i + 2]
            if self.side == "right":
                if prev != cd_multiply(q, cur) - nxt:
                    return False
            else:
                if prev != cd_multiply(cur, q) - nxt:
                    return False
        norms = [norm_sq(r) for r in self.remainders]
        return all(a > b for a, b in zip(norms, norms[1:])) and all(n > 0 for n in norms)

    @property
    def last_divisor(self) -> AlgElem:
        """The last nonzero remainder (or c itself when division is exact)."""
        return self.remainders[-1] if self.remainders else self.inputs[1]


class EuclidStallError(RuntimeError):
    """No strictly norm-decreasing quotient exists even after backtracking."""


def _euclid(ring: Ring, first: AlgElem, c: AlgElem, side: str, max_shells: int = 2) -> EuclTrace:
    if c.is_zero():
        raise ZeroDivisionError("Euclidean algorithm requires a nonzero divisor")
    for x in (first, c):
        if not is_member(ring, x):
            raise ValueError(f"{x} is not a member of {ring}")

    def step(prev, cur):
        """Return (quotients, remainders) finishing the chain from (prev, cur)."""
        cinv = invert(cur)
        target = cd_multiply(prev, cinv) if side == "right" else cd_multiply(cinv, prev)

        def shell_iter():
            # the covering radius argument makes shell 1 always succeed for
            # these rings, so wider shells are computed only on a stall
            yield nearest_shells(ring, target, n_shells=1)[0]
            if max_shells > 1:
                yield from nearest_shells(ring, target, n_shells=max_shells)[1:]

        for shell in shell_iter():
            for q in shell:
                r = (cd_multiply(q, cur) if side == "right" else cd_multiply(cur, q)) - prev
                if r.is_zero():
                    return [q], []
                if norm_sq(r) < norm_sq(cur):
                    try:
                        qs, rs = step(cur, r)
                    except EuclidStallError:
                        continue
                    return [q] + qs, [r] + rs
        raise EuclidStallError(
            f"no strictly decreasing step for ({prev}, {cur}) in {ring} ({side})"
        )

    qs, rs = step(first, c)
    return EuclTrace(side, ring, (first, c), tuple(qs), tuple(rs))


def right_euclid(ring: Ring, a: AlgElem, c: AlgElem) -> EuclTrace:
    """Right Euclidean algorithm a = q1 c - r1, ... (strictly decreasing norms)."""
    return _euclid(ring, a, c, "right")


def left_euclid(ring: Ring, d: AlgElem, c: AlgElem) -> EuclTrace:
    """Left Euclidean algorithm d = c q1 - r1, ... (strictly decreasing norms)."""
    return _euclid(ring, d, c, "left")


def _coprime(ring: Ring, x: AlgElem, y: AlgElem, side: str) -> bool:
    if x.is_zero() and y.is_zero():
        raise ValueError("coprimality is undefined for (0, 0)")
    if y.is_zero():
        return norm_sq(x) == 1
    if norm_sq(y) == 1:
        return True
    trace = _euclid(ring, x, y, side)
    return norm_sq(trace.last_divisor) == 1


def is_right_coprime(ring: Ring, a: AlgElem, c: AlgElem) -> bool:
    """True iff the right Euclidean run on (a, c) ends in a unit."""
    return _coprime(ring, a, c, "right")


def is_left_coprime(ring: Ring, d: AlgElem, c: AlgElem) -> bool:
    """True iff the left Euclidean run on (d, c) ends in a unit."""
    return _coprime(ring, d, c, "left")


def common_right_divisors(ring: Ring, a: AlgElem, c: AlgElem, max_norm: int = 4) -> list[AlgElem]:
    """Diagnostic scan for common right divisors g (|g|^2 > 1) of a and c.

    Checks a = x g, c = y g with ring members x, y; exhaustive over the
    bounded-norm ball.  Never used to decide coprimality (for octavians
    the notions genuinely differ).
    """
    out = []
    for g in ball_elements(ring, max_norm):
        n = norm_sq(g)
        if n <= 1:
            continue
        gi = invert(g)
        if is_member(ring, cd_multiply(a, gi)) and is_member(ring, cd_multiply(c, gi)):
            out.append(g)
    return sorted(out, key=lambda u: u.coords)


# -- lattice enumeration and shell counts ----------------------------------


@lru_cache(maxsize=None)
def enumerate_ball(ring: Ring, max_norm: int) -> np.ndarray:
    """Doubled coordinates of all ring elements with |x|^2 <= max_norm.

    Returns an int array sorted shell-major (then lexicographically); the
    zero element is included.
    """
    if max_norm < 0:
        raise ValueError("max_norm must be nonnegative")
    if ring is Z:
        m = int(np.floor(np.sqrt(max_norm)))
        pts = 2 * np.arange(-m, m + 1, dtype=np.int64).reshape(-1, 1)
    else:
        if ring is HURWITZ:
            cosets = [(0, 0, 0, 0), (1, 1, 1, 1)]
        else:
            cosets = octavian_glue_code()
        dim = ring.dim
        bound = 4 * max_norm  # doubled-coordinate norm bound
        rmax = int(np.floor(np.sqrt(bound)))
        blocks = []
        for cw in cosets:
            axes = []
            for p in cw:
                vals = np.arange(-rmax + ((-rmax) % 2 != p), rmax + 1, 2, dtype=np.int64)
                if len(vals) == 0 or vals[0] % 2 != p % 2:
                    vals = np.arange(-rmax - 1, rmax + 2, dtype=np.int64)
                    vals = vals[(vals % 2 == p % 2) & (np.abs(vals) <= rmax)]
                axes.append(vals)
            grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)
            n4 = (grid * grid).sum(axis=1)
            blocks.append(grid[n4 <= bound])
        pts = np.concatenate(blocks, axis=0)
    n4 = (pts * pts).sum(axis=1)
    order = np.lexsort(tuple(pts[:, k] for k in reversed(range(pts.shape[1]))) + (n4,))
    return pts[order]


def ball_elements(ring: Ring, max_norm: int, include_zero: bool = False) -> list[AlgElem]:
    """Ring elements with 0 < |x|^2 <= max_norm (optionally including 0)."""
    pts = enumerate_ball(ring, max_norm)
    out = [AlgElem(ring.dim, tuple(Fraction(int(v), 2) for v in row)) for row in pts]
    if not include_zero:
        out = [x for x in out if not x.is_zero()]
    return out


def shell_counts(ring: Ring, n_max: int) -> list[int]:
    """sigma(k) = #{a in ring : |a|^2 = k} for k = 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    pts = enumerate_ball(ring, n_max)
    n4 = (pts * pts).sum(axis=1)
    return [int(np.count_nonzero(n4 == 4 * k)) for k in range(1, n_max + 1)]


# -- Hurwitz commutator ideal ----------------------------------------------


def _hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix (nonzero rows)."""
    mat = [list(r) for r in rows if any(r)]
    ncols = len(rows[0])
    out = []
    col = 0
    while mat and col < ncols:
        pivot_rows = [r for r in mat if r[col] != 0]
        if not pivot_rows:
            col += 1
            continue
        while True:
            pivot_rows.sort(key=lambda r: abs(r[col]))
            p = pivot_rows[0]
            done = True
            for r in pivot_rows[1:]:
                f = r[col] // p[col]
                for k in range(ncols):
                    r[k] -= f * p[k]
                if r[col] != 0:
                    done = False
            pivot_rows = [p] + [r for r in pivot_rows[1:] if r[col] != 0]
            if done and len(pivot_rows) == 1:
                break
        if p[col] < 0:
            p = [-x for x in p]
        out.append(p)
        mat = [r for r in mat if r is not p and any(r)]
        for r in mat:
            if r[col] != 0:
                f = r[col] // p[col]
                for k in range(ncols):
                    r[k] -= f * p[k]
        mat = [r for r in mat if any(r)]
        col += 1
    return out


@lru_cache(maxsize=None)
def commutator_ideal_basis() -> tuple[AlgElem, ...]:
    """Lattice basis of the two-sided Hurwitz commutator ideal H[H,H]H."""
    gens = [one(4), basis_unit(4, 1), basis_unit(4, 2), D4_SIMPLE_ROOTS[1]]
    rows = []
    for h1, h2, h3, h4 in itertools.product(gens, repeat=4):
        v = cd_multiply(cd_multiply(h1, commutator(h2, h3)), h4)
        rows.append(list(v.coords2))
    basis_rows = _hnf_rows(rows)
    assert len(basis_rows) == 4, "commutator ideal is not full rank"
    return tuple(AlgElem.from_coords2(4, r) for r in basis_rows)


def _det_int(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    assert det.denominator == 1
    return det.numerator


def commutator_ideal_index() -> int:
    """Index of the commutator ideal as a sublattice of the Hurwitz ring."""
    cbasis = [list(b.coords2) for b in commutator_ideal_basis()]
    hbasis = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [1, -1, -1, -1]]
    return abs(_det_int(cbasis)) // abs(_det_int(hbasis))


def is_in_commutator_ideal(x: AlgElem) -> bool:
    """Exact membership of a Hurwitz element in the commutator ideal."""
    if x.dim != 4:
        raise ValueError("commutator ideal is defined for Hurwitz quaternions only")
    basis = commutator_ideal_basis()
    mat = [[Fraction(b.coords[i]) for b in basis] for i in range(4)]
    rhs = [Fraction(c) for c in x.coords]
    # exact solve
    n = 4
    aug = [mat[i] + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return False
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return all(aug[i][n].denominator == 1 for i in range(n))


# -- vectorized Hurwitz helpers (used by the series code) ------------------


def _quat_mult2(x, y):
    """Quaternion product in doubled integer coordinates: (x/2)(y/2)*2."""
    w1, i1, j1, k1 = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    w2, i2, j2, k2 = y[..., 0], y[..., 1], y[..., 2], y[..., 3]
    w = w1 * w2 - i1 * i2 - j1 * j2 - k1 * k2
    i = w1 * i2 + i1 * w2 + j1 * k2 - k1 * j2
    j = w1 * j2 + j1 * w2 + k1 * i2 - i1 * k2
    k = w1 * k2 + k1 * w2 + i1 * j2 - j1 * i2
    out = np.stack([w, i, j, k], axis=-1)
    assert not np.any(out % 2), "product left the half-integer lattice"
    return out // 2


def hurwitz_left_content(c2: np.ndarray, d2: np.ndarray) -> np.ndarray:
    """Squared norm (x4) of the left gcd of each Hurwitz pair (c, d).

    Inputs are (M, 4) doubled-coordinate integer arrays; a pair is left
    coprime iff the returned value is 4.  Fully vectorized left Euclid
    with nearest-point quotients (strict decrease is guaranteed since the
    D4 covering radius is below 1).
    """
    prev = d2.astype(np.int64).copy()
    cur = c2.astype(np.int64).copy()
    out = np.zeros(len(cur), dtype=np.int64)
    active = (cur * cur).sum(axis=1) > 0
    out[~active] = (prev[~active] ** 2).sum(axis=1)
    while np.any(active):
        p, c = prev[active], cur[active]
        cn4 = (c * c).sum(axis=1)
        cbar = c * np.array([1, -1, -1, -1])
        num = _quat_mult2(cbar, p).astype(np.float64)  # doubled coords of cbar*d
        t = 2.0 * num / cn4[:, None]  # true coordinates of c^-1 d
        qi = np.rint(t)
        qh = np.floor(t) + 0.5
        di = ((t - qi) ** 2).sum(axis=1)
        dh = ((t - qh) ** 2).sum(axis=1)
        q = np.where((di <= dh)[:, None], qi, qh)
        q2 = np.rint(2 * q).astype(np.int64)
        r = _quat_mult2(c, q2) - p  # d = c q - r
        rn4 = (r * r).sum(axis=1)
        assert np.all(rn4 < cn4), "Hurwitz Euclid failed to decrease"
        done = rn4 == 0
        idx = np.flatnonzero(active)
        out[idx[done]] = cn4[done]
        prev[idx[~done]] = c[~done]
        cur[idx[~done]] = r[~done]
        active[idx[done]] = False
    return out


def _oct_mult2(a2: np.ndarray, b2: np.ndarray) -> np.ndarray:
    """Row-wise octonion product on doubled integer coordinates."""
    from .algebra import _structure_float

    S = np.rint(_structure_float(8)).astype(np.int64)
    out = np.einsum("ni,nj,ijk->nk", a2.astype(np.int64), b2.astype(np.int64), S)
    assert not np.any(out % 2), "product left the half-integer lattice"
    return out // 2


def _oct_decode2(t2: np.ndarray) -> np.ndarray:
    """Doubled coordinates of a nearest octavian to each row of t2 (doubled
    float coordinates).  Ties break on glue-code order; any minimizer keeps
    the Euclid norms strictly decreasing."""
    best_d = None
    best = None
    for cw in octavian_glue_code():
        cwa = np.array(cw, dtype=np.float64)
        cand = cwa + 2.0 * np.rint((t2 - cwa) / 2.0)
        d = ((t2 - cand) ** 2).sum(axis=1)
        if best is None:
            best, best_d = cand, d
        else:
            take = d < best_d - 1e-9
            best = np.where(take[:, None], cand, best)
            best_d = np.where(take, d, best_d)
    return np.rint(best).astype(np.int64)


def octavian_left_content(c2: np.ndarray, d2: np.ndarray) -> np.ndarray:
    """Squared norm (x4) of the last nonzero remainder of the left Euclid
    run on each octavian pair (d, c); 4 means left coprime.

    Vectorized float decoding; the E8 covering radius (squared 1/2) keeps
    every step strictly decreasing, so the unit-or-not outcome matches the
    exact per-element algorithm.
    """
    prev = d2.astype(np.int64).copy()
    cur = c2.astype(np.int64).copy()
    out = np.zeros(len(cur), dtype=np.int64)
    active = (cur * cur).sum(axis=1) > 0
    out[~active] = (prev[~active] ** 2).sum(axis=1)
    while np.any(active):
        p, c = prev[active], cur[active]
        cn4 = (c * c).sum(axis=1)
        cbar = c * np.array([1, -1, -1, -1, -1, -1, -1, -1])
        num = _oct_mult2(cbar, p)  # doubled coords of conj(c) d
        t2 = 4.0 * num / cn4[:, None]  # doubled coords of c^-1 d
        q2 = _oct_decode2(t2)
        r = _oct_mult2(c, q2) - p  # d = c q - r
        rn4 = (r * r).sum(axis=1)
        assert np.all(rn4 < cn4), "octavian Euclid failed to decrease"
        done = rn4 == 0
        idx = np.flatnonzero(active)
        out[idx[done]] = cn4[done]
        prev[idx[~done]] = c[~done]
        cur[idx[~done]] = r[~done]
        active[idx[done]] = False
    return out


# -- misc ------------------------------------------------------------------


def random_element(ring: Ring, rng, max_coord2: int = 6) -> AlgElem:
    """Uniform random ring element with doubled coordinates in a box."""
    if ring is Z:
        return AlgElem.from_coords2(1, [2 * rng.randint(-max_coord2, max_coord2)])
    if ring is HURWITZ:
        par = rng.randint(0, 1)
        c2 = [2 * rng.randint(-max_coord2 // 2, max_coord2 // 2) + par for _ in range(4)]
        return AlgElem.from_coords2(4, c2)
    if ring is OCTAVIAN:
        code = octavian_glue_code()
        cw = code[rng.randrange(len(code))]
        c2 = [2 * rng.randint(-max_coord2 // 2, max_coord2 // 2) + p for p in cw]
        return AlgElem.from_coords2(8, c2)
    raise ValueError(f"unknown ring {ring}")

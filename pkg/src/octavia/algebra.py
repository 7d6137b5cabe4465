"""Exact Cayley-Dickson arithmetic for the normed division algebras.

Supports the real numbers (dim 1), complex numbers (dim 2), quaternions
(dim 4), octonions (dim 8) and, for the zero-divisor demonstration only,
the 16-dimensional sedenions.  Coordinates are stored as exact rationals
(``fractions.Fraction``), so every half-integer lattice element is
represented without rounding error.

The octonion basis follows the convention in which ``(e1, e5, e6)`` is a
quaternionic triple and the full multiplication table is generated from
the single seed relation ``e1 * e5 = e6`` by the index rules

    e_i e_j = e_k  =>  e_{i+1} e_{j+1} = e_{k+1}  and  e_{2i} e_{2j} = e_{2k}

with indices counted mod 7.  The quaternions sit inside the octonions as
the span of ``(1, e1, e5, e6)``; a dim-4 element with coordinates
``(x0, x1, x2, x3)`` means ``x0 + x1*e1 + x2*e5 + x3*e6``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "AlgElem",
    "associator",
    "basis_unit",
    "cd_multiply",
    "commutator",
    "conj",
    "find_sedenion_zero_divisors",
    "from_text",
    "inner",
    "invert",
    "left_mult_matrix",
    "moufang_residuals",
    "multiplication_triples",
    "norm_sq",
    "one",
    "real_part",
    "right_mult_matrix",
    "structure_table",
    "to_text",
    "verify_octonion_table",
    "zero",
]

VALID_DIMS = (1, 2, 4, 8, 16)

# Quaternion coordinate slots inside the octonion basis: dim-4 coordinate k
# corresponds to octonion unit QUAT_EMBED[k].
QUAT_EMBED = (0, 1, 5, 6)

_RING_TAGS = {"r": 1, "c": 2, "quat": 4, "oct": 8, "sed": 16}
_DIM_TAGS = {d: t for t, d in _RING_TAGS.items()}


def _seed_triples() -> list[tuple[int, int, int]]:
    """Generate the octonion multiplication triples from e1*e5 = e6.

    Closure of {(1,5,6)} under the two index rules, indices mod 7 on 1..7.
    Each resulting triple (i,j,k) means e_i e_j = e_k cyclically.
    """
    def shift(t):
        return tuple(((x - 1 + 1) % 7) + 1 for x in t)

    def double(t):
        return tuple(((2 * x - 1) % 7) + 1 for x in t)

    triples = {(1, 5, 6)}
    while True:
        new = set()
        for t in triples:
            for u in (shift(t), double(t)):
                # normalize cyclic rotation: smallest index first
                m = u.index(min(u))
                u = u[m:] + u[:m]
                if u not in triples:
                    new.add(u)
        if not new:
            return sorted(triples)
        triples |= new


def multiplication_triples() -> list[tuple[int, int, int]]:
    """The seven quaternionic index triples of the octonion table."""
    return _seed_triples()


def _octonion_table() -> tuple[np.ndarray, np.ndarray]:
    idx = np.zeros((8, 8), dtype=np.int64)
    sgn = np.zeros((8, 8), dtype=np.int64)
    for k in range(8):
        idx[0, k] = idx[k, 0] = k
        sgn[0, k] = sgn[k, 0] = 1
    for k in range(1, 8):
        idx[k, k] = 0
        sgn[k, k] = -1
    for (a, b, c) in _seed_triples():
        for (i, j, k) in ((a, b, c), (b, c, a), (c, a, b)):
            idx[i, j] = k
            sgn[i, j] = 1
            idx[j, i] = k
            sgn[j, i] = -1
    return idx, sgn


def _restrict_table(idx, sgn, embed):
    d = len(embed)
    pos = {u: k for k, u in enumerate(embed)}
    ridx = np.zeros((d, d), dtype=np.int64)
    rsgn = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            ridx[i, j] = pos[int(idx[embed[i], embed[j]])]
            rsgn[i, j] = sgn[embed[i], embed[j]]
    return ridx, rsgn


def _double_table(idx, sgn):
    """Cayley-Dickson double of a basis table: (a+ib)(c+id) = (ac - d b~) + i(cb + a~ d).

    Basis m < d is (e_m, 0); basis m >= d is (0, e_{m-d}).  Conjugation
    negates every basis unit except index 0.
    """
    d = idx.shape[0]
    didx = np.zeros((2 * d, 2 * d), dtype=np.int64)
    dsgn = np.zeros((2 * d, 2 * d), dtype=np.int64)

    def cj(k):  # sign of conjugating basis unit k
        return 1 if k == 0 else -1

    for p in range(2 * d):
        for q in range(2 * d):
            if p < d and q < d:
                didx[p, q] = idx[p, q]
                dsgn[p, q] = sgn[p, q]
            elif p < d and q >= d:
                # (e_p, 0)(0, e_q') = (0, conj(e_p) e_q')
                qq = q - d
                didx[p, q] = idx[p, qq] + d
                dsgn[p, q] = cj(p) * sgn[p, qq]
            elif p >= d and q < d:
                # (0, e_p')(e_q, 0) = (0, e_q e_p')
                pp = p - d
                didx[p, q] = idx[q, pp] + d
                dsgn[p, q] = sgn[q, pp]
            else:
                # (0, e_p')(0, e_q') = (-e_q' conj(e_p'), 0)
                pp, qq = p - d, q - d
                didx[p, q] = idx[qq, pp]
                dsgn[p, q] = -cj(pp) * sgn[qq, pp]
    return didx, dsgn


@lru_cache(maxsize=None)
def structure_table(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Basis multiplication table for the algebra of the given dimension.

    Returns (idx, sgn) with e_i e_j = sgn[i,j] * e_{idx[i,j]}.
    """
    if dim not in VALID_DIMS:
        raise ValueError(f"unsupported algebra dimension {dim}")
    if dim == 8:
        return _octonion_table()
    if dim == 16:
        return _double_table(*_octonion_table())
    oidx, osgn = _octonion_table()
    embed = QUAT_EMBED[: {1: 1, 2: 2, 4: 4}[dim]]
    return _restrict_table(oidx, osgn, embed)


@lru_cache(maxsize=None)
def _pure_cd_table(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Multiplication table built by plain recursive doubling from the reals."""
    idx = np.zeros((1, 1), dtype=np.int64)
    sgn = np.ones((1, 1), dtype=np.int64)
    while idx.shape[0] < dim:
        idx, sgn = _double_table(idx, sgn)
    return idx, sgn


@lru_cache(maxsize=None)
def verify_octonion_table() -> tuple[int, ...]:
    """One-time consistency check of the octonion basis labeling.

    Finds a signed permutation identifying the recursively doubled table
    with the rule-generated one, i.e. an algebra isomorphism that maps
    basis units to signed basis units.  Returns the signed images of the
    recursive units (sign * new_index); raises if none exists.
    """
    pidx, psgn = _pure_cd_table(8)
    cidx, csgn = structure_table(8)

    def mul_c(u, v):  # signed-unit product in the canonical table
        su, iu = (1, u) if u > 0 else (-1, -u)
        sv, iv = (1, v) if v > 0 else (-1, -v)
        s = su * sv * int(csgn[iu, iv])
        k = int(cidx[iu, iv])
        if k == 0:
            raise ValueError("product fell onto the real unit")
        return s * k

    units = [s * k for k in range(1, 8) for s in (1, -1)]
    for t1, t2, t4 in itertools.product(units, repeat=3):
        img = [None] * 8
        img[1], img[2], img[4] = t1, t2, t4
        # extend over the generated units via the recursive table relations
        try:
            for i, j in ((1, 2), (1, 4), (2, 4), (1, int(pidx[2, 4]))):
                k, s = int(pidx[i, j]), int(psgn[i, j])
                if img[i] is None or img[j] is None or k == 0:
                    img = None
                    break
                img[k] = s * mul_c(img[i], img[j])
        except ValueError:
            continue
        if img is None or any(v is None for v in img[1:]):
            continue
        if len({abs(v) for v in img[1:]}) != 7:
            continue
        ok = all(
            mul_c(img[i], img[j]) == int(psgn[i, j]) * img[int(pidx[i, j])]
            for i in range(1, 8)
            for j in range(1, 8)
            if i != j
        )
        if ok:
            return tuple(img[1:])
    raise AssertionError("no signed permutation matches the two octonion tables")


@dataclass(frozen=True)
class AlgElem:
    """An exact element of R, C, H, O (or the sedenions).

    coords[k] is the rational coefficient of basis unit k.
    """

    dim: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if self.dim not in VALID_DIMS:
            raise ValueError(f"unsupported algebra dimension {self.dim}")
        if len(self.coords) != self.dim:
            raise ValueError("coordinate count does not match dimension")

    # -- constructors ------------------------------------------------------

    @classmethod
    def make(cls, dim: int, coords: Iterable) -> "AlgElem":
        return cls(dim, tuple(Fraction(c) for c in coords))

    @classmethod
    def from_coords2(cls, dim: int, coords2: Iterable[int]) -> "AlgElem":
        """Build from doubled-integer coordinates (2x each coefficient)."""
        return cls(dim, tuple(Fraction(int(c), 2) for c in coords2))

    # -- views -------------------------------------------------------------

    @property
    def coords2(self) -> tuple[int, ...]:
        """Doubled coordinates; raises if the element is not half-integral."""
        out = []
        for c in self.coords:
            c2 = 2 * c
            if c2.denominator != 1:
                raise ValueError(f"{self} is not half-integral")
            out.append(c2.numerator)
        return tuple(out)

    def floats(self) -> np.ndarray:
        return np.array([float(c) for c in self.coords])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "AlgElem"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check(other)
        return AlgElem(self.dim, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return AlgElem(self.dim, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgElem(self.dim, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            return cd_multiply(self, other)
        f = Fraction(other)
        return AlgElem(self.dim, tuple(a * f for a in self.coords))

    def __rmul__(self, other):
        f = Fraction(other)
        return AlgElem(self.dim, tuple(f * a for a in self.coords))

    def conj(self):
        return conj(self)

    def norm_sq(self):
        return norm_sq(self)

    def inverse(self):
        return invert(self)

    def __repr__(self):
        return f"AlgElem({self.dim}, {[str(c) for c in self.coords]})"


def zero(dim: int) -> AlgElem:
    return AlgElem(dim, (Fraction(0),) * dim)


def one(dim: int) -> AlgElem:
    return basis_unit(dim, 0)


def basis_unit(dim: int, k: int) -> AlgElem:
    if not 0 <= k < dim:
        raise ValueError(f"basis index {k} out of range for dim {dim}")
    coords = [Fraction(0)] * dim
    coords[k] = Fraction(1)
    return AlgElem(dim, tuple(coords))


def cd_multiply(a: AlgElem, b: AlgElem) -> AlgElem:
    """Exact product in the algebra shared by a and b."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    idx, sgn = structure_table(a.dim)
    out = [Fraction(0)] * a.dim
    for i, ai in enumerate(a.coords):
        if ai == 0:
            continue
        row_i, row_s = idx[i], sgn[i]
        for j, bj in enumerate(b.coords):
            if bj == 0:
                continue
            out[int(row_i[j])] += int(row_s[j]) * ai * bj
    return AlgElem(a.dim, tuple(out))


def conj(a: AlgElem) -> AlgElem:
    return AlgElem(a.dim, (a.coords[0],) + tuple(-c for c in a.coords[1:]))


def real_part(a: AlgElem) -> Fraction:
    return a.coords[0]


def inner(a: AlgElem, b: AlgElem) -> Fraction:
    """Positive-definite inner product (a,b) = (a b~ + b a~)/2."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return sum((x * y for x, y in zip(a.coords, b.coords)), Fraction(0))


def norm_sq(a: AlgElem) -> Fraction:
    return inner(a, a)


def invert(a: AlgElem) -> AlgElem:
    """Exact inverse a~ / |a|^2; defined for dim <= 8 only."""
    if a.dim == 16:
        raise ValueError("sedenions have no division")
    n = norm_sq(a)
    if n == 0:
        raise ZeroDivisionError("cannot invert zero")
    c = conj(a)
    return AlgElem(a.dim, tuple(x / n for x in c.coords))


def commutator(a: AlgElem, b: AlgElem) -> AlgElem:
    return cd_multiply(a, b) - cd_multiply(b, a)


def associator(a: AlgElem, b: AlgElem, c: AlgElem) -> AlgElem:
    """{a,b,c} = a(bc) - (ab)c; identically zero for dim <= 4."""
    return cd_multiply(a, cd_multiply(b, c)) - cd_multiply(cd_multiply(a, b), c)


def moufang_residuals(a: AlgElem, x: AlgElem, y: AlgElem) -> tuple[AlgElem, AlgElem, AlgElem]:
    """The three Moufang identity defects; all zero for alternative algebras."""
    m1 = cd_multiply(cd_multiply(a, x), cd_multiply(y, a)) - cd_multiply(
        cd_multiply(a, cd_multiply(x, y)), a
    )
    aya = cd_multiply(cd_multiply(a, y), a)
    m2 = cd_multiply(cd_multiply(cd_multiply(x, a), y), a) - cd_multiply(x, aya)
    axa = cd_multiply(cd_multiply(a, x), a)
    m3 = cd_multiply(a, cd_multiply(x, cd_multiply(a, y))) - cd_multiply(axa, y)
    return m1, m2, m3


def find_sedenion_zero_divisors() -> tuple[AlgElem, AlgElem, Fraction, Fraction, Fraction]:
    """Search sums of two basis units for a sedenion zero-divisor pair.

    Returns (p, q, |pq|^2, |p|^2, |q|^2) with p*q = 0, p != 0, q != 0;
    the norms witness the failure of |pq| = |p||q|.
    """
    for p, q in _basis_sum_pairs(16):
        prod = cd_multiply(p, q)
        if prod.is_zero():
            return p, q, norm_sq(prod), norm_sq(p), norm_sq(q)
    raise AssertionError("no sedenion zero divisors found in search space")


def _basis_sum_pairs(dim: int):
    """All pairs (e_a + s*e_b, e_c + t*e_d) of distinct-unit sums."""
    units = range(1, dim)
    for a, b in itertools.combinations(units, 2):
        for s in (1, -1):
            p = basis_unit(dim, a) + s * basis_unit(dim, b)
            for c, d in itertools.combinations(units, 2):
                for t in (1, -1):
                    q = basis_unit(dim, c) + t * basis_unit(dim, d)
                    yield p, q


def basis_sum_zero_divisor_search(dim: int):
    """Exhaustive zero-divisor scan over basis-unit sums; [] for dim <= 8."""
    hits = []
    for p, q in _basis_sum_pairs(dim):
        if cd_multiply(p, q).is_zero():
            hits.append((p, q))
    return hits


# -- numeric helpers for vectorized lattice work ---------------------------


@lru_cache(maxsize=None)
def _structure_float(dim: int) -> np.ndarray:
    """Structure constants S with (ab)_k = sum_ij S[i,j,k] a_i b_j."""
    idx, sgn = structure_table(dim)
    S = np.zeros((dim, dim, dim))
    for i in range(dim):
        for j in range(dim):
            S[i, j, int(idx[i, j])] = float(sgn[i, j])
    return S


def left_mult_matrix(a: Sequence[float], dim: int) -> np.ndarray:
    """Matrix L with L @ x = coords(a * x) for float coordinate vectors."""
    S = _structure_float(dim)
    return np.einsum("i,ijk->kj", np.asarray(a, dtype=float), S)


def right_mult_matrix(b: Sequence[float], dim: int) -> np.ndarray:
    """Matrix R with R @ x = coords(x * b) for float coordinate vectors."""
    S = _structure_float(dim)
    return np.einsum("j,ijk->ki", np.asarray(b, dtype=float), S)


# -- text format -----------------------------------------------------------


def to_text(a: AlgElem) -> str:
    """Serialize as '<ring>:<c0>,<c1>,...' with doubled-integer coordinates."""
    tag = _DIM_TAGS[a.dim]
    return tag + ":" + ",".join(str(c) for c in a.coords2)


def from_text(s: str) -> AlgElem:
    try:
        tag, rest = s.split(":", 1)
        dim = _RING_TAGS[tag.strip().lower()]
        coords2 = [int(x) for x in rest.split(",")]
    except (ValueError, KeyError) as exc:
        raise ValueError(f"cannot parse element text {s!r}") from exc
    if len(coords2) != dim:
        raise ValueError(f"expected {dim} coordinates in {s!r}")
    return AlgElem.from_coords2(dim, coords2)

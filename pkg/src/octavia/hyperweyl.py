"""Hyperbolic Weyl group machinery on the Jordan algebra H2(A).

Hermitian 2x2 matrices X = [[x+, x], [conj(x), x-]] carry the Lorentzian
norm -x+x- + |x|^2.  Group elements are words in the even generator
tokens Inv (s_-1), Trans(q) (t_q) and Rot(eps) (u_eps), each realized by
a closed entrywise formula so octonion non-associativity never enters.
Coset words w_{a,c} and w~_{c,d} are built from Euclidean traces; for
associative rings the words also carry exact 2x2 matrix forms with the
quaternionic determinant and inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import (
    AlgElem,
    cd_multiply,
    commutator,
    conj,
    inner,
    left_mult_matrix,
    norm_sq,
    one,
    real_part,
    right_mult_matrix,
    zero,
)
from .rings import (
    EuclTrace,
    HURWITZ,
    OCTAVIAN,
    Ring,
    Z,
    ball_elements,
    is_in_commutator_ideal,
    is_left_coprime,
    is_member,
    is_right_coprime,
    is_unit,
    left_euclid,
    right_euclid,
    units,
)

__all__ = [
    "GroupWord",
    "HermMat",
    "Inv",
    "Rot",
    "Trans",
    "apply_token",
    "apply_word",
    "build_w_ac",
    "build_w_tilde_cd",
    "canonical_pair",
    "coset_reps",
    "delta",
    "matrix_of_word",
    "minus_delta",
    "orbit_target",
    "psl0_membership",
    "psl_det",
    "psl_inverse",
    "row_act",
    "simple_alpha",
]


# -- Hermitian matrices ----------------------------------------------------


@dataclass(frozen=True)
class HermMat:
    """X = [[x_plus, x], [conj(x), x_minus]] with rational diagonal."""

    x_plus: Fraction
    x_minus: Fraction
    x: AlgElem

    @classmethod
    def make(cls, x_plus, x_minus, x: AlgElem) -> "HermMat":
        return cls(Fraction(x_plus), Fraction(x_minus), x)

    @property
    def dim(self) -> int:
        return self.x.dim

    def norm_sq(self) -> Fraction:
        return -self.x_plus * self.x_minus + norm_sq(self.x)

    def bilinear(self, other: "HermMat") -> Fraction:
        s = HermMat(self.x_plus + other.x_plus, self.x_minus + other.x_minus,
                    self.x + other.x)
        return (s.norm_sq() - self.norm_sq() - other.norm_sq()) / 2

    def __add__(self, other):
        return HermMat(self.x_plus + other.x_plus, self.x_minus + other.x_minus,
                       self.x + other.x)

    def __neg__(self):
        return HermMat(-self.x_plus, -self.x_minus, -self.x)


def delta(dim: int) -> HermMat:
    """The affine null root direction: delta = [[-1, 0], [0, 0]]."""
    return HermMat(Fraction(-1), Fraction(0), zero(dim))


def minus_delta(dim: int) -> HermMat:
    return -delta(dim)


def simple_alpha(ring: Ring, index, simple_roots) -> HermMat:
    """Simple roots of the over-extended algebra in H2(A).

    index -1 is the over-extended root, 0 the affine root, i >= 1 the
    finite simple roots embedded in the off-diagonal.
    """
    dim = ring.dim
    if index == -1:
        return HermMat(Fraction(1), Fraction(-1), zero(dim))
    if index == 0:
        return HermMat(Fraction(-1), Fraction(0), -one(dim))
    return HermMat(Fraction(0), Fraction(0), simple_roots[index - 1])


# -- generator tokens ------------------------------------------------------


@dataclass(frozen=True)
class Inv:
    """s_-1: swap the diagonal, x -> -conj(x)."""


@dataclass(frozen=True)
class Trans:
    """t_y: translation by the ring element y."""

    y: AlgElem


@dataclass(frozen=True)
class Rot:
    """u_eps: x -> eps x eps, diagonal fixed (unit eps)."""

    eps: AlgElem


def apply_token(tok, X: HermMat) -> HermMat:
    if isinstance(tok, Inv):
        return HermMat(X.x_minus, X.x_plus, -conj(X.x))
    if isinstance(tok, Trans):
        y = tok.y
        xp = X.x_plus + 2 * inner(X.x, y) + X.x_minus * norm_sq(y)
        return HermMat(xp, X.x_minus, X.x + y * X.x_minus)
    if isinstance(tok, Rot):
        e = tok.eps
        return HermMat(X.x_plus, X.x_minus, cd_multiply(e, cd_multiply(X.x, e)))
    raise TypeError(f"unknown token {tok!r}")


@dataclass(frozen=True)
class GroupWord:
    """Word of generator tokens in matrix-product order (leftmost acts last)."""

    ring: Ring
    tokens: tuple

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if self.ring is not other.ring:
            raise ValueError("ring mismatch")
        return GroupWord(self.ring, self.tokens + other.tokens)

    def inverse(self) -> "GroupWord":
        inv_toks = []
        for tok in reversed(self.tokens):
            if isinstance(tok, Inv):
                # s_-1 has order 2 on H2
                inv_toks.append(Inv())
            elif isinstance(tok, Trans):
                inv_toks.append(Trans(-tok.y))
            else:
                inv_toks.append(Rot(conj(tok.eps)))
        return GroupWord(self.ring, tuple(inv_toks))


def apply_word(w: GroupWord, X: HermMat) -> HermMat:
    if X.dim != w.ring.dim:
        raise ValueError("ring mismatch between word and matrix")
    for tok in reversed(w.tokens):
        X = apply_token(tok, X)
    return X


def row_act(row, w: GroupWord):
    """Right action of the word on a row (a1, a2), token by token.

    Rows are only defined up to a global sign; callers compare with
    row_equal semantics (r ~ -r).
    """
    a1, a2 = row
    for tok in w.tokens:
        if isinstance(tok, Inv):
            a1, a2 = a2, -a1
        elif isinstance(tok, Trans):
            a1, a2 = a1, cd_multiply(a1, tok.y) + a2
        else:
            a1, a2 = cd_multiply(a1, tok.eps), cd_multiply(a2, conj(tok.eps))
    return a1, a2


# -- coset words -----------------------------------------------------------


def _canonical_last_unit(trace_unit: AlgElem) -> AlgElem:
    return trace_unit


def build_w_ac(ring: Ring, a: AlgElem, c: AlgElem) -> GroupWord:
    """w_{a,c} = t_{q1} o s_-1 o ... o t_{q_{n+1}} o s_-1 o u_{r_n} from the
    right Euclidean algorithm; satisfies
    w_{a,c}(-delta) = [[|a|^2, a conj(c)], [c conj(a), |c|^2]]."""
    if c.is_zero():
        if not is_unit(ring, a):
            raise ValueError("(a, 0) requires a to be a unit")
        return GroupWord(ring, (Rot(a),))
    if not is_right_coprime(ring, a, c):
        raise ValueError("(a, c) must be right coprime")
    tr = right_euclid(ring, a, c)
    toks = []
    for q in tr.quotients:
        toks.append(Trans(q))
        toks.append(Inv())
    toks.append(Rot(tr.last_divisor))
    return GroupWord(ring, tuple(toks))


def build_w_tilde_cd(ring: Ring, c: AlgElem, d: AlgElem) -> GroupWord:
    """w~_{c,d} = u_{conj(r_n)} o s_-1 o t_{q_{n+1}} o ... o s_-1 o t_{q1}
    from the left algorithm on (d, c); satisfies (0,1).w~_{c,d} = (c, d)
    up to sign."""
    if c.is_zero():
        if not is_unit(ring, d):
            raise ValueError("(0, d) requires d to be a unit")
        return GroupWord(ring, (Rot(conj(d)),))
    if not is_left_coprime(ring, d, c):
        raise ValueError("(d, c) must be left coprime")
    tr = left_euclid(ring, d, c)
    toks = [Rot(conj(tr.last_divisor)), Inv()]
    for q in reversed(tr.quotients):
        toks.append(Trans(q))
        toks.append(Inv())
    toks.pop()  # the leading s_-1 belongs between rot and the last t_q only
    return GroupWord(ring, tuple(toks))


def orbit_target(a: AlgElem, c: AlgElem) -> HermMat:
    """[[|a|^2, a conj(c)], [c conj(a), |c|^2]], the image of -delta."""
    return HermMat(norm_sq(a), norm_sq(c), cd_multiply(a, conj(c)))


# -- 2x2 matrix forms (associative rings only) -----------------------------


def matrix_of_word(w: GroupWord):
    """Exact 2x2 matrix of the word; associative rings only."""
    if w.ring.dim > 4:
        raise ValueError("matrix forms exist only for associative rings")
    dim = w.ring.dim
    o, zz = one(dim), zero(dim)
    mat = ((o, zz), (zz, o))

    def mul(m1, m2):
        return tuple(
            tuple(
                cd_multiply(m1[i][0], m2[0][j]) + cd_multiply(m1[i][1], m2[1][j])
                for j in range(2)
            )
            for i in range(2)
        )

    for tok in w.tokens:
        if isinstance(tok, Inv):
            t = ((zz, -o), (o, zz))
        elif isinstance(tok, Trans):
            t = ((o, tok.y), (zz, o))
        else:
            t = ((tok.eps, zz), (zz, conj(tok.eps)))
        mat = mul(mat, t)
    return mat


def psl_det(S) -> Fraction:
    """det(S S-dagger) = |ad - bc|^2 - 2 Re(a [conj(c), d] conj(b))."""
    (a, b), (c, d) = S
    main = norm_sq(cd_multiply(a, d) - cd_multiply(b, c))
    corr = real_part(
        cd_multiply(cd_multiply(a, commutator(conj(c), d)), conj(b))
    )
    return main - 2 * corr


def psl_det_real_crosscheck(S) -> float:
    """Determinant of the 8x8 (or 2dim x 2dim) real matrix of the left
    action (x1, x2) -> (a x1 + b x2, c x1 + d x2); equals psl_det^2."""
    (a, b), (c, d) = S
    dim = a.dim
    def lm(x):
        return left_mult_matrix([float(t) for t in x.coords], dim)

    blocks = [[lm(a), lm(b)], [lm(c), lm(d)]]
    m = np.block(blocks)
    return float(np.linalg.det(m))


def psl_inverse(S):
    """Closed-form inverse, exact when det(S S-dagger) = 1."""
    (a, b), (c, d) = S
    if psl_det(S) == 0:
        raise ZeroDivisionError("singular matrix")
    m = cd_multiply
    inv = (
        (
            conj(a) * norm_sq(d) - m(m(conj(c), d), conj(b)),
            conj(c) * norm_sq(b) - m(m(conj(a), b), conj(d)),
        ),
        (
            conj(b) * norm_sq(c) - m(m(conj(d), c), conj(a)),
            conj(d) * norm_sq(a) - m(m(conj(b), a), conj(c)),
        ),
    )
    det = psl_det(S)
    if det != 1:
        inv = tuple(tuple(x * (1 / det) for x in row) for row in inv)
    return inv


def psl0_membership(S) -> bool:
    """S in PSL0(2, H): unit determinant and ad - bc = 1 mod the
    commutator ideal."""
    (a, b), (c, d) = S
    for x in (a, b, c, d):
        if x.dim != 4 or not is_member(HURWITZ, x):
            raise ValueError("entries must be Hurwitz quaternions")
    if psl_det(S) != 1:
        return False
    return is_in_commutator_ideal(cd_multiply(a, d) - cd_multiply(b, c) - one(4))


# -- coset representatives -------------------------------------------------


@lru_cache(maxsize=None)
def _least_unit(ring: Ring) -> AlgElem:
    return min(units(ring), key=lambda u: u.coords)


def _hurwitz_canonical(ring, c, d):
    best = None
    for e in units(ring):
        cand = (cd_multiply(e, c), cd_multiply(e, d))
        key = (cand[0].coords, cand[1].coords)
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]


def _octavian_canonical(ring, c, d, trace=None):
    """Replay the left Euclid trace with the trailing unit set canonically."""
    u0 = _least_unit(ring)
    if c.is_zero():
        return (zero(ring.dim), u0)
    if d.is_zero():
        return (u0, zero(ring.dim))
    tr = trace if trace is not None else left_euclid(ring, d, c)
    qs = list(tr.quotients)
    n = len(tr.remainders)
    if n == 0:
        # d = c q1 exactly, c a unit; normalize c to the canonical unit:
        # (c, d) = (c, c q1) ~ (u0, u0 q1)
        return (u0, cd_multiply(u0, qs[0]))
    # chain: d = c q1 - r1, c = r1 q2 - r2, ..., r_{n-1} = r_n q_{n+1}
    # rebuild bottom-up with r_n replaced by the canonical unit
    s_next = zero(ring.dim)      # plays r_{n+1} = 0
    s_cur = u0                   # new r_n
    for q in reversed(qs[1:]):
        s_cur, s_next = cd_multiply(s_cur, q) - s_next, s_cur
    c_new = s_cur
    d_new = cd_multiply(c_new, qs[0]) - s_next
    return (c_new, d_new)


def canonical_pair(ring: Ring, c: AlgElem, d: AlgElem):
    """Deterministic representative of the class of (c, d) in
    Gamma_infinity \\ Gamma."""
    if c.is_zero() and d.is_zero():
        raise ValueError("(0, 0) has no class")
    if ring is Z:
        lead = c if not c.is_zero() else d
        if lead.coords[0] < 0:
            c, d = -c, -d
        return (c, d)
    if ring is HURWITZ:
        return _hurwitz_canonical(ring, c, d)
    if ring is OCTAVIAN:
        return _octavian_canonical(ring, c, d)
    raise ValueError(f"unknown ring {ring}")


def coset_reps(ring: Ring, norm_bound: int):
    """Canonical left-coprime pairs with max(|c|^2, |d|^2) <= norm_bound."""
    if norm_bound < 1:
        raise ValueError("norm_bound must be >= 1")
    elems = ball_elements(ring, norm_bound, include_zero=True)
    seen = {}
    for c in elems:
        for d in elems:
            if c.is_zero() and d.is_zero():
                continue
            if c.is_zero() or d.is_zero():
                if not is_unit(ring, d if c.is_zero() else c):
                    continue
                rep = canonical_pair(ring, c, d)
            elif ring is OCTAVIAN:
                # one Euclid run decides coprimality and feeds the replay
                tr = left_euclid(ring, d, c)
                if norm_sq(tr.last_divisor) != 1:
                    continue
                rep = _octavian_canonical(ring, c, d, trace=tr)
            else:
                if not is_left_coprime(ring, d, c):
                    continue
                rep = canonical_pair(ring, c, d)
            seen[rep] = True
    return sorted(seen, key=lambda p: (p[0].coords, p[1].coords))

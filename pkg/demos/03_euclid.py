"""Euclidean division in the Hurwitz and octavian rings.

Both rings admit a norm-decreasing division algorithm, so coprimality and
one-sided gcds make sense even without associativity.  The octavian case
occasionally needs a remainder of norm larger than half the divisor norm;
traces record every quotient so runs can be replayed exactly.
Run with:  python3 demos/03_euclid.py
"""

import random

from octavia.algebra import from_text, norm_sq, to_text
from octavia.rings import (
    HURWITZ,
    OCTAVIAN,
    common_right_divisors,
    is_right_coprime,
    random_element,
    right_euclid,
)


def show_trace(ring, a, c):
    tr = right_euclid(ring, a, c)
    print(f"  a = {to_text(a)},  c = {to_text(c)}")
    for k, (q, r) in enumerate(zip(tr.quotients, tr.remainders), start=1):
        print(f"    step {k}: q = {to_text(q)},  |r|^2 = {norm_sq(r)}")
    print(f"    last nonzero divisor: {to_text(tr.last_divisor)},"
          f"  replay ok: {tr.replay_ok()}")
    return tr


def main():
    rng = random.Random(11)
    print("Hurwitz example:")
    show_trace(HURWITZ, random_element(HURWITZ, rng), random_element(HURWITZ, rng))

    print("octavian example:")
    show_trace(OCTAVIAN, random_element(OCTAVIAN, rng), random_element(OCTAVIAN, rng))

    # non-associative subtlety: e1 + e2 and e1 + e3 reach a remainder of
    # norm 1 in one step, yet they share the right divisor 1 + e1.  In the
    # octonions a common right divisor need not divide the remainders.
    a = from_text("oct:0,2,2,0,0,0,0,0")
    c = from_text("oct:0,2,0,2,0,0,0,0")
    print("unit remainder does not preclude a common right divisor:")
    tr = show_trace(OCTAVIAN, a, c)
    assert norm_sq(tr.remainders[0]) == 1
    divs = common_right_divisors(OCTAVIAN, a, c, max_norm=2)
    print("  common right divisors of norm 2:",
          [to_text(d) for d in divs if norm_sq(d) == 2][:1])
    print("  is_right_coprime (Euclid sense):",
          is_right_coprime(OCTAVIAN, a, c))


if __name__ == "__main__":
    main()

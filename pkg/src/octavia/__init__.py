"""Exact arithmetic in normed division algebras and the modular groups of
their integer rings, with numerical automorphic objects on the
generalized upper half plane.

Layers, from exact to numeric:

- algebra: Cayley-Dickson multiplication, exact rational coordinates.
- rings: the integer rings (rational integers, Hurwitz quaternions,
  octavians), units, lattices, and one-sided Euclidean division.
- rootsys: root systems, Weyl groups, and octonion automorphisms as
  exact integer matrices.
- hyperweyl: the hyperbolic Weyl groups acting on Hermitian matrices via
  inversion/translation/rotation words.
- uhp: double-precision geometry of the upper half plane.
- autoforms: truncated Eisenstein/Poincare series, zeta relation,
  Fourier coefficients, Green functions.
- cli: the `octavia` command-line front end.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]

"""Unit groups of the integer rings and the root systems they carry.

The 24 Hurwitz units are the D4 roots; the 240 octavian units are the E8
roots, and they split into 2 real units, 112 Brandt units and 126 imaginary
units.  Run with:  python3 demos/01_units_and_roots.py
"""

from fractions import Fraction

from octavia.algebra import norm_sq, to_text
from octavia.rings import HURWITZ, OCTAVIAN, octavian_unit_classes, units
from octavia.rootsys import all_roots, cartan_matrix, root_basis, theta_marks


def main():
    hu = units(HURWITZ)
    ou = units(OCTAVIAN)
    print(f"Hurwitz units: {len(hu)}")
    print(f"octavian units: {len(ou)}")
    real, brandt, imag = octavian_unit_classes()
    print(f"  real / Brandt / imaginary: {len(real)} + {len(brandt)} + {len(imag)}")
    print()

    print("a few octavian units (doubled-coordinate text form):")
    for x in (real[0], brandt[0], imag[0]):
        print(f"  {to_text(x):32s} |x|^2 = {norm_sq(x)}")
    print()

    for algebra in ("d4", "e7", "e8"):
        roots = all_roots(algebra)
        print(f"{algebra.upper()}: {len(roots)} roots, all of norm "
              f"{sorted({norm_sq(r) for r in roots})}")
    print()

    print("D4 Cartan matrix (simple roots are unit quaternions):")
    for row in cartan_matrix("d4"):
        print("  ", row)
    print("D4 highest root marks:", theta_marks("d4"))
    theta = root_basis("e8").theta
    print("E8 highest root:", to_text(theta), " norm", norm_sq(theta))
    assert norm_sq(theta) == Fraction(1)


if __name__ == "__main__":
    main()

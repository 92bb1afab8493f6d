#!/usr/bin/env python3
"""Contrast a unimodular and a non-unimodular fixture.

Shows the integrals, the modulus, and how symmetry of the symmetrised
cointegral degrades to twisted symmetry when the modulus is nontrivial.
"""

import sys

sys.path.insert(0, "src")

from quasihopf import intcoint
from quasihopf.exactmath import format_scalar
from quasihopf.fixtures import group_algebra_cyclic, sweedler_algebra


def survey(name, H):
    print(f"== {name} (dim {H.dim}) ==")
    left = intcoint.integrals(H, "left")
    right = intcoint.integrals(H, "right")

    def show(space):
        vec = space.basis[0]
        return " + ".join(f"{format_scalar(c)}*{H.alg.labels[k]}"
                          for (k,), c in vec.items_sorted())

    print(f"  left integral:  {show(left)}")
    print(f"  right integral: {show(right)}")
    gamma = intcoint.modulus(H, left.basis[0])
    print(f"  modulus gamma:  "
          + ", ".join(f"gamma({H.alg.labels[i]}) = "
                      f"{format_scalar(gamma.of(H.basis(i)))}"
                      for i in range(H.dim)))
    print(f"  unimodular:     {gamma.is_counit(H)}")
    sym = intcoint.symmetrise(H, intcoint.cointegrals(H, "left"))
    props = intcoint.check_form_properties(H, sym, gamma)
    twisted = intcoint.check_twisted_symmetry(H, sym, gamma, "left")
    print(f"  symmetrised left cointegral: "
          + " + ".join(f"{format_scalar(c)}*[{H.alg.labels[k]}]*"
                       for (k,), c in sym.items_sorted()))
    print(f"  plain symmetry: {props.find('symmetric').passed}, "
          f"twisted symmetry: {twisted.passed}, "
          f"gram rank: {props.find('gram rank').value}")
    print()


def main():
    survey("k[Z4]", group_algebra_cyclic(4, conductor=4))
    survey("non-unimodular 4-dimensional Hopf algebra", sweedler_algebra())


if __name__ == "__main__":
    main()

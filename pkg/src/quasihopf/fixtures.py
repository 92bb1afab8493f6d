"""Small reference algebras: cyclic group algebras and the 4-dimensional
non-unimodular Hopf algebra with a group-like g and a skew-primitive x.

Both are Hopf algebras viewed as quasi-Hopf algebras with trivial
coassociator and trivial Drinfeld twist.  k[Z_m] is pivotal with pivot 1;
the 4-dimensional algebra is pivotal with pivot g and serves as the
non-unimodular test case (its modulus sends g to -1).
"""

from quasihopf.algcore import AlgebraData, LinearForm, TensorElement
from quasihopf.exactmath import Scalar
from quasihopf.qha import PivotalData, QuasiHopfAlgebra


def group_algebra_cyclic(m, conductor=1):
    """k[Z_m] over Q(zeta_conductor), basis 1, g, ..., g^(m-1)."""
    n = conductor
    one = Scalar.one(n)
    labels = ["1"] + [f"g{a}" if a > 1 else "g" for a in range(1, m)]
    table = {(i, j): {(i + j) % m: one} for i in range(m) for j in range(m)}
    unit = TensorElement.wrap(n, 1, {(0,): one})
    alg = AlgebraData(n, m, labels, unit, table)
    delta = [TensorElement.wrap(n, 1, {(a,): one}).tensor(alg.basis(a))
             for a in range(m)]
    counit = LinearForm(n, 1, {(a,): one for a in range(m)})
    antipode = [alg.basis((-a) % m) for a in range(m)]
    pivotal = PivotalData(unit, unit, alg.unit_tensor(2), alg.unit_tensor(2))
    return QuasiHopfAlgebra(alg, delta, counit, antipode, list(antipode),
                            alg.unit_tensor(3), alg.unit_tensor(3),
                            unit, unit, pivotal=pivotal)


def sweedler_algebra(conductor=4):
    """The 4-dimensional Hopf algebra <g, x | g^2=1, x^2=0, xg=-gx>.

    Basis order: 1, g, x, gx.  Coproduct: g group-like, Delta(x) =
    x (x) 1 + g (x) x.  Left integral x + gx, right integral x - gx, so the
    modulus is nontrivial (g -> -1).
    """
    n = conductor
    one = Scalar.one(n)
    minus = Scalar.from_int(n, -1)
    E, G, X, GX = 0, 1, 2, 3
    table = {
        (E, E): {E: one}, (E, G): {G: one}, (E, X): {X: one}, (E, GX): {GX: one},
        (G, E): {G: one}, (G, G): {E: one}, (G, X): {GX: one}, (G, GX): {X: one},
        (X, E): {X: one}, (X, G): {GX: minus}, (X, X): {}, (X, GX): {},
        (GX, E): {GX: one}, (GX, G): {X: minus}, (GX, X): {}, (GX, GX): {},
    }
    table = {k: v for k, v in table.items() if v}
    unit = TensorElement.wrap(n, 1, {(E,): one})
    alg = AlgebraData(n, 4, ["1", "g", "x", "gx"], unit, table)

    def el(*pairs):
        return TensorElement(n, 1, {(i,): c for i, c in pairs})

    delta = [None] * 4
    delta[E] = alg.unit_tensor(2)
    delta[G] = alg.basis(G).tensor(alg.basis(G))
    delta[X] = alg.basis(X).tensor(unit) + alg.basis(G).tensor(alg.basis(X))
    delta[GX] = alg.mul(delta[G], delta[X])
    counit = LinearForm(n, 1, {(E,): one, (G,): one})
    antipode = [unit, alg.basis(G), el((GX, minus)), alg.basis(X)]
    antipode_inv = [unit, alg.basis(G), alg.basis(GX), el((X, minus))]
    pivotal = PivotalData(alg.basis(G), alg.basis(G),
                          alg.unit_tensor(2), alg.unit_tensor(2))
    return QuasiHopfAlgebra(alg, delta, counit, antipode, antipode_inv,
                            alg.unit_tensor(3), alg.unit_tensor(3),
                            unit, unit, pivotal=pivotal)

"""Regenerate corpus/groups from the zoo constructors."""

from __future__ import annotations

from pathlib import Path

from grpeq.combinators import (DirectProduct, FiniteBox, FreeBox, MatrixAuto, ProductBox,
                               RecSet)
from grpeq.freegrp import finite_quotient_hom
from grpeq.lattice import CongruenceBox
from grpeq.permfin import Perm, closure
from grpeq.zoo import (cyclic, make_dihedral_artin_even, make_dihedral_infinite, make_free,
                       make_free_abelian, make_swap_product, make_wreath, quaternion, save_group,
                       symmetric)

OUT = Path(__file__).resolve().parent.parent / "corpus" / "groups"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    groups = {}
    groups["c2"] = cyclic(2)
    s3 = symmetric(3)
    s3.recsets["transpositions"] = RecSet((FiniteBox(frozenset(
        x for x in range(6) if s3.group.element_order(x) == 2)),))
    groups["s3"] = s3
    groups["q8"] = quaternion()

    z = make_free_abelian(1)
    z.recsets["evens"] = RecSet((CongruenceBox.mod([0], [2]),))
    groups["z"] = z
    z2 = make_free_abelian(2)
    z2.register_automorphism("swap", MatrixAuto(((0, 1), (1, 0))))
    groups["z2"] = z2

    f2 = make_free(2, 3)
    c2 = closure([Perm((1, 0))])
    hom = finite_quotient_hom([1, 0], c2)  # a -> involution, b -> identity
    f2.recsets["even_a"] = RecSet((FreeBox(hom, frozenset([0])),))
    f2.register_automorphism("swap", lambda w: tuple((3 - abs(x)) * (1 if x > 0 else -1)
                                                      for x in w))
    groups["f2"] = f2

    c2xc2 = DirectProduct([cyclic(2), cyclic(2)])
    a = c2xc2.factors[0].labels["a"]
    c2xc2.labels.update({"e": (0, 0), "x": (a, 0), "y": (0, a), "xy": (a, a)})
    groups["c2xc2"] = c2xc2

    zxz = DirectProduct([make_free_abelian(1), make_free_abelian(1)])
    zxz.labels.update({"u": ((1,), (0,)), "v": ((0,), (1,))})
    zxz.recsets["even_odd"] = RecSet((ProductBox((CongruenceBox.mod([0], [2]),
                                                  CongruenceBox.mod([1], [2]))),))
    groups["zxz"] = zxz

    groups["dinf"] = make_dihedral_infinite()

    swapz = make_swap_product(make_free_abelian(1))
    swapz.labels.update({"u": (((1,), (0,)), 0), "v": (((0,), (1,)), 0)})
    groups["swapz"] = swapz
    swapc2 = make_swap_product(cyclic(2))
    swapc2.labels.update({"u": ((1, 0), 0), "v": ((0, 1), 0)})
    groups["swapc2"] = swapc2

    groups["da4"] = make_dihedral_artin_even(4, bound=2)

    w = make_wreath(cyclic(3), [[2, 1]])
    w.quotient_labels = {"e": 0, "s": 1}
    e3 = cyclic(3).labels["a"]
    w.labels.update({"s": ((0, 0), 1), "u": ((e3, 0), 0), "v": ((0, e3), 0)})
    groups["c3wrc2"] = w

    for name, G in groups.items():
        save_group(G, OUT / f"{name}.json")


if __name__ == "__main__":
    main()

"""The degree 6 del Pezzo surface: symmetries, omega and its separable algebra.

Computes the automorphism data of the hexagon fan, the canonical set omega
of globally generated classes, and compares it with the smaller five-class
set that maps dP6 into (P2)^2 x (P1)^3.

    python demos/dp6_separable_algebra.py
"""

from toric_descent.autgroup import class_aut_group, fan_automorphisms
from toric_descent.fan import class_group
from toric_descent.io import bundled_fan
from toric_descent.omega import canonical_omega, injectivity_verdict, make_omega, target_shape, validate_omega
from toric_descent.polyhedral import nef_cone
from toric_descent.report import group_name


def show(label, om, f, div, J, nef):
    v = validate_omega(om, f, div, J, nef)
    Y, B = target_shape(om)
    print(f"{label}: {len(om)} classes, validates: {v.passes}")
    for c, h in zip(om.classes, om.h0):
        print(f"    {div.format_class(c):<14} h0 = {h}")
    print(f"  Y = {Y.render()}")
    print(f"  B = {B.render()}")


def main():
    f = bundled_fan("dp6")
    div = class_group(f)
    W = fan_automorphisms(f, div)
    J = class_aut_group(W, div)
    nef = nef_cone(f, div)
    print(f"|W| = {len(W)}, |W°| = {len(J.kernel)}, J = {group_name(J.group)}")
    print("nef cone rays:", ", ".join(div.format_class(r) for r in nef.rays))
    print()
    show("canonical omega", canonical_omega(f, div, J, nef), f, div, J, nef)
    print()
    small = make_omega([(1, 0, 0, 0), (2, -1, -1, -1), (1, -1, 0, 0), (1, 0, -1, 0), (1, 0, 0, -1)], f, div, J)
    show("five-class omega", small, f, div, J, nef)
    print()
    print(injectivity_verdict(J).text)


if __name__ == "__main__":
    main()

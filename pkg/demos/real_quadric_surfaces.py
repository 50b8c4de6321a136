"""Real forms of P1 x P1, from torus classes to varieties.

Walks through the classification over R: the four W-classes, the seven
classes of toric forms (variety plus torus), and how the Brauer fingerprint
glues them into four varieties.

    python demos/real_quadric_surfaces.py
"""

from toric_descent.autgroup import class_aut_group, fan_automorphisms
from toric_descent.descent import classify_forms_real, period
from toric_descent.fan import class_group
from toric_descent.io import bundled_fan


def main():
    f = bundled_fan("p1xp1")
    div = class_group(f)
    W = fan_automorphisms(f, div)
    J = class_aut_group(W, div)
    print(f"{f.name}: Cl = {div.cl_group}, |W| = {len(W)}, |J| = {J.order}")

    rep = classify_forms_real(f, div, W, J)
    print(f"{len(rep.w_classes)} involution classes in W, {len(rep.j_classes)} in J")
    for k, (c, t) in enumerate(zip(rep.centers, rep.tori)):
        print(f"  neutralization class {k}: centre {' x '.join(c.fields)}, canonical torus {t.render()}")

    print("\ntoric forms, grouped by fingerprint")
    for k, v in enumerate(rep.varieties):
        tori = [rep.n_classes[i].torus for i in v.n_classes]
        kind = "neutral" if v.neutral else f"period {period(v.fingerprint)}"
        print(f"  variety {k} ({kind}, class {v.component}): {', '.join(tori)}")

    # the neutral variety over the nontrivial class is the Weil restriction of P1 from C
    print(f"\ntori per variety: {rep.torus_counts()}")


if __name__ == "__main__":
    main()

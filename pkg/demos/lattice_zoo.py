"""Flasque, coflasque and invertible lattices side by side.

Prints Tate cohomology, the flasque/coflasque flags and the invertibility
verdict for each bundled lattice, then shows the kernel witness for the
augmentation ideal of the Klein four-group.

    python demos/lattice_zoo.py
"""

from toric_descent.descent import kernel_witness
from toric_descent.glattice import coflasque_resolution, is_coflasque, is_flasque, is_invertible, tate_h
from toric_descent.io import bundled_lattice, bundled_names
from toric_descent.report import group_name


def main():
    rows = []
    for name in bundled_names("lattices"):
        L = bundled_lattice(name)
        h = [str(tate_h(i, None, L)) for i in (-1, 0, 1)]
        flags = ["y" if is_flasque(L) else "n", "y" if is_coflasque(L) else "n"]
        rows.append([name, group_name(L.group), str(L.rank), *h, *flags, is_invertible(L).status])
    header = ["lattice", "group", "rank", "H^-1", "H^0", "H^1", "fl", "cofl", "invertible"]
    widths = [max(len(r[k]) for r in rows + [header]) for k in range(len(header))]
    for r in [header] + rows:
        print("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())

    L = bundled_lattice("i-v4")
    res = coflasque_resolution(L)
    print(f"\ni-v4: coflasque resolution 0 -> Q ({res.Q.rank}) -> P ({res.P.rank}) -> S ({L.rank}) -> 0")
    w = kernel_witness(L)
    print(w.render() if w else "no witness")


if __name__ == "__main__":
    main()

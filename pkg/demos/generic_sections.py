"""Cut free varieties and a transport equation by generic differential
hypersurfaces and compare the Kolchin polynomial of the section with
omega_V - C(t+m-h, m)."""

from dab import DiffRing, verify_bertini


def show(label, V, h, r, ring):
    rep = verify_bertini(V, h, r, ring)
    if rep.dimension == 0:
        print(f"{label:28s} h={h} r={r}  dim V = 0, section empty: {rep.empty}  [{rep.verdict}]")
        return
    print(f"{label:28s} h={h} r={r}  omega_V = {rep.input_kolchin}, "
          f"predicted {rep.predicted}, computed {rep.computed}  [{rep.verdict}]")


if __name__ == "__main__":
    line = DiffRing(1, ["y"])
    plane = DiffRing(1, ["y1", "y2"])
    pde = DiffRing(2, ["y"])
    for h, r in ((0, 1), (1, 1), (2, 1), (1, 2)):
        show("A^1, one derivation", [], h, r, line)
    for h, r in ((1, 1), (2, 1), (1, 2)):
        show("A^2, one derivation", [], h, r, plane)
    for h, r in ((1, 1), (2, 1)):
        show("A^1, two derivations", [], h, r, pde)
    y = pde.gen("y")
    show("D[0,1](y) - D[1,0](y)", [y.derivative(2) - y.derivative(1)], 1, 1, pde)

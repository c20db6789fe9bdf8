"""Jet truncations: the dimension of the order-l truncation of a chain agrees
with its Kolchin polynomial once l passes the threshold."""

from dab import DiffRing, dominance_check, jet_dimension, rosenfeld_groebner

if __name__ == "__main__":
    ring = DiffRing(1, ["y"])
    y = ring.gen("y")
    for F in ([y * y.derivative(1) - 1], [y.derivative(1) ** 2 - 4 * y], [y.apply_theta((2,))]):
        D = rosenfeld_groebner(F)
        print(f"{[str(f) for f in F]} -> {[c.format() for c in D]}")
        for C in D:
            w = C.kolchin()
            start = max(w.threshold, C.max_order())
            for level in range(start, start + 3):
                print(f"    {C.format():16s} l={level}: jet dim {jet_dimension(C, level)}, "
                      f"omega(l) = {w(level)}, dominant: {dominance_check(C, level)}")

"""Base change to an algebraic extension splits components without changing
their Kolchin polynomials."""

from dab import DiffRing, SimpleExtension, lying_over_check

if __name__ == "__main__":
    ring = DiffRing(1, ["y"])
    y = ring.gen("y")
    for f, ext in ((y ** 2 - 2, SimpleExtension([-2, 0, 1], "s")),
                   (y ** 2 + 1, SimpleExtension([1, 0, 1], "i")),
                   (y.derivative(1), SimpleExtension([1, 0, 1], "i"))):
        rep = lying_over_check([f], ext)
        base = [c.format() for c in rep["base"]]
        over = [c.format() for c in rep["extension"]]
        print(f"{f}:  over Q {base}  over {ext!r} {over}  "
              f"omega {[str(w) for w in rep['extension_kolchin']]}")

"""Generic hyperplanes through a constant point: with dim V + 1 of them the
section is nonempty exactly when the point lies on V."""

from dab import DiffRing, through_point_experiment

if __name__ == "__main__":
    ring = DiffRing(1, ["y"])
    y = ring.gen("y")
    cases = [
        ("y' - y  through y = 1", [y.derivative(1) - y], [1], 1),
        ("y'      through y = 1", [y.derivative(1)], [1], 1),
        ("A^1     through y = 0", [], [0], 2),
    ]
    for label, V, point, count in cases:
        rep = through_point_experiment(V, point, count, 0, 1, ring)
        print(f"{label}: {count} hyperplane(s), point on V: {rep.point_on_variety}, "
              f"section empty: {rep.empty}")
        for names, f in rep.hypersurfaces:
            print(f"    {f}")

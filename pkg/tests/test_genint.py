import pytest

from dab.diffring import DiffRing
from dab.genint import (dependence_specialization, intersect_generic, make_generic, point_on_variety,
                        through_point_experiment, verify_bertini)
from dab.numpoly import free, shifted_binomial


def test_make_generic_examples():
    G = make_generic(DiffRing(1, ["y"]), 0, 1)
    assert G.poly.format() == "y*a1 + a0"
    G = make_generic(2, 1, 1)
    r = G.ring
    y1, y2 = r.gen("y1"), r.gen("y2")
    a = [r.gen(f"a{i}") for i in range(5)]
    assert G.poly == a[0] + a[1] * y1 + a[2] * y2 + a[3] * y1.derivative(1) + a[4] * y2.derivative(1)
    assert len(make_generic(1, 1, 2).params) == 6
    assert () not in make_generic(1, 2, 2).support


def test_make_generic_fresh_names():
    with pytest.raises(ValueError):
        make_generic(DiffRing(1, ["a0"]), 1, 1)


def test_intersect_line_order_two():
    r = DiffRing(1, ["y"])
    G = make_generic(r, 2, 1)
    D = intersect_generic([], G)
    assert len(D) == 1
    C = D.components[0]
    assert C.elements[0] == G.poly
    assert C.kolchin(r).coeffs == (2, 0)


def test_intersect_constants_pde_empty():
    r = DiffRing(2, ["y"])
    y = r.gen("y")
    for h in (0, 1):
        assert intersect_generic([y.derivative(1), y.derivative(2)], make_generic(r, h, 1)).is_empty()


def test_intersect_plane():
    r = DiffRing(1, ["y1", "y2"])
    D = intersect_generic([], make_generic(r, 1, 1))
    assert len(D) == 1
    w = D.components[0].kolchin(r)
    assert all(w(t) == t + 2 for t in range(6))


def test_bertini_examples():
    r2 = DiffRing(2, ["y"])
    rep = verify_bertini([], 1, 1, r2)
    assert rep.passed
    assert rep.predicted.same_polynomial(free(2) - shifted_binomial(2, 1))
    assert all(rep.computed(t) == t + 1 for t in range(6))
    r1 = DiffRing(1, ["y"])
    y = r1.gen("y")
    rep = verify_bertini([y.derivative(1).derivative(1)], 1, 1, r1)
    assert rep.passed and rep.empty and rep.dimension == 0
    rp = DiffRing(1, ["y1", "y2"])
    rep = verify_bertini([], 1, 1, rp)
    assert rep.passed and all(rep.computed(t) == t + 2 for t in range(6))


def test_through_point_examples():
    r = DiffRing(1, ["y"])
    y = r.gen("y")
    rep = through_point_experiment([y.derivative(1) - y], [1], 1, 0, 1, r)
    assert rep.empty and not rep.point_on_variety and rep.consistent
    rep = through_point_experiment([y.derivative(1)], [1], 1, 0, 1, r)
    assert not rep.empty and rep.point_on_variety and rep.consistent
    rep = through_point_experiment([], [0], 2, 0, 1, r)
    assert not rep.empty and rep.point_on_variety and rep.consistent


def test_point_on_variety():
    r = DiffRing(1, ["x", "y"])
    x, y = r.gens()
    assert point_on_variety([x * y - 2, x.derivative(1)], [1, 2], r)
    assert not point_on_variety([x - y], [1, 2], r)


def test_dependence_specialization():
    r = DiffRing(1, ["y"])
    y = r.gen("y")
    V = [y.derivative(1)]
    H = make_generic(r, 0, 1)
    D = intersect_generic(V, H)
    assert D.is_empty()
    rep = dependence_specialization(V, H, D, r)
    assert rep["specialized_hypersurface"] == -y
    assert rep["passed"]

import random

import pytest

from dab.algebra import AlgIdeal
from dab.decompose import rosenfeld_groebner
from dab.diffring import DiffAlgebraError, DiffRing, random_polynomial
from dab.prolong import (dominance_check, flatten, ideals_dominant, jet_dimension, jet_variables,
                         section_jet_dims, shift, truncate)


def test_truncate_second_derivative(r1):
    y = r1.gen("y")
    J = truncate([y.derivative(1).derivative(1)], 3)
    assert len(J.variables) == 4
    d2 = y.apply_theta((2,))
    assert J.ideal.contains(d2) and J.ideal.contains(y.apply_theta((3,)))
    assert J.dimension() == 2


def test_truncate_transport(r2):
    y = r2.gen("y")
    f = y.derivative(1) - y.derivative(2)
    J = truncate([f], 1)
    assert len(J.variables) == 3
    assert [str(g) for g in J.ideal.basis()] in (["D[1,0](y) - D[0,1](y)"], ["-D[1,0](y) + D[0,1](y)"],
                                                 ["D[0,1](y) - D[1,0](y)"])


def test_truncate_quasilinear(r1):
    y = r1.gen("y")
    v0, v1, v2 = y, y.derivative(1), y.derivative(1).derivative(1)
    J = truncate([y * y.derivative(1) - 1], 2)
    target = AlgIdeal([v0 * v1 - 1, v0 * v2 + v1 ** 2], J.variables)
    assert all(target.contains(g) for g in J.ideal.basis())
    assert all(J.ideal.contains(g) for g in target.basis())


def test_jet_dimension_examples():
    r = DiffRing(1, ["y"])
    y = r.gen("y")
    for h in (1, 2, 3):
        f = y.apply_theta((h,))
        for level in range(h, h + 3):
            assert jet_dimension([f], level) == h
    assert jet_dimension([], 2, DiffRing(1, ["y1", "y2"])) == 6
    C = rosenfeld_groebner([y * y.derivative(1) - 1]).components[0]
    assert jet_dimension(C, 2) == 1


def test_dominance():
    r = DiffRing(1, ["y"])
    y = r.gen("y")
    for level in (2, 3, 4):
        assert dominance_check([y.apply_theta((2,))], level)
    lo = AlgIdeal([y], jet_variables(r, 0))
    hi = AlgIdeal([y.derivative(1) - 1], jet_variables(r, 1))
    assert not ideals_dominant(lo, hi, jet_variables(r, 0))


def test_section_jet_dims_examples():
    r1 = DiffRing(1, ["y"])
    rep = section_jet_dims([], 1, 1, 3, r1)
    assert (rep.dim_V, rep.dim_W, rep.holds) == (4, 5, True)
    r2 = DiffRing(2, ["y"])
    rep = section_jet_dims([], 1, 1, 2, r2)
    assert (rep.dim_V, rep.dim_W, rep.holds) == (6, 9, True)
    y = r1.gen("y")
    rep = section_jet_dims([y.apply_theta((2,))], 1, 1, 3, r1)
    assert rep.holds
    assert rep.y0_elimination_nonzero is True
    rep = section_jet_dims([], 1, 1, 2, r1)
    assert rep.y0_elimination_nonzero is False


def test_flatten_order_check(r1):
    y = r1.gen("y")
    assert flatten(y.derivative(1), 1) == y.derivative(1)
    with pytest.raises(DiffAlgebraError):
        flatten(y.derivative(1).derivative(1), 1)


def test_shift_matches_derivative_on_linear_inputs():
    rnd = random.Random(5)
    for m in (1, 2):
        r = DiffRing(m, ["u", "v"])
        for _ in range(40):
            p = random_polynomial(r, rnd, 4, 2, 1)
            for th in [(1,) * m, tuple([2] + [0] * (m - 1))]:
                assert shift(p - r.const(p.terms.get((), 0)), th) == p.apply_theta(th)


def test_level_below_order_rejected(r1):
    y = r1.gen("y")
    with pytest.raises(DiffAlgebraError):
        truncate([y.apply_theta((3,))], 2)

import random

import pytest

from dab.diffring import ELIMINATION, DiffAlgebraError, DiffRing, random_polynomial
from dab.reduction import (AutoreducedSet, bounded_power_membership, characteristic_set, delta_pairs,
                           full_reduce, is_reduced, partial_reduce, witness_expression)


def test_partial_reduce_second_derivative(r1):
    y = r1.gen("y")
    A = AutoreducedSet([y.derivative(1) - y])
    g = y.derivative(1).derivative(1)
    # partial reduction stops at the leader itself; full reduction removes it
    cert = partial_reduce(g, A)
    assert cert.remainder == y.derivative(1)
    assert cert.is_trivial() and cert.check(g, A)
    cert = full_reduce(g, A)
    assert cert.remainder == y
    assert cert.is_trivial() and cert.check(g, A)


def test_partial_reduce_fixpoint(rxy):
    x, y = rxy.gens()
    A = AutoreducedSet([y.derivative(1) - x])
    g = x ** 2 + y * x.derivative(1)
    cert = partial_reduce(g, A)
    assert cert.remainder == g and cert.is_trivial()


def test_partial_reduce_constructed(rxy):
    x, y = rxy.gens()
    f = y.derivative(1) - x ** 2
    A = AutoreducedSet([f])
    r = x * y + 3
    g = f.derivative(1) * (x + y) + r
    assert partial_reduce(g, A).remainder == r


def test_full_reduce_generic_form():
    r = DiffRing(1, ["y", "y0"], ["a1", "a2"])
    y, y0 = r.gen("y"), r.gen("y0")
    rest = r.gen("a1") * y + r.gen("a2") * y.derivative(1)
    A = AutoreducedSet([y0 + rest], ELIMINATION)
    cert = full_reduce(y0 ** 2, A)
    assert cert.remainder == rest ** 2
    assert cert.check(y0 ** 2, A)


def test_full_reduce_linear_member(rxy):
    x, y = rxy.gens()
    A = AutoreducedSet([x - 1, y - 1])
    g = (x - 1) * y + 4 * (y - 1)
    assert full_reduce(g, A).remainder.is_zero()


def test_full_reduce_degree_drop(r1):
    y = r1.gen("y")
    dy = y.derivative(1)
    A = AutoreducedSet([dy ** 2 - 1])
    g = y * dy ** 2 + y
    cert = full_reduce(g, A)
    assert cert.remainder == 2 * y
    assert cert.check(g, A)


def test_delta_pairs():
    r = DiffRing(2, ["y"], ["a", "b"])
    y = r.gen("y")
    A = AutoreducedSet([y.derivative(1) - r.gen("a"), y.derivative(2) - r.gen("b")])
    pairs = delta_pairs(A)
    assert len(pairs) == 1
    p = pairs[0]
    expect = r.gen("b").derivative(1) - r.gen("a").derivative(2)
    assert p == expect or p == -expect
    rxy = DiffRing(1, ["x", "y"])
    x, yy = rxy.gens()
    assert delta_pairs(AutoreducedSet([x.derivative(1), yy ** 2])) == []


def test_autoreduced_check(r1):
    y = r1.gen("y")
    with pytest.raises(DiffAlgebraError):
        AutoreducedSet([y, y.derivative(1)])


def test_power_membership_examples(rxy):
    x, y = rxy.gens()
    h = x * y.derivative(1) - y
    assert bounded_power_membership(h ** 2, h, 2, 1, 4).member
    res = bounded_power_membership(h, h, 2, 2, 4)
    assert not res.member


def test_power_membership_ritt(zeta5):
    r = DiffRing(1, ["x", "y", "z"], (), zeta5)
    x, y, z = r.gens()
    zeta = zeta5.gen()
    f = x ** 5 - y ** 5 + z * (x * y.derivative(1) - y * x.derivative(1)) ** 2
    h = x - y.scale(zeta)
    others = r.one()
    for k in (0, 2, 3, 4):
        others = others * (x - y.scale(zeta ** k))
    g = f - h * others
    res = bounded_power_membership(g, h, 2, 1, 5)
    assert res.member
    assert witness_expression(res.witness, h, r) == g
    # the hand identity: x*y' - y*x' = h*y' - y*h'
    w = x * y.derivative(1) - y * x.derivative(1)
    assert w == h * y.derivative(1) - y * h.derivative(1)


def test_characteristic_set_is_autoreduced(rxy):
    x, y = rxy.gens()
    F = [y.derivative(1) * x - 1, x ** 2 - 2, y.derivative(1).derivative(1)]
    C = characteristic_set(F)
    AutoreducedSet(C.elements)  # raises when not autoreduced


def test_reduction_certificate_500_random():
    rnd = random.Random(11)
    done = 0
    while done < 500:
        m = rnd.choice([1, 2])
        r = DiffRing(m, ["u", "v"])
        elems = []
        for _ in range(rnd.randint(1, 2)):
            elems.append(random_polynomial(r, rnd, 3, 1, 2))
        elems = [e for e in elems if e.main_variables()]
        if not elems:
            continue
        try:
            A = AutoreducedSet(elems)
        except DiffAlgebraError:
            continue
        g = random_polynomial(r, rnd, 4, 2, 3)
        for reduce in (partial_reduce, full_reduce):
            cert = reduce(g, A)
            assert cert.check(g, A)
            assert is_reduced(cert.remainder, A, full=reduce is full_reduce)
        done += 1

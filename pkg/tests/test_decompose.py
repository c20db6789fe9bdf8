import pytest
import sympy

from dab.coeffield import SimpleExtension
from dab.decompose import (DecompositionBudgetExceeded, RegularChain, chain_kolchin, factor_over_field,
                           lying_over_check, radical_member, rosenfeld_groebner)
from dab.diffring import DiffRing
from dab.numpoly import free, shifted_binomial
from dab.reduction import delta_pairs, partial_reduce


def fmt(D):
    return [c.format() for c in D]


def test_constants_single_chain(r1):
    y = r1.gen("y")
    D = rosenfeld_groebner([y.derivative(1)])
    assert fmt(D) == ["{y'}"]
    assert D.components[0].kolchin().coeffs == (1, 0)


def test_parametric_emptiness():
    r = DiffRing(1, ["y"], ["a0", "a1"])
    y, a0, a1 = r.gen("y"), r.gen("a0"), r.gen("a1")
    D = rosenfeld_groebner([y.derivative(1), a0 + a1 * y])
    assert D.is_empty()
    wit = [w for _, w in D.witnesses]
    target = a1.derivative(1) * a0 - a0.derivative(1) * a1
    assert any(w == target or w == -target for w in wit)


def test_sqrt2_splits(r1, sqrt2):
    y = r1.gen("y")
    D = rosenfeld_groebner([y ** 2 - 2])
    assert fmt(D) == ["{y^2 - 2}"]
    big = DiffRing(1, ["y"], (), sqrt2)
    yb = big.gen("y")
    D2 = rosenfeld_groebner([yb ** 2 - 2])
    assert sorted(fmt(D2)) == ["{y + s}", "{y - s}"]


def test_radical_member(r1):
    y = r1.gen("y")
    D = rosenfeld_groebner([y ** 2 - 2])
    assert radical_member(y ** 2 - 2, D)
    assert radical_member(y.derivative(1), D)
    assert not radical_member(y, rosenfeld_groebner([y.derivative(1)]))


def test_chain_kolchin_examples():
    for m in (1, 2, 3):
        r = DiffRing(m, ["y"])
        D = rosenfeld_groebner([r.gen("y").derivative(m)])
        w = chain_kolchin(D.components[0])
        assert w.same_polynomial(free(m) - shifted_binomial(m, 1))
    r = DiffRing(1, ["y1", "y2"], ["a0", "a1", "a2", "a3", "a4"])
    y1, y2 = r.gen("y1"), r.gen("y2")
    a = [r.gen(f"a{i}") for i in range(5)]
    f = a[0] + a[1] * y1 + a[2] * y2 + a[3] * y1.derivative(1) + a[4] * y2.derivative(1)
    D = rosenfeld_groebner([f])
    assert len(D) == 1
    w = D.components[0].kolchin(r)
    assert all(w(t) == t + 2 for t in range(6))
    r3 = DiffRing(1, ["x", "y"])
    x, y = r3.gens()
    D = rosenfeld_groebner([x ** 3 - 2, y ** 2 - x])
    assert all(c.kolchin().is_zero() for c in D)


def test_singular_solution(r1):
    y = r1.gen("y")
    D = rosenfeld_groebner([y.derivative(1) ** 2 - 4 * y])
    assert sorted(fmt(D)) == sorted(["{y}", "{y'^2 - 4*y}"])


def test_quasilinear(r1):
    y = r1.gen("y")
    D = rosenfeld_groebner([y * y.derivative(1) - 1])
    assert fmt(D) == ["{y'*y - 1}"]


def test_lying_over(r1, sqrt2):
    y = r1.gen("y")
    rep = lying_over_check([y ** 2 - 2], sqrt2)
    assert (rep["base_components"], rep["extension_components"]) == (1, 2)
    assert rep["kolchin_equal"] and all(w.is_zero() for w in rep["extension_kolchin"])
    qi = SimpleExtension([1, 0, 1], "i")
    rep = lying_over_check([y.derivative(1)], qi)
    assert (rep["base_components"], rep["extension_components"]) == (1, 1)
    assert rep["base_kolchin"][0].coeffs == (1, 0)
    rep = lying_over_check([y ** 2 + 1], qi)
    assert (rep["base_components"], rep["extension_components"]) == (1, 2)
    assert rep["kolchin_equal"]


def test_factor_over_extension(sqrt2):
    big = DiffRing(1, ["y"], (), sqrt2)
    y = big.gen("y")
    unit, factors = factor_over_field(y ** 2 - 2)
    assert len(factors) == 2 and all(k == 1 for _, k in factors)


def test_chains_are_coherent_and_regular():
    r = DiffRing(2, ["u", "v"])
    u, v = r.gens()
    F = [u.derivative(1) - v, u.derivative(2) - v ** 2]
    D = rosenfeld_groebner(F)
    assert len(D) >= 1
    for C in D:
        for p in delta_pairs(C.chain):
            assert C.contains(partial_reduce(p, C.chain).remainder)
        assert C.algebraic_ideal().is_proper()


def test_budget(monkeypatch, rxy):
    x, y = rxy.gens()
    with pytest.raises(DecompositionBudgetExceeded):
        rosenfeld_groebner([x.derivative(1) ** 2 - y, y.derivative(1) ** 2 - x], branch_budget=1)


def _systems():
    r1 = DiffRing(1, ["y"])
    y = r1.gen("y")
    rxy = DiffRing(1, ["x", "y"])
    x, yy = rxy.gens()
    r2 = DiffRing(2, ["y"])
    z = r2.gen("y")
    return [
        [y.derivative(1) ** 2 - 4 * y],
        [y * y.derivative(1) - 1],
        [x.derivative(1) - yy, yy.derivative(1) - x],
        [x * yy.derivative(1) - yy * x.derivative(1)],
        [z.derivative(1) - z.derivative(2)],
        [x ** 2 - yy ** 2],
    ]


@pytest.mark.parametrize("idx", range(6))
def test_determinism_across_threads(idx):
    F = _systems()[idx]
    a = rosenfeld_groebner(F, threads=1)
    b = rosenfeld_groebner(F, threads=4)
    assert fmt(a) == fmt(b)
    assert [[h.format() for h in c.inequations] for c in a] == [[h.format() for h in c.inequations] for c in b]
    assert a.flags == b.flags


# -- soundness of zeros ------------------------------------------------------

def _evaluate(p, sols, ts):
    out = 0
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in mono:
            f = sols[v[1]]
            for i, k in enumerate(v[2]):
                if k:
                    f = sympy.diff(f, ts[i], k)
            term *= f ** e
        out += term
    return sympy.simplify(out)


t, t1, t2 = sympy.symbols("t t1 t2")

SOLUTIONS = [
    (0, [[(t + 3) ** 2], [0], [t ** 2]]),
    (1, [[sympy.sqrt(2 * t + 5)], [-sympy.sqrt(2 * t)]]),
    (2, [[sympy.exp(t), sympy.exp(t)], [sympy.cosh(t), sympy.sinh(t)], [0, 0]]),
    (3, [[t, 3 * t], [0, t ** 2], [t ** 2 + 1, 2 * t ** 2 + 2]]),
    (4, [[(t1 + t2) ** 3], [sympy.sin(t1 + t2)]]),
    (5, [[t, t], [t ** 2, -t ** 2], [0, 0]]),
]


@pytest.mark.parametrize("idx,sols", SOLUTIONS)
def test_soundness_of_zeros(idx, sols):
    F = _systems()[idx]
    ring = F[0].ring
    ts = [t] if ring.m == 1 else [t1, t2]
    D = rosenfeld_groebner(F)
    for sol in sols:
        assert all(_evaluate(f, sol, ts) == 0 for f in F)
        assert any(all(_evaluate(p, sol, ts) == 0 for p in C.elements) for C in D), sol


def test_regular_chain_contains(r1):
    y = r1.gen("y")
    D = rosenfeld_groebner([y * y.derivative(1) - 1])
    C = D.components[0]
    assert isinstance(C, RegularChain)
    assert C.contains(y.derivative(1) * y ** 2 - y)
    assert not C.contains(y)

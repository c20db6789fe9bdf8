import random

import pytest
import sympy

from dab.algebra import AlgIdeal, PairBudgetExceeded, affine_dimension, eliminate, groebner, saturate
from dab.diffring import DiffRing, random_polynomial


@pytest.fixture
def R():
    return DiffRing(1, ["x", "y", "z"])


def _xyz(R):
    return [R.gen(n) for n in ("x", "y", "z")]


def _to_sympy(p, R, syms):
    out = 0
    for mono, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else c
        for v, e in mono:
            t *= syms[R.names[v[1]]] ** e
        out += t
    return sympy.expand(out)


def test_groebner_examples(R):
    x, y, z = _xyz(R)
    assert sorted(map(str, groebner(AlgIdeal([x, y])))) == ["x", "y"]
    assert [str(g) for g in groebner(AlgIdeal([x ** 2 - 1, x - 1]))] == ["x - 1"]
    assert AlgIdeal([x + 1, x - 1]).is_unit()


def test_membership_examples(R):
    x, y, z = _xyz(R)
    assert AlgIdeal([x]).contains(R.zero())
    assert AlgIdeal([x]).contains(x * y)
    assert not AlgIdeal([x - y]).contains(x + y)


def test_saturation_examples(R):
    x, y, z = _xyz(R)
    S = saturate(AlgIdeal([x * y]), x)
    assert S.contains(y) and AlgIdeal([y]).contains(S.basis()[0])
    S = saturate(AlgIdeal([x ** 2]), y)
    assert S.contains(x ** 2) and not S.contains(x)
    assert saturate(AlgIdeal([R.one()], ring=R), x).is_unit()


def test_elimination_examples(R):
    x, y, z = _xyz(R)
    vy = R.variable("y")
    assert eliminate(AlgIdeal([x - y ** 2]), {vy}).basis() == []
    E = eliminate(AlgIdeal([x - y, x + y]), {vy})
    assert [str(g) for g in E.basis()] == ["y"]
    assert eliminate(AlgIdeal([R.one()], ring=R), {vy}).is_unit()


def test_dimension_examples(R):
    x, y, z = _xyz(R)
    vs = [R.variable(n, (k,)) for n in ("x", "y") for k in range(3)][:5]
    assert affine_dimension(AlgIdeal([], vs, ring=R)) == 5
    assert AlgIdeal([x * z - 1], [R.variable(n) for n in "xyz"]).dimension() == 2
    assert AlgIdeal([x, y]).dimension() == 0
    assert AlgIdeal([x + 1, x]).dimension() == -1


def test_against_sympy_groebner():
    rnd = random.Random(3)
    R = DiffRing(1, ["x", "y", "z"])
    syms = {n: sympy.Symbol(n) for n in R.names}
    for _ in range(25):
        gens = [random_polynomial(R, rnd, 3, 0, 2) for _ in range(rnd.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        vars_ = [R.variable(n) for n in ("x", "y", "z")]
        I = AlgIdeal(gens, vars_)
        gens_s = (syms["x"], syms["y"], syms["z"])
        ours = sorted(str(sympy.Poly(_to_sympy(g, R, syms), *gens_s).monic().as_expr())
                      for g in I.basis())
        sg = sympy.groebner([_to_sympy(g, R, syms) for g in gens], syms["x"], syms["y"], syms["z"],
                            order="grevlex")
        theirs = sorted(str(sympy.Poly(g, *gens_s).monic().as_expr()) for g in sg.exprs)
        if sg.exprs == [1]:
            assert I.is_unit()
            continue
        assert ours == theirs
        assert I.s_pairs_reduce_to_zero()


def test_parameters_are_coefficients():
    R = DiffRing(1, ["y"], ["a", "b"])
    y, a, b = R.gen("y"), R.gen("a"), R.gen("b")
    I = AlgIdeal([a * y - b])
    assert I.contains(a * y ** 2 - b * y)
    assert not I.is_unit()
    assert AlgIdeal([a]).is_unit()


def test_pair_budget(monkeypatch, R):
    x, y, z = _xyz(R)
    monkeypatch.setenv("DAB_PAIR_BUDGET", "1")
    with pytest.raises(PairBudgetExceeded):
        AlgIdeal([x ** 3 - y, y ** 2 - z * x, z ** 3 - x * y]).basis()

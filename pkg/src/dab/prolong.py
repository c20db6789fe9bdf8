"""Jet truncations of differential ideals.

A differential polynomial of order at most ``l`` is read as an ordinary
polynomial in the jet coordinates ``theta y_j`` with ``|theta| <= l``; the
representation is shared, so flattening only checks the order bound.
"""

from dataclasses import dataclass, field
from math import comb

from .algebra import AlgIdeal
from .decompose import RegularChain
from .diffring import MAIN, ORDERLY, DiffAlgebraError, theta_add, theta_enumerate
from .genint import make_generic


def jet_variables(ring, level, indices=None):
    """Jet coordinates up to ``level``, highest orderly rank first."""
    indices = range(ring.n) if indices is None else indices
    vs = [(MAIN, j, th) for th in theta_enumerate(level, ring.m) for j in indices]
    return sorted(vs, key=ORDERLY.key, reverse=True)


def flatten(p, level):
    if p.main_order() > level:
        raise DiffAlgebraError(f"{p} has order {p.main_order()} > level {level}")
    return p


def shift(p, theta):
    """Shift every jet coordinate of a flattened polynomial by ``theta``."""
    terms = {}
    for mono, c in p.terms.items():
        nm = tuple(sorted(((v[0], v[1], theta_add(v[2], theta)) if v[0] == MAIN else v, e)
                          for v, e in mono))
        terms[nm] = c
    return type(p)(p.ring, terms)


@dataclass
class JetIdeal:
    level: int
    ring: object
    variables: list
    generators: list
    ideal: AlgIdeal
    saturated: bool
    flags: dict = field(default_factory=dict)

    def dimension(self):
        return self.ideal.dimension()

    @property
    def variable_count(self):
        return len(self.variables)


def _source(F):
    if isinstance(F, RegularChain):
        return list(F.elements), F, F.ring
    F = list(F)
    return F, None, None


def prolongations(F, level):
    """``theta f`` for every ``f`` and ``|theta| <= level - ord f``."""
    out = []
    for f in F:
        k = level - f.main_order()
        if k < 0:
            raise DiffAlgebraError(f"level {level} is below the order {f.main_order()} of {f}")
        for th in theta_enumerate(k, f.ring.m):
            d = f.apply_theta(th)
            if not d.is_zero():
                out.append(d)
    return out


def truncate(F, level, ring=None):
    """Jet ideal of ``F`` (a generator list or a regular chain) at ``level``.
    A chain's truncation is saturated by its initials and separants."""
    gens, chain, cring = _source(F)
    ring = ring or cring or (gens[0].ring if gens else None)
    if ring is None:
        raise ValueError("need a ring for an empty generator list")
    if level < 0:
        raise DiffAlgebraError("level must be >= 0")
    maxord = max((g.main_order() for g in gens), default=0)
    if level < maxord:
        raise DiffAlgebraError(f"level {level} is below the maximal order {maxord}")
    vs = jet_variables(ring, level)
    flat = [flatten(ring.lift(g), level) for g in prolongations(gens, level)]
    I = AlgIdeal(flat, vs, ring=ring)
    saturated = False
    if chain is not None:
        for h in chain.inequations:
            I = I.saturate(h)
        saturated = True
    flags = {"saturated": saturated}
    if not saturated and gens:
        flags["unsaturated_truncation"] = True
    return JetIdeal(level, ring, vs, flat, I, saturated, flags)


def jet_dimension(F, level, ring=None):
    return truncate(F, level, ring).dimension()


def ideals_dominant(low, high, low_variables):
    """Closure of the projection of V(high) equals V(low), compared through
    generators: elim(high) and low contain each other (radical ideals
    assumed)."""
    E = high.eliminate(set(low_variables))
    forward = all(low.contains(g) for g in E.basis())
    backward = all(E.contains(g) for g in low.basis())
    return forward and backward


def dominance_check(F, level, ring=None):
    """Is the projection from the level ``level+1`` truncation onto the
    level ``level`` truncation dominant?"""
    lo = truncate(F, level, ring)
    hi = truncate(F, level + 1, ring)
    return ideals_dominant(lo.ideal, hi.ideal, lo.variables)


@dataclass
class WReport:
    level: int
    order: int
    dim_V: int
    dim_W: int
    expected_gap: int
    holds: bool
    y0_elimination_nonzero: object
    flags: dict = field(default_factory=dict)


def section_jet_dims(V, h, r, level, ring=None, y0_name="y0", eliminate=None):
    """Dimension bookkeeping for ``W_l``: the truncation of V, the jets of a
    new indeterminate ``y0`` and the prolongations of the generic polynomial
    with ``y0`` in place of its constant coefficient.

    Checks ``dim W_l = dim V_l + C(l+m, m) - C(l+m-h, m)`` and reports
    whether the elimination ideal in the ``y0`` jets is nonzero.  The
    elimination runs by default only for linear data (``r == 1`` and linear
    generators), where it stays cheap."""
    gens, chain, cring = _source(V if V is not None else [])
    ring = ring or cring or gens[0].ring
    maxord = max((g.main_order() for g in gens), default=0)
    if level < h + maxord:
        raise DiffAlgebraError(f"level {level} is below h + order = {h + maxord}")
    m = ring.m
    Vl = truncate(chain if chain is not None else gens, level, ring)
    dim_V = Vl.dimension()
    G = make_generic(ring, h, r, with_constant=False)
    whole = ring.with_indeterminates([y0_name]).with_params(G.params)
    f = whole.y(ring.n) + _relift(G.poly, whole)
    y_vars = jet_variables(whole, level, range(ring.n))
    y0_vars = jet_variables(whole, level, [ring.n])
    base = [_relift(g, whole) for g in Vl.ideal.basis()]
    gensW = base + prolongations([f], level)
    W = AlgIdeal(gensW, blocks=[y0_vars, y_vars], ring=whole)
    dim_W = W.dimension()
    gap = comb(level + m, m) - comb(level + m - h, m)
    holds = dim_W == dim_V + gap
    nonzero = None
    if eliminate is None:
        eliminate = r == 1 and all(g.degree() <= 1 for g in gens)
    if eliminate:
        Wy = AlgIdeal(gensW, blocks=[y_vars, y0_vars], ring=whole)
        E = Wy.eliminate(set(y0_vars))
        nonzero = any(not g.is_zero() for g in E.basis())
    return WReport(level, h, dim_V, dim_W, gap, holds, nonzero,
                   {"saturated_V": Vl.saturated})


def _relift(p, ring):
    """Move ``p`` into a ring that has more indeterminates and parameters.

    Indeterminates keep their indices; parameters are matched by name."""
    src = p.ring
    terms = {}
    for mono, c in p.terms.items():
        nm = []
        for v, e in mono:
            if v[0] == MAIN:
                nm.append((v, e))
            else:
                nm.append(((v[0], ring.params.index(src.params[v[1]]), v[2]), e))
        terms[tuple(sorted(nm))] = ring.field.convert(c)
    return type(p)(ring, terms)

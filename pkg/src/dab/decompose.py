"""Rosenfeld-Groebner decomposition of radical differential ideals into
regular differential chains, chain membership and Kolchin polynomials.

Polynomials supported only on the parameter block are nonzero elements of
the base field K<a>: a branch hypothesis ``q = 0`` on such a ``q`` is never
made, and a branch whose ideal contains one is inconsistent.
"""

import os
from itertools import permutations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .algebra import AlgIdeal
from .coeffield import QQ, from_sympy, sympy_domain, to_sympy
from .diffring import ORDERLY, PARAM, DiffPolynomial, DiffRing
from .numpoly import classify, kolchin_from_leader_sets
from .reduction import (AutoreducedSet, characteristic_set, delta_pairs, full_reduce,
                        partial_reduce)

DEFAULT_BRANCH_BUDGET = 5000


class DecompositionBudgetExceeded(RuntimeError):
    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = tuple(trace)


# -- normalization ------------------------------------------------------------

def _term_key(mono, R):
    return tuple(sorted(((R.key(v), e) for v, e in mono), reverse=True))


def leading_term(p, R=ORDERLY):
    mono = max(p.terms, key=lambda m: _term_key(m, R))
    return mono, p.terms[mono]


def normalize(p, R=ORDERLY):
    """Canonical associate of ``p``: parameter-monomial content removed and
    the scalar content divided out (primitive integer coefficients with a
    positive leading coefficient over Q, monic over an extension)."""
    if p.is_zero():
        return p
    # common power of each parameter variable
    mins = None
    for mono in p.terms:
        pv = {v: e for v, e in mono if v[0] == PARAM}
        mins = pv if mins is None else {v: min(e, pv[v]) for v, e in mins.items() if v in pv}
    terms = p.terms
    if mins:
        terms = {}
        for mono, c in p.terms.items():
            nm = tuple((v, e - mins.get(v, 0)) for v, e in mono if e - mins.get(v, 0))
            terms[nm] = c
        p = DiffPolynomial(p.ring, terms)
    _, lc = leading_term(p, R)
    field_ = p.ring.field
    if field_ == QQ:
        coeffs = [Fraction(c) for c in p.terms.values()]
        den = lcm(*(c.denominator for c in coeffs))
        num = gcd(*(c.numerator for c in coeffs))
        s = Fraction(den, num)
        if lc < 0:
            s = -s
        if s == 1:
            return p
        return DiffPolynomial(p.ring, {m: _int_if(c * s) for m, c in p.terms.items()})
    if lc == 1:
        return p
    return p.scale(field_.inv(lc))


def _int_if(c):
    return c.numerator if c.denominator == 1 else c


def is_unit(p):
    """Nonzero element of the base field K<a>."""
    return not p.is_zero() and p.is_parametric()


# -- chains -------------------------------------------------------------------

class RegularChain:
    """Coherent autoreduced set with proper saturated ideal.

    ``inequations`` holds the non-unit initials and separants together with
    any extra inequations of the branch, all reduced modulo the chain; the
    represented ideal is ``[chain] : H^oo``.
    """

    def __init__(self, chain, inequations, flags=None, ring=None):
        self.chain = chain
        self._ring = ring if ring is not None else (chain.elements[0].ring if len(chain) else None)
        self.inequations = tuple(inequations)
        self.flags = dict(flags or {})
        self._alg = None

    @property
    def ranking(self):
        return self.chain.ranking

    @property
    def elements(self):
        return self.chain.elements

    @property
    def ring(self):
        return self._ring

    @property
    def leaders(self):
        return self.chain.leaders

    def leader_exponents(self, n=None):
        if n is None:
            n = self.ring.n if self.ring else 0
        return self.chain.leader_sets(n)

    def max_order(self):
        return max((p.main_order() for p in self.elements), default=0)

    def kolchin(self, ring=None):
        ring = ring or self.ring
        return kolchin_from_leader_sets(self.chain.leader_sets(ring.n), ring.m)

    def algebraic_ideal(self):
        """``(chain) : H^oo`` in the variables of the chain."""
        if self._alg is None:
            ring = self.ring
            I = AlgIdeal(list(self.elements), ring=ring)
            for h in self.inequations:
                I = I.saturate(h)
            self._alg = I
        return self._alg

    def contains(self, g):
        ring = self.ring
        g = ring.lift(g) if g.ring != ring else g
        if not self.elements:
            return g.is_zero()
        r = full_reduce(g, self.chain, certify=False).remainder
        if r.is_zero():
            return True
        if not self.inequations:
            # (chain) with unit initials and separants: reduced nonzero
            # polynomials are not members
            return False
        return self.algebraic_ideal().contains(r)

    def sort_key(self):
        R = self.ranking
        return (len(self.elements), tuple(R.key(u) for u in self.leaders),
                tuple(p.format() for p in self.elements))

    def format(self):
        return "{" + ", ".join(p.format() for p in self.elements) + "}"

    def __repr__(self):
        return f"RegularChain({self.format()})"


@dataclass
class Decomposition:
    components: list
    source: list
    ranking: object = ORDERLY
    witnesses: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def is_empty(self):
        return not self.components


@dataclass(frozen=True)
class _Branch:
    eqs: tuple
    ineqs: tuple
    trace: tuple = ()

    def key(self):
        return (frozenset(self.eqs), frozenset(self.ineqs))


@dataclass
class _Outcome:
    children: list = field(default_factory=list)
    chain: object = None
    witness: object = None
    certificate: object = None


# -- the splitting loop -------------------------------------------------------

def _add_unique(seq, items):
    out = list(seq)
    for x in items:
        if x not in out:
            out.append(x)
    return tuple(out)


def _pivots(p):
    """Parameters occurring in ``p`` only as a linear order-zero term with a
    constant coefficient."""
    out = []
    occurs = {}
    for mono in p.terms:
        for v, e in mono:
            if v[0] == PARAM:
                occurs.setdefault(v[1], set()).add((v, e, len(mono)))
    for idx, uses in occurs.items():
        if len(uses) == 1:
            v, e, size = next(iter(uses))
            if e == 1 and size == 1 and not any(v[2]):
                out.append(idx)
    return out


def solvable_parameter_count(eqs, target):
    """Length (capped at ``target``) of a longest sequence e_1..e_k of
    equations with distinct pivot parameters p_i, where e_i is linear in p_i
    with constant coefficient and involves no p_j (nor its derivatives) for
    j < i.  Such equations cut the joint (parameter, unknown) space down to
    a graph over the non-pivot coordinates."""
    info = []
    for p in eqs:
        params = {v[1] for v in p.variables() if v[0] == PARAM}
        info.append((params, _pivots(p)))
    best = 0

    def rec(used_eqs, pivots):
        nonlocal best
        best = max(best, len(pivots))
        if best >= target:
            return
        for i, (params, cands) in enumerate(info):
            if i in used_eqs or params & set(pivots):
                continue
            for c in cands:
                rec(used_eqs | {i}, pivots + [c])
                if best >= target:
                    return

    rec(frozenset(), [])
    return best


def generic_fiber_empty(eqs, ring):
    """Dimension certificate of emptiness over K<a>.

    A zero over K<a> gives a point of the joint variety over K of
    differential dimension at least the number of parameters; ``k``
    solvable equations bound that dimension by ``#params + n - k``."""
    if not ring.params or len(eqs) <= ring.n:
        return False
    return solvable_parameter_count(eqs, ring.n + 1) > ring.n


def _process(branch, R):
    eqs = []
    for p in branch.eqs:
        q = normalize(p, R)
        if q.is_zero():
            continue
        if q.is_parametric():
            return _Outcome(witness=q)
        if q in branch.ineqs:
            return _Outcome()
        if q not in eqs:
            eqs.append(q)
    if eqs and generic_fiber_empty(eqs, eqs[0].ring):
        return _Outcome(certificate="dimension")
    if not eqs:
        return _finish(AutoreducedSet([], R, check=False), branch, R, branch.eqs[0].ring)
    C = characteristic_set(eqs, R)
    in_chain = set(C.elements)
    rems = []
    for p in [p for p in eqs if p not in in_chain] + delta_pairs(C):
        r = normalize(full_reduce(p, C, certify=False).remainder, R)
        if r.is_zero():
            continue
        if r.is_parametric():
            return _Outcome(witness=r)
        if r not in rems:
            rems.append(r)
    hc = []
    splits = []
    for p, (u, init, sep) in zip(C.elements, C.data):
        for kind, b in (("separant", sep), ("initial", init)):
            nb = normalize(b, R)
            if nb.is_parametric():
                continue
            if nb not in hc:
                hc.append(nb)
            if nb in branch.ineqs or any(nb == s[1] for s in splits):
                continue
            splits.append((f"{kind}({C.elements[0].ring.var_name(u)})=0", nb))
    children = []
    if rems:
        children.append(_Branch(_add_unique(C.elements, rems), _add_unique(branch.ineqs, hc), branch.trace))
    for label, nb in splits:
        children.append(_Branch(_add_unique(eqs, [nb]), branch.ineqs, branch.trace + (label,)))
    out = _Outcome(children=children)
    if not rems:
        fin = _finish(C, _Branch(C.elements, _add_unique(branch.ineqs, hc), branch.trace), R, eqs[0].ring)
        out.chain = fin.chain
        out.children += fin.children
        out.witness = fin.witness
    return out


def _finish(C, branch, R, ring):
    """Regularity test of a coherent candidate, plus splitting of univariate
    elements over an algebraic extension."""
    hs = []
    for h in branch.ineqs:
        r = normalize(full_reduce(h, C, certify=False).remainder, R) if len(C) else normalize(h, R)
        if r.is_zero():
            return _Outcome()
        if r.is_parametric() or r in hs:
            continue
        hs.append(r)
    flags = {}
    if not len(C):
        if hs:
            flags["regularity"] = "empty-chain"
        return _Outcome(chain=RegularChain(C, hs, flags, ring))
    chain = RegularChain(C, hs, flags, ring)
    if hs:
        if chain.algebraic_ideal().is_unit():
            return _Outcome()
        flags["regularity"] = "saturation"
    else:
        flags["regularity"] = "unit-initials"
    if ring.field.is_extension():
        for p, u in zip(C.elements, C.leaders):
            if p.variables() != {u} or p.degree_in(u) < 2:
                continue
            factors = [f for f, _ in factor_over_field(p)[1]]
            if len(factors) > 1:
                others = [q for q in C.elements if q != p]
                kids = [_Branch(tuple(others) + (normalize(f, R),), branch.ineqs,
                                branch.trace + (f"factor({ring.var_name(u)})",))
                        for f in sorted(factors, key=lambda f: f.format())]
                return _Outcome(children=kids)
    return _Outcome(chain=chain)


def _thread_count(threads):
    if threads is None:
        threads = int(os.environ.get("DAB_THREADS", "1"))
    return max(1, threads)


def rosenfeld_groebner(F, ranking=ORDERLY, inequations=(), threads=None, branch_budget=None,
                       prune=True):
    """Decompose the radical differential ideal generated by ``F`` (with the
    given inequations) into regular differential chains."""
    F = list(F)
    if not F:
        raise ValueError("need at least one generator")
    ring = F[0].ring
    for p in F[1:] + list(inequations):
        if not (p.ring == ring or ring.extends(p.ring)):
            raise ValueError("generators live in different rings")
    F = [ring.lift(p) for p in F]
    R = ranking
    budget = branch_budget or int(os.environ.get("DAB_BRANCH_BUDGET", DEFAULT_BRANCH_BUDGET))
    ineqs = tuple(normalize(ring.lift(h), R) for h in inequations if not is_unit(ring.lift(h)))
    root = _Branch(tuple(F), ineqs)
    seen = {root.key()}
    frontier = [root]
    chains, witnesses, certified = [], [], []
    flags = {}
    split = _general_component_split(F, ineqs, R, ring)
    if split is not None:
        general, singular = split
        chains.append(general)
        frontier = [singular] if singular is not None else []
        flags["general_component"] = general.format()
    processed = 0
    nthreads = _thread_count(threads)
    pool = ThreadPoolExecutor(nthreads) if nthreads > 1 else None
    try:
        while frontier:
            processed += len(frontier)
            if processed > budget:
                raise DecompositionBudgetExceeded(
                    f"branch budget {budget} exceeded", frontier[0].trace)
            if pool:
                outcomes = list(pool.map(lambda b: _process(b, R), frontier))
            else:
                outcomes = [_process(b, R) for b in frontier]
            nxt = []
            for b, out in zip(frontier, outcomes):
                if out.witness is not None:
                    witnesses.append((b.trace, out.witness))
                if out.certificate is not None:
                    certified.append(b.trace)
                if out.chain is not None:
                    chains.append(out.chain)
                for c in out.children:
                    k = c.key()
                    if k not in seen:
                        seen.add(k)
                        nxt.append(c)
            frontier = nxt
    finally:
        if pool:
            pool.shutdown()
    chains = _dedupe(chains)
    chains.sort(key=RegularChain.sort_key)
    flags["branches"] = processed
    if certified:
        flags["dimension_certificates"] = len(certified)
    if prune:
        chains, pruned = _prune(chains)
        flags["pruned"] = pruned
    witnesses.sort(key=lambda w: (len(w[0]), w[0], w[1].format()))
    return Decomposition(chains, F, R, witnesses, flags)


def ranking_leaders(f):
    """Derivatives that are the leader of ``f`` under some ranking: for each
    indeterminate ranked above the others, the maximal derivatives under the
    orderly rankings obtained by permuting the derivations."""
    m = f.ring.m
    out = set()
    for j in sorted({v[1] for v in f.main_variables()}):
        derivs = [v for v in f.main_variables() if v[1] == j]
        for perm in permutations(range(m)):
            out.add(max(derivs, key=lambda v: (sum(v[2]), tuple(v[2][i] for i in perm))))
    return sorted(out, key=ORDERLY.key, reverse=True)


def is_irreducible_over_base(p):
    """Irreducibility over K<a> of a polynomial, up to parameter-only
    factors (which are units there)."""
    _, factors = factor_over_field(p)
    main = [(f, k) for f, k in factors if not f.is_parametric()]
    return len(main) == 1 and main[0][1] == 1


def _general_component_split(F, ineqs, R, ring):
    """Split off the general component of a single irreducible generator.

    For irreducible f, [f] : S^oo is prime and equal for every ranking, and a
    zero of f lies in it as soon as one separant (for any ranking) does not
    vanish there.  The remaining zeros annihilate every such separant."""
    if len(F) != 1 or ineqs:
        return None
    f = normalize(F[0], R)
    if f.is_parametric() or f.main_order() == 0:
        return None
    us = ranking_leaders(f)
    if len(us) < 2 or not is_irreducible_over_base(f):
        return None
    C = AutoreducedSet([f], R, check=False)
    u, init, sep = C.data[0]
    hc = [normalize(b, R) for b in (sep, init) if not is_unit(b)]
    fin = _finish(C, _Branch((f,), _add_unique((), hc)), R, ring)
    if fin.chain is None:
        return None
    seps = [normalize(f.partial(v), R) for v in us]
    if any(is_unit(s) for s in seps):
        return fin.chain, None
    return fin.chain, _Branch(_add_unique((f,), seps), (), ("separants=0",))


def _dedupe(chains):
    seen, out = set(), []
    for c in chains:
        k = (frozenset(c.elements), frozenset(c.inequations))
        if k not in seen:
            seen.add(k)
            out.append(c)
    return out


def _ideal_contains_chain(big, small):
    """Sufficient test for ``ideal(small) <= ideal(big)``: the elements of
    ``small`` lie in ``big`` and its inequations are not zero divisors
    modulo ``big``."""
    if not all(big.contains(p) for p in small.elements):
        return False
    if not big.elements:
        return True
    for h in small.inequations:
        r = partial_reduce(h, big.chain, certify=False).remainder
        if big.contains(r):
            return False
        if not big.inequations and _is_linear_unit_chain(big):
            continue
        I = big.algebraic_ideal()
        S = I.saturate(r)
        if not all(I.contains(g) for g in S.basis()):
            return False
    return True


def _is_linear_unit_chain(c):
    # linear chains with unit initials give prime ideals: every nonmember is regular
    return all(p.degree() == 1 for p in c.elements)


def _prune(chains):
    removed = set()
    for i, b in enumerate(chains):
        for j, a in enumerate(chains):
            if i == j or j in removed:
                continue
            if _ideal_contains_chain(b, a):
                if j > i and _ideal_contains_chain(a, b):
                    continue  # equal ideals: keep the first one
                removed.add(i)
                break
    return [c for i, c in enumerate(chains) if i not in removed], len(removed)


# -- queries ------------------------------------------------------------------

def radical_member(g, D):
    """Membership of ``g`` in the radical differential ideal presented by
    ``D``: reduction to zero modulo every component."""
    if D.is_empty():
        return True
    return all(c.contains(g) for c in D.components)


def chain_kolchin(C, ring=None):
    return C.kolchin(ring)


def chain_summary(C, ring=None):
    ring = ring or C.ring
    w = C.kolchin(ring)
    return {
        "elements": [p.format() for p in C.elements],
        "leaders": [ring.var_name(u) for u in C.leaders],
        "kolchin": w,
        "classification": classify(w),
    }


# -- extension fields ---------------------------------------------------------

def factor_over_field(p):
    """Irreducible factorization of ``p`` over its coefficient field.

    Returns ``(unit, [(factor, multiplicity), ...])`` with factors sorted
    canonically."""
    import sympy

    ring = p.ring
    F = ring.field
    K = sympy_domain(F)
    vs = sorted(p.variables(), key=ORDERLY.key, reverse=True)
    if not vs:
        return p.constant_value(), []
    syms = sympy.symbols(f"_v0:{len(vs)}")
    index = {v: i for i, v in enumerate(vs)}

    def to_k(c):
        return to_sympy(F, K, c)

    def from_k(c):
        return from_sympy(F, K, c)

    rep = {}
    for mono, c in p.terms.items():
        e = [0] * len(vs)
        for v, k in mono:
            e[index[v]] = k
        rep[tuple(e)] = to_k(c)
    P = sympy.Poly.from_dict(rep, *syms, domain=K)
    unit, facs = P.factor_list()
    out = []
    for f, mult in facs:
        terms = {}
        for e, c in f.rep.to_dict().items():
            mono = tuple(sorted((vs[i], k) for i, k in enumerate(e) if k))
            terms[mono] = from_k(c)
        out.append((DiffPolynomial(ring, terms), mult))
    out.sort(key=lambda t: t[0].format())
    if not isinstance(unit, K.dtype):
        unit = K.from_sympy(unit)
    return from_k(unit), out


def base_change(p, ring):
    """Image of ``p`` in a ring over a larger coefficient field."""
    return DiffPolynomial(ring, {m: ring.field.convert(c) for m, c in p.terms.items()})


def lying_over_check(F, ext, ranking=ORDERLY):
    """Decompose ``F`` over Q and over ``ext`` and compare the component
    Kolchin polynomials."""
    F = list(F)
    ring = F[0].ring
    big = DiffRing(ring.m, ring.names, ring.params, ext)
    D0 = rosenfeld_groebner(F, ranking)
    D1 = rosenfeld_groebner([base_change(p, big) for p in F], ranking)
    w0 = [c.kolchin(ring) for c in D0]
    w1 = [c.kolchin(big) for c in D1]
    all_w = w0 + w1
    equal = all(w.same_polynomial(all_w[0]) for w in all_w)
    return {
        "base_components": len(D0),
        "extension_components": len(D1),
        "base_kolchin": w0,
        "extension_kolchin": w1,
        "kolchin_equal": equal,
        "base": D0,
        "extension": D1,
    }

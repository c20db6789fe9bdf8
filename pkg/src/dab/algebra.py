"""Commutative algebra over the coefficient field: Buchberger Groebner
bases, membership, saturation, elimination and affine dimension.

Ideals live in a polynomial ring over finitely many differential variables
(jet coordinates), represented by :class:`~dab.diffring.DiffPolynomial`
generators.  Parameter-block variables are coefficients: an :class:`AlgIdeal` with
parameters is an ideal of ``K(a)[y]``, and its Groebner basis is computed
over that rational function field.
"""

import heapq
import os

from .coeffield import from_sympy, sympy_domain, to_sympy
from .diffring import ORDERLY, PARAM, DiffPolynomial

DEFAULT_PAIR_BUDGET = 10**5


class PairBudgetExceeded(RuntimeError):
    pass


def pair_budget():
    return int(os.environ.get("DAB_PAIR_BUDGET", DEFAULT_PAIR_BUDGET))


# -- term orders on exponent tuples ------------------------------------------

class BlockOrder:
    """Product of degrevlex orders on contiguous blocks of positions."""

    def __init__(self, sizes):
        self.sizes = tuple(sizes)
        self.bounds = []
        start = 0
        for s in self.sizes:
            self.bounds.append((start, start + s))
            start += s
        self.nvars = start
        self._cache = {}

    def key(self, e):
        k = self._cache.get(e)
        if k is None:
            k = ()
            for s, t in self.bounds:
                seg = e[s:t]
                k += (sum(seg),) + tuple(-x for x in reversed(seg))
            self._cache[e] = k
        return k


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _lead(f, order):
    return max(f, key=order.key)


def _axpy(f, c, mono, g):
    """f - c * mono * g (in place on f)."""
    for e, v in g.items():
        m = _add(e, mono)
        nv = f.get(m, 0) - c * v
        if nv == 0:
            f.pop(m, None)
        else:
            f[m] = nv


def _normal_form(f, G, lms, order, inv):
    f = dict(f)
    r = {}
    while f:
        m = _lead(f, order)
        c = f[m]
        for g, lm in zip(G, lms):
            if _divides(lm, m):
                _axpy(f, c * inv(g[lm]), _sub(m, lm), g)
                break
        else:
            r[m] = c
            del f[m]
    return r


def _monic(f, lm, inv):
    c = inv(f[lm])
    return {e: v * c for e, v in f.items()}


def _spoly(f, g, lf, lg, inv):
    L = _lcm(lf, lg)
    out = {}
    cf, cg = inv(f[lf]), inv(g[lg])
    for e, v in f.items():
        out[_add(e, _sub(L, lf))] = v * cf
    _axpy(out, cg, _sub(L, lg), g)
    return out


def buchberger(polys, order, inv, budget=None):
    """Reduced Groebner basis of exponent-dict polynomials (monic, sorted by
    decreasing leading monomial)."""
    budget = pair_budget() if budget is None else budget
    G, lms = [], []
    heap, pending = [], set()
    processed = 0

    def push(i, j):
        L = _lcm(lms[i], lms[j])
        heapq.heappush(heap, (sum(L), order.key(L), i, j))
        pending.add((i, j))

    def add(f):
        lm = _lead(f, order)
        G.append(_monic(f, lm, inv))
        lms.append(lm)
        k = len(G) - 1
        for i in range(k):
            push(i, k)

    for f in polys:
        f = {e: v for e, v in f.items() if v != 0}
        if f:
            r = _normal_form(f, G, lms, order, inv)
            if r:
                add(r)
    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        processed += 1
        if processed > budget:
            raise PairBudgetExceeded(f"Groebner pair budget {budget} exceeded "
                                     f"({len(G)} basis elements, {len(heap)} pairs pending)")
        li, lj = lms[i], lms[j]
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue  # coprime leading monomials
        L = _lcm(li, lj)
        if any(k not in (i, j) and _divides(lms[k], L)
               and (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending
               for k in range(len(G))):
            continue  # chain criterion
        s = _spoly(G[i], G[j], li, lj, inv)
        r = _normal_form(s, G, lms, order, inv)
        if r:
            add(r)
            if all(v == 0 for v in lms[-1]):
                return [G[-1]]
    # minimal, then reduced basis
    keep = []
    for i, lm in enumerate(lms):
        if any(j != i and _divides(lms[j], lm) and (lms[j] != lm or j < i) for j in range(len(G))):
            continue
        keep.append(i)
    basis = [G[i] for i in keep]
    blms = [lms[i] for i in keep]
    reduced = []
    for k, (g, lm) in enumerate(zip(basis, blms)):
        others = [basis[j] for j in range(len(basis)) if j != k]
        olms = [blms[j] for j in range(len(basis)) if j != k]
        tail = {e: v for e, v in g.items() if e != lm}
        tail = _normal_form(tail, others, olms, order, inv)
        tail[lm] = g[lm]
        reduced.append((lm, tail))
    reduced.sort(key=lambda t: order.key(t[0]), reverse=True)
    return [g for _, g in reduced]


# -- ideals of differential-variable polynomial rings --------------------------

def _default_variable_order(vs):
    return sorted(vs, key=ORDERLY.key, reverse=True)


class _Coefficients:
    """Coefficient arithmetic for a layout: the base field itself, or the
    field of rational functions in the parameter variables occurring."""

    def __init__(self, field, params):
        self.field = field
        self.params = list(params)
        self.index = {v: i for i, v in enumerate(self.params)}
        if self.params:
            import sympy
            from sympy.polys.fields import FracField

            base = sympy_domain(field)
            syms = sympy.symbols(f"_p0:{len(self.params)}")
            self.K = FracField(syms, base)
            self.gens = list(self.K.gens)
            self.base = base
            self.inv = lambda c: 1 / c
        else:
            self.inv = field.inv

    def pack(self, c, parts):
        if not self.params:
            return c
        out = self.K(to_sympy(self.field, self.base, c))
        for v, e in parts:
            out = out * self.gens[self.index[v]] ** e
        return out

    def unpack(self, f):
        """Coefficient dict over K(params) -> list of (param monomial, coefficient)
        per main exponent, denominators cleared."""
        if not self.params:
            return {e: [((), c)] for e, c in f.items()}
        den = None
        for c in f.values():
            d = c.denom
            den = d if den is None else den.lcm(d)
        nums = {e: c.numer * den.exquo(c.denom) for e, c in f.items()}
        g = None
        for n in nums.values():
            g = n if g is None else g.gcd(n)
        if g is not None and g != 1:
            nums = {e: n.exquo(g) for e, n in nums.items()}
        out = {}
        for e, n in nums.items():
            items = []
            for monom, c in n.terms():
                parts = tuple((self.params[i], k) for i, k in enumerate(monom) if k)
                items.append((parts, from_sympy(self.field, self.base, c)))
            out[e] = items
        return out


class _Layout:
    """Positions of the main variables (after ``extra`` slack positions)
    under a block order, plus coefficient arithmetic."""

    def __init__(self, ring, blocks, params, extra=0):
        self.ring = ring
        self.main = [v for b in blocks for v in b]
        self.extra = extra
        sizes = ([extra] if extra else []) + [len(b) for b in blocks if b]
        self.order = BlockOrder(sizes or [0])
        self.width = extra + len(self.main)
        self.index = {v: i + extra for i, v in enumerate(self.main)}
        self.coeffs = _Coefficients(ring.field, params)

    @property
    def inv(self):
        return self.coeffs.inv

    def to_exps(self, p):
        out = {}
        for mono, c in p.terms.items():
            e = [0] * self.width
            parts = []
            for v, k in mono:
                if v[0] == PARAM:
                    parts.append((v, k))
                else:
                    e[self.index[v]] = k
            e = tuple(e)
            val = out.get(e, 0) + self.coeffs.pack(c, parts)
            if val == 0:
                out.pop(e, None)
            else:
                out[e] = val
        return out

    def from_exps(self, f):
        t = {}
        for e, items in self.coeffs.unpack(f).items():
            main = [(self.main[i - self.extra], k) for i, k in enumerate(e) if k and i >= self.extra]
            for parts, c in items:
                t[tuple(sorted(main + list(parts)))] = c
        return DiffPolynomial(self.ring, t)


def _params_of(polys):
    vs = set()
    for p in polys:
        vs |= {v for v in p.variables() if v[0] == PARAM}
    return _default_variable_order(vs)


class AlgIdeal:
    """Ideal generated by polynomials in finitely many variables.

    ``variables``: main variables, in order of decreasing degrevlex priority
    (defaults to all main variables of the generators, highest rank first).
    ``blocks``: optional partition of the main variables into elimination
    blocks, highest block first.  Parameter-block variables are
    coefficients: the ideal lives in ``K(params)[variables]``.
    """

    def __init__(self, generators, variables=None, blocks=None, ring=None, _basis=None):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise ValueError("need a ring for an empty generator list")
            ring = gens[0].ring
        self.ring = ring
        self.generators = [ring.lift(g) for g in gens]
        main_in = set()
        for g in self.generators:
            main_in |= g.main_variables()
        if blocks is not None:
            blocks = [list(b) for b in blocks]
            variables = [v for b in blocks for v in b]
        if variables is None:
            variables = _default_variable_order(main_in)
        variables = list(variables)
        missing = main_in - set(variables)
        if missing:
            variables += _default_variable_order(missing)
            if blocks is not None:
                blocks[-1] = blocks[-1] + _default_variable_order(missing)
        self.variables = variables
        self.blocks = blocks if blocks is not None else [variables]
        self.params = _params_of(self.generators)
        self._basis = _basis
        self._cache = {}

    def _layout(self, params=None, extra=0, blocks=None):
        params = self.params if params is None else params
        return _Layout(self.ring, self.blocks if blocks is None else blocks, params, extra)

    def _basis_in(self, layout):
        """Basis converted into a layout (cached per parameter list)."""
        key = (tuple(layout.main), tuple(layout.coeffs.params))
        if key not in self._cache:
            self._cache[key] = [layout.to_exps(g) for g in self.basis()]
        return self._cache[key]

    # -- Groebner basis --------------------------------------------------
    def basis(self):
        if self._basis is None:
            L = self._layout()
            polys = [L.to_exps(g) for g in self.generators if not g.is_zero()]
            G = buchberger([p for p in polys if p], L.order, L.inv)
            self._basis = [L.from_exps(g) for g in G]
        return self._basis

    def is_unit(self):
        """True when the ideal is the unit ideal over K(parameters)."""
        return any(g.is_parametric() and not g.is_zero() for g in self.basis())

    def is_proper(self):
        return not self.is_unit()

    def _widened_layout(self, f):
        extra_main = f.main_variables() - set(self.variables)
        blocks = [list(b) for b in self.blocks]
        blocks[-1] = blocks[-1] + _default_variable_order(extra_main)
        params = _default_variable_order(set(self.params) | set(_params_of([f])) |
                                         set(_params_of(self.basis())))
        return _Layout(self.ring, blocks, params)

    def normal_form(self, f):
        f = self.ring.lift(f)
        L = self._widened_layout(f)
        G = self._basis_in(L)
        lms = [_lead(g, L.order) for g in G]
        return L.from_exps(_normal_form(L.to_exps(f), G, lms, L.order, L.inv))

    def contains(self, f):
        """Membership over K(parameters)."""
        f = self.ring.lift(f)
        if f.is_zero() or self.is_unit():
            return True
        return self.normal_form(f).is_zero()

    # -- derived ideals --------------------------------------------------
    def saturate(self, h):
        """``I : h^oo`` by the slack-variable method."""
        h = self.ring.lift(h)
        if h.is_zero():
            raise ValueError("cannot saturate by zero")
        J = AlgIdeal(self.generators + [h], self.variables, ring=self.ring)
        L = _Layout(self.ring, [J.variables], J.params, extra=1)
        gens = [L.to_exps(g) for g in self.generators if not g.is_zero()]
        slack = {(0,) * L.width: L.coeffs.pack(1, ())}
        for e, c in L.to_exps(h).items():
            ze = (e[0] + 1,) + e[1:]
            slack[ze] = slack.get(ze, 0) - c
        slack = {e: c for e, c in slack.items() if c != 0}
        G = buchberger(gens + [slack], L.order, L.inv)
        kept = [g for g in G if all(e[0] == 0 for e in g)]
        basis = [L.from_exps(g) for g in kept]
        return AlgIdeal(basis, J.variables, ring=self.ring, _basis=basis)

    def eliminate(self, keep):
        """``I`` intersected with the polynomial ring in ``keep``."""
        keep = set(keep)
        drop = [v for v in self.variables if v not in keep]
        kept = [v for v in self.variables if v in keep]
        J = AlgIdeal(self.generators, blocks=[drop, kept], ring=self.ring)
        kept_basis = [g for g in J.basis() if not (g.main_variables() & set(drop))]
        return AlgIdeal(kept_basis, kept, ring=self.ring, _basis=kept_basis)

    def dimension(self):
        """Krull dimension over K(parameters); -1 for the unit ideal."""
        L = self._layout()
        G = self._basis_in(L)
        supports = []
        for g in G:
            lm = _lead(g, L.order)
            s = frozenset(i for i, k in enumerate(lm) if k)
            if not s:
                return -1
            supports.append(s)
        return len(self.variables) - _min_hitting_set(supports)

    def s_pairs_reduce_to_zero(self):
        """Buchberger's criterion on the computed basis (all pairs)."""
        L = self._layout()
        G = self._basis_in(L)
        lms = [_lead(g, L.order) for g in G]
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                s = _spoly(G[i], G[j], lms[i], lms[j], L.inv)
                if _normal_form(s, G, lms, L.order, L.inv):
                    return False
        return True

    def __repr__(self):
        return f"AlgIdeal({[str(g) for g in self.generators]})"


def _min_hitting_set(supports):
    sets = sorted(set(supports), key=len)
    minimal = []
    for s in sets:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    best = [sum(1 for _ in set().union(*minimal))] if minimal else [0]

    def rec(chosen, remaining):
        if not remaining:
            best[0] = min(best[0], len(chosen))
            return
        # disjoint-set lower bound
        lb, used = 0, set()
        for s in remaining:
            if not (s & used):
                lb += 1
                used |= s
        if len(chosen) + lb >= best[0]:
            return
        s = min(remaining, key=len)
        for v in sorted(s):
            rec(chosen | {v}, [t for t in remaining if v not in t])

    rec(frozenset(), minimal)
    return best[0]


# -- functional interface ---------------------------------------------------------

def groebner(I):
    return I.basis()


def ideal_member(f, I):
    return I.contains(f)


def saturate(I, h):
    return I.saturate(h)


def eliminate(I, keep):
    return I.eliminate(keep)


def affine_dimension(I):
    return I.dimension()

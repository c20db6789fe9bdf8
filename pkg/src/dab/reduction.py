"""Ritt reduction: partial and full pseudo-reduction against autoreduced sets,
Delta-pairs, and bounded membership in powers of a differential ideal."""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .diffring import (MAIN, ORDERLY, DiffAlgebraError, leader_data, rank_of, theta_divides,
                       theta_enumerate, theta_sub)


class AutoreducedSet:
    """Polynomials sorted by rank, pairwise reduced."""

    def __init__(self, elements, ranking=ORDERLY, check=True):
        self.ranking = ranking
        elems = sorted(elements, key=lambda p: rank_of(p, ranking))
        self.elements = tuple(elems)
        self.data = tuple(leader_data(p, ranking) for p in elems)
        self.leaders = tuple(d[0] for d in self.data)
        self.degrees = tuple(p.degree_in(u) for p, u in zip(elems, self.leaders))
        self._theta_cache = {}
        if check:
            for i, p in enumerate(elems):
                others = [j for j in range(len(elems)) if j != i]
                if find_reducible(p, self, full=True, among=others) is not None:
                    raise DiffAlgebraError(f"{p} is not reduced with respect to the other elements")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def initials(self):
        return [d[1] for d in self.data]

    @property
    def separants(self):
        return [d[2] for d in self.data]

    def derivative(self, k, theta):
        key = (k, theta)
        if key not in self._theta_cache:
            self._theta_cache[key] = self.elements[k].apply_theta(theta)
        return self._theta_cache[key]

    def leader_sets(self, n):
        """Per-indeterminate exponent sets of the main-block leaders."""
        out = [[] for _ in range(n)]
        for u in self.leaders:
            if u[0] == MAIN:
                out[u[1]].append(u[2])
        return out


@dataclass
class ReductionCertificate:
    remainder: object
    initial_exponents: list
    separant_exponents: list
    quotients: dict = field(default_factory=dict)

    def multiplier(self, A):
        ring = self.remainder.ring
        out = ring.one()
        for k in range(len(A)):
            out = out * A.initials[k] ** self.initial_exponents[k] * A.separants[k] ** self.separant_exponents[k]
        return out

    def check(self, g, A):
        """Verify ``M*g == sum q*theta(A_k) + remainder`` by expansion."""
        lhs = self.multiplier(A) * g
        rhs = self.remainder
        for (k, theta), q in self.quotients.items():
            rhs = rhs + q * A.derivative(k, theta)
        return (lhs - rhs).is_zero()

    def is_trivial(self):
        return not any(self.initial_exponents) and not any(self.separant_exponents)


def find_reducible(g, A, full=True, among=None):
    """Highest-ranked variable of ``g`` reducible by ``A``.

    Returns ``(v, k, theta)``: ``v`` is a proper derivative ``theta`` of the
    leader of ``A_k`` (theta nonzero), or the leader itself with degree too
    high (theta zero, only when ``full``).  None when ``g`` is reduced.
    """
    R = A.ranking
    idx = range(len(A)) if among is None else among
    for v in sorted(g.main_variables(), key=R.key, reverse=True):
        for k in idx:
            u = A.leaders[k]
            if u[0] != v[0] or u[1] != v[1] or not theta_divides(u[2], v[2]):
                continue
            if v != u:
                return v, k, theta_sub(v[2], u[2])
            if full and g.degree_in(v) >= A.degrees[k]:
                return v, k, tuple(0 for _ in v[2])
    return None


def _top_coefficient(g, v):
    deg, t = 0, {}
    for mono, c in g.terms.items():
        e = 0
        rest = mono
        for i, (w, ew) in enumerate(mono):
            if w == v:
                e = ew
                rest = mono[:i] + mono[i + 1:]
                break
        if e > deg:
            deg, t = e, {rest: c}
        elif e == deg:
            t[rest] = c
    return deg, type(g)(g.ring, t)


def _reduce(g, A, full, certify):
    ring = g.ring
    n = len(A)
    iexp, sexp = [0] * n, [0] * n
    quotients = {}
    zero_theta = ring.identity()
    while True:
        hit = find_reducible(g, A, full)
        if hit is None:
            break
        v, k, theta = hit
        if theta != zero_theta:
            D = A.derivative(k, theta)
            b, e, counts = A.separants[k], 1, sexp
        else:
            D = A.elements[k]
            b, e, counts = A.initials[k], A.degrees[k], iexp
        bconst = b.is_constant()
        binv = ring.field.inv(b.constant_value()) if bconst else None
        vpoly_cache = {}
        while True:
            d, c = _top_coefficient(g, v)
            if d < e or c.is_zero():
                break
            shift = d - e
            if shift not in vpoly_cache:
                vpoly_cache[shift] = ((v, shift),) if shift else ()
            vm = vpoly_cache[shift]
            if bconst:
                q = c.scale(binv).mul_monomial(vm) if vm else c.scale(binv)
                g = g - q * D
            else:
                q = c.mul_monomial(vm) if vm else c
                g = b * g - q * D
                counts[k] += 1
                if certify:
                    quotients = {key: b * val for key, val in quotients.items()}
            if certify:
                key = (k, theta)
                quotients[key] = quotients[key] + q if key in quotients else q
    return ReductionCertificate(g, iexp, sexp, quotients)


def partial_reduce(g, A, certify=True):
    """Remove every proper derivative of a leader of ``A`` from ``g``, using
    separants as multipliers."""
    return _reduce(g, A, full=False, certify=certify)


def full_reduce(g, A, certify=True):
    """Partial reduction followed by degree reduction in the leaders
    themselves (initials as multipliers)."""
    return _reduce(g, A, full=True, certify=certify)


def delta_pairs(A):
    """Cross-derivative conditions for leaders on the same indeterminate."""
    out = []
    for i in range(len(A)):
        for j in range(i + 1, len(A)):
            ui, uj = A.leaders[i], A.leaders[j]
            if ui[0] != uj[0] or ui[1] != uj[1]:
                continue
            lcd = tuple(max(a, b) for a, b in zip(ui[2], uj[2]))
            ti, tj = theta_sub(lcd, ui[2]), theta_sub(lcd, uj[2])
            p = A.separants[j] * A.derivative(i, ti) - A.separants[i] * A.derivative(j, tj)
            out.append(p)
    return out


# -- bounded membership in powers of [h] ---------------------------------------

def _mono_key(mono):
    return (sum(e for _, e in mono), sorted((ORDERLY.key(v), e) for v, e in mono))


@dataclass
class MembershipResult:
    member: bool
    witness: list
    basis_size: int
    diagnostic: str = ""

    def __bool__(self):
        return self.member


def power_spanning_set(h, k, s, r, ring=None):
    """``(M, thetas, element)`` for all ``M * prod theta_i(h)`` of order <= s
    and degree <= r."""
    ring = ring or h.ring
    thetas = theta_enumerate(s, ring.m)
    derivs = {th: h.apply_theta(th) for th in thetas}
    vs = [(MAIN, j, th) for th in thetas for j in range(ring.n)]
    products = []
    for combo in combinations_with_replacement(thetas, k):
        prod = ring.one()
        for th in combo:
            prod = prod * derivs[th]
        products.append((combo, prod))
    out = []
    for combo, prod in products:
        if prod.is_zero() or prod.order() > s:
            continue
        room = r - prod.degree()
        if room < 0:
            continue
        for d in range(room + 1):
            for mc in combinations_with_replacement(range(len(vs)), d):
                mono = {}
                for i in mc:
                    mono[vs[i]] = mono.get(vs[i], 0) + 1
                mono = tuple(sorted(mono.items()))
                out.append((mono, combo, prod.mul_monomial(mono) if mono else prod))
    return out


def bounded_power_membership(g, h, k, s, r):
    """Decide whether ``g`` lies in the order-<=s, degree-<=r truncation of
    ``[h]**k`` by one exact linear solve; returns a :class:`MembershipResult`
    whose witness is a list of ``(coefficient, M, thetas)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ring = g.ring
    h = ring.lift(h) if h.ring != ring else h
    if g.is_zero():
        return MembershipResult(True, [], 0)
    if g.main_order() > s or g.degree() > r:
        return MembershipResult(False, [], 0, "bounds too small to express g")
    span = power_spanning_set(h, k, s, r, ring)
    inv = ring.field.inv
    pivots = {}  # mono -> (row terms, combination)
    for idx, (_, _, elem) in enumerate(span):
        row, combo = _eliminate(dict(elem.terms), {idx: 1}, pivots)
        if row:
            top = max(row, key=_mono_key)
            c = inv(row[top])
            row = {m: v * c for m, v in row.items()}
            combo = {i: v * c for i, v in combo.items()}
            pivots[top] = (row, combo)
    rest, combo = _eliminate(dict(g.terms), {}, pivots, track_negated=True)
    if rest:
        return MembershipResult(False, [], len(span), "linear system has no solution")
    witness = [(c, span[i][0], span[i][1]) for i, c in sorted(combo.items()) if c != 0]
    return MembershipResult(True, witness, len(span))


def _eliminate(row, combo, pivots, track_negated=False):
    # reduce row by pivot rows in decreasing monomial order
    while True:
        cands = [m for m in row if m in pivots]
        if not cands:
            return row, combo
        top = max(cands, key=_mono_key)
        c = row[top]
        prow, pcombo = pivots[top]
        for m, v in prow.items():
            nv = row.get(m, 0) - c * v
            if nv == 0:
                row.pop(m, None)
            else:
                row[m] = nv
        sign = 1 if track_negated else -1
        for i, v in pcombo.items():
            nv = combo.get(i, 0) + sign * c * v
            if nv == 0:
                combo.pop(i, None)
            else:
                combo[i] = nv


def witness_expression(witness, h, ring=None):
    """Rebuild ``sum c * M * prod theta(h)`` from a membership witness."""
    ring = ring or h.ring
    out = ring.zero()
    for c, mono, thetas in witness:
        term = ring.const(c)
        for th in thetas:
            term = term * h.apply_theta(th)
        if mono:
            term = term.mul_monomial(mono)
        out = out + term
    return out


def is_reduced(g, A, full=True):
    return find_reducible(g, A, full) is None


def characteristic_set(polys, ranking=ORDERLY):
    """An autoreduced subset of lowest rank (greedy by rank)."""
    cands = sorted((p for p in polys if not p.is_parametric()), key=lambda p: (rank_of(p, ranking), len(p.terms), p.format()))
    chosen = []
    for p in cands:
        trial = AutoreducedSet(chosen, ranking, check=False)
        if find_reducible(p, trial, full=True) is None:
            chosen.append(p)
    return AutoreducedSet(chosen, ranking, check=False)

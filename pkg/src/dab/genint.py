"""Generic differential hypersurfaces and intersection experiments.

A generic hypersurface of order ``h`` and degree ``r`` is
``a0 + sum a_i * m_i`` over all differential monomials ``m_i`` of order at
most ``h`` and degree ``1..r``, with every coefficient a fresh parameter.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .decompose import radical_member, rosenfeld_groebner
from .diffring import MAIN, ORDERLY, DiffPolynomial, DiffRing, monomial_support, specialize
from .numpoly import classify, free, shifted_binomial


@dataclass
class GenericHypersurface:
    order: int
    degree: int
    support: list
    params: tuple
    poly: DiffPolynomial
    ring: DiffRing

    @property
    def constant_param(self):
        return self.params[0]

    def coefficient_of(self, mono):
        """Parameter name attached to a support monomial."""
        return self.params[1 + self.support.index(mono)]


def _fresh_names(ring, prefix, count):
    taken = set(ring.names) | set(ring.params)
    names = [f"{prefix}{i}" for i in range(count)]
    if taken & set(names):
        raise ValueError(f"parameter prefix {prefix!r} collides with existing names")
    return names


def make_generic(ring, h, r, prefix="a", with_constant=True):
    """Generic hypersurface over ``ring``; parameters ``a0..aN`` follow the
    support enumeration order (``a0`` is the constant term).

    ``ring`` may be a :class:`DiffRing` or an indeterminate count ``n``
    (ordinary case, variables ``y1..yn``)."""
    if isinstance(ring, int):
        ring = DiffRing(1, [f"y{i + 1}" for i in range(ring)] if ring > 1 else ["y"])
    if h < 0 or r < 1:
        raise ValueError("need order h >= 0 and degree r >= 1")
    support = monomial_support(ring, h, r)
    names = _fresh_names(ring, prefix, len(support) + 1)
    big = ring.with_params(names)
    start = len(ring.params)
    poly = big.a(start) if with_constant else big.zero()
    for i, mono in enumerate(support):
        poly = poly + big.a(start + 1 + i).mul_monomial(mono)
    return GenericHypersurface(h, r, support, tuple(names), poly, big)


def _as_generators(V):
    if V is None:
        return []
    if hasattr(V, "elements"):
        return list(V.elements)
    return list(V)


def intersect_generic(V, H, threads=None):
    """Decomposition of ``V`` intersected with the generic hypersurface
    ``H`` under the orderly ranking."""
    gens = [H.ring.lift(p) for p in _as_generators(V)]
    return rosenfeld_groebner(gens + [H.poly], ORDERLY, threads=threads)


def variety_kolchin(V, ring):
    """Kolchin polynomial of ``V`` (generators, or None for affine space).
    ``V`` must decompose into a single chain."""
    gens = _as_generators(V)
    if not gens:
        return free(ring.m, ring.n), None
    D = rosenfeld_groebner(gens, ORDERLY)
    if len(D) != 1:
        raise ValueError(f"variety presents {len(D)} components; a single chain is required")
    return D.components[0].kolchin(ring), D


@dataclass
class BertiniReport:
    input_kolchin: object
    predicted: object
    computed: object
    components: int
    empty: bool
    verdict: str
    dimension: int
    diagnostics: list = field(default_factory=list)
    decomposition: object = None

    @property
    def passed(self):
        return self.verdict == "pass"


def verify_bertini(V, h, r, ring, threads=None):
    """Compare the Kolchin polynomial of ``V`` cut by a generic hypersurface
    of order ``h``, degree ``r`` with ``omega_V - C(t+m-h, m)``."""
    w_V, _ = variety_kolchin(V, ring)
    dim = classify(w_V).diff_dim
    predicted = w_V - shifted_binomial(ring.m, h)
    H = make_generic(ring, h, r)
    D = intersect_generic(V, H, threads=threads)
    diags = []
    computed = None
    if dim == 0:
        ok = D.is_empty()
        if not ok:
            diags.append(f"expected empty intersection, got {len(D)} chains")
    else:
        if len(D) != 1:
            diags.append(f"expected a single chain, got {len(D)}")
            ok = False
        else:
            computed = D.components[0].kolchin(ring)
            ok = computed.same_polynomial(predicted)
            if not ok:
                diags.append(f"computed {computed} differs from predicted {predicted}")
    if len(D) == 1 and computed is None:
        computed = D.components[0].kolchin(ring)
    return BertiniReport(w_V, predicted, computed, len(D), D.is_empty(),
                         "pass" if ok else "fail", dim, diags, D)


# -- through a point ----------------------------------------------------------

def monomial_at_point(mono, point):
    """Value of a differential monomial at a constant point: derivatives of
    constants vanish."""
    val = Fraction(1)
    for v, e in mono:
        if any(v[2]):
            return Fraction(0)
        val *= Fraction(point[v[1]]) ** e
    return val


def point_on_variety(V, point, ring):
    """Does the constant point satisfy every generator of ``V``?"""
    for p in _as_generators(V):
        total = Fraction(0)
        for mono, c in p.terms.items():
            total += c * monomial_at_point(mono, point)
        if total != 0:
            return False
    return True


@dataclass
class ThroughPointReport:
    dimension: int
    count: int
    point: tuple
    point_on_variety: bool
    empty: bool
    components: int
    hypersurfaces: list
    decomposition: object = None

    @property
    def consistent(self):
        """With ``count = dim + 1`` the intersection is nonempty exactly when
        the point lies on V."""
        if self.count != self.dimension + 1:
            return None
        return (not self.empty) == self.point_on_variety


def through_point_experiment(V, point, count, h, r, ring, threads=None):
    """Cut ``V`` by ``count`` independent generic hypersurfaces through the
    constant point (the constant term is solved away)."""
    point = tuple(Fraction(x) for x in point)
    if len(point) != ring.n:
        raise ValueError(f"point has {len(point)} coordinates, ring has {ring.n} indeterminates")
    if count < 1:
        raise ValueError("count must be >= 1")
    w_V, _ = variety_kolchin(V, ring)
    dim = classify(w_V).diff_dim
    support = monomial_support(ring, h, r)
    big = ring
    hyps = []
    for k in range(count):
        names = _fresh_names(big, f"a{k + 1}_", len(support))
        start = len(big.params)
        big = big.with_params(names)
        f = big.zero()
        for j, mono in enumerate(support):
            shifted = big.one().mul_monomial(mono) - big.const(monomial_at_point(mono, point))
            f = f + big.a(start + j) * shifted
        hyps.append((tuple(names), f))
    gens = [big.lift(p) for p in _as_generators(V)] + [big.lift(f) for _, f in hyps]
    D = rosenfeld_groebner(gens, ORDERLY, threads=threads)
    return ThroughPointReport(dim, count, point, point_on_variety(V, point, ring),
                              D.is_empty(), len(D), hyps, D)


# -- specialization of parameter dependences ------------------------------------

def dependence_specialization(V, H, D, ring):
    """Specialize root-branch parameter dependences of an empty intersection.

    The coefficient of the last indeterminate goes to -1 and every other
    parameter to 0; each specialized dependence must lie in the radical
    ideal of ``V`` together with the specialized hypersurface."""
    target = ((MAIN, ring.n - 1, ring.identity()), 1)
    key = H.coefficient_of((target,))
    psi = {name: (-1 if name == key else 0) for name in H.params}
    fspec = specialize(H.poly, psi)
    base = [ring.lift(p) for p in _as_generators(V)]
    fbase = DiffPolynomial(ring, {m: c for m, c in fspec.terms.items()})
    Dspec = rosenfeld_groebner(base + [fbase], ORDERLY)
    results = []
    for trace, q in D.witnesses:
        if trace:
            continue
        s = specialize(q, psi)
        sb = DiffPolynomial(ring, dict(s.terms))
        results.append((q, sb, radical_member(sb, Dspec)))
    return {"specialized_hypersurface": fbase, "results": results,
            "passed": bool(results) and all(ok for _, _, ok in results)}

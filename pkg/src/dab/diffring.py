"""Differential polynomial rings K{y_1..y_n} in m commuting derivations.

Derivative operators are exponent vectors in N^m.  A differential variable is
the tuple ``(block, index, exponents)`` where ``block`` is :data:`PARAM` for
the parameter block (generic coefficients) or :data:`MAIN` for the
differential indeterminates.  Polynomials are sparse maps from monomials
(sorted tuples of ``(variable, exponent)`` pairs) to nonzero coefficients.
"""

from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .coeffield import QQ, FieldError, param_block

PARAM = 0
MAIN = 1
MAX_EXPONENT = 2**16


class DiffAlgebraError(ValueError):
    pass


# -- derivative operators ----------------------------------------------------

def theta_order(theta):
    return sum(theta)


def theta_enumerate(s, m):
    """All operators of order <= s in graded order (order, then reverse-lex
    so that higher powers of the later derivations come last)."""
    if m < 1 or s < 0:
        raise ValueError("need s >= 0 and m >= 1")
    out = []
    for k in range(s + 1):
        out.extend(sorted(_exact_order(k, m), key=lambda e: tuple(reversed(e))))
    return out


def _exact_order(k, m):
    if m == 1:
        return [(k,)]
    out = []
    for first in range(k, -1, -1):
        for rest in _exact_order(k - first, m - 1):
            out.append((first,) + rest)
    return out


def theta_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def theta_divides(a, b):
    """True when operator ``b`` is a derivative of ``a`` (b = theta * a)."""
    return all(x <= y for x, y in zip(a, b))


def theta_sub(b, a):
    return tuple(y - x for x, y in zip(a, b))


# -- rankings ------------------------------------------------------------------

class Ranking:
    """Total order on differential variables.

    ``orderly``: block, then order, then reverse-lex exponents (more weight on
    the last derivation wins), then indeterminate index.
    ``elimination``: block, then indeterminate index, then order, then
    reverse-lex exponents.
    """

    KINDS = ("orderly", "elimination")

    def __init__(self, kind="orderly"):
        if kind not in self.KINDS:
            raise ValueError(f"unknown ranking kind {kind!r}")
        self.kind = kind

    def key(self, v):
        return _rank_key(self.kind, v)

    def __eq__(self, other):
        return isinstance(other, Ranking) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"Ranking({self.kind!r})"


ORDERLY = Ranking("orderly")
ELIMINATION = Ranking("elimination")


@lru_cache(maxsize=None)
def _rank_key(kind, v):
    block, index, exps = v
    rev = tuple(reversed(exps))
    if kind == "orderly":
        return (block, sum(exps), rev, index)
    return (block, index, sum(exps), rev)


def rank_compare(v, w, R=ORDERLY):
    """-1, 0 or 1 as ``v`` ranks below, equal to, or above ``w``."""
    kv, kw = R.key(v), R.key(w)
    return (kv > kw) - (kv < kw)


# -- the ring ------------------------------------------------------------------

class DiffRing:
    """Context for differential polynomials: ``m`` derivations, main
    indeterminate names, a parameter block, and the coefficient field."""

    def __init__(self, m, names, params=(), field=QQ):
        if m < 1:
            raise ValueError("need at least one derivation")
        self.m = m
        self.names = tuple(names)
        decl = param_block(params)
        self.params = decl.names
        self.field = field
        if len(set(self.names)) != len(self.names):
            raise FieldError("indeterminate declared twice")
        clash = set(self.names) & set(self.params)
        if clash:
            raise FieldError(f"parameter name collides with an indeterminate: {sorted(clash)}")
        self._key = (m, self.names, self.params, field)

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, DiffRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        p = f", params={list(self.params)}" if self.params else ""
        return f"DiffRing(m={self.m}, vars={list(self.names)}{p}, field={self.field!r})"

    @property
    def n(self):
        return len(self.names)

    def extends(self, other):
        """True when polynomials of ``other`` are polynomials of ``self``."""
        return (self.m == other.m and self.field == other.field
                and self.names[:len(other.names)] == other.names
                and self.params[:len(other.params)] == other.params)

    def with_params(self, names):
        return DiffRing(self.m, self.names, self.params + tuple(names), self.field)

    def with_indeterminates(self, names):
        return DiffRing(self.m, self.names + tuple(names), self.params, self.field)

    def lift(self, p):
        if p.ring == self:
            return p
        if not self.extends(p.ring):
            raise DiffAlgebraError(f"{p.ring!r} does not embed in {self!r}")
        return DiffPolynomial(self, p.terms)

    # constructors -------------------------------------------------------
    def identity(self):
        return (0,) * self.m

    def delta(self, i):
        """The operator delta_i (1-based)."""
        e = [0] * self.m
        e[i - 1] = 1
        return tuple(e)

    def index_of(self, name):
        if name in self.names:
            return MAIN, self.names.index(name)
        if name in self.params:
            return PARAM, self.params.index(name)
        raise DiffAlgebraError(f"undeclared name {name!r}")

    def variable(self, name, theta=None):
        block, idx = self.index_of(name) if isinstance(name, str) else (MAIN, name)
        theta = self.identity() if theta is None else tuple(theta)
        if len(theta) != self.m:
            raise DiffAlgebraError(f"derivative operator {theta} has arity {len(theta)}, ring has m={self.m}")
        return (block, idx, theta)

    def param_variable(self, name, theta=None):
        idx = self.params.index(name) if isinstance(name, str) else name
        theta = self.identity() if theta is None else tuple(theta)
        return (PARAM, idx, theta)

    def gen(self, name, theta=None):
        """The polynomial ``theta y`` for an indeterminate or parameter name."""
        return self.from_var(self.variable(name, theta))

    def y(self, j, theta=None):
        return self.from_var((MAIN, j, self.identity() if theta is None else tuple(theta)))

    def a(self, j, theta=None):
        return self.from_var(self.param_variable(j, theta))

    def from_var(self, v):
        return DiffPolynomial(self, {((v, 1),): self.field.one()})

    def const(self, c):
        c = self.field.convert(c)
        return DiffPolynomial(self, {(): c} if c != 0 else {})

    def zero(self):
        return DiffPolynomial(self, {})

    def one(self):
        return self.const(1)

    def gens(self):
        return [self.y(j) for j in range(self.n)]

    # printing -----------------------------------------------------------
    def var_name(self, v):
        block, idx, theta = v
        base = self.names[idx] if block == MAIN else self.params[idx]
        if self.m == 1:
            return base + "'" * theta[0]
        if not any(theta):
            return base
        return f"D[{','.join(map(str, theta))}]({base})"

    def format(self, p):
        return p.format()


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        ne = d.get(v, 0) + e
        if ne >= MAX_EXPONENT:
            raise OverflowError(f"exponent {ne} exceeds {MAX_EXPONENT - 1}")
        d[v] = ne
    return tuple(sorted(d.items()))


def _mono_degree(mono):
    return sum(e for _, e in mono)


class DiffPolynomial:
    """Immutable sparse differential polynomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, DiffPolynomial):
            if other.ring == self.ring:
                return self, other
            if self.ring.extends(other.ring):
                return self, self.ring.lift(other)
            if other.ring.extends(self.ring):
                return other.ring.lift(self), other
            raise DiffAlgebraError("polynomials from incompatible rings")
        try:
            return self, self.ring.const(other)
        except (TypeError, FieldError):
            return None, None

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        t = dict(a.terms)
        for mono, c in b.terms.items():
            s = t.get(mono, 0) + c
            if s == 0:
                t.pop(mono, None)
            else:
                t[mono] = s
        return DiffPolynomial(a.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return DiffPolynomial(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if not a.terms or not b.terms:
            return a.ring.zero()
        if len(b.terms) == 1 and () in b.terms:
            c = b.terms[()]
            return DiffPolynomial(a.ring, {k: v * c for k, v in a.terms.items()})
        t = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                mono = _mono_mul(m1, m2)
                s = t.get(mono, 0) + c1 * c2
                if s == 0:
                    t.pop(mono, None)
                else:
                    t[mono] = s
        return DiffPolynomial(a.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out, base = self.ring.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c):
        if c == 0:
            return self.ring.zero()
        return DiffPolynomial(self.ring, {k: v * c for k, v in self.terms.items()})

    def mul_monomial(self, mono, c=1):
        return DiffPolynomial(self.ring, {_mono_mul(k, mono): v * c for k, v in self.terms.items()})

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, DiffPolynomial):
            if other.ring != self.ring and not (self.ring.extends(other.ring) or other.ring.extends(self.ring)):
                return False
            return self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, FieldError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- structure ------------------------------------------------------
    def variables(self):
        return {v for mono in self.terms for v, _ in mono}

    def main_variables(self):
        return {v for v in self.variables() if v[0] == MAIN}

    def is_parametric(self):
        """No main-block variable occurs (an element of the base field K<a>)."""
        return all(v[0] == PARAM for mono in self.terms for v, _ in mono)

    def is_constant(self):
        return all(not mono for mono in self.terms)

    def constant_value(self):
        return self.terms.get((), 0)

    def order(self):
        vs = self.variables()
        return max((sum(v[2]) for v in vs), default=0)

    def main_order(self):
        return max((sum(v[2]) for v in self.main_variables()), default=0)

    def degree(self):
        return max((_mono_degree(m) for m in self.terms), default=0)

    def degree_in(self, v):
        return max((e for mono in self.terms for w, e in mono if w == v), default=0)

    def coefficients_in(self, v):
        """Map ``k -> coefficient of v**k`` (polynomials free of ``v``)."""
        out = {}
        for mono, c in self.terms.items():
            k, rest = 0, []
            for w, e in mono:
                if w == v:
                    k = e
                else:
                    rest.append((w, e))
            out.setdefault(k, {})[tuple(rest)] = c
        return {k: DiffPolynomial(self.ring, t) for k, t in out.items()}

    def coefficient(self, v, k):
        t = {}
        for mono, c in self.terms.items():
            e = 0
            rest = []
            for w, ew in mono:
                if w == v:
                    e = ew
                else:
                    rest.append((w, ew))
            if e == k:
                t[tuple(rest)] = c
        return DiffPolynomial(self.ring, t)

    def partial(self, v):
        """Formal partial derivative with respect to the variable ``v``."""
        t = {}
        for mono, c in self.terms.items():
            for i, (w, e) in enumerate(mono):
                if w == v:
                    nm = mono[:i] + (((w, e - 1),) if e > 1 else ()) + mono[i + 1:]
                    t[nm] = t.get(nm, 0) + c * e
                    break
        return DiffPolynomial(self.ring, {k: c for k, c in t.items() if c != 0})

    def derivative(self, i):
        """Apply the derivation delta_i (1-based)."""
        step = self.ring.delta(i)
        t = {}
        for mono, c in self.terms.items():
            for j, (w, e) in enumerate(mono):
                dw = (w[0], w[1], theta_add(w[2], step))
                rest = mono[:j] + (((w, e - 1),) if e > 1 else ()) + mono[j + 1:]
                nm = _mono_mul(rest, ((dw, 1),))
                s = t.get(nm, 0) + c * e
                if s == 0:
                    t.pop(nm, None)
                else:
                    t[nm] = s
        return DiffPolynomial(self.ring, t)

    def apply_theta(self, theta):
        p = self
        for i, k in enumerate(theta, start=1):
            for _ in range(k):
                p = p.derivative(i)
        return p

    def substitute(self, mapping):
        """Replace variables by polynomials (or field elements)."""
        out = self.ring.zero()
        cache = {}
        for mono, c in self.terms.items():
            term = self.ring.const(c)
            rest = []
            for v, e in mono:
                if v in mapping:
                    val = mapping[v]
                    if not isinstance(val, DiffPolynomial):
                        val = self.ring.const(val)
                    key = (v, e)
                    if key not in cache:
                        cache[key] = val ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term.mul_monomial(tuple(rest))
            out = out + term
        return out

    def map_coefficients(self, fn, ring=None):
        ring = ring or self.ring
        t = {}
        for mono, c in self.terms.items():
            nc = fn(c)
            if nc != 0:
                t[mono] = nc
        return DiffPolynomial(ring, t)

    # -- printing -------------------------------------------------------
    def sorted_terms(self, ranking=None):
        R = ranking or ORDERLY

        def key(item):
            mono, _ = item
            return (_mono_degree(mono), sorted((R.key(v), e) for v, e in mono))

        return sorted(self.terms.items(), key=key, reverse=True)

    def format(self):
        if not self.terms:
            return "0"
        ring = self.ring
        pieces = []
        for mono, c in self.sorted_terms():
            factors = []
            for v, e in sorted(mono, key=lambda ve: ORDERLY.key(ve[0]), reverse=True):
                name = ring.var_name(v)
                factors.append(name if e == 1 else f"{name}^{e}")
            neg, mag = _split_sign(c, ring.field)
            if not factors:
                s = mag
            elif mag == "1":
                s = "*".join(factors)
            else:
                s = mag + "*" + "*".join(factors)
            pieces.append((neg, s))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, s in pieces[1:]:
            out += (" - " if neg else " + ") + s
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"DiffPolynomial({self.format()!r})"


def _split_sign(c, field):
    s = field.format(c)
    if s.startswith("-"):
        return True, s[1:]
    return False, s


# -- ring-level operations -------------------------------------------------------

def apply_theta(p, theta):
    return p.apply_theta(theta)


def monomial_support(ring, s, r):
    """All differential monomials of degree 1..r in Theta(s)(y), as
    monomial tuples, graded by degree and ordered by the operator-then-index
    variable list.  The constant monomial 1 is excluded."""
    if s < 0 or r < 1:
        raise ValueError("need s >= 0 and r >= 1")
    vs = [(MAIN, j, th) for th in theta_enumerate(s, ring.m) for j in range(ring.n)]
    out = []
    for d in range(1, r + 1):
        for combo in combinations_with_replacement(range(len(vs)), d):
            mono = {}
            for i in combo:
                mono[vs[i]] = mono.get(vs[i], 0) + 1
            out.append(tuple(sorted(mono.items())))
    return out


def support_count(n, m, s, r):
    return comb(n * comb(s + m, m) + r, r) - 1


def leader(p, R=ORDERLY):
    vs = p.main_variables()
    if not vs:
        raise DiffAlgebraError(f"{p} has no main-block variable")
    return max(vs, key=R.key)


def leader_data(p, R=ORDERLY):
    """``(leader, initial, separant)`` of ``p`` under the ranking ``R``."""
    u = leader(p, R)
    d = p.degree_in(u)
    return u, p.coefficient(u, d), p.partial(u)


def rank_of(p, R=ORDERLY):
    """Sort key of a polynomial's rank: (leader key, degree in leader)."""
    u = leader(p, R)
    return (R.key(u), p.degree_in(u))


def specialize(p, psi):
    """Differential specialization of parameters.

    ``psi`` maps parameter names (or order-0 parameter variables) to field
    elements or polynomials.  A derivative ``theta a`` becomes ``theta psi(a)``,
    which is zero for constants.  Assignments to main variables are errors.
    """
    ring = p.ring
    base = {}
    explicit = {}
    for key, val in psi.items():
        if isinstance(key, str):
            if key in ring.names:
                raise DiffAlgebraError(f"cannot specialize main indeterminate {key!r}")
            v = ring.param_variable(key)
        else:
            v = key
        if v[0] == MAIN:
            raise DiffAlgebraError(f"cannot specialize main variable {ring.var_name(v)}")
        if any(v[2]):
            explicit[v] = val
        else:
            base[v[1]] = val if isinstance(val, DiffPolynomial) else ring.const(val)
    mapping = {}
    for v in p.variables():
        if v[0] != PARAM or v[1] not in base:
            continue
        mapping[v] = ring.lift(base[v[1]]).apply_theta(v[2]) if any(v[2]) else base[v[1]]
    for v, val in explicit.items():
        if v[1] not in base:
            raise DiffAlgebraError(f"derivative {ring.var_name(v)} assigned without its parameter")
        implied = ring.lift(base[v[1]]).apply_theta(v[2])
        given = val if isinstance(val, DiffPolynomial) else ring.const(val)
        if implied != given:
            raise DiffAlgebraError(f"inconsistent assignment for {ring.var_name(v)}")
    return p.substitute(mapping)


def diff_homog_degree(p):
    """Degree ``d`` with ``p(lambda*y) = lambda**d * p(y)`` for a fresh
    differential indeterminate ``lambda``, or None."""
    ring = p.ring
    lam_name = "_lambda"
    while lam_name in ring.names or lam_name in ring.params:
        lam_name += "_"
    big = ring.with_indeterminates([lam_name])
    lam = big.y(big.n - 1)
    q = big.lift(p)
    mapping = {}
    for v in q.main_variables():
        scaled = lam * big.y(v[1])
        mapping[v] = scaled.apply_theta(v[2])
    expanded = q.substitute(mapping)
    lam_var = (MAIN, big.n - 1, big.identity())
    # homogeneous of degree d iff expanded == lambda^d * p for some d
    degs = expanded.coefficients_in(lam_var)
    if len(degs) != 1:
        return None
    d, coeff = next(iter(degs.items()))
    if any(v[0] == MAIN and v[1] == big.n - 1 for v in coeff.variables()):
        return None
    if coeff != q:
        return None
    return d


def random_polynomial(ring, rng, nterms=4, max_order=1, max_degree=3, params=False):
    """Random polynomial for property tests."""
    vs = [(MAIN, j, th) for th in theta_enumerate(max_order, ring.m) for j in range(ring.n)]
    if params and ring.params:
        vs += [(PARAM, j, th) for th in theta_enumerate(max_order, ring.m) for j in range(len(ring.params))]
    t = {}
    for _ in range(nterms):
        d = rng.randint(0, max_degree)
        mono = {}
        for _ in range(d):
            v = rng.choice(vs)
            mono[v] = mono.get(v, 0) + 1
        c = rng.randint(-4, 4)
        if c:
            key = tuple(sorted(mono.items()))
            s = t.get(key, 0) + c
            if s:
                t[key] = s
            else:
                t.pop(key, None)
    return DiffPolynomial(ring, t)

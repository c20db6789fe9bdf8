"""Exact coefficient fields.

Two kinds of base field are supported: the rationals, and simple algebraic
extensions ``Q[alpha]/(minpoly)`` of degree at most 8.  Rational elements are
plain ``int`` / ``fractions.Fraction`` values; extension elements are
:class:`ExtElement` instances holding power-basis coordinates.  Both kinds
support the ordinary Python arithmetic operators, so polynomial code in the
rest of the package is written once for every field.
"""

from dataclasses import dataclass
from fractions import Fraction

MAX_EXT_DEGREE = 8


class FieldError(ValueError):
    pass


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


# -- dense univariate helpers over Q (coefficient lists, lowest degree first)

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _upoly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lc = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = Fraction(a[-1]) / lc
        q[shift] = c
        for i, bi in enumerate(b):
            a[i + shift] -= c * bi
        a = _trim(a)
    return _trim(q), a


def _upoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _trim(out)


def _upoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


class BaseField:
    """Common interface of coefficient fields."""

    kind = None
    degree = 1
    minpoly = None
    name = None

    def convert(self, x):
        raise NotImplementedError

    def zero(self):
        return 0

    def one(self):
        return 1

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / self.convert(x)

    def is_extension(self):
        return self.kind == "simple-extension"

    def format(self, c):
        """Parseable string for the coefficient ``c``."""
        raise NotImplementedError

    def random_element(self, rng, bound=5):
        raise NotImplementedError


class RationalField(BaseField):
    kind = "rationals"

    def convert(self, x):
        if isinstance(x, (int, Fraction)):
            return x
        if isinstance(x, ExtElement):
            if x.is_rational():
                return x.coords[0]
            raise FieldError("extension element is not rational")
        raise TypeError(f"cannot convert {x!r} to a rational")

    def format(self, c):
        c = Fraction(c)
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"

    def random_element(self, rng, bound=5):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class SimpleExtension(BaseField):
    """``Q[alpha]/(minpoly)`` with ``minpoly`` monic and irreducible.

    ``minpoly`` is given as a coefficient list, lowest degree first, e.g.
    ``[-2, 0, 1]`` for ``alpha**2 - 2``.
    """

    kind = "simple-extension"

    def __init__(self, minpoly, name="alpha", check=True):
        mp = [_frac(c) for c in _trim(minpoly)]
        if len(mp) < 2:
            raise FieldError("minimal polynomial must have degree >= 1")
        if mp[-1] != 1:
            lc = mp[-1]
            mp = [c / lc for c in mp]
        self.minpoly = tuple(mp)
        self.degree = len(mp) - 1
        self.name = name
        if self.degree > MAX_EXT_DEGREE:
            raise FieldError(f"extension degree {self.degree} exceeds {MAX_EXT_DEGREE}")
        if check and not is_irreducible(self.minpoly):
            raise FieldError(f"minimal polynomial of {name} is reducible over Q")

    def __eq__(self, other):
        return isinstance(other, SimpleExtension) and self.minpoly == other.minpoly \
            and self.name == other.name

    def __hash__(self):
        return hash((self.minpoly, self.name))

    def __repr__(self):
        return f"QQ[{self.name}]/({self.format_minpoly()})"

    def format_minpoly(self):
        return _format_upoly(self.minpoly, self.name)

    def reduce(self, coeffs):
        """Reduce a coefficient list modulo the minimal polynomial."""
        _, r = _upoly_divmod([_frac(c) for c in coeffs], list(self.minpoly))
        return self._pad(r)

    def _pad(self, r):
        r = list(r) + [Fraction(0)] * (self.degree - len(r))
        return tuple(r)

    def element(self, coeffs):
        return ExtElement(self, self.reduce(coeffs))

    def gen(self):
        return self.element([0, 1])

    def convert(self, x):
        if isinstance(x, ExtElement):
            if x.field != self:
                raise FieldError("element belongs to a different extension")
            return x
        if isinstance(x, (int, Fraction)):
            return ExtElement(self, self._pad([_frac(x)]))
        raise TypeError(f"cannot convert {x!r} into {self!r}")

    def format(self, c):
        if isinstance(c, ExtElement):
            if c.is_rational():
                return QQ.format(c.coords[0])
            body = _format_upoly(c.coords, self.name)
            if sum(1 for x in c.coords if x != 0) == 1:
                return body
            return "(" + body + ")"
        return QQ.format(c)

    def random_element(self, rng, bound=5):
        return self.element([Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                             for _ in range(self.degree)])


def _format_upoly(coeffs, name):
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
        mag = abs(c)
        if mono:
            cs = "" if mag == 1 else QQ.format(mag) + "*"
            s = cs + mono
        else:
            s = QQ.format(mag)
        parts.append(("-" if c < 0 else "+", s))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, s in parts[1:]:
        out += f" {sign} {s}"
    return out


class ExtElement:
    """Element of a :class:`SimpleExtension`, in the power basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("mixing elements of different extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExtElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExtElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExtElement(self.field, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.field.element(_upoly_mul(list(self.coords), list(o.coords)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * ext_inverse(o, self.field)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * ext_inverse(self, self.field)

    def __pow__(self, k):
        if k < 0:
            return ext_inverse(self, self.field) ** (-k)
        out, base = self.field.convert(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, ExtElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    def __bool__(self):
        return any(c != 0 for c in self.coords)

    def __repr__(self):
        return self.field.format(self)


def ext_inverse(x, F):
    """Inverse of ``x`` in ``F`` by the extended Euclidean algorithm."""
    if F.kind == "rationals":
        x = F.convert(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / x
    x = F.convert(x)
    if not x:
        raise ZeroDivisionError("inverse of zero")
    # s*x + t*minpoly = g, with g a nonzero constant since minpoly is irreducible
    r0, r1 = list(F.minpoly), _trim(list(x.coords))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _upoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _upoly_sub(s0, _upoly_mul(q, s1))
    g = r1[0]
    return F.element([c / g for c in s1])


def is_irreducible(minpoly):
    """Irreducibility over Q of a univariate polynomial (low-to-high coeffs)."""
    import sympy

    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t**i
               for i, c in enumerate(map(_frac, minpoly)))
    return sympy.Poly(expr, t, domain="QQ").is_irreducible


def sympy_domain(F):
    """The sympy ground domain presenting ``F`` (its primitive element is
    the extension generator, so power-basis coordinates carry over)."""
    import sympy

    if not F.is_extension():
        return sympy.QQ
    t = sympy.Symbol("_t")
    mp = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(F.minpoly))
    K = sympy.QQ.algebraic_field(sympy.AlgebraicNumber(sympy.CRootOf(mp, 0)))
    mod = [Fraction(int(c.numerator), int(c.denominator)) for c in K.mod.to_list()]
    if mod != list(reversed(F.minpoly)):
        raise FieldError("algebraic field presented with a different primitive element")
    return K


def to_sympy(F, K, c):
    """Field element -> element of the sympy domain ``K``."""
    import sympy

    if F.is_extension():
        coords = list(F.convert(c).coords)
        while len(coords) > 1 and coords[-1] == 0:
            coords.pop()
        return K([K.dom.convert(sympy.Rational(x.numerator, x.denominator)) for x in reversed(coords)])
    c = Fraction(c)
    return K.convert(sympy.Rational(c.numerator, c.denominator))


def from_sympy(F, K, c):
    """Element of the sympy domain ``K`` -> field element."""
    if F.is_extension():
        coeffs = [Fraction(int(x.numerator), int(x.denominator)) for x in c.to_list()]
        return F.element(list(reversed(coeffs)))
    out = Fraction(int(c.numerator), int(c.denominator))
    return out.numerator if out.denominator == 1 else out


@dataclass(frozen=True)
class ParameterDeclaration:
    """A block of differential parameters (independent transcendentals)."""

    names: tuple = ()

    def __len__(self):
        return len(self.names)


def param_block(names):
    names = tuple(names)
    if len(set(names)) != len(names):
        dup = sorted({n for n in names if names.count(n) > 1})
        raise FieldError(f"parameter declared twice: {', '.join(dup)}")
    return ParameterDeclaration(names)


def make_field(minpoly=None, name="alpha"):
    """``QQ`` when ``minpoly`` is None, else the simple extension it defines."""
    if minpoly is None:
        return QQ
    return SimpleExtension(minpoly, name)

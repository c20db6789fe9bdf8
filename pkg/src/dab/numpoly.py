"""Numerical (Kolchin) polynomials in the binomial basis.

A numerical polynomial in ``m`` derivations is stored as coefficients
``a_0..a_m`` of ``sum_i a_i * C(t+i, i)``.  The basis is the canonical
storage: formulas for dimension polynomials are exact coefficient statements
in it.  Monomial-basis conversion exists for display only.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial


def binom(x, i):
    """Generalized binomial coefficient C(x, i) = x(x-1)...(x-i+1)/i!.

    Defined for every integer (or rational) ``x``; no clamping for negative x.
    """
    if i < 0:
        return 0
    num = 1
    for k in range(i):
        num *= (x - k)
    return Fraction(num) / factorial(i)


@dataclass(frozen=True)
class NumericalPolynomial:
    coeffs: tuple
    m: int
    threshold: int = 0

    def __post_init__(self):
        if len(self.coeffs) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} binomial coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def __call__(self, t):
        return numpoly_eval(self, t)

    def __add__(self, other):
        _check_m(self, other)
        return NumericalPolynomial(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                                   self.m, max(self.threshold, other.threshold))

    def __sub__(self, other):
        return numpoly_sub(self, other)

    def __neg__(self):
        return NumericalPolynomial(tuple(-a for a in self.coeffs), self.m, self.threshold)

    def same_polynomial(self, other):
        """Equality of the closed forms, ignoring the validity thresholds."""
        return self.m == other.m and self.coeffs == other.coeffs

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def monomial_coeffs(self):
        """Coefficients in the power basis ``t**0 .. t**m`` (display only)."""
        out = [Fraction(0)] * (self.m + 1)
        for i, a in enumerate(self.coeffs):
            # C(t+i, i) = prod_{k=1..i} (t+k) / i!
            poly = [Fraction(1)]
            for k in range(1, i + 1):
                poly = [Fraction(0)] + poly
                for j in range(len(poly) - 1):
                    poly[j] += k * poly[j + 1]
            for j, c in enumerate(poly):
                out[j] += a * c / factorial(i)
        return tuple(out)

    def format_binomial(self):
        terms = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            basis = "1" if i == 0 else f"C(t+{i},{i})"
            terms.append(f"{_fmt(a)}*{basis}" if basis != "1" else _fmt(a))
        return " + ".join(terms) if terms else "0"

    def format_expanded(self):
        parts = []
        for j in range(self.m, -1, -1):
            c = self.monomial_coeffs()[j]
            if c == 0:
                continue
            mono = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            if mono:
                s = mono if abs(c) == 1 else f"{_fmt(abs(c))}*{mono}"
            else:
                s = _fmt(abs(c))
            parts.append(("-" if c < 0 else "+", s))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __str__(self):
        return self.format_expanded()


def _fmt(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _check_m(p, q):
    if p.m != q.m:
        raise ValueError(f"numerical polynomials in different numbers of derivations ({p.m} vs {q.m})")


def zero(m):
    return NumericalPolynomial((0,) * (m + 1), m)


def free(m, count=1):
    """``count * C(t+m, m)``: the dimension polynomial of ``count`` free indeterminates."""
    return NumericalPolynomial((0,) * m + (count,), m)


def numpoly_eval(p, t):
    return sum((a * binom(t + i, i) for i, a in enumerate(p.coeffs)), Fraction(0))


def numpoly_sub(p, q):
    _check_m(p, q)
    return NumericalPolynomial(tuple(a - b for a, b in zip(p.coeffs, q.coeffs)),
                               p.m, max(p.threshold, q.threshold))


def from_values(values, m, threshold=0):
    """Binomial-basis coefficients of the degree-<=m polynomial taking
    ``values[k]`` at ``t = k`` (k = 0..m)."""
    if len(values) != m + 1:
        raise ValueError("need exactly m+1 interpolation values")
    n = m + 1
    rows = [[binom(t + i, i) for i in range(n)] + [Fraction(values[t])] for t in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [x / pv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return NumericalPolynomial(tuple(rows[i][n] for i in range(n)), m, threshold)


def shifted_binomial(m, k):
    """``C(t + m - k, m)`` as a numerical polynomial."""
    return from_values([binom(t + m - k, m) for t in range(m + 1)], m, threshold=max(k, 0))


def minimal_elements(E):
    pts = sorted(set(tuple(e) for e in E), key=lambda v: (sum(v), v))
    out = []
    for v in pts:
        if not any(all(a <= b for a, b in zip(u, v)) for u in out):
            out.append(v)
    return out


def dim_poly_of_pointset(E, m):
    """Numerical polynomial counting points of N^m with |v| <= t lying above
    no element of ``E``, by inclusion-exclusion over the minimal elements."""
    mins = minimal_elements(E)
    for v in mins:
        if len(v) != m:
            raise ValueError(f"point {v} is not in N^{m}")
    total = free(m)
    threshold = 0
    # group the subset joins by their norm: each contributes +-C(t+m-|join|, m)
    by_norm = {}
    for size in range(1, len(mins) + 1):
        sign = -1 if size % 2 else 1
        for S in combinations(mins, size):
            join = tuple(max(c) for c in zip(*S))
            k = sum(join)
            by_norm[k] = by_norm.get(k, 0) + sign
            threshold = max(threshold, k)
    for k in sorted(by_norm):
        c = by_norm[k]
        if c:
            sb = shifted_binomial(m, k)
            total = NumericalPolynomial(tuple(a + c * b for a, b in zip(total.coeffs, sb.coeffs)), m)
    return NumericalPolynomial(total.coeffs, m, threshold)


def kolchin_from_leader_sets(leaders, m):
    """Sum of the point-set dimension polynomials of the per-indeterminate
    leader exponent sets."""
    total = zero(m)
    for E in leaders:
        total = total + dim_poly_of_pointset(E, m)
    return total


def count_lattice_points(E, m, t):
    """Brute-force count used as the independent oracle for point sets."""
    mins = [tuple(e) for e in E]
    count = 0

    def rec(prefix, budget):
        nonlocal count
        if len(prefix) == m:
            if not any(all(a >= b for a, b in zip(prefix, e)) for e in mins):
                count += 1
            return
        for x in range(budget + 1):
            rec(prefix + (x,), budget - x)

    rec((), t)
    return count


@dataclass(frozen=True)
class DimClassification:
    diff_dim: int
    diff_type: int
    typical_dim: Fraction


def classify(p):
    nz = [i for i, a in enumerate(p.coeffs) if a != 0]
    diff_type = max(nz) if nz else -1
    typical = p.coeffs[diff_type] if nz else Fraction(0)
    a_m = p.coeffs[p.m]
    if a_m.denominator != 1 or a_m < 0:
        raise ValueError(f"leading binomial coefficient {a_m} is not a differential dimension")
    return DimClassification(int(a_m), diff_type, typical)


def binomial_identity_rhs(m, h):
    """``C(t+m, m) - sum_{i<h} C(t+m-1-i, m-1)``."""
    out = free(m)
    for i in range(h):
        term = from_values([binom(t + m - 1 - i, m - 1) for t in range(m + 1)], m)
        out = out - term
    return NumericalPolynomial(out.coeffs, m, threshold=h)

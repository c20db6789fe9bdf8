"""Problem files: a ring declaration, parameters, named polynomials, named
systems and command lines.

    ring m=1 vars=x,y,z ext=zeta^4 + zeta^3 + zeta^2 + zeta + 1
    params a, b
    poly f = x^5 - y^5 + z*(x*y' - y*x')^2
    system S = f, D[1](z)
    ritt

Expressions use ``+ - * / ^``, parentheses, integers, names, ``D[e1,..,em](v)``
derivatives, and for ``m = 1`` primes (``y''``) or the ``dy`` shorthand.
"""

import re
import shlex
from dataclasses import dataclass, field

from .coeffield import QQ, FieldError, SimpleExtension
from .diffring import DiffAlgebraError, DiffRing

COMMANDS = ("rgb", "kolchin", "reduce", "intersect", "bertini", "through", "prolong",
            "lemma361", "homog", "powmember", "lyover", "ritt")
RESERVED = {"D"}


class ProblemError(ValueError):
    def __init__(self, message, line=None, col=None):
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)
        self.message = message
        self.line = line
        self.col = col


# -- tokens -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text, line=1, col0=1):
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        col = col0 + m.start(m.lastindex)
        if m.group(1):
            out.append(("num", m.group(1), line, col))
        elif m.group(2):
            out.append(("name", m.group(2), line, col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()[],'=":
                raise ProblemError(f"unexpected character {ch!r}", line, col)
            out.append(("op", ch, line, col))
        pos = m.end()
    out.append(("end", "", line, col0 + len(text)))
    return out


# -- expressions ----------------------------------------------------------------

class ExprParser:
    """Recursive descent over one expression list."""

    def __init__(self, tokens, ring, polys=None, ext_name=None):
        self.toks = tokens
        self.i = 0
        self.ring = ring
        self.polys = polys or {}
        self.ext_name = ext_name

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ProblemError(msg, tok[2], tok[3])

    def expect(self, value):
        t = self.take()
        if t[1] != value or t[0] == "end":
            raise self.error(f"expected {value!r}, found {t[1] or 'end of line'!r}", t)
        return t

    def at_end(self):
        return self.peek()[0] == "end"

    def expr_list(self):
        out = [self.expr()]
        while self.peek()[1] == "," and self.peek()[0] == "op":
            self.take()
            out.append(self.expr())
        if not self.at_end():
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def single(self):
        e = self.expr()
        if not self.at_end():
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self):
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise self.error("division only by a nonzero constant", tok)
                acc = acc.scale(self.ring.field.inv(rhs.constant_value()))
        return acc

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            u = self.unary()
            return -u if op == "-" else u
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "num":
                raise self.error("exponent must be a natural number", t)
            base = base ** int(t[1])
        return base

    def atom(self):
        t = self.peek()
        if t[0] == "num":
            self.take()
            return self.ring.const(int(t[1]))
        if t[0] == "op" and t[1] == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return self.primes(e)
        if t[0] == "name" and t[1] == "D" and self.toks[self.i + 1][1] == "[":
            return self.derivative()
        if t[0] == "name":
            self.take()
            return self.primes(self.name(t))
        raise self.error(f"unexpected {t[1] or 'end of line'!r}")

    def primes(self, p):
        k = 0
        first = None
        while self.peek()[0] == "op" and self.peek()[1] == "'":
            first = first or self.peek()
            self.take()
            k += 1
        if k and self.ring.m != 1:
            raise self.error("primes are only allowed when m = 1; use D[..](v)", first)
        for _ in range(k):
            p = p.derivative(1)
        return p

    def derivative(self):
        self.take()
        open_tok = self.expect("[")
        exps = []
        while True:
            t = self.take()
            if t[0] != "num":
                raise self.error("derivative exponents must be natural numbers", t)
            exps.append(int(t[1]))
            if self.peek()[1] == ",":
                self.take()
                continue
            break
        self.expect("]")
        if len(exps) != self.ring.m:
            raise self.error(f"D[..] has arity {len(exps)}, ring has m={self.ring.m}", open_tok)
        self.expect("(")
        t = self.take()
        if t[0] != "name":
            raise self.error("expected a variable name", t)
        base = self.name(t)
        self.expect(")")
        return base.apply_theta(tuple(exps))

    def name(self, t):
        s = t[1]
        ring = self.ring
        if s in ring.names or s in ring.params:
            return ring.gen(s)
        if s in self.polys:
            return ring.lift(self.polys[s])
        if self.ext_name is not None and s == self.ext_name:
            return ring.const(ring.field.gen())
        if ring.m == 1 and s.startswith("d"):
            k = len(s) - len(s.lstrip("d"))
            rest = s[k:]
            if rest in ring.names or rest in ring.params:
                return ring.gen(rest, (k,))
        raise self.error(f"undeclared name {s!r}", t)


def parse_expression(text, ring, polys=None, ext_name=None, line=1, col=1):
    return ExprParser(tokenize(text, line, col), ring, polys, ext_name).single()


def parse_expression_list(text, ring, polys=None, ext_name=None, line=1, col=1):
    return ExprParser(tokenize(text, line, col), ring, polys, ext_name).expr_list()


# -- problem files ----------------------------------------------------------------

@dataclass
class ProblemFile:
    ring: DiffRing
    polys: dict = field(default_factory=dict)
    systems: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)

    @property
    def ext_name(self):
        return self.ring.field.name if self.ring.field.is_extension() else None

    def system(self, name):
        if name not in self.systems:
            raise ProblemError(f"unknown system {name!r}")
        return list(self.systems[name])

    def expression(self, text):
        return parse_expression(text, self.ring, self.polys, self.ext_name)

    def expressions(self, text):
        """A system name or an inline comma-separated expression list."""
        if text in self.systems:
            return self.system(text)
        return parse_expression_list(text, self.ring, self.polys, self.ext_name)

    def format(self):
        return format_problem(self)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def _check_name(s, line, col):
    if not _NAME.match(s) or s in RESERVED:
        raise ProblemError(f"invalid name {s!r}", line, col)
    return s


def _split_names(text, line, col):
    names = [s.strip() for s in text.split(",")]
    if not names or any(not s for s in names):
        raise ProblemError("empty name in list", line, col)
    return [_check_name(s, line, col) for s in names]


def parse_minpoly(text, line=1, col=1):
    """``(name, coefficients low..high)`` of a univariate polynomial in one
    fresh symbol."""
    names = sorted({t[1] for t in tokenize(text, line, col) if t[0] == "name"})
    if len(names) != 1:
        raise ProblemError("extension polynomial must involve exactly one symbol", line, col)
    name = _check_name(names[0], line, col)
    tmp = DiffRing(1, [name])
    p = parse_expression(text, tmp, line=line, col=col)
    if p.main_order() > 0:
        raise ProblemError("extension polynomial cannot contain derivatives", line, col)
    v = tmp.variable(name)
    deg = p.degree_in(v)
    return name, [p.coefficient(v, k).constant_value() if not p.coefficient(v, k).is_zero() else 0
                  for k in range(deg + 1)]


def parse_ring(rest, line, col):
    m_ = re.match(r"\s*m\s*=\s*(\d+)\s+vars\s*=\s*([A-Za-z0-9_,\s]+?)(?:\s+ext\s*=(.*))?\s*$", rest)
    if not m_:
        raise ProblemError("expected 'ring m=<nat> vars=<names> [ext=<polynomial>]'", line, col)
    m = int(m_.group(1))
    if m < 1:
        raise ProblemError("m must be at least 1", line, col)
    names = _split_names(m_.group(2).replace(" ", ""), line, col)
    field_ = QQ
    if m_.group(3) is not None:
        ext_col = col + m_.start(3)
        sym, coeffs = parse_minpoly(m_.group(3), line, ext_col)
        if sym in names:
            raise ProblemError(f"extension symbol {sym!r} collides with an indeterminate", line, ext_col)
        try:
            field_ = SimpleExtension(coeffs, sym)
        except FieldError as e:
            raise ProblemError(str(e), line, ext_col) from None
    try:
        return DiffRing(m, names, (), field_)
    except (FieldError, ValueError) as e:
        raise ProblemError(str(e), line, col) from None


def parse_problem(text):
    """Parse a problem file; unknown names are rejected here."""
    ring = None
    prob = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        body = body.strip()
        head, _, rest = body.partition(" ")
        rest_col = indent + len(head) + 2
        if head == "ring":
            if prob is not None:
                raise ProblemError("ring declared twice", lineno, indent + 1)
            ring = parse_ring(rest, lineno, rest_col)
            prob = ProblemFile(ring)
            continue
        if prob is None:
            raise ProblemError("the first declaration must be 'ring'", lineno, indent + 1)
        if head == "params":
            names = _split_names(rest.replace(" ", ""), lineno, rest_col)
            if prob.polys or prob.systems:
                raise ProblemError("params must precede polys and systems", lineno, indent + 1)
            for s in names:
                if s == prob.ext_name:
                    raise ProblemError(f"parameter {s!r} collides with the extension symbol", lineno, rest_col)
            try:
                prob.ring = prob.ring.with_params(names)
            except (FieldError, ValueError) as e:
                raise ProblemError(str(e), lineno, rest_col) from None
        elif head in ("poly", "system"):
            name, eq, expr = rest.partition("=")
            name = name.strip()
            if not eq:
                raise ProblemError(f"expected '{head} <name> = ...'", lineno, rest_col)
            _check_name(name, lineno, rest_col)
            if name in prob.ring.names or name in prob.ring.params or name == prob.ext_name:
                raise ProblemError(f"name {name!r} is already a variable", lineno, rest_col)
            if name in prob.polys or name in prob.systems:
                raise ProblemError(f"name {name!r} defined twice", lineno, rest_col)
            ecol = rest_col + len(rest.partition("=")[0]) + 1
            try:
                if head == "poly":
                    prob.polys[name] = parse_expression(expr, prob.ring, prob.polys, prob.ext_name, lineno, ecol)
                else:
                    prob.systems[name] = parse_expression_list(expr, prob.ring, prob.polys,
                                                               prob.ext_name, lineno, ecol)
            except DiffAlgebraError as e:
                raise ProblemError(str(e), lineno, ecol) from None
        elif head in COMMANDS:
            try:
                argv = shlex.split(rest)
            except ValueError as e:
                raise ProblemError(str(e), lineno, rest_col) from None
            prob.commands.append((head, argv))
        else:
            raise ProblemError(f"unknown declaration {head!r}", lineno, indent + 1)
    if prob is None:
        raise ProblemError("missing ring declaration")
    # lift polys to the final ring (params may have been added after nothing)
    prob.polys = {k: prob.ring.lift(v) for k, v in prob.polys.items()}
    prob.systems = {k: [prob.ring.lift(p) for p in v] for k, v in prob.systems.items()}
    return prob


def format_problem(prob):
    ring = prob.ring
    head = f"ring m={ring.m} vars={','.join(ring.names)}"
    if ring.field.is_extension():
        head += f" ext={ring.field.format_minpoly()}"
    lines = [head]
    if ring.params:
        lines.append("params " + ", ".join(ring.params))
    for name, p in prob.polys.items():
        lines.append(f"poly {name} = {p.format()}")
    for name, ps in prob.systems.items():
        lines.append(f"system {name} = " + ", ".join(p.format() for p in ps))
    for cmd, argv in prob.commands:
        lines.append(" ".join([cmd] + [shlex.quote(a) for a in argv]))
    return "\n".join(lines) + "\n"


def canonical(prob):
    """Comparable canonical form of a parsed problem."""
    return (prob.ring, tuple(prob.polys.items()),
            tuple((k, tuple(v)) for k, v in prob.systems.items()),
            tuple((c, tuple(a)) for c, a in prob.commands))


def ring_from_options(m=1, vars_="y", params=(), ext=None):
    text = f"ring m={m} vars={vars_}" + (f" ext={ext}" if ext else "")
    prob = parse_problem(text)
    if params:
        prob.ring = prob.ring.with_params(params)
    return prob

"""Polynomial expression parser: literals, variables, + - * ^ and parentheses."""
import re
from fractions import Fraction


class ParseError(ValueError):
    """Syntax error carrying the offending character position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                             pos + len(text[pos:]) - len(text[pos:].lstrip()))
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("var", m.group(2), start))
        else:
            out.append(("op", "^" if m.group(3) == "**" else m.group(3), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Poly:
    """Sparse polynomial {exponent tuple: Fraction} over a fixed variable list."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms, nvars):
        self.terms = {e: c for e, c in terms.items() if c}
        self.nvars = nvars

    @classmethod
    def const(cls, c, nvars):
        return cls({(0,) * nvars: Fraction(c)}, nvars)

    def __add__(self, o):
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return _Poly(t, self.nvars)

    def __neg__(self):
        return _Poly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __mul__(self, o):
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return _Poly(t, self.nvars)

    def constant_value(self):
        if any(any(e) for e in self.terms):
            return None
        return self.terms.get((0,) * self.nvars, Fraction(0))


class _Parser:
    def __init__(self, text, variables):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = list(variables)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}", tok[2])

    def parse(self):
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("unexpected trailing input", tok[2])
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p + (-q)
        return p

    def term(self):
        p = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                q = self.unary()
                if tok[1] == "*":
                    p = p * q
                else:
                    c = q.constant_value()
                    if c is None:
                        raise ParseError("division only by a constant", tok[2])
                    if c == 0:
                        raise ParseError("division by zero", tok[2])
                    p = p * _Poly.const(1 / c, len(self.vars))
            elif tok[0] in ("num", "var") or (tok[0] == "op" and tok[1] == "("):
                # implicit multiplication such as 2s or 3(s+v)
                p = p * self.unary()
            else:
                return p

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                raise ParseError("negative exponent", self.peek()[2])
            etok = self.take()
            if etok[0] != "num":
                raise ParseError("exponent must be a non-negative integer", etok[2])
            result = _Poly.const(1, len(self.vars))
            for _ in range(etok[1]):
                result = result * base
            return result
        return base

    def atom(self):
        tok = self.take()
        n = len(self.vars)
        if tok[0] == "num":
            return _Poly.const(tok[1], n)
        if tok[0] == "var":
            if tok[1] not in self.vars:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
            e = [0] * n
            e[self.vars.index(tok[1])] = 1
            return _Poly({tuple(e): Fraction(1)}, n)
        if tok[0] == "op" and tok[1] == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError("unexpected end of input" if tok[0] == "end" else
                         f"unexpected {tok[1]!r}", tok[2])


def parse_polynomial(text, variables):
    """Expand an expression into ``{exponent tuple: Fraction}``."""
    return _Parser(text, variables).parse().terms


def parse_form(text, variables=("s", "v")):
    """Parse a binary form; returns ``(degree, coeffs)`` with coeffs[i] of x^i y^(d-i).

    Raises
    ------
    ParseError
        On syntax errors.
    ValueError
        If the polynomial is zero or not homogeneous.
    """
    terms = parse_polynomial(text, variables)
    if not terms:
        raise ValueError(f"{text!r} is the zero polynomial")
    degrees = {sum(e) for e in terms}
    if len(degrees) != 1:
        raise ValueError(f"{text!r} is not homogeneous (degrees {sorted(degrees)})")
    d = degrees.pop()
    coeffs = [Fraction(0)] * (d + 1)
    for (i, _), c in terms.items():
        coeffs[i] = c
    return d, coeffs


def parse_univariate(text, variable="t"):
    """Parse a polynomial in one variable; returns ascending coefficients."""
    terms = parse_polynomial(text, (variable,))
    if not terms:
        return []
    d = max(e[0] for e in terms)
    coeffs = [Fraction(0)] * (d + 1)
    for (i,), c in terms.items():
        coeffs[i] = c
    return coeffs

"""Parser for the ASCII polynomial grammar.

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := power ('*' power | '/' number)*
    power   := atom ('^' integer)?
    atom    := number | 'x' | 'y' | 'z' | '(' expr ')'
    number  := digits ('/' digits)?    -- inside a term '/' divides by a number

Whitespace is ignored.  The Unicode minus sign U+2212 is accepted as '-'.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import NotHomogeneous, ParseError
from .poly import Exponent, HomogeneousPoly, LinearForm, format_term

Poly = dict[Exponent, Fraction]

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|(\*\*|[-+*/^()]))")
_VARS = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _add(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> Poly:
        result = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return result

    def expr(self) -> Poly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = _add({}, self.term(), sign)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                acc = _add(acc, self.term(), -1 if val == "-" else 1)
            else:
                return acc

    def term(self) -> Poly:
        acc = self.power()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = _mul(acc, self.power())
            elif kind == "op" and val == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num" or int(v2) == 0:
                    raise ParseError("division is only allowed by a nonzero integer", p2)
                acc = {e: c / int(v2) for e, c in acc.items()}
            else:
                return acc

    def power(self) -> Poly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2, p2 = self.take()
            if k2 != "num":
                raise ParseError("exponent must be a nonnegative integer", p2)
            result: Poly = {(0, 0, 0): Fraction(1)}
            for _ in range(int(v2)):
                result = _mul(result, base)
            return result
        return base

    def atom(self) -> Poly:
        kind, val, pos = self.take()
        if kind == "num":
            return {(0, 0, 0): Fraction(int(val))} if int(val) else {}
        if kind == "var":
            return {_VARS[val]: Fraction(1)}
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            return {e: -c for e, c in self.power().items()}
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_terms(text: str) -> Poly:
    """Parse into an exponent -> coefficient table (not necessarily homogeneous)."""
    return _Parser(text).parse()


def parse_polynomial(text: str) -> HomogeneousPoly:
    """Parse and check homogeneity; NotHomogeneous names the offending term."""
    terms = parse_terms(text)
    if not terms:
        raise ParseError("the polynomial is zero")
    ordered = sorted(terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    degree = sum(ordered[0][0])
    for e, c in ordered:
        if sum(e) != degree:
            raise NotHomogeneous(format_term(c, e), degree)
    return HomogeneousPoly.from_dict(terms, degree)


def parse_line(text: str) -> LinearForm:
    g = parse_polynomial(text)
    if g.degree != 1:
        raise ParseError(f"{text!r} is not a linear form")
    return LinearForm.from_poly(g)

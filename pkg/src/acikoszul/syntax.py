"""Textual polynomial syntax: ``2*x^2*y - 1/3*z + 5``.

Grammar (whitespace insensitive, variable names case-sensitive)::

    poly   := [sign] term (sign term)*
    term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
    coeff  := INT ['/' INT]
    factor := NAME ['^' INT]
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Polynomial, PolyRing

_TOKEN = re.compile(r"(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^])")


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(ValueError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown variable {name!r} at position {position}")
        self.name = name
        self.position = position


def _tokenize(text: str):
    pos, n = 0, len(text)
    tokens = []
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = tokens[i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            what = value or kind
            found = tok[1] or "end of input"
            raise PolySyntaxError(f"expected {what}, found {found!r}", tok[2])
        i += 1
        return tok

    def factor(exps):
        name = take("name")
        if name[1] not in ring.index:
            raise UnknownVariable(name[1], name[2])
        e = 1
        if peek()[1] == "^":
            take("op", "^")
            e = int(take("int")[1])
        exps[ring.index[name[1]]] += e

    def term(sign):
        exps = [0] * ring.nvars
        coeff = Fraction(sign)
        tok = peek()
        if tok[0] == "int":
            num = int(take("int")[1])
            den = 1
            if peek()[1] == "/":
                take("op", "/")
                den_tok = take("int")
                den = int(den_tok[1])
                if den == 0:
                    raise PolySyntaxError("zero denominator", den_tok[2])
            coeff *= Fraction(num, den)
            if peek()[1] != "*":
                return tuple(exps), coeff
            take("op", "*")
        elif tok[0] != "name":
            found = tok[1] or "end of input"
            raise PolySyntaxError(f"expected a term, found {found!r}", tok[2])
        factor(exps)
        while peek()[1] == "*":
            take("op", "*")
            factor(exps)
        return tuple(exps), coeff

    terms = []
    sign = 1
    if peek()[1] in "+-" and peek()[0] == "op":
        sign = -1 if take("op")[1] == "-" else 1
    terms.append(term(sign))
    while peek()[0] != "end":
        tok = peek()
        if tok[1] not in ("+", "-"):
            raise PolySyntaxError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
        take("op")
        terms.append(term(-1 if tok[1] == "-" else 1))
    return ring.from_terms(terms)


def _signed(c, p: int) -> Fraction:
    if p:
        return Fraction(c - p if c > p // 2 else c)
    return Fraction(c)


def format_monomial(exps, names) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial) -> str:
    if not f:
        return "0"
    out = []
    for exps, c in f.terms():
        c = _signed(c, f.ring.char)
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(exps, f.ring.names)
        num = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        if not mono:
            body = num
        elif a == 1:
            body = mono
        else:
            body = f"{num}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)

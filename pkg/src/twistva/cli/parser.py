"""Parser for element expressions such as ``3/2 * phi * (T D^(2) phi) - eps^2 * psi``.

Grammar::

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := prefix* atom
    prefix  := 'T' ['^' INT] | 'D' ['^' '(' INT ')']
    atom    := NUMBER ['/' NUMBER] | 'eps' ['^' INT] | 'phi' | 'psi' | 'h' | 'e{' INT '}' | '(' expr ')'

Prefix operators act on the factor to their right (module action), so
``D^(2) T phi`` is D^(2) applied to T phi.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..hopf import Ambient, HopfElement, act_D, act_T, gen, grouplike, mul
from ..rational import eps


class ParseError(ValueError):
    def __init__(self, message, pos, expected=None, text=""):
        self.pos = pos
        self.expected = expected
        self.text = text
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at position {pos}{hint}")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z]+)|(?P<op>[-+*/^(){}]))")


def _tokenize(text):
    out, pos = [], 0
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text=text)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, ambient: Ambient):
        self.text = text
        self.amb = ambient
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value, what=None):
        t = self.take()
        if t[1] != value:
            raise ParseError(f"unexpected {t[1]!r}" if t[1] else "unexpected end of input",
                             t[2], what or repr(value), self.text)
        return t

    def integer(self):
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        t = self.take()
        if t[0] != "num":
            raise ParseError(f"unexpected {t[1]!r}" if t[1] else "unexpected end of input",
                             t[2], "an integer", self.text)
        return sign * int(t[1])

    def expr(self):
        neg = False
        if self.peek()[1] == "-":
            self.take()
            neg = True
        out = self.term()
        if neg:
            out = -out
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.factor()
        while self.peek()[1] == "*":
            self.take()
            out = mul(out, self.factor())
        return out

    def factor(self):
        t = self.peek()
        if t[0] == "name" and t[1] == "T":
            self.take()
            k = 1
            if self.peek()[1] == "^":
                self.take()
                pos = self.peek()[2]
                k = self.integer()
                if not 0 <= k < self.amb.N:
                    raise ParseError(f"T-power {k} must lie in [0, {self.amb.N})", pos,
                                     text=self.text)
            elif self.amb.N <= 1:
                raise ParseError(f"T-power 1 must lie in [0, {self.amb.N})", t[2], text=self.text)
            return act_T(self.factor(), k)
        if t[0] == "name" and t[1] == "D":
            self.take()
            n = 1
            if self.peek()[1] == "^":
                self.take()
                self.expect("(")
                n = self.integer()
                if n < 0:
                    raise ParseError("negative derivative order", t[2], text=self.text)
                self.expect(")")
            return act_D(self.factor(), n)
        return self.atom()

    def atom(self):
        kind, val, pos = self.take()
        amb = self.amb
        if kind == "num":
            c = Fraction(int(val))
            if self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise ParseError(f"unexpected {d[1]!r}", d[2], "a denominator", self.text)
                if int(d[1]) == 0:
                    raise ParseError("division by zero", d[2], text=self.text)
                c = c / int(d[1])
            c = int(c) if c.denominator == 1 else c
            return HopfElement.one(amb) * c
        if kind == "name":
            if val == "eps":
                k = 1
                if self.peek()[1] == "^":
                    self.take()
                    k = self.integer()
                return HopfElement.one(amb) * eps(k, amb.N)
            if val == "e":
                self.expect("{")
                m = self.integer()
                self.expect("}")
                if not amb.lattice:
                    raise ParseError(f"e{{{m}}} needs a lattice algebra", pos, text=self.text)
                return grouplike(amb, m)
            if val in ("phi", "psi", "h"):
                if val not in amb.bases:
                    raise ParseError(f"unknown symbol {val!r} for {amb.label()}", pos,
                                     " or ".join(amb.bases), self.text)
                return gen(amb, val)
            raise ParseError(f"unknown symbol {val!r}", pos,
                             "phi, psi, h, e{m}, eps, T or D", self.text)
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", pos,
                         "a factor", self.text)


def parse_expr(text: str, ambient: Ambient) -> HopfElement:
    """Parse ``text`` into a canonical element of ``ambient``."""
    p = _Parser(text, ambient)
    out = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise ParseError(f"unexpected {t[1]!r}", t[2], "'+', '-', '*' or end of input", text)
    return out

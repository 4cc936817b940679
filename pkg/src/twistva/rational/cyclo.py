"""Exact arithmetic in the cyclotomic field Q(eps), eps a primitive N-th root of unity.

Elements are stored as coefficient vectors in the power basis 1, eps, ..., eps^(d-1)
with d = phi(N), reduced modulo the N-th cyclotomic polynomial.  Any result that
happens to be rational is handed back as an ``int`` or ``Fraction`` so that the
common cases N = 1, 2 never allocate a ``Cyclo`` at all.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

__all__ = ["Cyclo", "eps", "cyclotomic_poly", "totient", "is_scalar", "scalar_str",
           "scalar_to_json", "scalar_from_json", "demote", "inv"]


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _polymul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polydivmod(a, b):
    a = [Fraction(x) for x in a]
    b = _trim(b)
    lead = Fraction(b[-1])
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
    return _trim(q), _trim(a)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, r = _polydivmod(num, cyclotomic_poly(d))
            assert not r
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce(p, n):
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    p = list(p) + [0] * max(0, d - len(p))
    for top in range(len(p) - 1, d - 1, -1):
        c = p[top]
        if c:
            p[top] = 0
            for i in range(d):
                p[top - d + i] -= c * phi[i]
    return p[:d]


def demote(n: int, coeffs):
    """Return the field element with these power-basis coefficients, as a rational if possible."""
    coeffs = [Fraction(c) for c in coeffs]
    if all(c == 0 for c in coeffs[1:]):
        c0 = coeffs[0] if coeffs else Fraction(0)
        return int(c0) if c0.denominator == 1 else c0
    return Cyclo(n, tuple(coeffs))


def _coeffs(x, n):
    if isinstance(x, Cyclo):
        if x.n != n:
            raise ValueError(f"mixing cyclotomic orders {x.n} and {n}")
        return list(x.c)
    return [Fraction(x)] + [Fraction(0)] * (totient(n) - 1)


class Cyclo:
    """An element of Q(eps_N) with a non-rational value.

    Construct through :func:`eps` or :func:`demote`; arithmetic with ``int`` and
    ``Fraction`` is supported on both sides.
    """

    __slots__ = ("n", "c")

    def __init__(self, n: int, c: tuple):
        self.n = n
        self.c = c

    def _other(self, o):
        if isinstance(o, (Cyclo, int, Fraction)):
            return _coeffs(o, self.n)
        return None

    def __add__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return demote(self.n, [a + b for a, b in zip(self.c, oc)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, tuple(-a for a in self.c))

    def __sub__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return demote(self.n, [a - b for a, b in zip(self.c, oc)])

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return demote(self.n, [a * o for a in self.c])
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return demote(self.n, _reduce(_polymul(self.c, oc), self.n))

    __rmul__ = __mul__

    def inverse(self):
        # extended Euclid against the cyclotomic polynomial
        r0, r1 = [Fraction(x) for x in cyclotomic_poly(self.n)], _trim(self.c)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _polydivmod(r0, r1)
            prod = _polymul(q, s1)
            s2 = [(s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
                  for i in range(max(len(s0), len(prod)))]
            r0, r1, s0, s1 = r1, r, s1, _trim(s2)
        c = r1[0]
        return demote(self.n, _reduce([x / c for x in s1], self.n))

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return demote(self.n, [a / o for a in self.c])
        if isinstance(o, Cyclo):
            return self * o.inverse()
        return NotImplemented

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = 1, self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, Cyclo):
            return self.n == o.n and self.c == o.c
        if isinstance(o, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.c))

    def __bool__(self):
        return True

    def __repr__(self):
        return scalar_str(self)


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, Cyclo)) and not isinstance(x, bool)


def inv(x):
    """Multiplicative inverse of a non-zero scalar."""
    if isinstance(x, Cyclo):
        return x.inverse()
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    f = Fraction(1) / x
    return int(f) if f.denominator == 1 else f


def eps(k: int, n: int):
    """eps_n ** k, reduced; rational whenever possible."""
    k %= n
    if n <= 2 or k == 0:
        return 1 if k == 0 else -1
    if 2 * k == n:
        return -1
    p = [0] * k + [1]
    return demote(n, _reduce(p, n))


def _frac_str(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def scalar_str(x) -> str:
    """Render a scalar using ``p/q`` and ``eps^k``."""
    if not isinstance(x, Cyclo):
        return _frac_str(x)
    parts = []
    for k, c in enumerate(x.c):
        if c == 0:
            continue
        mono = "" if k == 0 else ("eps" if k == 1 else f"eps^{k}")
        if not mono:
            parts.append(_frac_str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{_frac_str(c)}*{mono}")
    s = " + ".join(parts).replace("+ -", "- ")
    return f"({s})"


def scalar_to_json(x):
    if isinstance(x, Cyclo):
        return {"eps": [[c.numerator, c.denominator] for c in x.c], "order": x.n}
    x = Fraction(x)
    return [x.numerator, x.denominator]


def scalar_from_json(obj):
    if isinstance(obj, dict):
        return demote(obj["order"], [Fraction(p, q) for p, q in obj["eps"]])
    if isinstance(obj, int):
        return obj
    p, q = obj
    f = Fraction(p, q)
    return int(f) if f.denominator == 1 else f


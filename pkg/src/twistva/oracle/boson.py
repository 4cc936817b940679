"""Oscillator Fock spaces and exponential vertex operators for the A, B and D bosons.

States are polynomials in oscillators x_n times e^{c alpha}.  Types A and D use
h_n = d/dx_n and h_{-n} = n x_n; type B uses odd n only, with h_n = d/dx_n and
h_{-n} = (n/2) x_n.  A monomial is a sorted tuple of (index, power) pairs.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from gmpy2 import mpq


def _weight(mono):
    return sum(i * p for i, p in mono)


def _mono_mul(a, b):
    d = dict(a)
    for i, p in b:
        d[i] = d.get(i, 0) + p
    return tuple(sorted(d.items()))


class VertexOp:
    """exp(sum c_n x_n z^{dn}) exp(sum a_n d/dx_n z^{-dn}) e^{m alpha} z^{d m charge + pre}.

    ``kind`` 'A' uses every n >= 1 with c_n = m and a_n = -m/n; 'B' uses odd n with c_n = m,
    a_n = -2m/n and no charge power, so e^{-alpha}_B(z) = e^{alpha}_B(-z).  ``d`` = 2 gives the D-type operators e^{m alpha}_A(z^2).
    """

    def __init__(self, kind: str, m: int, d: int = 1, pre: int = 0):
        if kind not in ("A", "B"):
            raise ValueError(f"unknown boson type {kind!r}")
        if kind == "B" and m not in (1, -1):
            raise ValueError("type B charges are +1 or -1 (e^{2 alpha} is identified with 1)")
        self.kind, self.m, self.d, self.pre = kind, m, d, pre
        self._cre = {0: {(): mpq(1)}}
        self._cre_top = 0

    def _indices(self):
        return (lambda n: n % 2 == 1) if self.kind == "B" else (lambda n: n >= 1)

    def _c(self, n):
        return self.m

    def _a(self, n):
        return mpq(-2 * self.m, n) if self.kind == "B" else mpq(-self.m, n)

    def creation(self, p):
        """Polynomial coefficient of exp(sum c_n x_n t^n) at t^p."""
        if p > self._cre_top:
            ok = self._indices()
            table = {q: {} for q in range(p + 1)}
            table[0][()] = mpq(1)
            for n in range(1, p + 1):
                if not ok(n):
                    continue
                c = self._c(n)
                new = {q: dict(t) for q, t in table.items()}
                for q, poly in table.items():
                    for k in range(1, (p - q) // n + 1):
                        coef = mpq(c ** k, factorial(k))
                        tgt = new[q + n * k]
                        for mono, v in poly.items():
                            nm = _mono_mul(mono, ((n, k),))
                            tgt[nm] = tgt.get(nm, 0) + v * coef
                table = new
            self._cre = table
            self._cre_top = p
        return self._cre.get(p, {})

    def annihilate(self, mono, cap=None):
        """exp(sum a_n d/dx_n t^{-n}) x^mono as [(q, monomial, coef)] with q the t^{-q} power.

        Terms whose surviving monomial has weight above ``cap`` are dropped.
        """
        out = [(0, (), 0, mpq(1))]
        for i, p in mono:
            a = self._a(i)
            nxt = []
            for j in range(p + 1):
                # (d/dx)^j / j! applied to x^p leaves C(p, j) x^(p - j)
                c = comb(p, j) * a ** j
                left = (p - j) * i
                part = ((i, p - j),) if p - j else ()
                for q, mo, w, v in out:
                    if cap is not None and w + left > cap:
                        continue
                    nxt.append((q + i * j, mo + part, w + left, v * c))
            out = nxt
        return [(q, mo, v) for q, mo, _, v in out]

    def charge_power(self, charge):
        return 0 if self.kind == "B" else self.d * self.m * charge


def boson_vev(ops, windows, rel_b=False):
    """<0| V_1(z_1) ... V_k(z_k) |0> as {exps: coefficient}, exact on the given per-variable windows.

    ``rel_b`` identifies charges modulo 2 (type B).
    """
    k = len(ops)
    charges = [0] * (k + 1)
    for j in range(k - 1, -1, -1):
        charges[j] = charges[j + 1] + ops[j].m
    final = charges[0] % 2 if rel_b else charges[0]
    if final != 0:
        return {}
    shifts = [ops[j].charge_power(charges[j + 1]) + ops[j].pre for j in range(k)]
    # largest weight op j can remove while keeping z_j in its window
    drop = [max(0, (shifts[j] - windows[j][0]) // ops[j].d) for j in range(k)]
    cur = {((), ()): mpq(1)}
    for j in range(k - 1, -1, -1):
        op = ops[j]
        lo, hi = windows[j]
        cap = sum(drop[:j])
        nxt = {}
        for (exps, mono), c in cur.items():
            for q, mo, v in op.annihilate(mono, cap):
                base = _weight(mo)
                pmax = (hi - shifts[j]) // op.d + q
                pmax = min(pmax, cap - base)
                for p in range(0, pmax + 1):
                    e = op.d * (p - q) + shifts[j]
                    if e < lo:
                        continue
                    for cm, cv in op.creation(p).items():
                        key = ((e,) + exps, _mono_mul(mo, cm))
                        val = nxt.get(key, 0) + c * v * cv
                        if val:
                            nxt[key] = val
                        else:
                            nxt.pop(key, None)
        cur = nxt
    out = {}
    for (exps, mono), c in cur.items():
        if not mono:
            out[exps] = out.get(exps, 0) + c
    return {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in out.items() if c}


def boson_ops(kind: str, charges, prefactors=None):
    """Vertex operators for type A, B or D (D: e^{m alpha}_A(z^2) times z^pre)."""
    pre = prefactors or [0] * len(charges)
    if kind == "A":
        return [VertexOp("A", m, 1, p) for m, p in zip(charges, pre)]
    if kind == "B":
        return [VertexOp("B", m, 1, p) for m, p in zip(charges, pre)]
    if kind == "D":
        return [VertexOp("A", m, 2, p) for m, p in zip(charges, pre)]
    raise ValueError(f"unknown boson type {kind!r}")


class Oscillators:
    """Heisenberg modes on polynomial states {(charge, monomial): coef}."""

    def __init__(self, kind: str):
        self.kind = kind

    def h(self, n, state):
        if n == 0:
            if self.kind == "B":
                return {}
            return {k: c * k[0] for k, c in state.items() if k[0]}
        if self.kind == "B" and n % 2 == 0:
            raise ValueError("type B oscillators have odd modes only")
        out = {}
        if n > 0:
            for (ch, mono), c in state.items():
                d = dict(mono)
                p = d.get(n, 0)
                if not p:
                    continue
                d[n] = p - 1
                nm = tuple(sorted((i, q) for i, q in d.items() if q))
                out[(ch, nm)] = out.get((ch, nm), 0) + c * p
        else:
            f = Fraction(-n, 2) if self.kind == "B" else -n
            for (ch, mono), c in state.items():
                nm = _mono_mul(mono, ((-n, 1),))
                out[(ch, nm)] = out.get((ch, nm), 0) + c * f
        return {k: v for k, v in out.items() if v}

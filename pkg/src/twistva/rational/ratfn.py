"""Rational functions whose poles lie on z_i = 0 or z_i = eps^k z_j."""
from __future__ import annotations

from math import comb, factorial
from fractions import Fraction

from .cyclo import eps, inv, scalar_from_json, scalar_str, scalar_to_json
from .laurent import LaurentPoly

# Pole factors: (0, i) is z_i; (1, i, j, k) with i < j is z_i - eps^k z_j.


def var_factor(i):
    return (0, i)


def lin_factor(i, j, k, N):
    """Canonical form of ``z_i - eps^k z_j`` as ``(scalar, factor)``.

    ``i == j`` degenerates to a multiple of z_i.
    """
    k %= N
    if i < j:
        return 1, (1, i, j, k)
    if i > j:
        # z_i - e^k z_j = -e^k (z_j - e^{-k} z_i)
        return -eps(k, N), (1, j, i, (-k) % N)
    c = 1 - eps(k, N)
    if c == 0:
        raise ZeroDivisionError("factor z_i - z_i vanishes identically")
    return c, (0, i)


def factor_poly(f, nvars, N):
    if f[0] == 0:
        return LaurentPoly.var(nvars, f[1])
    _, i, j, k = f
    return LaurentPoly.linear(nvars, i, j, eps(k, N))


def _mul_factor(p: LaurentPoly, f, N, times=1):
    for _ in range(times):
        if f[0] == 0:
            e = [0] * p.nvars
            e[f[1]] = 1
            p = p.shift(e)
        else:
            p = p.mul_linear(f[1], f[2], eps(f[3], N))
    return p


class RatFn:
    """Exact element of Q(eps_N)(z_0, ..., z_{nvars-1}) with restricted poles.

    Normal form: the numerator is a polynomial coprime to every stored factor,
    the denominator is a sorted tuple of ``(factor, power)`` with monic factors.
    Two normalized functions are equal exactly when their stored data agree.
    """

    __slots__ = ("N", "nvars", "num", "den", "_hash")

    def __init__(self, N: int, nvars: int, num: LaurentPoly, den=None, normalize=True):
        self.N = N
        self.nvars = nvars
        self._hash = None
        den = dict(den or {})
        if normalize:
            num, den = _normalize(N, nvars, num, den)
            self.den = tuple(sorted(den.items()))
        else:
            self.den = tuple(sorted(den.items()))
        self.num = num

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, N, nvars, c):
        return cls(N, nvars, LaurentPoly.const(nvars, c), normalize=False) if c != 0 \
            else cls.zero(N, nvars)

    @classmethod
    def zero(cls, N, nvars):
        return cls(N, nvars, LaurentPoly(nvars), normalize=False)

    @classmethod
    def one(cls, N, nvars):
        return cls.const(N, nvars, 1)

    @classmethod
    def var(cls, N, nvars, i, power=1):
        return cls(N, nvars, LaurentPoly.var(nvars, i, power))

    @classmethod
    def from_poly(cls, N, p: LaurentPoly):
        return cls(N, p.nvars, p)

    @classmethod
    def pole(cls, N, nvars, i, j, k=0, power=1):
        """``(z_i - eps^k z_j)^(-power)``."""
        c, f = lin_factor(i, j, k, N)
        return cls(N, nvars, LaurentPoly.const(nvars, inv(c) ** power), {f: power})

    def normalize(self):
        return RatFn(self.N, self.nvars, self.num, dict(self.den))

    # predicates ---------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_const(self):
        return not self.den and self.num.is_const()

    def const_value(self):
        return self.num.const_value() if self.is_const() else None

    def is_plus(self, i):
        """True when there is no pole at z_i = 0."""
        return all(f != (0, i) for f, _ in self.den)

    def pole_order(self, i, j, k):
        c, f = lin_factor(i, j, k, self.N)
        return dict(self.den).get(f, 0)

    def involves(self, i):
        if any(e[i] for e in self.num.terms):
            return True
        return any(i in (f[1:3] if f[0] else f[1:2]) for f, _ in self.den)

    def __eq__(self, o):
        if isinstance(o, RatFn):
            return (self.N == o.N and self.nvars == o.nvars and self.den == o.den
                    and self.num.terms == o.num.terms)
        if o == 0 and not isinstance(o, bool):
            return self.is_zero()
        if isinstance(o, (int, Fraction)) or hasattr(o, "inverse"):
            return self.is_const() and self.const_value() == o
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.N, self.nvars, self.den, frozenset(self.num.terms.items())))
        return self._hash

    # arithmetic ---------------------------------------------------------
    def _coerce(self, o):
        if isinstance(o, RatFn):
            if o.N != self.N or o.nvars != self.nvars:
                raise ValueError("incompatible rational functions")
            return o
        return RatFn.const(self.N, self.nvars, o)

    def __add__(self, o):
        o = self._coerce(o)
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        d1, d2 = dict(self.den), dict(o.den)
        lcd = dict(d1)
        for f, p in d2.items():
            lcd[f] = max(lcd.get(f, 0), p)
        n1, n2 = self.num, o.num
        for f, p in lcd.items():
            n1 = _mul_factor(n1, f, self.N, p - d1.get(f, 0))
            n2 = _mul_factor(n2, f, self.N, p - d2.get(f, 0))
        return RatFn(self.N, self.nvars, n1 + n2, lcd)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(self.N, self.nvars, -self.num, dict(self.den), normalize=False)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        if not isinstance(o, RatFn):
            if o == 0:
                return RatFn.zero(self.N, self.nvars)
            return RatFn(self.N, self.nvars, self.num * o, dict(self.den), normalize=False)
        o = self._coerce(o)
        if self.is_zero() or o.is_zero():
            return RatFn.zero(self.N, self.nvars)
        den = dict(self.den)
        for f, p in o.den:
            den[f] = den.get(f, 0) + p
        return RatFn(self.N, self.nvars, self.num * o.num, den)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFn.one(self.N, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, o):
        if isinstance(o, RatFn):
            return self * o.inverse()
        return self * inv(o)

    def inverse(self):
        """Reciprocal; the numerator must split into admissible pole factors."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        N, n = self.N, self.nvars
        mins = self.num.min_exps()
        p = self.num.shift(tuple(-m for m in mins))
        new_den = {(0, i): m for i, m in enumerate(mins) if m > 0}
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(N):
                    c = eps(k, N)
                    while True:
                        q = p.divide_linear(i, j, c)
                        if q is None:
                            break
                        p = q
                        f = (1, i, j, k)
                        new_den[f] = new_den.get(f, 0) + 1
        if not p.is_const():
            raise ValueError("numerator has a factor outside the admissible pole set")
        num = LaurentPoly.const(n, inv(p.const_value()))
        for f, pw in self.den:
            num = _mul_factor(num, f, N, pw)
        return RatFn(N, n, num, new_den)

    # substitutions ------------------------------------------------------
    def scale_var(self, i, a: int):
        """Substitute ``z_i -> eps^a z_i``."""
        N = self.N
        c = eps(a, N)
        num = self.num.scale_var(i, c)
        den = {}
        scal = 1
        for f, p in self.den:
            if f[0] == 0:
                if f[1] == i:
                    scal = scal * inv(c) ** p
                den[f] = p
                continue
            _, x, y, k = f
            if x == i:
                # e^a z_i - e^k z_y = e^a (z_i - e^{k-a} z_y)
                scal = scal * inv(c) ** p
                nf = (1, x, y, (k - a) % N)
            elif y == i:
                nf = (1, x, y, (k + a) % N)
            else:
                nf = f
            den[nf] = den.get(nf, 0) + p
        return RatFn(N, self.nvars, num * scal, den, normalize=False)

    def at_zero(self, i):
        """Substitute ``z_i -> 0`` exactly; fails on a pole at z_i = 0."""
        N = self.N
        if not self.is_plus(i):
            raise ValueError(f"pole at z_{i} = 0")
        num = self.num.at_zero(i)
        den = {}
        scal = 1
        for f, p in self.den:
            if f[0] == 1 and i in (f[1], f[2]):
                _, x, y, k = f
                if x == i:
                    # -e^k z_y
                    scal = scal * inv(-eps(k, N)) ** p
                    nf = (0, y)
                else:
                    nf = (0, x)
                den[nf] = den.get(nf, 0) + p
            else:
                den[f] = den.get(f, 0) + p
        return RatFn(N, self.nvars, num * scal, den)

    def diff(self, i):
        """Partial derivative in z_i."""
        N = self.N
        if self.is_zero():
            return self
        rad = [f for f, _ in self.den]
        lcd = {f: p + 1 for f, p in self.den}
        radp = LaurentPoly.const(self.nvars, 1)
        for f in rad:
            radp = _mul_factor(radp, f, N)
        out = self.num.diff(i) * radp
        for f, p in self.den:
            if f[0] == 0:
                d = 1 if f[1] == i else 0
            else:
                d = 1 if f[1] == i else (-eps(f[3], N) if f[2] == i else 0)
            if d == 0:
                continue
            rest = LaurentPoly.const(self.nvars, -p * d)
            for g in rad:
                if g != f:
                    rest = _mul_factor(rest, g, N)
            out = out + self.num * rest
        return RatFn(N, self.nvars, out, lcd)

    def divided_diff(self, i, n):
        out = self
        for _ in range(n):
            out = out.diff(i)
        return out * Fraction(1, factorial(n)) if n > 1 else out

    def rename(self, nvars, mapping):
        """Move variable ``v`` to ``mapping[v]`` in an ``nvars``-variable ring."""
        N = self.N
        num = self.num.rename(nvars, mapping)
        den = {}
        scal = 1
        for f, p in self.den:
            if f[0] == 0:
                nf = (0, mapping[f[1]])
                c = 1
            else:
                c, nf = lin_factor(mapping[f[1]], mapping[f[2]], f[3], N)
            scal = scal * inv(c) ** p
            den[nf] = den.get(nf, 0) + p
        return RatFn(N, nvars, num * scal, den)

    def swap(self, i, j):
        m = list(range(self.nvars))
        m[i], m[j] = j, i
        return self.rename(self.nvars, m)

    def evaluate(self, point):
        """Value at a point with exact scalar coordinates."""
        N = self.N
        val = 0
        for e, c in self.num.terms.items():
            t = c
            for x, k in zip(point, e):
                t = t * (x ** k if k >= 0 else inv(x) ** (-k))
            val = val + t
        d = 1
        for f, p in self.den:
            if f[0] == 0:
                v = point[f[1]]
            else:
                v = point[f[1]] - eps(f[3], N) * point[f[2]]
            d = d * v ** p
        return val * inv(d)

    # local expansions ----------------------------------------------------
    def laurent_at_diagonal(self, i, j, k, depth):
        """Coefficients of ``(z_i - eps^k z_j)^(-l-1)`` from the pole order down to l = -depth-1."""
        N = self.N
        n = self.nvars
        c = eps(k, N)
        pole = 0
        pole_scal = 1
        linear = []   # (alpha as (scalar, factor), beta, power)
        const_den = {}
        for f, p in self.den:
            if f[0] == 0:
                if f[1] == i:
                    linear.append(((c, (0, j)), 1, p))
                else:
                    const_den[f] = p
                continue
            _, x, y, kk = f
            if x == i:
                # c z_j - e^kk z_y + t
                if y == j:
                    val = c - eps(kk, N)
                    if val == 0:
                        pole += p
                        continue
                    linear.append(((val, (0, j)), 1, p))
                else:
                    s, g = lin_factor(j, y, kk - k, N)
                    linear.append(((c * s, g), 1, p))
            elif y == i:
                # z_x - e^kk c z_j - e^kk t
                beta = -eps(kk, N)
                if x == j:
                    val = 1 - eps(kk + k, N)
                    if val == 0:
                        pole += p
                        pole_scal = pole_scal * beta ** p
                        continue
                    linear.append(((val, (0, j)), beta, p))
                else:
                    s, g = lin_factor(x, j, kk + k, N)
                    linear.append(((s, g), beta, p))
            else:
                const_den[f] = p
        order = pole + depth  # highest t power needed in the regular factor
        series = [RatFn.zero(N, n) for _ in range(order + 1)]
        base = RatFn(N, n, LaurentPoly.const(n, inv(pole_scal)), const_den)
        for m, poly in self.num.expand_shifted(i, j, c).items():
            if m <= order:
                series[m] = base * RatFn(N, n, poly)
        for (s, g), beta, q in linear:
            inv_alpha = RatFn(N, n, LaurentPoly.const(n, inv(s)), {g: 1})
            fac = [inv_alpha ** q]
            for m in range(1, order + 1):
                fac.append(fac[-1] * inv_alpha * (beta * Fraction(-q - m + 1, m)))
            series = _series_mul(series, fac, order)
        out = []
        for l in range(pole - 1, -depth - 2, -1):
            m = pole - 1 - l
            out.append((l, series[m] if m <= order else RatFn.zero(N, n)))
        return out

    def residue_at(self, i, j, k, m):
        if m >= self.pole_order(i, j, k):
            return RatFn.zero(self.N, self.nvars)
        for l, c in self.laurent_at_diagonal(i, j, k, 0):
            if l == m:
                return c
        return RatFn.zero(self.N, self.nvars)

    # presentation --------------------------------------------------------
    def to_str(self, names=None):
        names = names or default_names(self.nvars)
        num = self.num.to_str(names)
        if not self.den:
            return num
        parts = []
        for f, p in self.den:
            if f[0] == 0:
                s = names[f[1]]
            else:
                _, x, y, k = f
                cs = "" if k == 0 else ("eps" if k == 1 else f"eps^{k}")
                if self.N == 2 and k == 1:
                    s = f"({names[x]} + {names[y]})"
                else:
                    s = f"({names[x]} - {cs + '*' if cs else ''}{names[y]})"
            parts.append(s if p == 1 else f"{s}^{p}")
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num} / ({' * '.join(parts)})" if len(parts) > 1 else f"{num} / {parts[0]}"

    def __repr__(self):
        return self.to_str()

    def to_json(self):
        return {
            "order": self.N,
            "nvars": self.nvars,
            "num": [[list(e), scalar_to_json(c)] for e, c in self.num.sorted_terms()],
            "den": [[list(f), p] for f, p in self.den],
        }

    @classmethod
    def from_json(cls, obj):
        n = obj["nvars"]
        num = LaurentPoly(n, {tuple(e): scalar_from_json(c) for e, c in obj["num"]})
        den = {tuple(f): p for f, p in obj["den"]}
        return cls(obj["order"], n, num, den)


def default_names(n):
    if n <= 3:
        return ["z", "w", "u"][:n]
    return [f"z{i + 1}" for i in range(n)]


def _series_mul(a, b, order):
    zero = a[0] * 0
    out = [zero for _ in range(order + 1)]
    for p, x in enumerate(a):
        if x.is_zero():
            continue
        for q in range(order + 1 - p):
            y = b[q]
            if not y.is_zero():
                out[p + q] = out[p + q] + x * y
    return out


def _normalize(N, nvars, num: LaurentPoly, den: dict):
    if num.is_zero():
        return LaurentPoly(nvars), {}
    clean = {}
    scal = 1
    for f, p in den.items():
        if p == 0:
            continue
        if f[0] == 1 and not f[1] < f[2]:
            c, f = lin_factor(f[1], f[2], f[3], N)
            scal = scal * inv(c) ** p
        clean[f] = clean.get(f, 0) + p
    if scal != 1:
        num = num * scal
    mins = num.min_exps()
    shift = [0] * nvars
    for i in range(nvars):
        net = mins[i] - clean.pop((0, i), 0)
        if net >= 0:
            shift[i] = net - mins[i]
        else:
            shift[i] = -mins[i]
            clean[(0, i)] = -net
    if any(shift):
        num = num.shift(shift)
    for f in sorted(clean):
        if f[0] == 0:
            continue
        _, i, j, k = f
        c = eps(k, N)
        p = clean[f]
        while p:
            q = num.divide_linear(i, j, c)
            if q is None:
                break
            num = q
            p -= 1
        if p:
            clean[f] = p
        else:
            del clean[f]
    return num, clean

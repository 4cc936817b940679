"""Fields from a bicharacter: exponential map, X-fields, vertex operators, OPEs, axiom checks.

States live in the D-only part W of the ambient algebra V.  A field applied to a
state is a truncated Laurent series with state coefficients (``FieldSeries``).
Multivariable fields ``X`` are kept as sums of (E-series data) x (rational function)
and only expanded on request, so every expansion is exact on its window.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .bicharacter import (BicharacterSpec, Z, W, coefficient_shift, eval_keys,
                          n_character_keys, shift_restricted_check)
from .hopf import (ONE_KEY, HopfElement, act_D, act_T, coproduct_key, element_str,
                   key_parity, key_str, mul, project_T, counit)
from .rational import LaurentPoly, RatFn, expand_region, eps, scalar_str
from .rational.cyclo import scalar_to_json
from .rational.series import DEFAULT_WINDOW


# ----------------------------------------------------------------------------
# series with state coefficients

def _box(nvars, lo, hi):
    if isinstance(lo, int):
        lo = (lo,) * nvars
    if isinstance(hi, int):
        hi = (hi,) * nvars
    return tuple(lo), tuple(hi)


class FieldSeries:
    """Truncated Laurent series ``sum state_e * z^e`` known exactly on the box [lo, hi]."""

    __slots__ = ("ambient", "nvars", "terms", "lo", "hi")

    def __init__(self, ambient, nvars, terms, lo, hi):
        self.ambient = ambient
        self.nvars = nvars
        self.lo, self.hi = _box(nvars, lo, hi)
        clean = {}
        for e, s in terms.items():
            e = (e,) if isinstance(e, int) else tuple(e)
            if s.is_zero() or not self._inside(e):
                continue
            clean[e] = s
        self.terms = clean

    def _inside(self, e):
        return all(a <= x <= b for a, x, b in zip(self.lo, e, self.hi))

    @classmethod
    def constant(cls, state: HopfElement, nvars=1, window=DEFAULT_WINDOW):
        return cls(state.ambient, nvars, {(0,) * nvars: state}, -window, window)

    def coeff(self, e) -> HopfElement:
        e = (e,) if isinstance(e, int) else tuple(e)
        return self.terms.get(e, HopfElement.zero(self.ambient))

    def is_zero(self):
        return not self.terms

    def _meet(self, o):
        if self.nvars != o.nvars:
            raise ValueError("series in different numbers of variables")
        lo = tuple(max(a, b) for a, b in zip(self.lo, o.lo))
        hi = tuple(min(a, b) for a, b in zip(self.hi, o.hi))
        return lo, hi

    def __add__(self, o):
        lo, hi = self._meet(o)
        out = dict(self.terms)
        for e, s in o.terms.items():
            out[e] = out[e] + s if e in out else s
        return FieldSeries(self.ambient, self.nvars, out, lo, hi)

    def __neg__(self):
        return self * -1

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, c):
        return FieldSeries(self.ambient, self.nvars, {e: s * c for e, s in self.terms.items()},
                           self.lo, self.hi)

    __rmul__ = __mul__

    def restrict(self, lo, hi):
        lo, hi = _box(self.nvars, lo, hi)
        lo = tuple(max(a, b) for a, b in zip(self.lo, lo))
        hi = tuple(min(a, b) for a, b in zip(self.hi, hi))
        return FieldSeries(self.ambient, self.nvars, self.terms, lo, hi)

    def agrees_with(self, o) -> bool:
        """Equality of coefficients on the common box."""
        lo, hi = self._meet(o)
        return self.restrict(lo, hi).terms == o.restrict(lo, hi).terms

    def diff_on_common(self, o):
        lo, hi = self._meet(o)
        return self.restrict(lo, hi) - o.restrict(lo, hi)

    def __eq__(self, o):
        return (isinstance(o, FieldSeries) and self.lo == o.lo and self.hi == o.hi
                and self.terms == o.terms)

    def shift(self, exps):
        """Multiply by the monomial z^exps."""
        exps = (exps,) if isinstance(exps, int) else tuple(exps)
        terms = {tuple(a + b for a, b in zip(e, exps)): s for e, s in self.terms.items()}
        lo = tuple(a + b for a, b in zip(self.lo, exps))
        hi = tuple(a + b for a, b in zip(self.hi, exps))
        return FieldSeries(self.ambient, self.nvars, terms, lo, hi)

    def scale_var(self, i, k):
        """Substitute z_i -> eps^k z_i."""
        N = self.ambient.N
        return FieldSeries(self.ambient, self.nvars,
                           {e: s * eps(k * e[i], N) for e, s in self.terms.items()},
                           self.lo, self.hi)

    def diff(self, i, n=1):
        """Divided derivative (1/n!) d^n/dz_i^n."""
        out = {}
        for e, s in self.terms.items():
            p = e[i] - n
            c = Fraction(1)
            for t in range(1, n + 1):
                c = c * (p + t) / t
            if c:
                ne = e[:i] + (p,) + e[i + 1:]
                out[ne] = s * c
        lo = self.lo[:i] + (self.lo[i] - n,) + self.lo[i + 1:]
        hi = self.hi[:i] + (self.hi[i] - n,) + self.hi[i + 1:]
        return FieldSeries(self.ambient, self.nvars, out, lo, hi)

    def scalar_part(self, key=ONE_KEY):
        """Coefficient series of one basis monomial, as ``{exps: scalar}``."""
        return {e: s.terms[key] for e, s in self.terms.items() if key in s.terms}

    def to_str(self, names=None):
        names = names or (("z",) if self.nvars == 1 else ("z", "w", "u")[:self.nvars]
                          if self.nvars <= 3 else tuple(f"z{i + 1}" for i in range(self.nvars)))
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t)):
            mono = "*".join(names[i] if k == 1 else f"{names[i]}^{k}" if k > 0
                            else f"{names[i]}^({k})" for i, k in enumerate(e) if k)
            st = element_str(self.terms[e])
            if not mono:
                parts.append(st)
            else:
                parts.append(f"({st})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return self.to_str()

    def to_json(self):
        return {
            "nvars": self.nvars,
            "lo": list(self.lo),
            "hi": list(self.hi),
            "terms": [[list(e), element_str(self.terms[e])] for e in sorted(self.terms)],
        }


# ----------------------------------------------------------------------------
# projection and exponential map

def project(a: HopfElement) -> HopfElement:
    """The algebra map V -> W that forgets T."""
    return project_T(a)


_E_CACHE: dict = {}


def _e_coeffs(amb, key, deg):
    """[pi(D^(p) key) for p = 0..deg] for one monomial."""
    ck = (amb, key)
    hit = _E_CACHE.get(ck)
    if hit is None:
        x = HopfElement.monomial(amb, key)
        hit = ([x], [project_T(x)])
        _E_CACHE[ck] = hit
    raw, proj = hit
    while len(raw) <= deg:
        nxt = act_D(raw[-1]) * Fraction(1, len(raw))
        raw.append(nxt)
        proj.append(project_T(nxt))
    return proj[:deg + 1]


def _e_coeffs_elem(a: HopfElement, deg, scale=0):
    """pi(D^(p) a) * eps^(scale p) for p = 0..deg."""
    amb = a.ambient
    out = [HopfElement.zero(amb) for _ in range(deg + 1)]
    for key, c in a.terms.items():
        for p, s in enumerate(_e_coeffs(amb, key, deg)):
            if not s.is_zero():
                out[p] = out[p] + s * c
    if scale:
        out = [s * eps(scale * p, amb.N) for p, s in enumerate(out)]
    return out


def exponential_map(a: HopfElement, window=DEFAULT_WINDOW) -> FieldSeries:
    """E_z(a) = sum_p z^p pi(D^(p) a), exact on [-window, window]."""
    coeffs = _e_coeffs_elem(a, window)
    return FieldSeries(a.ambient, 1, {(p,): s for p, s in enumerate(coeffs)}, -window, window)


# ----------------------------------------------------------------------------
# sign of a coproduct matrix

def matrix_sign(par) -> int:
    """Sign attached to an n x n matrix of parities (0/1), written with 1-based indices."""
    n = len(par)

    def m(i, j):
        return par[i - 1][j - 1] if 1 <= i <= n and 1 <= j <= n else 0

    e = 0
    for i in range(2, n + 1):
        mi1 = m(i, 1)
        if mi1:
            for j in range(1, i):
                for k in range(2, n + 1):
                    e += mi1 * m(j, k)
    for i in range(2, n + 1):
        for j in range(2, n + 1):
            mij = m(i, j)
            if not mij:
                continue
            for k in range(1, i):
                for l in range(max(1, i + j - k), n + 1):
                    e += mij * m(k, l)
    return -1 if e % 2 else 1


# ----------------------------------------------------------------------------
# multivariable fields

def _monomial_poly(nvars, exps, c=1):
    return LaurentPoly.monomial(nvars, exps, c)


class XElement:
    """Sum of terms coef * E_{z_1}(p_1) ... E_{z_n}(p_n) * tail * f(z_1..z_n).

    ``p_i`` are monomial keys of V (the left coproduct factors), ``tail`` is a
    monomial key of W standing for already specialised variables, and ``f`` is a
    normalized RatFn.  Terms are stored as ``{(primes, tail, f): coef}``.
    """

    __slots__ = ("ambient", "N", "nvars", "terms", "window")

    def __init__(self, ambient, nvars, terms, window=DEFAULT_WINDOW):
        self.ambient = ambient
        self.N = ambient.N
        self.nvars = nvars
        self.terms = {k: c for k, c in terms.items() if c != 0 and not k[2].is_zero()}
        self.window = window

    def __len__(self):
        return len(self.terms)

    def _series_for(self, primes, tail, degs):
        amb = self.ambient
        cur = {(): HopfElement.one(amb)}
        for p, d in zip(primes, degs):
            coeffs = _e_coeffs(amb, p, d) if p != ONE_KEY else [HopfElement.one(amb)]
            nxt = {}
            for e, s in cur.items():
                for q, t in enumerate(coeffs):
                    if t.is_zero():
                        continue
                    v = mul(s, t)
                    if not v.is_zero():
                        nxt[e + (q,)] = v
            cur = nxt
        if tail != ONE_KEY:
            tl = HopfElement.monomial(amb, tail)
            cur = {e: mul(s, tl) for e, s in cur.items()}
        return cur

    def collect(self):
        """``{(primes, tail): RatFn}`` with all functions for one state factor summed."""
        out = {}
        for (primes, tail, f), c in self.terms.items():
            k = (primes, tail)
            out[k] = out[k] + f * c if k in out else f * c
        return {k: f for k, f in out.items() if not f.is_zero()}

    def pairs(self, window=None):
        """``[(S, f)]`` with S the truncated series multiplying f, ordered by f's denominator."""
        C = self.window if window is None else window
        byf = {}
        for (primes, tail, f), c in self.terms.items():
            s = self._series_for(primes, tail, (C,) * self.nvars)
            acc = byf.setdefault(f, {})
            for e, st in s.items():
                acc[e] = acc[e] + st * c if e in acc else st * c
        out = []
        for f in sorted(byf, key=lambda g: (g.den, sorted(g.num.terms.items(), key=repr))):
            out.append((FieldSeries(self.ambient, self.nvars, byf[f], 0, C), f))
        return out

    def vacuum_part(self) -> RatFn:
        """Sum of the functions whose state factors are all trivial."""
        out = RatFn.zero(self.N, self.nvars)
        for (primes, tail, f), c in self.terms.items():
            if tail == ONE_KEY and all(p == ONE_KEY for p in primes):
                out = out + f * c
        return out

    # specialisation ---------------------------------------------------------
    def at_zero(self) -> "XElement":
        """Set the last variable to zero."""
        n = self.nvars
        if n == 0:
            raise ValueError("no variable left to specialise")
        amb = self.ambient
        mapping = list(range(n - 1)) + [0]
        out = {}
        fcache = {}
        for (primes, tail, f), c in self.terms.items():
            g = fcache.get(f)
            if g is None:
                try:
                    g = f.at_zero(n - 1).rename(n - 1, mapping)
                except ValueError as exc:
                    raise ValueError(f"value {f} cannot be specialised at zero: {exc}") from None
                fcache[f] = g
            st = mul(project_T(HopfElement.monomial(amb, primes[-1])),
                     HopfElement.monomial(amb, tail))
            for tk, tc in st.terms.items():
                k = (primes[:-1], tk, g)
                out[k] = out.get(k, 0) + c * tc
        return XElement(amb, n - 1, out, self.window)

    def swap01(self) -> "XElement":
        """Exchange the first two variables, reordering the E-factors with their Koszul sign."""
        out = {}
        for (primes, tail, f), c in self.terms.items():
            p0, p1 = primes[0], primes[1]
            s = -1 if key_parity(p0) and key_parity(p1) else 1
            k = ((p1, p0) + primes[2:], tail, f.swap(0, 1))
            out[k] = out.get(k, 0) + c * s
        return XElement(self.ambient, self.nvars, out, self.window)

    def __mul__(self, c):
        return XElement(self.ambient, self.nvars, {k: v * c for k, v in self.terms.items()},
                        self.window)

    __rmul__ = __mul__

    def __add__(self, o):
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return XElement(self.ambient, self.nvars, out, self.window)

    # expansions -------------------------------------------------------------
    def expand(self, order=None, window=None) -> FieldSeries:
        """Expansion in the region |z_order[0]| >> |z_order[1]| >> ..., exact on [-C, C]^n."""
        n = self.nvars
        C = self.window if window is None else window
        order = tuple(range(n)) if order is None else tuple(order)
        pos = {v: k for k, v in enumerate(order)}
        byf = {}
        for (primes, tail, f), c in self.terms.items():
            byf.setdefault(f, []).append((primes, tail, c))
        out = {}
        for f, items in byf.items():
            smax = _series_degrees(f, pos, C)
            lo = tuple(-C - smax[v] for v in range(n))
            fser = expand_region(f, order, (lo, (C,) * n))
            if not fser.terms:
                continue
            acc = {}
            for primes, tail, c in items:
                for e, st in self._series_for(primes, tail, smax).items():
                    acc[e] = acc[e] + st * c if e in acc else st * c
            for ef, cf in fser.terms.items():
                for es, st in acc.items():
                    e = tuple(a + b for a, b in zip(ef, es))
                    if all(-C <= x <= C for x in e):
                        v = st * cf
                        out[e] = out[e] + v if e in out else v
        return FieldSeries(self.ambient, n, out, -C, C)

    def rational_view(self, window=None):
        """``{W-monomial key: RatFn}``: the E-series truncated at degree C folded into the functions."""
        C = self.window if window is None else window
        out = {}
        for (primes, tail, f), c in self.terms.items():
            for e, st in self._series_for(primes, tail, (C,) * self.nvars).items():
                mono = RatFn(self.N, self.nvars, _monomial_poly(self.nvars, e))
                g = mono * f
                for key, sc in st.terms.items():
                    v = g * (sc * c)
                    out[key] = out[key] + v if key in out else v
        return {k: v for k, v in out.items() if not v.is_zero()}

    def residue(self, i, k, window=None) -> FieldSeries:
        """Res_{z = eps^i w} X (z - eps^i w)^k for a two-variable X, as a series in w."""
        if self.nvars != 2:
            raise ValueError("residues are taken of two-variable fields")
        C = self.window if window is None else window
        amb = self.ambient
        N = self.N
        out = {}
        for (primes, tail, f), c in self.terms.items():
            pa, pb = primes
            for l, g in f.laurent_at_diagonal(Z, W, i % N, 0):
                if l < k:
                    continue
                g1 = g.rename(1, [0, 0])
                low = min((e[0] for e in g1.num.terms), default=0)
                low -= sum(p for fac, p in g1.den)
                deg = max(0, C - low)
                da = act_D(HopfElement.monomial(amb, pa), l - k)
                sa = _e_coeffs_elem(da, deg, scale=i)
                sb = (_e_coeffs(amb, pb, deg) if pb != ONE_KEY else [HopfElement.one(amb)])
                tl = HopfElement.monomial(amb, tail)
                ser = {}
                for p, x in enumerate(sa):
                    if x.is_zero():
                        continue
                    for q, y in enumerate(sb):
                        if p + q > deg or y.is_zero():
                            continue
                        v = mul(mul(x, y), tl)
                        if not v.is_zero():
                            ser[p + q] = ser[p + q] + v if p + q in ser else v
                for eg, cg in g1.num.terms.items():
                    sh = eg[0] - sum(p for fac, p in g1.den)
                    for p, v in ser.items():
                        e = p + sh
                        if -C <= e <= C:
                            t = v * (cg * c)
                            out[(e,)] = out[(e,)] + t if (e,) in out else t
        return FieldSeries(amb, 1, out, -C, C)

    def to_json(self, window=None):
        return {
            "nvars": self.nvars,
            "terms": [
                {"primes": [key_str(p) for p in primes], "tail": key_str(tail),
                 "f": f.to_json(), "coef": scalar_to_json(c)}
                for (primes, tail, f), c in sorted(self.terms.items(), key=lambda t: repr(t[0]))
            ],
        }

    def __repr__(self):
        parts = []
        for (primes, tail, f), c in sorted(self.terms.items(), key=lambda t: repr(t[0])):
            st = " ".join(f"E{i}({key_str(p)})" for i, p in enumerate(primes) if p != ONE_KEY)
            if tail != ONE_KEY:
                st += f" [{key_str(tail)}]"
            parts.append(f"{scalar_str(c)} * {st or '1'} * ({f})")
        return " + ".join(parts) or "0"


def _series_degrees(f: RatFn, pos, C):
    """Per-variable E-series degrees that make the product with i_order f exact on [-C, C]^n."""
    n = f.nvars
    smax = [0] * n
    inv = sorted(pos, key=pos.get)
    for k in range(n):
        suffix = set(inv[k:])
        L = min(sum(e[v] for v in suffix) for e in f.num.terms)
        for fac, p in f.den:
            if fac[0] == 0:
                if fac[1] in suffix:
                    L -= p
            elif fac[1] in suffix and fac[2] in suffix:
                L -= p
        smax[inv[k]] = max(0, (n - k) * C - L)
    return tuple(smax)


def _splits(key):
    return list(coproduct_key(key, 1).items())


def xn(r: BicharacterSpec, elems, window=DEFAULT_WINDOW, sign_rule="attached") -> XElement:
    """X_{z_1..z_n}(a_1 (x) ... (x) a_n) with the n-character of the right coproduct factors.

    ``sign_rule='matrix'`` builds the same element from full (n-1)-fold coproducts and
    the matrix sign; it exists to cross-check the attached-variable rule.
    """
    n = len(elems)
    if n < 1:
        raise ValueError("need at least one argument")
    amb = r.ambient
    for a in elems:
        if a.ambient != amb:
            raise ValueError(f"arguments must live in {amb.label()}")
    out = {}
    mono_lists = [sorted(a.terms.items(), key=repr) for a in elems]
    for combo in product(*mono_lists):
        keys = [k for k, _ in combo]
        coef = 1
        for _, c in combo:
            coef = coef * c
        if sign_rule == "matrix":
            _xn_matrix(r, keys, coef, out)
        else:
            _xn_attached(r, keys, coef, out)
    return XElement(amb, n, out, window)


def _xn_attached(r, keys, coef, out):
    n = len(keys)
    N = r.N
    for parts in product(*[_splits(k) for k in keys]):
        sign = 1
        primes = []
        seconds = []
        for (p, q), s in parts:
            sign *= s
            primes.append(p)
            seconds.append(q)
        e = 0
        for i in range(n):
            if key_parity(seconds[i]):
                for j in range(i + 1, n):
                    e += key_parity(primes[j])
        if e % 2:
            sign = -sign
        if n == 1:
            f = RatFn.const(N, 1, counit(HopfElement.monomial(r.ambient, seconds[0])))
        else:
            f = n_character_keys(r, seconds)
        if f.is_zero():
            continue
        k = (tuple(primes), ONE_KEY, f)
        out[k] = out.get(k, 0) + coef * sign


def _xn_matrix(r, keys, coef, out):
    n = len(keys)
    N = r.N
    if n == 1:
        return _xn_attached(r, keys, coef, out)
    rows = [list(coproduct_key(k, n - 1).items()) for k in keys]
    for choice in product(*rows):
        sign = 1
        M = []
        for pieces, s in choice:
            sign *= s
            M.append(pieces)
        par = [[key_parity(x) for x in row] for row in M]
        sign *= matrix_sign(par)
        f = RatFn.one(N, n)
        for i in range(n):
            for j in range(i + 1, n):
                # r_{z_i, z_j}(m_{i, j} (x) m_{j, i+1}) in 0-based columns
                v = eval_keys(r, M[i][j], M[j][i + 1])
                if v.is_zero():
                    f = None
                    break
                f = f * v.rename(n, {Z: i, W: j})
            if f is None:
                break
        if f is None or f.is_zero():
            continue
        k = (tuple(row[0] for row in M), ONE_KEY, f)
        out[k] = out.get(k, 0) + coef * sign


def x2(r: BicharacterSpec, a, b, window=DEFAULT_WINDOW) -> XElement:
    return xn(r, [a, b], window)


def vertex_op(r: BicharacterSpec, a: HopfElement, b: HopfElement,
              window=DEFAULT_WINDOW) -> FieldSeries:
    """Y(a, z) pi(b) = X_{z,0}(a (x) b), exact on [-window, window]."""
    return xn(r, [a, b], window).at_zero().expand(window=window)


def apply_field(r: BicharacterSpec, a: HopfElement, states: FieldSeries,
                window=DEFAULT_WINDOW) -> FieldSeries:
    """Y(a, z_new) applied coefficientwise to a series of states; the new variable comes first."""
    amb = r.ambient
    out = {}
    cache = {}
    for e, st in states.terms.items():
        for key, c in st.terms.items():
            y = cache.get(key)
            if y is None:
                y = vertex_op(r, a, HopfElement.monomial(amb, key), window)
                cache[key] = y
            for (p,), s in y.terms.items():
                k = (p,) + e
                v = s * c
                out[k] = out[k] + v if k in out else v
    lo = (-window,) + states.lo
    hi = (window,) + states.hi
    return FieldSeries(amb, states.nvars + 1, out, lo, hi)


def field_product(r: BicharacterSpec, elems, window=DEFAULT_WINDOW) -> FieldSeries:
    """Y(a_1, z_1) ... Y(a_{n-1}, z_{n-1}) E_{z_n} a_n, built field by field."""
    cur = exponential_map(elems[-1], window)
    for a in reversed(elems[:-1]):
        cur = apply_field(r, a, cur, window)
    return cur


# ----------------------------------------------------------------------------
# OPE residues

@dataclass
class ResidueResult:
    """Residue at z = eps^i w with weight (z - eps^i w)^k as triples (c, s, v)."""

    diagonal: int
    power: int
    terms: list                      # (c, s, HopfElement)
    orders: list = field(default_factory=list)   # (l, s) for every coefficient used
    N: int = 1

    def shift_bound_ok(self) -> bool:
        """|s| <= (N-1)(l+1) for the Laurent index l each shift came from."""
        return all(abs(s) <= (self.N - 1) * (l + 1) for l, s in self.orders)

    def power_bound_ok(self) -> bool:
        """|s| <= (N-1)(k+1) for the residue power k."""
        return all(abs(s) <= (self.N - 1) * (self.power + 1) for _, s, _ in self.terms)

    def field(self, r, c: HopfElement, window=DEFAULT_WINDOW) -> FieldSeries:
        """sum c_j w^{s_j} Y(v_j, w) pi(c)."""
        amb = r.ambient
        out = FieldSeries(amb, 1, {}, -window, window)
        for coef, s, v in self.terms:
            y = vertex_op(r, v, c, window + abs(s)).shift(s) * coef
            out = out + y.restrict(-window, window)
        return out

    def to_json(self):
        return {
            "diagonal": self.diagonal,
            "power": self.power,
            "terms": [{"c": scalar_to_json(c), "s": s, "v": element_str(v)}
                      for c, s, v in self.terms],
        }

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, s, v in self.terms:
            w = "" if s == 0 else ("*w" if s == 1 else f"*w^{s}" if s > 0 else f"*w^({s})")
            parts.append(f"{scalar_str(c)}{w}*Y({element_str(v)}, w)")
        return " + ".join(parts)


def ope_residues(r: BicharacterSpec, a: HopfElement, b: HopfElement, i: int = 0,
                 k: int = 0) -> ResidueResult:
    """Residue of X_{z,w,0}(a (x) b (x) c)(z - eps^i w)^k as sum c w^s Y(v, w) pi(c).

    Raises ``ValueError`` when a Laurent coefficient is not a monomial c * w^s.
    """
    amb = r.ambient
    N = r.N
    acc = {}
    orders = []
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            for (a1, a2), sa in _splits(ka):
                for (b1, b2), sb in _splits(kb):
                    f = eval_keys(r, a2, b2)
                    if f.is_zero() or f.pole_order(Z, W, i % N) == 0:
                        continue
                    sign = sa * sb * (-1 if key_parity(a2) and key_parity(b1) else 1)
                    for l, g in f.laurent_at_diagonal(Z, W, i % N, 0):
                        if l < k or g.is_zero():
                            continue
                        cs = coefficient_shift(g)
                        if cs is None:
                            raise ValueError(f"coefficient {g} of r({key_str(a2)}, {key_str(b2)}) "
                                             f"at diagonal {i}, index {l} is not c*w^s")
                        c0, s = cs
                        orders.append((l, s))
                        v = mul(act_T(act_D(HopfElement.monomial(amb, a1), l - k), i),
                                HopfElement.monomial(amb, b1))
                        if v.is_zero():
                            continue
                        term = v * (c0 * sign * ca * cb)
                        acc[s] = acc[s] + term if s in acc else term
    terms = []
    for s in sorted(acc):
        for c, key in acc[s].monomials():
            terms.append((c, s, HopfElement.monomial(amb, key)))
    return ResidueResult(i % N, k, terms, orders, N)


def direct_residue(r, a, b, c, i=0, k=0, window=DEFAULT_WINDOW) -> FieldSeries:
    """The same residue computed from X_{z,w,0}(a (x) b (x) c) by rational-function expansion."""
    return xn(r, [a, b, c], window).at_zero().residue(i, k, window)


def max_pole(r, a, b, i):
    best = 0
    for ka in a.terms:
        for kb in b.terms:
            for (a1, a2), _ in _splits(ka):
                for (b1, b2), _ in _splits(kb):
                    f = eval_keys(r, a2, b2)
                    if not f.is_zero():
                        best = max(best, f.pole_order(Z, W, i % r.N))
    return best


# ----------------------------------------------------------------------------
# normal-ordered products

def normal_ordered(r: BicharacterSpec, a: HopfElement, b: HopfElement) -> HopfElement:
    """State whose vertex operator is :Y(a, z) Y(b, z): (at most simple poles)."""
    amb = r.ambient
    N = r.N
    out = HopfElement.zero(amb)
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            for (a1, a2), sa in _splits(ka):
                for (b1, b2), sb in _splits(kb):
                    f = eval_keys(r, a2, b2)
                    if f.is_zero():
                        continue
                    rest = f
                    for i in range(N):
                        order = f.pole_order(Z, W, i)
                        if order > 1:
                            raise ValueError(f"r({key_str(a2)}, {key_str(b2)}) has a pole of "
                                             f"order {order} at z = eps^{i} w")
                        if order == 1:
                            g = f.residue_at(Z, W, i, 0)
                            rest = rest - g * RatFn.pole(N, 2, Z, W, i)
                    if not rest.is_const():
                        raise ValueError(f"regular part of r({key_str(a2)}, {key_str(b2)}) "
                                         f"is not constant: {rest}")
                    c = rest.const_value()
                    if c == 0:
                        continue
                    sign = sa * sb * (-1 if key_parity(a2) and key_parity(b1) else 1)
                    v = mul(HopfElement.monomial(amb, a1), HopfElement.monomial(amb, b1))
                    out = out + v * (c * sign * ca * cb)
    return out


# ----------------------------------------------------------------------------
# axiom checker

@dataclass
class AxiomEntry:
    axiom: str
    instance: str
    passed: bool
    witness: str | None = None

    def to_json(self):
        return {"axiom": self.axiom, "instance": self.instance, "pass": self.passed,
                "witness": self.witness}


@dataclass
class AxiomReport:
    bicharacter: str
    window: int
    scope: dict
    entries: list = field(default_factory=list)

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    def add(self, axiom, instance, ok, witness=None):
        self.entries.append(AxiomEntry(axiom, instance, bool(ok), None if ok else witness))

    def summary(self):
        out = {}
        for e in self.entries:
            ok, total = out.get(e.axiom, (0, 0))
            out[e.axiom] = (ok + e.passed, total + 1)
        return out

    def failures(self):
        return [e for e in self.entries if not e.passed]

    def to_json(self):
        return {
            "schema": 1,
            "bicharacter": self.bicharacter,
            "window": self.window,
            "scope": self.scope,
            "passed": self.passed,
            "results": [e.to_json() for e in self.entries],
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _descendants(gens, N):
    out = []
    seen = set()
    for g in gens:
        cands = [g, act_D(g)]
        if N > 1:
            cands.append(act_T(g))
        for x in cands:
            if x.is_zero() or x in seen:
                continue
            seen.add(x)
            out.append(x)
    return out


def _state_samples(gens):
    """1, the projected fields and their pairwise products, deduplicated."""
    amb = gens[0].ambient
    base = []
    for g in gens:
        p = project_T(g)
        if not p.is_zero() and p not in base:
            base.append(p)
    out = [HopfElement.one(amb)] + list(base)
    for i in range(len(base)):
        for j in range(i, len(base)):
            p = mul(base[i], base[j])
            if not p.is_zero() and p not in out:
                out.append(p)
    return out


def exchange_sign(a: HopfElement, b: HopfElement) -> int:
    """Sign picked up by swapping a and b: Koszul sign, times (-1)^(m n) for lattice charges m, n."""
    sgn = -1 if a.parity() == "odd" and b.parity() == "odd" else 1
    if a.ambient.lattice:
        ma = {k[0] for k in a.terms}
        mb = {k[0] for k in b.terms}
        if len(ma) != 1 or len(mb) != 1:
            raise ValueError("lattice arguments must have a single charge")
        if (ma.pop() * mb.pop()) % 2:
            sgn = -sgn
    return sgn


def _series_witness(x: FieldSeries, y: FieldSeries):
    d = x.diff_on_common(y)
    return d.to_str()


def check_axioms(r: BicharacterSpec, gens, window=8, max_pairs=None) -> AxiomReport:
    """Check the twisted vertex algebra axioms on generators and their first descendants."""
    C = window
    N = r.N
    ext = _descendants(gens, N)
    states = _state_samples(ext)
    pairs = [(a, b) for a in ext for b in ext]
    if max_pairs is not None:
        pairs = pairs[:max_pairs]
    rep = AxiomReport(r.name or "custom", C, {
        "fields": [element_str(a) for a in ext],
        "states": [element_str(s) for s in states],
        "pairs": len(pairs),
        "note": "third arguments are sampled from 1, generators and degree-2 monomials",
    })
    one = HopfElement.one(r.ambient)

    # vacuum
    for b in states:
        y = vertex_op(r, one, b, C)
        want = FieldSeries.constant(b, 1, C)
        rep.add("vacuum", f"Y(1,z) {element_str(b)}", y.agrees_with(want), _series_witness(y, want))

    for a in ext:
        # modified creation
        y = vertex_op(r, a, one, C)
        e = exponential_map(a, C)
        rep.add("creation", f"Y({element_str(a)},z) 1", y.agrees_with(e), _series_witness(y, e))
        c0 = y.coeff(0)
        rep.add("creation", f"Y({element_str(a)},z) 1 at z=0", c0 == project_T(a),
                f"{element_str(c0)} != {element_str(project_T(a))}")
        # transfer of action
        for b in states:
            y = vertex_op(r, a, b, C + 1)
            if N > 1:
                yt = vertex_op(r, act_T(a), b, C)
                ys = y.scale_var(0, 1)
                rep.add("transfer-T", f"Y(T {element_str(a)},z) {element_str(b)}",
                        yt.agrees_with(ys), _series_witness(yt, ys))
            yd = vertex_op(r, act_D(a), b, C)
            ydd = y.diff(0)
            rep.add("transfer-D", f"Y(D {element_str(a)},z) {element_str(b)}",
                    yd.agrees_with(ydd), _series_witness(yd, ydd))

    # shift restriction of the values used
    sr = shift_restricted_check(r, depth=2, pairs=pairs)
    rep.add("shift-restricted", f"{sr.checked} Laurent coefficients", sr.ok,
            json.dumps(sr.violations[:3]))

    for a, b in pairs:
        tag = f"{element_str(a)} | {element_str(b)}"
        sgn = exchange_sign(a, b)
        for c in states:
            lhs = xn(r, [a, b, c], C).at_zero()
            rhs = xn(r, [b, a, c], C).at_zero().swap01() * sgn
            ok = lhs.collect() == rhs.collect()
            witness = None
            if not ok:
                lv, rv = lhs.rational_view(C), rhs.rational_view(C)
                ok = lv == rv
                bad = [k for k in set(lv) | set(rv) if lv.get(k) != rv.get(k)]
                witness = "; ".join(f"{key_str(k)}: {lv.get(k)} vs {rv.get(k)}" for k in bad[:3])
            rep.add("symmetry", f"{tag} | {element_str(c)}", ok, witness)
        for i in range(N):
            top = max_pole(r, a, b, i)
            for k in range(top):
                try:
                    res = ope_residues(r, a, b, i, k)
                except ValueError as exc:
                    rep.add("ope-shift", f"{tag} at eps^{i}, k={k}", False, str(exc))
                    continue
                rep.add("ope-shift", f"{tag} at eps^{i}, k={k}", res.shift_bound_ok(),
                        f"(l, s) pairs {res.orders}")
                rep.add("ope-shift-k", f"{tag} at eps^{i}, k={k}", res.power_bound_ok(),
                        f"shifts {[s for _, s, _ in res.terms]}")
                for c in states:
                    want = direct_residue(r, a, b, c, i, k, C)
                    got = res.field(r, c, C)
                    rep.add("ope-completeness", f"{tag} | {element_str(c)} at eps^{i}, k={k}",
                            got.agrees_with(want), _series_witness(got, want))
    return rep

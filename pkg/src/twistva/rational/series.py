"""Truncated Laurent expansions of admissible rational functions."""
from __future__ import annotations

from math import comb

from .cyclo import eps, inv, scalar_from_json, scalar_to_json, scalar_str
from .ratfn import RatFn

DEFAULT_WINDOW = 12


def _window(nvars, window):
    if isinstance(window, int):
        return (-window,) * nvars, (window,) * nvars
    lo, hi = window
    return tuple(lo), tuple(hi)


class LaurentSeries:
    """Coefficients of a multivariable expansion on a box of exponents.

    ``lo``/``hi`` bound each exponent; ``order`` is the region the expansion
    belongs to (``None`` for series valid in every region, such as polynomials).
    """

    __slots__ = ("nvars", "terms", "lo", "hi", "order")

    def __init__(self, nvars, terms, lo, hi, order=None):
        self.nvars = nvars
        self.lo = tuple(lo)
        self.hi = tuple(hi)
        self.order = tuple(order) if order is not None else None
        self.terms = {e: c for e, c in terms.items() if c != 0 and self._inside(e)}

    def _inside(self, e):
        return all(a <= x <= b for a, x, b in zip(self.lo, e, self.hi))

    def coeff(self, exps):
        return self.terms.get(tuple(exps), 0)

    def _meet(self, o):
        if self.order is not None and o.order is not None and self.order != o.order:
            raise ValueError("series from different regions cannot be combined")
        lo = tuple(max(a, b) for a, b in zip(self.lo, o.lo))
        hi = tuple(min(a, b) for a, b in zip(self.hi, o.hi))
        return lo, hi, self.order if self.order is not None else o.order

    def __add__(self, o):
        lo, hi, order = self._meet(o)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentSeries(self.nvars, out, lo, hi, order)

    def __neg__(self):
        return LaurentSeries(self.nvars, {e: -c for e, c in self.terms.items()},
                             self.lo, self.hi, self.order)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, LaurentSeries):
            return LaurentSeries(self.nvars, {e: c * o for e, c in self.terms.items()},
                                 self.lo, self.hi, self.order)
        lo, hi, order = self._meet(o)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if all(a <= x <= b for a, x, b in zip(lo, e, hi)):
                    out[e] = out.get(e, 0) + c1 * c2
        return LaurentSeries(self.nvars, out, lo, hi, order)

    __rmul__ = __mul__

    def restrict(self, lo, hi):
        lo = tuple(max(a, b) for a, b in zip(self.lo, lo))
        hi = tuple(min(a, b) for a, b in zip(self.hi, hi))
        return LaurentSeries(self.nvars, self.terms, lo, hi, self.order)

    def agrees_with(self, o):
        """Equality on the common box."""
        lo, hi, _ = self._meet(o)
        a = self.restrict(lo, hi).terms
        b = o.restrict(lo, hi).terms
        return a == b

    def __eq__(self, o):
        return (isinstance(o, LaurentSeries) and self.lo == o.lo and self.hi == o.hi
                and self.terms == o.terms)

    def is_zero(self):
        return not self.terms

    def to_str(self, names=None):
        from .ratfn import default_names
        names = names or default_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(names[i] if k == 1 else f"{names[i]}^{k}" if k > 0
                            else f"{names[i]}^({k})" for i, k in enumerate(e) if k)
            cs = scalar_str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return self.to_str()

    def to_json(self):
        return {
            "nvars": self.nvars,
            "lo": list(self.lo),
            "hi": list(self.hi),
            "order": list(self.order) if self.order is not None else None,
            "terms": [[list(e), scalar_to_json(c)] for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["nvars"], {tuple(e): scalar_from_json(c) for e, c in obj["terms"]},
                   obj["lo"], obj["hi"], obj["order"])


def expand_region(f: RatFn, order, window=DEFAULT_WINDOW) -> LaurentSeries:
    """Expansion of ``f`` in the region |z_order[0]| >> |z_order[1]| >> ...

    Exact on the window: every coefficient inside the box is the true one.
    """
    n = f.nvars
    N = f.N
    lo, hi = _window(n, window)
    order = tuple(order)
    rank = {v: r for r, v in enumerate(order)}
    if f.is_zero():
        return LaurentSeries(n, {}, lo, hi, order)
    nmin = f.num.min_exps()
    nmax = f.num.max_exps()
    # bounds on the partial product before multiplying by the numerator
    plo = [lo[v] - nmax[v] for v in range(n)]
    phi = [hi[v] - nmin[v] for v in range(n)]
    start = [0] * n
    groups = {v: [] for v in range(n)}
    for fac, p in f.den:
        if fac[0] == 0:
            start[fac[1]] -= p
        else:
            _, i, j, k = fac
            lead, trail = (i, j) if rank[i] < rank[j] else (j, i)
            groups[lead].append((i, j, k, p, lead, trail))
    terms = {tuple(start): 1}
    for v in order:
        for i, j, k, q, lead, trail in groups[v]:
            # (z_i - e^k z_j)^(-q) expanded with `lead` dominant
            if lead == i:
                scal = 1
                ratio = eps(k, N)
            else:
                scal = (-1) ** q * inv(eps(k * q, N))
                ratio = inv(eps(k, N))
            new = {}
            floor = plo[lead]
            for e, c in terms.items():
                top = e[lead] - q - floor
                if top < 0:
                    continue
                c = c * scal
                r = 1
                for m in range(top + 1):
                    ne = list(e)
                    ne[lead] -= m + q
                    ne[trail] += m
                    ne = tuple(ne)
                    new[ne] = new.get(ne, 0) + c * comb(m + q - 1, q - 1) * r
                    r = r * ratio
            terms = {e: c for e, c in new.items() if c != 0}
        terms = {e: c for e, c in terms.items() if plo[v] <= e[v] <= phi[v]}
    out = {}
    for e, c in terms.items():
        for e2, c2 in f.num.terms.items():
            ne = tuple(a + b for a, b in zip(e, e2))
            if all(a <= x <= b for a, x, b in zip(lo, ne, hi)):
                out[ne] = out.get(ne, 0) + c * c2
    return LaurentSeries(n, out, lo, hi, order)


def apply_hopf_op(f: RatFn, var: int, action) -> RatFn:
    """``('D', n)`` is the divided derivative in z_var; ``('T', k)`` substitutes z_var -> eps^k z_var."""
    kind, n = action
    if kind == "D":
        return f.divided_diff(var, n)
    if kind == "T":
        return f.scale_var(var, n)
    raise ValueError(f"unknown action {kind!r}")


def log_mixed_derivative(f: RatFn, z=0, w=1) -> RatFn:
    """d/dz d/dw log f, computed as d/dz (f_w / f)."""
    if f.is_zero():
        raise ZeroDivisionError("logarithm of zero")
    return (f.diff(w) * f.inverse()).diff(z)


def delta_series(k: int, window: int = DEFAULT_WINDOW, N: int = 1) -> LaurentSeries:
    """Truncation of sum_j eps^(kj) z^(-j-1) w^j to |j| <= window."""
    C = window
    terms = {(-j - 1, j): eps(k * j, N) for j in range(-C, C + 1)}
    return LaurentSeries(2, terms, (-C - 1, -C), (C - 1, C), None)

"""Sparse multivariate Laurent polynomials with exact scalar coefficients."""
from __future__ import annotations

from math import comb

from .cyclo import inv, scalar_str


class LaurentPoly:
    """Finite sum of monomials ``c * z_0^e_0 ... z_{n-1}^e_{n-1}``.

    ``terms`` maps exponent tuples to non-zero scalars.  Instances are treated as
    immutable once built.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if c != 0}

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, nvars, exps, c=1):
        return cls(nvars, {tuple(exps): c})

    @classmethod
    def var(cls, nvars, i, power=1):
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, nvars, i, j, c):
        """z_i - c z_j."""
        ei = [0] * nvars
        ej = [0] * nvars
        ei[i] = 1
        ej[j] = 1
        return cls(nvars, {tuple(ei): 1, tuple(ej): -c})

    # arithmetic ---------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __add__(self, o):
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return _raw(self.nvars, out)

    def __neg__(self):
        return _raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, LaurentPoly):
            if o == 0:
                return _raw(self.nvars, {})
            return _raw(self.nvars, {e: c * o for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LaurentPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def mul_linear(self, i, j, c):
        """Multiply by ``z_i - c z_j`` without building the binomial."""
        out = {}
        for e, a in self.terms.items():
            ei = list(e)
            ei[i] += 1
            ei = tuple(ei)
            out[ei] = out.get(ei, 0) + a
            ej = list(e)
            ej[j] += 1
            ej = tuple(ej)
            out[ej] = out.get(ej, 0) - c * a
        return LaurentPoly(self.nvars, out)

    def shift(self, exps):
        return _raw(self.nvars, {tuple(a + b for a, b in zip(e, exps)): c
                                 for e, c in self.terms.items()})

    def __eq__(self, o):
        return isinstance(o, LaurentPoly) and self.nvars == o.nvars and self.terms == o.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # structure ----------------------------------------------------------
    def min_exps(self):
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exps(self):
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=0)

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_value(self):
        return self.terms.get((0,) * self.nvars, 0)

    def scale_var(self, i, c):
        """Substitute ``z_i -> c z_i``."""
        out = {}
        for e, a in self.terms.items():
            k = e[i]
            if k == 0:
                out[e] = a
            elif k > 0:
                out[e] = a * c ** k
            else:
                out[e] = a * inv(c) ** (-k)
        return LaurentPoly(self.nvars, out)

    def at_zero(self, i):
        """Substitute ``z_i -> 0``; requires no negative powers of z_i."""
        if any(e[i] < 0 for e in self.terms):
            raise ValueError(f"negative power of z_{i} cannot be set to zero")
        return _raw(self.nvars, {e: c for e, c in self.terms.items() if e[i] == 0})

    def subs_linear(self, i, j, c):
        """Substitute ``z_i -> c z_j`` (polynomial in z_i required)."""
        out = {}
        for e, a in self.terms.items():
            k = e[i]
            if k < 0:
                raise ValueError("negative exponent in substitution")
            ne = list(e)
            ne[i] = 0
            ne[j] += k
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + a * c ** k
        return LaurentPoly(self.nvars, out)

    def divide_linear(self, i, j, c):
        """Exact quotient by ``z_i - c z_j`` or ``None`` when it does not divide.

        The polynomial must have non-negative exponents in z_i.
        """
        slices = {}
        for e, a in self.terms.items():
            if e[i] < 0:
                return None
            slices.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = a
        if not slices:
            return _raw(self.nvars, {})
        d = max(slices)
        if d == 0:
            return None
        # Q_{e-1} = P_e + c z_j Q_e, from the top down
        q = {}
        carry = {}
        for k in range(d, 0, -1):
            cur = dict(slices.get(k, {}))
            for e, a in carry.items():
                ne = list(e)
                ne[j] += 1
                ne = tuple(ne)
                v = cur.get(ne, 0) + c * a
                if v == 0:
                    cur.pop(ne, None)
                else:
                    cur[ne] = v
            q[k - 1] = cur
            carry = cur
        rem = dict(slices.get(0, {}))
        for e, a in carry.items():
            ne = list(e)
            ne[j] += 1
            ne = tuple(ne)
            v = rem.get(ne, 0) + c * a
            if v == 0:
                rem.pop(ne, None)
            else:
                rem[ne] = v
        if rem:
            return None
        out = {}
        for k, sl in q.items():
            for e, a in sl.items():
                ne = list(e)
                ne[i] = k
                out[tuple(ne)] = a
        return _raw(self.nvars, out)

    def diff(self, i):
        out = {}
        for e, a in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = a * k
        return _raw(self.nvars, out)

    def expand_shifted(self, i, j, c):
        """Substitute ``z_i -> c z_j + t``; return {power of t: LaurentPoly without z_i}."""
        out = {}
        for e, a in self.terms.items():
            k = e[i]
            if k < 0:
                raise ValueError("negative exponent in shifted substitution")
            base = list(e)
            base[i] = 0
            for m in range(k + 1):
                ne = list(base)
                ne[j] += k - m
                ne = tuple(ne)
                bucket = out.setdefault(m, {})
                bucket[ne] = bucket.get(ne, 0) + a * comb(k, m) * c ** (k - m)
        return {m: LaurentPoly(self.nvars, b) for m, b in out.items()}

    def rename(self, nvars, mapping):
        """Move variable ``v`` to position ``mapping[v]`` in an ``nvars``-variable ring."""
        out = {}
        for e, a in self.terms.items():
            ne = [0] * nvars
            for v, k in enumerate(e):
                if k:
                    ne[mapping[v]] += k
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + a
        return LaurentPoly(nvars, out)

    # presentation -------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: tuple(-x for x in t[0]))

    def to_str(self, names):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}" if k > 0 else f"{names[i]}^({k})")
                for i, k in enumerate(e) if k)
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
        return self.to_str([f"z{i}" for i in range(self.nvars)])


def _raw(nvars, terms):
    p = LaurentPoly.__new__(LaurentPoly)
    p.nvars = nvars
    p.terms = terms
    return p

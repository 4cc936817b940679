"""Supercommutative Hopf algebras generated by phi, psi, h and the lattice grouplikes.

A generator ``(base, k, n)`` stands for T^k D^(n) base, with T applied after the
divided derivative.  Reordering uses D^(n) T^k = eps^(nk) T^k D^(n).

Lattice algebras are stored as e^(m alpha) times a polynomial in
x_n = D^(n-1) h where h = (D e^alpha) e^(-alpha); the generator ``('h', 0, n-1)``
is x_n.  The relation tag ``'B'`` imposes T e^alpha = e^(-alpha) and ``'D'``
imposes T e^alpha = e^alpha.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial

from .rational.cyclo import eps, scalar_str

ODD_BASES = frozenset({"phi", "psi"})
BASE_RANK = {"phi": 0, "psi": 1, "h": 2}


@dataclass(frozen=True)
class Ambient:
    """Which free Leibnitz module an element lives in."""

    kind: str          # 'phi', 'phipsi', 'h' or 'lattice'
    N: int = 1
    rel: str | None = None   # lattice only: None, 'B' or 'D'

    def __post_init__(self):
        if self.kind not in ("phi", "phipsi", "h", "lattice"):
            raise ValueError(f"unknown ambient {self.kind!r}")
        if self.kind == "lattice":
            if self.rel is None and self.N != 1:
                raise ValueError("a lattice algebra with T needs the relation B or D")
            if self.rel is not None and self.N != 2:
                raise ValueError("lattice relations are defined for N = 2")
        elif self.rel is not None:
            raise ValueError("relations apply only to lattice algebras")

    @property
    def bases(self):
        return {"phi": ("phi",), "phipsi": ("phi", "psi"), "h": ("h",),
                "lattice": ("h",)}[self.kind]

    @property
    def lattice(self):
        return self.kind == "lattice"

    def label(self):
        if self.kind == "lattice":
            return "lattice" + (f"/R_{self.rel}" if self.rel else "")
        return self.kind


def gen_key(g):
    return (BASE_RANK[g[0]], g[1], g[2])


def is_odd(g):
    return g[0] in ODD_BASES


def canonical(gens):
    """Sort generators; return ``(sign, tuple)`` or ``(0, None)`` when an odd square appears."""
    gens = list(gens)
    sign = 1
    # insertion sort, counting odd-odd transpositions
    for i in range(1, len(gens)):
        j = i
        while j > 0 and gen_key(gens[j - 1]) > gen_key(gens[j]):
            if is_odd(gens[j - 1]) and is_odd(gens[j]):
                sign = -sign
            gens[j - 1], gens[j] = gens[j], gens[j - 1]
            j -= 1
    for a, b in zip(gens, gens[1:]):
        if a == b and is_odd(a):
            return 0, None
    return sign, tuple(gens)


def key_parity(key):
    return sum(1 for g in key[1] if is_odd(g)) % 2


ONE_KEY = (0, ())


class HopfElement:
    """Finite linear combination of monomials ``(charge, generators)``."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: Ambient, terms=None):
        self.ambient = ambient
        self.terms = {k: c for k, c in (terms or {}).items() if c != 0}

    # construction -------------------------------------------------------
    @classmethod
    def one(cls, ambient):
        return cls(ambient, {ONE_KEY: 1})

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, {})

    @classmethod
    def monomial(cls, ambient, key, c=1):
        return cls(ambient, {key: c})

    # arithmetic ---------------------------------------------------------
    def _check(self, o):
        if o.ambient != self.ambient:
            raise ValueError(f"mismatched ambients {self.ambient.label()} and {o.ambient.label()}")

    def __add__(self, o):
        if not isinstance(o, HopfElement):
            o = HopfElement(self.ambient, {ONE_KEY: o})
        self._check(o)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, 0) + c
        return HopfElement(self.ambient, out)

    __radd__ = __add__

    def __neg__(self):
        return HopfElement(self.ambient, {k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, HopfElement):
            return HopfElement(self.ambient, {k: c * o for k, c in self.terms.items()})
        return mul(self, o)

    def __rmul__(self, o):
        return HopfElement(self.ambient, {k: o * c for k, c in self.terms.items()})

    def __eq__(self, o):
        if isinstance(o, HopfElement):
            return self.ambient == o.ambient and self.terms == o.terms
        if o == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ambient, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def parity(self):
        ps = {key_parity(k) for k in self.terms}
        if not ps:
            return "even"
        if len(ps) > 1:
            return "mixed"
        return "odd" if ps.pop() else "even"

    def homogeneous_parts(self):
        out = {}
        for k, c in self.terms.items():
            out.setdefault(key_parity(k), {})[k] = c
        return {p: HopfElement(self.ambient, t) for p, t in out.items()}

    def monomials(self):
        """Iterate ``(coefficient, key)`` in a deterministic order."""
        for k in sorted(self.terms, key=_sort_key):
            yield self.terms[k], k

    def __repr__(self):
        return element_str(self)


def _sort_key(key):
    return (len(key[1]), key[0], tuple(gen_key(g) for g in key[1]))


def mul_keys(amb: Ambient, k1, k2):
    """Product of two monomials as ``(coefficient, key)``; coefficient 0 if it vanishes."""
    s, gens = canonical(k1[1] + k2[1])
    if s == 0:
        return 0, None
    return s, (k1[0] + k2[0], gens)


def mul(a: HopfElement, b: HopfElement) -> HopfElement:
    if a.ambient != b.ambient:
        raise ValueError(f"mismatched ambients {a.ambient.label()} and {b.ambient.label()}")
    out = {}
    for k1, c1 in a.terms.items():
        for k2, c2 in b.terms.items():
            s, k = mul_keys(a.ambient, k1, k2)
            if s:
                out[k] = out.get(k, 0) + s * c1 * c2
    return HopfElement(a.ambient, out)


# generators ------------------------------------------------------------------

def gen(ambient: Ambient, base: str, tpow: int = 0, ddeg: int = 0) -> HopfElement:
    """The element T^tpow D^(ddeg) base."""
    if base not in ambient.bases:
        raise ValueError(f"{base!r} is not a generator of {ambient.label()}")
    if not 0 <= tpow < ambient.N:
        raise ValueError(f"T-power {tpow} outside [0, {ambient.N})")
    if ddeg < 0:
        raise ValueError("negative derivative order")
    if ambient.lattice:
        x = HopfElement(ambient, {(0, (("h", 0, ddeg),)): 1})
        return act_T(x, tpow) if tpow else x
    return HopfElement(ambient, {(0, ((base, tpow, ddeg),)): 1})


def grouplike(ambient: Ambient, m: int) -> HopfElement:
    if not ambient.lattice:
        raise ValueError("grouplike e^(m alpha) needs a lattice ambient")
    return HopfElement(ambient, {(m, ()): 1})


# H^N_T action ------------------------------------------------------------------

def _d_key(amb: Ambient, key):
    """D applied to one monomial, as a dict of keys."""
    charge, gens = key
    out = {}
    if amb.lattice and charge:
        s, k = mul_keys(amb, key, (0, (("h", 0, 0),)))
        out[k] = out.get(k, 0) + charge * s
    for idx, g in enumerate(gens):
        base, t, n = g
        c = (n + 1) * (eps(t, amb.N) if t else 1)
        ng = (base, t, n + 1)
        s, gs = canonical(gens[:idx] + (ng,) + gens[idx + 1:])
        if s:
            k = (charge, gs)
            out[k] = out.get(k, 0) + s * c
    return out


def act_D(a: HopfElement, n: int = 1) -> HopfElement:
    """Divided power D^(n) acting by the Leibnitz rule."""
    cur = a.terms
    for _ in range(n):
        nxt = {}
        for k, c in cur.items():
            for k2, c2 in _d_key(a.ambient, k).items():
                nxt[k2] = nxt.get(k2, 0) + c * c2
        cur = {k: c for k, c in nxt.items() if c != 0}
    out = HopfElement(a.ambient, cur)
    return out * Fraction(1, factorial(n)) if n > 1 else out


def _t_key(amb: Ambient, key, k):
    charge, gens = key
    N = amb.N
    coef = 1
    if amb.lattice:
        if amb.rel is None:
            return 1, key
        if amb.rel == "B" and k % 2:
            charge = -charge
        new = []
        for g in gens:
            n = g[2] + 1
            # T x_n = eps^{-(n-1)} x_n * (T h / h)
            sgn = (-1) ** ((n - 1) * k)
            if amb.rel == "D":
                sgn *= (-1) ** k
            coef *= sgn
            new.append(g)
        return coef, (charge, tuple(new))
    new = [(b, (t + k) % N, n) for b, t, n in gens]
    s, gs = canonical(new)
    return s, (charge, gs) if s else None


def act_T(a: HopfElement, k: int = 1) -> HopfElement:
    """Algebra automorphism T^k."""
    if k % a.ambient.N == 0:
        return a
    out = {}
    for key, c in a.terms.items():
        s, nk = _t_key(a.ambient, key, k)
        if s:
            out[nk] = out.get(nk, 0) + s * c
    return HopfElement(a.ambient, out)


def act(ops, a: HopfElement) -> HopfElement:
    """Apply a word in ``('D', n)`` / ``('T', k)``; the rightmost letter acts first."""
    for kind, n in reversed(list(ops)):
        if kind == "D":
            a = act_D(a, n)
        elif kind == "T":
            a = act_T(a, n)
        else:
            raise ValueError(f"unknown operator {kind!r}")
    return a


def quotient_reduce(a: HopfElement, rel: str) -> HopfElement:
    """Re-tag a lattice element into the quotient by the relation ``rel``.

    Storage is already e^(m alpha) times a polynomial in x_n, so only the tag changes.
    """
    if not a.ambient.lattice:
        raise ValueError("quotient relations apply to lattice algebras")
    if rel not in ("B", "D"):
        raise ValueError(f"unknown relation {rel!r}")
    return HopfElement(Ambient("lattice", 2, rel), a.terms)


def project_T(a: HopfElement) -> HopfElement:
    """The projection onto the D-only submodule: drop T-powers, identify e^(2 alpha) with 1 under B."""
    amb = a.ambient
    out = {}
    for (charge, gens), c in a.terms.items():
        if amb.lattice:
            q = charge % 2 if amb.rel == "B" else charge
            k = (q, gens)
            out[k] = out.get(k, 0) + c
            continue
        s, gs = canonical([(b, 0, n) for b, _, n in gens])
        if s:
            out[(charge, gs)] = out.get((charge, gs), 0) + s * c
    return HopfElement(amb, out)


def in_state_space(a: HopfElement) -> bool:
    if a.ambient.lattice:
        return a.ambient.rel != "B" or all(k[0] in (0, 1) for k in a.terms)
    return all(g[1] == 0 for k in a.terms for g in k[1])


def counit(a: HopfElement):
    return sum((c for (ch, gens), c in a.terms.items() if not gens), 0)


# coproducts --------------------------------------------------------------------

def coproduct_key(key, l: int):
    """Delta^l of one monomial as ``{tuple of l+1 keys: sign}``."""
    charge, gens = key
    slots = l + 1
    out = {}
    for assign in product(range(slots), repeat=len(gens)):
        sign = 1
        for i in range(len(gens)):
            if is_odd(gens[i]):
                for j in range(i + 1, len(gens)):
                    if is_odd(gens[j]) and assign[i] > assign[j]:
                        sign = -sign
        parts = tuple((charge, tuple(g for g, s in zip(gens, assign) if s == t))
                      for t in range(slots))
        out[parts] = out.get(parts, 0) + sign
    return {k: c for k, c in out.items() if c}


class SweedlerSum:
    """Delta^l(a) as explicit terms ``{(key_1, ..., key_{l+1}): coefficient}``."""

    __slots__ = ("ambient", "slots", "terms")

    def __init__(self, ambient, slots, terms):
        self.ambient = ambient
        self.slots = slots
        self.terms = {k: c for k, c in terms.items() if c != 0}

    def __iter__(self):
        """Yield ``(coefficient, (HopfElement, ...))``."""
        for k in sorted(self.terms, key=lambda t: tuple(_sort_key(x) for x in t)):
            yield self.terms[k], tuple(HopfElement.monomial(self.ambient, x) for x in k)

    def __eq__(self, o):
        return isinstance(o, SweedlerSum) and self.slots == o.slots and self.terms == o.terms

    def __len__(self):
        return len(self.terms)

    def contract(self, slot: int) -> "SweedlerSum | HopfElement":
        """Apply the counit to one slot."""
        out = {}
        for k, c in self.terms.items():
            if k[slot][1]:
                continue
            rest = k[:slot] + k[slot + 1:]
            out[rest] = out.get(rest, 0) + c
        if self.slots == 2:
            return HopfElement(self.ambient, {r[0]: c for r, c in out.items()})
        return SweedlerSum(self.ambient, self.slots - 1, out)

    def expand_slot(self, slot: int) -> "SweedlerSum":
        """Apply Delta to one slot, inserting the two halves in place."""
        out = {}
        for k, c in self.terms.items():
            for (p, q), s in coproduct_key(k[slot], 1).items():
                nk = k[:slot] + (p, q) + k[slot + 1:]
                out[nk] = out.get(nk, 0) + c * s
        return SweedlerSum(self.ambient, self.slots + 1, out)

    def flip(self) -> "SweedlerSum":
        """Super transposition of a two-slot sum."""
        if self.slots != 2:
            raise ValueError("flip needs two slots")
        out = {}
        for (p, q), c in self.terms.items():
            s = -1 if key_parity(p) and key_parity(q) else 1
            out[(q, p)] = out.get((q, p), 0) + s * c
        return SweedlerSum(self.ambient, 2, out)


def coproduct(a: HopfElement, l: int = 1) -> SweedlerSum:
    if l < 1:
        raise ValueError("coproduct order must be at least 1")
    out = {}
    for key, c in a.terms.items():
        for parts, s in coproduct_key(key, l).items():
            out[parts] = out.get(parts, 0) + c * s
    return SweedlerSum(a.ambient, l + 1, out)


def parity(a: HopfElement) -> str:
    return a.parity()


# text ---------------------------------------------------------------------------

def gen_str(g, lattice=False):
    base, t, n = g
    parts = []
    if t:
        parts.append(f"T^{t}")
    if n:
        parts.append(f"D^({n})")
    parts.append(base)
    return " ".join(parts)


def key_str(key, lattice=False):
    charge, gens = key
    parts = []
    if charge:
        parts.append(f"e{{{charge}}}")
    for g in gens:
        s = gen_str(g, lattice)
        parts.append(f"({s})" if " " in s else s)
    return " * ".join(parts) if parts else "1"


def element_str(a: HopfElement) -> str:
    if not a.terms:
        return "0"
    out = []
    for c, key in a.monomials():
        ks = key_str(key, a.ambient.lattice)
        if ks == "1":
            out.append(scalar_str(c))
        elif c == 1:
            out.append(ks)
        elif c == -1:
            out.append("-" + ks)
        else:
            out.append(f"{scalar_str(c)} * {ks}")
    return " + ".join(out).replace("+ -", "- ")

"""Covariant bicharacters: extension from generator values, predicates, n-characters.

A bicharacter is fixed by its values on pairs of base generators.  Everything
else follows from covariance (T and D act on the matching variable) and the
two multiplicativity laws

    r(a b (x) c) = sum (-1)^{|b||c'|} r(a (x) c') r(b (x) c'')
    r(a (x) b c) = sum (-1)^{|a''||b|} r(a' (x) b) r(a'' (x) c)

with r(1 (x) a) = r(a (x) 1) = counit(a).
"""
from __future__ import annotations

import json
import random
import threading
from dataclasses import dataclass, field
from itertools import product

from .hopf import (Ambient, HopfElement, ODD_BASES, coproduct_key, gen, grouplike,
                   key_parity, mul)
from .rational import LaurentPoly, RatFn, log_mixed_derivative

Z, W = 0, 1


def _zw():
    return LaurentPoly.var(2, Z), LaurentPoly.var(2, W)


class BicharacterSpec:
    """Generator table of a bicharacter together with a memo of extended values.

    ``table`` maps ``(base, base)`` to a RatFn in (z, w); lattice algebras use the
    key ``('e', 'e')`` for the value on e^alpha (x) e^alpha.
    """

    def __init__(self, ambient: Ambient, table: dict, name: str | None = None):
        self.ambient = ambient
        self.N = ambient.N
        self.name = name
        self.table = {}
        for (a, b), f in table.items():
            if f.N != self.N or f.nvars != 2:
                raise ValueError(f"table entry {a},{b} is not a function of (z, w) at N={self.N}")
            if not f.is_plus(W):
                raise ValueError(f"table entry {a},{b} has a pole at w = 0")
            if (a in ODD_BASES) != (b in ODD_BASES) and not f.is_zero():
                raise ValueError(f"table entry {a},{b} pairs opposite parities")
            self.table[(a, b)] = f
        if ambient.lattice:
            if ("e", "e") not in self.table:
                raise ValueError("lattice bicharacter needs the value on e^alpha (x) e^alpha")
            if ambient.rel and not relation_consistency(self, ambient.rel):
                raise ValueError(f"value is inconsistent with the relation R_{ambient.rel}")
        self._memo = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"BicharacterSpec({self.name or 'custom'}, {self.ambient.label()})"

    def zero(self):
        return RatFn.zero(self.N, 2)

    def one(self):
        return RatFn.one(self.N, 2)

    def cache_size(self):
        return len(self._memo)

    # JSON ---------------------------------------------------------------
    def to_json(self):
        return {
            "order": self.N,
            "ambient": self.ambient.kind,
            "rel": self.ambient.rel,
            "table": {f"{a},{b}": f.to_json() for (a, b), f in sorted(self.table.items())},
        }

    @classmethod
    def from_json(cls, obj, name=None):
        amb = Ambient(obj["ambient"], obj["order"], obj.get("rel"))
        table = {}
        for k, v in obj["table"].items():
            a, b = (s.strip() for s in k.split(","))
            table[(a, b)] = RatFn.from_json(v)
        return cls(amb, table, name)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh), name=str(path))


# presets ----------------------------------------------------------------------

def preset(name: str, N: int | None = None) -> BicharacterSpec:
    """Built-in bicharacters by name: Af, Ab, Bf, Bb, Df, Db, C, id.

    ``N`` sets the order for ``Df`` (1/(z-w) on an order-N neutral fermion) and ``id``.
    """
    if name == "Af":
        z, w = _zw()
        f = RatFn.pole(1, 2, Z, W)
        return BicharacterSpec(Ambient("phipsi", 1), {("phi", "psi"): f, ("psi", "phi"): f}, name)
    if name == "Ab":
        z, w = _zw()
        return BicharacterSpec(Ambient("lattice", 1), {("e", "e"): RatFn(1, 2, z - w)}, name)
    if name == "Bf":
        z, w = _zw()
        return BicharacterSpec(Ambient("phi", 2),
                               {("phi", "phi"): RatFn(2, 2, z - w) * RatFn.pole(2, 2, Z, W, 1)}, name)
    if name == "Bb":
        z, w = _zw()
        return BicharacterSpec(Ambient("lattice", 2, "B"),
                               {("e", "e"): RatFn(2, 2, z - w) * RatFn.pole(2, 2, Z, W, 1)}, name)
    if name == "Df":
        n = N or 2
        return BicharacterSpec(Ambient("phi", n), {("phi", "phi"): RatFn.pole(n, 2, Z, W)}, name)
    if name == "Db":
        z, w = _zw()
        return BicharacterSpec(Ambient("lattice", 2, "D"), {("e", "e"): RatFn(2, 2, z * z - w * w)}, name)
    if name == "C":
        return BicharacterSpec(Ambient("h", 2), {("h", "h"): RatFn.pole(2, 2, Z, W, 1)}, name)
    if name == "id":
        return BicharacterSpec(Ambient("phi", N or 2), {}, name)
    raise ValueError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")


PRESETS = ("Af", "Ab", "Bf", "Bb", "Df", "Db", "C", "id")


# extension --------------------------------------------------------------------

def _atoms(key):
    """Split a monomial into its grouplike part and its primitive generators."""
    charge, gens = key
    atoms = []
    if charge:
        atoms.append((charge, ()))
    atoms.extend((0, (g,)) for g in gens)
    return atoms


def _split_first(key):
    charge, gens = key
    if charge:
        return (charge, ()), (0, gens)
    return (0, gens[:1]), (0, gens[1:])


def _coproduct_pairs(key):
    return [(p, q, s) for (p, q), s in coproduct_key(key, 1).items()]


def _covariant(f: RatFn, g1, g2):
    _, t1, n1 = g1
    _, t2, n2 = g2
    if n1:
        f = f.divided_diff(Z, n1)
    if t1:
        f = f.scale_var(Z, t1)
    if n2:
        f = f.divided_diff(W, n2)
    if t2:
        f = f.scale_var(W, t2)
    return f


def _lattice_atom(r: BicharacterSpec, ka, kb):
    f = r.table[("e", "e")]
    ca, ga = ka
    cb, gb = kb
    if not ga and not gb:
        return f ** (ca * cb)
    if ga and not gb:
        n = ga[0][2]
        return (f.diff(Z) * f.inverse() * cb).divided_diff(Z, n)
    if gb and not ga:
        k = gb[0][2]
        return (f.diff(W) * f.inverse() * ca).divided_diff(W, k)
    return log_mixed_derivative(f).divided_diff(Z, ga[0][2]).divided_diff(W, gb[0][2])


def eval_keys(r: BicharacterSpec, ka, kb) -> RatFn:
    """r on a pair of monomials (coefficient one)."""
    memo = r._memo
    hit = memo.get((ka, kb))
    if hit is not None:
        return hit
    val = _eval_keys(r, ka, kb)
    with r._lock:
        memo[(ka, kb)] = val
    return val


def _eval_keys(r, ka, kb):
    if not ka[1] and (ka[0] == 0 or not r.ambient.lattice):
        return r.one() if not kb[1] else r.zero()
    if not kb[1] and (kb[0] == 0 or not r.ambient.lattice):
        return r.one() if not ka[1] else r.zero()
    na, nb = len(_atoms(ka)), len(_atoms(kb))
    if na > 1:
        a1, rest = _split_first(ka)
        pa = key_parity(rest)
        out = r.zero()
        for p, q, s in _coproduct_pairs(kb):
            sign = -s if pa and key_parity(p) else s
            x = eval_keys(r, a1, p)
            if x.is_zero():
                continue
            y = eval_keys(r, rest, q)
            if y.is_zero():
                continue
            out = out + x * y * sign
        return out
    if nb > 1:
        b1, rest = _split_first(kb)
        pb = key_parity(b1)
        out = r.zero()
        for p, q, s in _coproduct_pairs(ka):
            sign = -s if pb and key_parity(q) else s
            x = eval_keys(r, p, b1)
            if x.is_zero():
                continue
            y = eval_keys(r, q, rest)
            if y.is_zero():
                continue
            out = out + x * y * sign
        return out
    if r.ambient.lattice:
        return _lattice_atom(r, ka, kb)
    g1, g2 = ka[1][0], kb[1][0]
    f = r.table.get((g1[0], g2[0]))
    if f is None or f.is_zero():
        return r.zero()
    return _covariant(f, g1, g2)


def extend_eval(r: BicharacterSpec, a: HopfElement, b: HopfElement) -> RatFn:
    if a.ambient != r.ambient or b.ambient != r.ambient:
        raise ValueError(f"elements must live in {r.ambient.label()}")
    out = r.zero()
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            v = eval_keys(r, ka, kb)
            if not v.is_zero():
                out = out + v * (ca * cb)
    return out


# predicates -------------------------------------------------------------------

def _base_elements(r):
    amb = r.ambient
    if amb.lattice:
        return [grouplike(amb, 1), grouplike(amb, -1), gen(amb, "h")]
    return [gen(amb, b) for b in amb.bases]


def random_element(r, rng: random.Random, max_len=2, max_d=2):
    """A random homogeneous monomial of the ambient algebra."""
    amb = r.ambient
    while True:
        x = HopfElement.one(amb)
        if amb.lattice:
            x = grouplike(amb, rng.randint(-2, 2))
        for _ in range(rng.randint(0, max_len)):
            b = rng.choice(amb.bases)
            t = rng.randrange(amb.N) if not amb.lattice else 0
            x = mul(x, gen(amb, b, t, rng.randint(0, max_d)))
        if not x.is_zero():
            return x * rng.choice([1, 2, -1])


def transpose_check(r: BicharacterSpec, samples: int = 100, seed: int = 0) -> bool:
    """Is r equal to its transpose r_{w,z} composed with the super flip?"""
    def sym(a, b):
        lhs = extend_eval(r, a, b)
        rhs = extend_eval(r, b, a).swap(Z, W)
        if a.parity() == "odd" and b.parity() == "odd":
            rhs = -rhs
        return lhs == rhs

    base = _base_elements(r)
    if not all(sym(a, b) for a in base for b in base):
        return False
    rng = random.Random(seed)
    return all(sym(random_element(r, rng), random_element(r, rng)) for _ in range(samples))


@dataclass
class ShiftReport:
    ok: bool
    checked: int = 0
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def coefficient_shift(c: RatFn):
    """``(constant, s)`` when c = constant * w^s, else ``None``."""
    if c.is_zero():
        return 0, 0
    if len(c.num.terms) != 1:
        return None
    (e, k), = c.num.terms.items()
    if e[Z]:
        return None
    s = e[W]
    for f, p in c.den:
        if f != (0, W):
            return None
        s -= p
    return k, s


def shift_restricted_check(r: BicharacterSpec, depth: int = 2, pairs=None) -> ShiftReport:
    """Every Laurent coefficient at every diagonal must be c * w^s; singular ones need |s| <= (N-1)(l+1)."""
    N = r.N
    if pairs is None:
        base = _base_elements(r)
        pairs = [(a, b) for a in base for b in base]
    rep = ShiftReport(True)
    for a, b in pairs:
        f = extend_eval(r, a, b)
        for i in range(N):
            for l, c in f.laurent_at_diagonal(Z, W, i, depth):
                rep.checked += 1
                cs = coefficient_shift(c)
                bad = cs is None or (l >= 0 and abs(cs[1]) > (N - 1) * (l + 1))
                if bad:
                    rep.ok = False
                    rep.violations.append({"a": repr(a), "b": repr(b), "diagonal": i,
                                           "l": l, "coefficient": repr(c)})
    return rep


def relation_consistency(r: BicharacterSpec, rel: str) -> bool:
    """Substitution identities the value on e^alpha (x) e^alpha must satisfy under a relation."""
    f = r.table[("e", "e")]
    if f.N != 2:
        return False
    fz = f.scale_var(Z, 1)
    fw = f.scale_var(W, 1)
    if rel == "B":
        try:
            finv = f.inverse()
        except ValueError:
            return False
        return fz == fw == finv
    if rel == "D":
        return fz == f and fw == f
    raise ValueError(f"unknown relation {rel!r}")


# n-characters -----------------------------------------------------------------

def _pair_index(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def n_character_keys(r: BicharacterSpec, keys):
    """n-character on monomials, as a RatFn in n variables."""
    n = len(keys)
    N = r.N
    if n < 2:
        raise ValueError("n-characters need at least two arguments")
    if n == 2:
        return eval_keys(r, keys[0], keys[1])
    splits = [list(coproduct_key(k, n - 2).items()) for k in keys]
    pairs = _pair_index(n)
    out = RatFn.zero(N, n)
    cache = {}

    def choose(idx, chosen, coef):
        nonlocal out
        if idx == n:
            val = coef
            seq = []
            # a_i^{(j-1)} with a_j^{(i)} for i < j, pieces numbered from 0 here
            for i, j in pairs:
                pi = chosen[i][j - 1]
                pj = chosen[j][i]
                seq.append((i, key_parity(pi)))
                seq.append((j, key_parity(pj)))
            sign = 1
            odd_vars = [v for v, p in seq if p]
            for x in range(len(odd_vars)):
                for y in range(x + 1, len(odd_vars)):
                    if odd_vars[x] > odd_vars[y]:
                        sign = -sign
            prod = RatFn.one(N, n)
            for i, j in pairs:
                pi = chosen[i][j - 1]
                pj = chosen[j][i]
                ck = (pi, pj, i, j)
                v = cache.get(ck)
                if v is None:
                    v = eval_keys(r, pi, pj)
                    v = v.rename(n, {Z: i, W: j}) if not v.is_zero() else None
                    cache[ck] = v if v is not None else False
                if not v:
                    return
                prod = prod * v
            out = out + prod * (val * sign)
            return
        for parts, s in splits[idx]:
            choose(idx + 1, chosen + [parts], coef * s)

    choose(0, [], 1)
    return out


def n_character(r: BicharacterSpec, elems) -> RatFn:
    n = len(elems)
    out = RatFn.zero(r.N, n)
    for combo in product(*[list(e.terms.items()) for e in elems]):
        c = 1
        for _, x in combo:
            c = c * x
        v = n_character_keys(r, [k for k, _ in combo])
        if not v.is_zero():
            out = out + v * c
    return out


def tri_character(r: BicharacterSpec, a, b, c) -> RatFn:
    """Three-argument character from single coproducts, written out pair by pair."""
    out = RatFn.zero(r.N, 3)
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            for kc, cc in c.terms.items():
                for a1, a2, sa in _coproduct_pairs(ka):
                    for b1, b2, sb in _coproduct_pairs(kb):
                        for c1, c2, sc in _coproduct_pairs(kc):
                            sign = sa * sb * sc
                            if key_parity(a2) and key_parity(b1):
                                sign = -sign
                            if key_parity(b2) and key_parity(c1):
                                sign = -sign
                            x = eval_keys(r, a1, b1).rename(3, {Z: 0, W: 1})
                            y = eval_keys(r, a2, c1).rename(3, {Z: 0, W: 2})
                            z = eval_keys(r, b2, c2).rename(3, {Z: 1, W: 2})
                            out = out + x * y * z * (sign * ca * cb * cc)
    return out

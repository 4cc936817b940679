"""Closed-form vacuum expectation values, Pfaffians and determinants, classical identities."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .bicharacter import BicharacterSpec, Z, W, eval_keys
from .hopf import gen
from .rational import RatFn, LaurentPoly, log_mixed_derivative


def _is_zero(x):
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def check_antisymmetric(A):
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix is not square")
    for i in range(n):
        if not _is_zero(A[i][i]):
            raise ValueError(f"diagonal entry {i} is nonzero")
        for j in range(i + 1, n):
            if not _is_zero(A[i][j] + A[j][i]):
                raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not opposite")


def pfaffian(A, zero=None, check=True):
    """Pfaffian by expansion along the first row; Pf([[0, 1], [-1, 0]]) = 1."""
    n = len(A)
    if n % 2:
        raise ValueError(f"Pfaffian of odd dimension {n}")
    if check:
        check_antisymmetric(A)
    if zero is None:
        zero = A[0][0] * 0 if n else 0
    if n == 0:
        return zero + 1

    @lru_cache(maxsize=None)
    def pf(idx):
        if not idx:
            return None
        first, rest = idx[0], idx[1:]
        acc = zero
        for t, j in enumerate(rest):
            a = A[first][j]
            if _is_zero(a):
                continue
            sub = pf(rest[:t] + rest[t + 1:])
            term = a if sub is None else a * sub
            acc = acc + term if t % 2 == 0 else acc - term
        return acc

    return pf(tuple(range(n)))


def det(A, zero=None):
    """Determinant by Laplace expansion along the first row, memoized on column sets."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix is not square")
    if zero is None:
        zero = A[0][0] * 0 if n else 0
    if n == 0:
        return zero + 1

    @lru_cache(maxsize=None)
    def d(row, cols):
        if row == n:
            return None
        acc = zero
        for t, c in enumerate(cols):
            a = A[row][c]
            if _is_zero(a):
                continue
            sub = d(row + 1, cols[:t] + cols[t + 1:])
            term = a if sub is None else a * sub
            acc = acc + term if t % 2 == 0 else acc - term
        return acc

    return d(0, tuple(range(n)))


# ----------------------------------------------------------------------------
# vacuum expectation values

def _pair_value(r, ka, kb, n, i, j):
    v = eval_keys(r, ka, kb)
    return v.rename(n, {Z: i, W: j}) if not v.is_zero() else RatFn.zero(r.N, n)


def vev_neutral(r: BicharacterSpec, npoints: int) -> RatFn:
    """Pf(r_{z_i, z_j}(phi (x) phi)) in z_1..z_n."""
    n = npoints
    if n % 2:
        return RatFn.zero(r.N, n)
    amb = r.ambient
    phi = next(iter(gen(amb, "phi").terms))
    zero = RatFn.zero(r.N, n)
    A = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = _pair_value(r, phi, phi, n, i, j)
            A[i][j] = v
            A[j][i] = -v
    return pfaffian(A, zero, check=False)


def vev_charged(r: BicharacterSpec, n: int) -> RatFn:
    """(-1)^(n(n-1)/2) det(r_{z_i, w_j}(phi (x) psi)), variables z_1..z_n then w_1..w_n."""
    amb = r.ambient
    phi = next(iter(gen(amb, "phi").terms))
    psi = next(iter(gen(amb, "psi").terms))
    m = 2 * n
    zero = RatFn.zero(r.N, m)
    A = [[_pair_value(r, phi, psi, m, i, n + j) for j in range(n)] for i in range(n)]
    d = det(A, zero)
    return -d if (n * (n - 1) // 2) % 2 else d


def vev_lattice(r: BicharacterSpec, charges) -> RatFn:
    """delta(total charge) * prod_{i<j} r_{z_i, z_j}(e^{m_i} (x) e^{m_j}).

    Under the relation B the states e^{2 alpha} and 1 coincide, so only the charge parity must vanish.
    """
    amb = r.ambient
    if not amb.lattice:
        raise ValueError("lattice vacuum expectation values need a lattice bicharacter")
    n = len(charges)
    total = sum(charges)
    if (total % 2 if amb.rel == "B" else total) != 0:
        return RatFn.zero(r.N, n)
    out = RatFn.one(r.N, n)
    for i in range(n):
        for j in range(i + 1, n):
            v = _pair_value(r, (charges[i], ()), (charges[j], ()), n, i, j)
            if v.is_zero():
                return v
            out = out * v
    return out


def heisenberg_from_lattice(r: BicharacterSpec, m: int = 1):
    """(r(h (x) e^{m alpha}), r(h (x) h)) from logarithmic derivatives of r(e^alpha (x) e^alpha)."""
    if not r.ambient.lattice:
        raise ValueError("needs a lattice bicharacter")
    f = r.table[("e", "e")]
    dz = f.diff(Z) * f.inverse() * m
    return dz, log_mixed_derivative(f, Z, W)


# ----------------------------------------------------------------------------
# identities by clearing denominators
#
# Polynomials here have nonnegative exponents and are stored as {packed exponent: int},
# one byte per variable, which keeps products of many linear factors cheap.

_BITS = 8


def _var(i):
    return {1 << (_BITS * i): 1}


def _lin(i, j, sign=-1):
    """z_i + sign * z_j."""
    return {1 << (_BITS * i): 1, 1 << (_BITS * j): sign}


def _pmul(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            v = out.get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _padd(a, b, sign=1):
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + sign * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _pprod(factors, start=None):
    out = start if start is not None else {0: 1}
    for f in factors:
        out = _pmul(out, f)
    return out


def cleared_pfaffian(n, p, q):
    """Pf(p_ij / q_ij) * prod_{i<j} q_ij as a polynomial; ``p``, ``q`` map pairs i<j to polynomials."""

    @lru_cache(maxsize=None)
    def num(idx):
        if not idx:
            return {0: 1}
        first, rest = idx[0], idx[1:]
        acc = {}
        for t, j in enumerate(rest):
            sub = rest[:t] + rest[t + 1:]
            factors = [p[(first, j)]]
            for k in sub:
                factors.append(q[(first, k)])
                factors.append(q[(min(j, k), max(j, k))])
            term = _pprod(factors, num(sub))
            acc = _padd(acc, term, 1 if t % 2 == 0 else -1)
        return acc

    return num(tuple(range(n)))


def cleared_det(n, p, q):
    """det(p_ij / q_ij) * prod_{i,j} q_ij as a polynomial."""

    @lru_cache(maxsize=None)
    def num(row, cols):
        if row == n:
            return {0: 1}
        acc = {}
        for t, c in enumerate(cols):
            sub = cols[:t] + cols[t + 1:]
            factors = [p[(row, c)]]
            factors += [q[(row, k)] for k in sub]
            factors += [q[(i, c)] for i in range(row + 1, n)]
            term = _pprod(factors, num(row + 1, sub))
            acc = _padd(acc, term, 1 if t % 2 == 0 else -1)
        return acc

    return num(0, tuple(range(n)))


def identity_sides(name: str, n: int):
    """Both sides of a classical identity after clearing the common denominator.

    ``schur`` and ``da`` use a 2n x 2n Pfaffian; ``cauchy`` an n x n determinant.
    """
    if name == "schur":
        m = 2 * n
        pairs = list(combinations(range(m), 2))
        p = {(i, j): _lin(i, j, -1) for i, j in pairs}
        q = {(i, j): _lin(i, j, 1) for i, j in pairs}
        lhs = cleared_pfaffian(m, p, q)
        rhs = _pprod(p[ij] for ij in pairs)
        return lhs, rhs
    if name == "cauchy":
        # z_i is variable i, w_j is variable n + j
        p = {(i, j): {0: 1} for i in range(n) for j in range(n)}
        q = {(i, j): _lin(i, n + j, -1) for i in range(n) for j in range(n)}
        lhs = cleared_det(n, p, q)
        if (n * (n - 1) // 2) % 2:
            lhs = {k: -c for k, c in lhs.items()}
        rhs = _pprod([_lin(i, j, -1) for i, j in combinations(range(n), 2)]
                     + [_lin(n + i, n + j, -1) for i, j in combinations(range(n), 2)])
        return lhs, rhs
    if name == "da":
        m = 2 * n
        pairs = list(combinations(range(m), 2))
        p = {ij: {0: 1} for ij in pairs}
        q = {(i, j): _lin(i, j, -1) for i, j in pairs}
        # common denominator prod_{i<j} (z_i^2 - z_j^2)
        lhs = _pprod((_lin(i, j, 1) for i, j in pairs), cleared_pfaffian(m, p, q))
        sq = {(i, j): _pmul(_lin(i, j, -1), _lin(i, j, 1)) for i, j in pairs}
        rhs = {}
        for I in combinations(range(m), n):
            side = set(I)
            factors = [_var(i) for i in I]
            for i, j in pairs:
                if (i in side) == (j in side):
                    factors += [sq[(i, j)], sq[(i, j)]]
            rhs = _padd(rhs, _pprod(factors))
        return lhs, rhs
    raise ValueError(f"unknown identity {name!r}; expected cauchy, schur or da")


def verify_identity(name: str, n: int) -> bool:
    """Exact polynomial check of the Cauchy, Schur or D-A identity at size n."""
    lhs, rhs = identity_sides(name, n)
    return lhs == rhs


def unpack(poly, nvars) -> LaurentPoly:
    """Convert a packed polynomial to a LaurentPoly."""
    mask = (1 << _BITS) - 1
    terms = {}
    for k, c in poly.items():
        terms[tuple((k >> (_BITS * i)) & mask for i in range(nvars))] = c
    return LaurentPoly(nvars, terms)


def identity_ratfns(name: str, n: int):
    """The two sides of an identity as RatFns (for display and small cross-checks)."""
    if name == "cauchy":
        m = 2 * n
        zero = RatFn.zero(1, m)
        A = [[RatFn.pole(1, m, i, n + j) for j in range(n)] for i in range(n)]
        lhs = det(A, zero)
        if (n * (n - 1) // 2) % 2:
            lhs = -lhs
        num = RatFn.one(1, m)
        for i, j in combinations(range(n), 2):
            num = num * RatFn(1, m, LaurentPoly.var(m, i) - LaurentPoly.var(m, j))
            num = num * RatFn(1, m, LaurentPoly.var(m, n + i) - LaurentPoly.var(m, n + j))
        den = RatFn.one(1, m)
        for i in range(n):
            for j in range(n):
                den = den * RatFn(1, m, LaurentPoly.var(m, i) - LaurentPoly.var(m, n + j))
        return lhs, num * den.inverse()
    m = 2 * n
    z = [LaurentPoly.var(m, i) for i in range(m)]
    zero = RatFn.zero(2, m)
    A = [[zero] * m for _ in range(m)]
    for i, j in combinations(range(m), 2):
        if name == "schur":
            v = RatFn(2, m, z[i] - z[j]) * RatFn.pole(2, m, i, j, 1)
        elif name == "da":
            v = RatFn.pole(2, m, i, j)
        else:
            raise ValueError(f"unknown identity {name!r}; expected cauchy, schur or da")
        A[i][j], A[j][i] = v, -v
    lhs = pfaffian(A, zero)
    if name == "schur":
        rhs = RatFn.one(2, m)
        for i, j in combinations(range(m), 2):
            rhs = rhs * A[i][j]
        return lhs, rhs
    rhs = zero
    for I in combinations(range(m), n):
        side = set(I)
        t = RatFn.one(2, m)
        for i in I:
            t = t * RatFn(2, m, z[i])
        for i, j in combinations(range(m), 2):
            s = RatFn(2, m, z[i] * z[i] - z[j] * z[j])
            t = t * s if (i in side) == (j in side) else t * s.inverse()
        rhs = rhs + t
    return lhs, rhs

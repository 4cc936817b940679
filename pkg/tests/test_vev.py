from fractions import Fraction
from itertools import combinations

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import ratfns
from twistva.bicharacter import extend_eval, preset
from twistva.hopf import act_T, gen, mul
from twistva.rational import LaurentPoly, RatFn
from twistva.tva import xn
from twistva.vev import (check_antisymmetric, det, heisenberg_from_lattice, identity_ratfns,
                         identity_sides, pfaffian, unpack, verify_identity, vev_charged,
                         vev_lattice, vev_neutral)


def pair(N, n, i, j, kind):
    z = [LaurentPoly.var(n, k) for k in range(n)]
    if kind == "B":
        return RatFn(N, n, z[i] - z[j]) * RatFn.pole(N, n, i, j, 1)
    return RatFn.pole(N, n, i, j)


# Pfaffians and determinants ---------------------------------------------------------------

def test_pfaffian_small():
    assert pfaffian([[0, 1], [-1, 0]]) == 1
    a = [[0, 2, 3, 5], [-2, 0, 7, 11], [-3, -7, 0, 13], [-5, -11, -13, 0]]
    assert pfaffian(a) == 2 * 13 - 3 * 11 + 5 * 7
    assert pfaffian([]) == 1


def test_pfaffian_errors():
    with pytest.raises(ValueError):
        pfaffian([[0]])
    with pytest.raises(ValueError):
        pfaffian([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        check_antisymmetric([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        det([[1, 2]])


def test_det_against_sympy():
    m = [[Fraction(i * j + 1, i + 2) + (i == j) for j in range(4)] for i in range(4)]
    assert det(m) == sp.Matrix(m).det()


@st.composite
def antisym(draw):
    n = draw(st.sampled_from([2, 4, 6]))
    zero = RatFn.zero(2, 2)
    A = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.integers(0, 3)) == 0:
                v = draw(ratfns(N=2, max_factors=1))
            else:
                v = RatFn.const(2, 2, draw(st.fractions(-3, 3, max_denominator=3)))
            A[i][j], A[j][i] = v, -v
    return A


@given(antisym())
def test_pfaffian_squared_is_det(A):
    zero = RatFn.zero(2, 2)
    p = pfaffian(A, zero)
    assert p * p == det(A, zero)


@given(st.lists(st.fractions(-4, 4, max_denominator=5), min_size=15, max_size=15))
def test_pfaffian_squared_is_det_rational(vals):
    n = 6
    A = [[Fraction(0)] * n for _ in range(n)]
    it = iter(vals)
    for i in range(n):
        for j in range(i + 1, n):
            v = next(it)
            A[i][j], A[j][i] = v, -v
    assert pfaffian(A) ** 2 == sp.Matrix(A).det()


def test_schur_pfaffian_closed_form():
    n = 4
    zero = RatFn.zero(2, n)
    A = [[zero] * n for _ in range(n)]
    prod = RatFn.one(2, n)
    for i in range(n):
        for j in range(i + 1, n):
            A[i][j] = pair(2, n, i, j, "B")
            A[j][i] = -A[i][j]
            prod = prod * A[i][j]
    assert pfaffian(A, zero) == prod


# closed-form vacuum expectation values ----------------------------------------------------

def test_vev_neutral_examples():
    assert vev_neutral(preset("Bf"), 2) == pair(2, 2, 0, 1, "B")
    assert vev_neutral(preset("Df"), 2) == RatFn.pole(2, 2, 0, 1)
    for n in (2, 4):
        assert vev_neutral(preset("id"), n).is_zero()
    assert vev_neutral(preset("Bf"), 3).is_zero()


@pytest.mark.parametrize("name", ["Bf", "Df"])
@pytest.mark.parametrize("n", [2, 4])
def test_vev_neutral_matches_field(name, n):
    r = preset(name)
    phi = gen(r.ambient, "phi")
    assert xn(r, [phi] * n).vacuum_part() == vev_neutral(r, n)


def test_vev_charged():
    r = preset("Af")
    assert vev_charged(r, 1) == RatFn.pole(1, 2, 0, 1)
    lhs, rhs = identity_ratfns("cauchy", 2)
    assert vev_charged(r, 2) == lhs == rhs
    zero = type(r)(r.ambient, {}, "zero")
    assert vev_charged(zero, 2).is_zero()


def test_vev_lattice_examples():
    assert vev_lattice(preset("Ab"), [1, -1]) == RatFn.pole(1, 2, 0, 1)
    for name in ("Ab", "Db"):
        assert vev_lattice(preset(name), [1, 1]).is_zero()
    bb = vev_lattice(preset("Bb"), [1, 1, 1, 1])
    want = RatFn.one(2, 4)
    for i in range(4):
        for j in range(i + 1, 4):
            want = want * pair(2, 4, i, j, "B")
    assert bb == want
    assert vev_lattice(preset("Db"), [-1, 1]) == RatFn.pole(2, 2, 0, 1) * RatFn.pole(2, 2, 0, 1, 1)
    with pytest.raises(ValueError):
        vev_lattice(preset("Bf"), [1, -1])


@given(st.sampled_from(["Ab", "Bb", "Db"]),
       st.lists(st.sampled_from([-1, 1]), min_size=2, max_size=4), st.data())
def test_vev_lattice_permutation(name, charges, data):
    r = preset(name)
    n = len(charges)
    perm = data.draw(st.permutations(range(n)))
    f = vev_lattice(r, charges)
    g = vev_lattice(r, [charges[p] for p in perm])
    # variable k of g is variable perm[k] of f; each inverted pair costs (-1)^(m_i m_j)
    sign = 1
    for a in range(n):
        for b in range(a + 1, n):
            if perm[a] > perm[b] and (charges[perm[a]] * charges[perm[b]]) % 2:
                sign = -sign
    assert g.rename(n, list(perm)) == f * sign


def test_C_two_point_function():
    r = preset("C")
    h = gen(r.ambient, "h")
    f = extend_eval(r, h, h)
    assert f == RatFn.pole(2, 2, 0, 1, 1)
    assert f.swap(0, 1) == f


# Heisenberg values -----------------------------------------------------------------------

def test_heisenberg_from_lattice():
    hA = heisenberg_from_lattice(preset("Ab"))
    assert hA == (RatFn.pole(1, 2, 0, 1), RatFn.pole(1, 2, 0, 1, 0, 2))
    z, w = LaurentPoly.var(2, 0), LaurentPoly.var(2, 1)
    sq = RatFn.pole(2, 2, 0, 1, 0, 2) * RatFn.pole(2, 2, 0, 1, 1, 2)
    _, hB = heisenberg_from_lattice(preset("Bb"))
    assert hB == RatFn(2, 2, (z * z + w * w) * 2) * sq
    _, hD = heisenberg_from_lattice(preset("Db"))
    assert hD == RatFn(2, 2, z * w * 4) * sq
    with pytest.raises(ValueError):
        heisenberg_from_lattice(preset("Bf"))


def test_heisenberg_fermion_side():
    z, w = LaurentPoly.var(2, 0), LaurentPoly.var(2, 1)
    sq = RatFn.pole(2, 2, 0, 1, 0, 2) * RatFn.pole(2, 2, 0, 1, 1, 2)
    for name, want in (("Bf", RatFn(2, 2, z * w * (z * z + w * w) * 8) * sq),
                       ("Df", RatFn(2, 2, z * w * 4) * sq)):
        r = preset(name)
        p = gen(r.ambient, "phi")
        hp = mul(p, act_T(p))
        assert extend_eval(r, hp, hp) == want
    # reference values from sympy
    zs, ws = sp.symbols("z w")
    ref = sp.diff(sp.log((zs - ws) / (zs + ws)), zs, ws)
    assert sp.simplify(ref - 2 * (zs ** 2 + ws ** 2) / (zs ** 2 - ws ** 2) ** 2) == 0


# classical identities ----------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("name", ["schur", "cauchy", "da"])
def test_identities(name, n):
    assert verify_identity(name, n)


def test_identity_cross_check():
    for name in ("schur", "da", "cauchy"):
        for n in (1, 2):
            lhs, rhs = identity_ratfns(name, n)
            assert lhs == rhs


def test_da_against_sympy():
    z = sp.symbols("z1:5")
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    a = {(i, j): 1 / (z[i] - z[j]) for i, j in pairs}
    pf = a[0, 1] * a[2, 3] - a[0, 2] * a[1, 3] + a[0, 3] * a[1, 2]
    rhs = 0
    for I in combinations(range(4), 2):
        t = sp.Mul(*[z[i] for i in I])
        for i, j in pairs:
            s = z[i] ** 2 - z[j] ** 2
            t *= s if (i in I) == (j in I) else 1 / s
        rhs += t
    assert sp.simplify(pf - rhs) == 0


def test_broken_identity_detected():
    lhs, rhs = identity_sides("schur", 2)
    assert lhs == rhs
    bumped = dict(rhs)
    k = next(iter(bumped))
    bumped[k] += 1
    assert lhs != bumped
    assert unpack(lhs, 4) == unpack(rhs, 4)
    with pytest.raises(ValueError):
        verify_identity("wick", 1)


import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistva.bicharacter import preset, random_element
from twistva.hopf import (Ambient, HopfElement, SweedlerSum, act, act_D, act_T,
                          coproduct, counit, element_str, gen, grouplike, in_state_space,
                          key_parity, mul, mul_keys, project_T, quotient_reduce)
from twistva.rational import eps

AMBIENTS = {
    "Af": preset("Af"), "Ab": preset("Ab"), "Bf": preset("Bf"), "Bb": preset("Bb"),
    "Db": preset("Db"), "C": preset("C"), "Df3": preset("Df", 3), "Df4": preset("Df", 4),
}


@st.composite
def elements(draw, names=tuple(AMBIENTS), homogeneous=False):
    r = AMBIENTS[draw(st.sampled_from(names))]
    rng = random.Random(draw(st.integers(0, 2 ** 32)))
    out = HopfElement.zero(r.ambient)
    for _ in range(draw(st.integers(1, 3))):
        out = out + random_element(r, rng, max_len=3, max_d=2) * draw(st.integers(-3, 3))
    if homogeneous and not out.is_zero():
        parts = list(out.homogeneous_parts().values())
        out = parts[draw(st.integers(0, len(parts) - 1))]
    return out


@st.composite
def pairs(draw, count=2, homogeneous=False):
    name = draw(st.sampled_from(tuple(AMBIENTS)))
    return tuple(draw(elements((name,), homogeneous)) for _ in range(count))


def sign(a, b):
    return -1 if a.parity() == "odd" and b.parity() == "odd" else 1


def slotwise(s: SweedlerSum, ops):
    """Apply one element map per slot of a Sweedler sum."""
    total = {}
    for c, parts in s:
        imgs = [op(p) for op, p in zip(ops, parts)]
        acc = {(): c}
        for img in imgs:
            nxt = {}
            for k, v in acc.items():
                for key, w in img.terms.items():
                    nxt[k + (key,)] = nxt.get(k + (key,), 0) + v * w
            acc = nxt
        for k, v in acc.items():
            total[k] = total.get(k, 0) + v
    return SweedlerSum(s.ambient, s.slots, total)


def tensor_mul(amb, s: SweedlerSum, t: SweedlerSum):
    out = {}
    for (p1, q1), c1 in s.terms.items():
        for (p2, q2), c2 in t.terms.items():
            a, k1 = mul_keys(amb, p1, p2)
            b, k2 = mul_keys(amb, q1, q2)
            if not (a and b):
                continue
            sg = -1 if key_parity(q1) and key_parity(p2) else 1
            out[(k1, k2)] = out.get((k1, k2), 0) + sg * a * b * c1 * c2
    return SweedlerSum(amb, 2, out)


# examples -----------------------------------------------------------------------------------

def test_odd_square_vanishes():
    amb = Ambient("phi", 2)
    phi = gen(amb, "phi")
    assert mul(phi, phi).is_zero()
    tphi = gen(amb, "phi", 1)
    assert mul(phi, tphi) == -mul(tphi, phi)


def test_T_then_D_ordering():
    amb = Ambient("phi", 3)
    phi = gen(amb, "phi")
    # D T phi = eps T D phi
    assert act_D(act_T(phi)) == gen(amb, "phi", 1, 1) * eps(1, 3)
    assert act_T(act_D(phi)) == gen(amb, "phi", 1, 1)


def test_divided_powers():
    amb = Ambient("h", 1)
    h = gen(amb, "h")
    assert act_D(h, 3) == gen(amb, "h", 0, 3)
    assert act_D(act_D(h, 2)) == gen(amb, "h", 0, 3) * 3
    sq = mul(h, h)
    assert act_D(sq) == mul(h, gen(amb, "h", 0, 1)) * 2


def test_lattice_derivative():
    amb = Ambient("lattice", 1)
    e2 = grouplike(amb, 2)
    h = gen(amb, "h")
    assert act_D(e2) == mul(e2, h) * 2
    # D^(2) e^alpha = e^alpha (h^2 + D h)/2
    e = grouplike(amb, 1)
    assert act_D(e, 2) * 2 == mul(e, mul(h, h)) + mul(e, gen(amb, "h", 0, 1))


def test_relation_B():
    amb = Ambient("lattice", 2, "B")
    e = grouplike(amb, 1)
    assert act_T(e) == grouplike(amb, -1)
    assert act_T(gen(amb, "h")) == gen(amb, "h")
    assert act_T(gen(amb, "h", 0, 1)) == -gen(amb, "h", 0, 1)


def test_relation_D():
    amb = Ambient("lattice", 2, "D")
    e = grouplike(amb, 1)
    assert act_T(e) == e
    assert act_T(gen(amb, "h")) == -gen(amb, "h")
    assert act_T(act_D(e)) == -act_D(act_T(e))


def test_quotient_and_projection():
    amb = Ambient("lattice", 1)
    x = mul(grouplike(amb, 2), gen(amb, "h"))
    b = quotient_reduce(x, "B")
    assert b.ambient.rel == "B"
    assert project_T(b) == mul(HopfElement.one(b.ambient), gen(b.ambient, "h"))
    assert not in_state_space(b)
    assert in_state_space(project_T(b))
    with pytest.raises(ValueError):
        quotient_reduce(x, "Q")
    phi = Ambient("phi", 2)
    y = mul(gen(phi, "phi", 1, 2), gen(phi, "phi"))
    assert project_T(y) == mul(gen(phi, "phi", 0, 2), gen(phi, "phi"))
    assert project_T(mul(gen(phi, "phi", 1), gen(phi, "phi"))).is_zero()


def test_coproduct_of_product():
    amb = Ambient("phi", 1)
    p0, p1 = gen(amb, "phi"), gen(amb, "phi", 0, 1)
    s = coproduct(mul(p0, p1))
    one = HopfElement.one(amb)
    got = {(element_str(a), element_str(b)): c for c, (a, b) in s}
    assert got == {("1", element_str(mul(p0, p1))): 1, (element_str(mul(p0, p1)), "1"): 1,
                   ("phi", "(D^(1) phi)"): 1, ("(D^(1) phi)", "phi"): -1}
    assert s.contract(0) == mul(p0, p1) and counit(one) == 1


def test_bad_inputs():
    amb = Ambient("phi", 2)
    with pytest.raises(ValueError):
        gen(amb, "psi")
    with pytest.raises(ValueError):
        gen(amb, "phi", 2)
    with pytest.raises(ValueError):
        grouplike(amb, 1)
    with pytest.raises(ValueError):
        mul(gen(amb, "phi"), gen(Ambient("phi", 3), "phi"))
    with pytest.raises(ValueError):
        coproduct(gen(amb, "phi"), 0)


# algebra --------------------------------------------------------------------------------

@given(pairs(3))
def test_associative(abc):
    a, b, c = abc
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(pairs(2, homogeneous=True))
def test_supercommutative(ab):
    a, b = ab
    assert mul(a, b) == mul(b, a) * sign(a, b)


@given(pairs(2))
def test_distributive_and_unit(ab):
    a, b = ab
    one = HopfElement.one(a.ambient)
    assert mul(one, a) == a == mul(a, one)
    assert mul(a, a + b) == mul(a, a) + mul(a, b)


# module action ------------------------------------------------------------------------------

@given(pairs(2, homogeneous=True))
def test_D_is_derivation(ab):
    a, b = ab
    assert act_D(mul(a, b)) == mul(act_D(a), b) + mul(a, act_D(b))


@given(pairs(2), st.integers(1, 3))
def test_T_is_automorphism(ab, k):
    a, b = ab
    assert act_T(mul(a, b), k) == mul(act_T(a, k), act_T(b, k))


@given(elements(), st.integers(0, 2), st.integers(0, 2))
def test_divided_power_composition(a, n, m):
    assert act_D(act_D(a, n), m) == act_D(a, n + m) * comb(n + m, n)


@given(elements(), st.integers(0, 2), st.integers(0, 3))
def test_DT_commutation(a, n, k):
    N = a.ambient.N
    assert act_D(act_T(a, k), n) == act_T(act_D(a, n), k) * eps(n * k, N)


@given(elements())
def test_T_has_order_N(a):
    N = a.ambient.N
    assert act_T(a, N) == a
    assert act([("T", 1)] * N, a) == a


@given(elements(), st.integers(1, 2), st.integers(0, 3))
def test_counit_invariance(a, n, k):
    assert counit(act_D(a, n)) == 0
    assert counit(act_T(a, k)) == counit(a)


# coalgebra --------------------------------------------------------------------------------

@given(elements())
def test_coassociative(a):
    d = coproduct(a)
    assert d.expand_slot(0) == d.expand_slot(1) == coproduct(a, 2)


@given(elements())
def test_counit_axiom(a):
    d = coproduct(a)
    assert d.contract(0) == a
    assert d.contract(1) == a


@given(elements())
def test_cocommutative(a):
    d = coproduct(a)
    assert d.flip() == d


@given(pairs(2))
def test_coproduct_is_multiplicative(ab):
    a, b = ab
    assert coproduct(mul(a, b)) == tensor_mul(a.ambient, coproduct(a), coproduct(b))


@given(elements(), st.integers(0, 2))
def test_coproduct_and_D(a, n):
    lhs = coproduct(act_D(a, n))
    rhs = SweedlerSum(a.ambient, 2, {})
    for i in range(n + 1):
        part = slotwise(coproduct(a), [lambda x, i=i: act_D(x, i), lambda x, i=i: act_D(x, n - i)])
        rhs = SweedlerSum(a.ambient, 2, {k: rhs.terms.get(k, 0) + part.terms.get(k, 0)
                                          for k in set(rhs.terms) | set(part.terms)})
    assert lhs == rhs


@given(elements(), st.integers(1, 3))
def test_coproduct_and_T(a, k):
    lhs = coproduct(act_T(a, k))
    assert lhs == slotwise(coproduct(a), [lambda x: act_T(x, k)] * 2)


@given(elements())
def test_grouplikes_and_primitives(a):
    amb = a.ambient
    if amb.lattice:
        e = grouplike(amb, 3)
        assert coproduct(e).terms == {((3, ()), (3, ())): 1}
    base = gen(amb, amb.bases[0], 0, 2)
    s = coproduct(base)
    assert len(s) == 2 and all(c == 1 for c, _ in s)

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistva.bicharacter import extend_eval, preset
from twistva.oracle import (Clifford, Oscillators, boson_bracket, boson_vertex_vev, closed_vev,
                            correspondence_check, fermion_vev, heisenberg_scale,
                            heisenberg_shift_check, highest_weight_check, highest_weight_vectors,
                            highest_weights, lattice_heisenberg_vev, heisenberg_vev, mode_bracket,
                            normal_order_check, oracle_equivalence, order_n_heisenberg,
                            order_n_target)
from twistva.oracle.checks import closed_series
from twistva.rational import RatFn, eps, expand_region


def mode(kind):
    if kind == "A":
        return st.tuples(st.sampled_from(["phi", "psi"]), st.integers(-4, 4))
    if kind == "B":
        return st.tuples(st.just("phi"), st.integers(-4, 4))
    return st.tuples(st.just("phi"), st.sampled_from([-7, -5, -3, -1, 1, 3, 5, 7]))


@st.composite
def fock_case(draw, nmodes):
    kind = draw(st.sampled_from("ABD"))
    cl = Clifford(kind)
    modes = [draw(mode(kind)) for _ in range(nmodes)]
    base = [draw(mode(kind)) for _ in range(draw(st.integers(0, 3)))]
    return cl, modes, cl.apply_word(base)


def add(a, b, s=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


# Clifford algebras ---------------------------------------------------------------------------

@given(fock_case(2))
def test_clifford_relations(case):
    cl, (a, b), v = case
    lhs = add(cl.apply(a, cl.apply(b, v)), cl.apply(b, cl.apply(a, v)))
    c = cl.anticomm(a, b)
    assert lhs == {k: x * c for k, x in v.items() if x * c}


@given(fock_case(4))
def test_clifford_association(case):
    cl, modes, v = case
    whole = cl.apply_word(modes, v)
    split = cl.apply_word(modes[:2], cl.apply_word(modes[2:], v))
    one_by_one = v
    for m in reversed(modes):
        one_by_one = cl.apply(m, one_by_one)
    assert whole == split == one_by_one


def test_clifford_conventions():
    a = Clifford("A")
    assert a.anticomm(("phi", 0), ("psi", -1)) == 1
    assert a.apply(("phi", -1), {(): 1}) == {}
    b = Clifford("B")
    assert b.anticomm(("phi", 1), ("phi", -1)) == -2
    assert b.apply(("phi", 0), b.apply(("phi", 0), {(): 1})) == {(): 1}
    d = Clifford("D")
    assert d.creates(("phi", -1)) and not d.creates(("phi", 1))
    assert d.exponent(("phi", -1)) == 0 and d.mode_at("phi", 0) == ("phi", -1)
    with pytest.raises(ValueError):
        Clifford("E")


# vacuum expectation values from modes --------------------------------------------------------

def test_fermion_examples():
    d = fermion_vev("D", 2, 6)
    assert d.terms == {(-n - 1, n): 1 for n in range(6)}
    b = fermion_vev("B", 2, 6).terms
    assert b == closed_series(RatFn.pole(2, 2, 0, 1, 1) * (RatFn.var(2, 2, 0) - RatFn.var(2, 2, 1)), 6)
    a = fermion_vev("A", 2, 6).terms
    assert a == expand_region(RatFn.pole(1, 2, 0, 1), (0, 1), 6).terms


@pytest.mark.parametrize("kind,n", [("A", 2), ("A", 4), ("B", 2), ("B", 4), ("D", 2), ("D", 4)])
def test_fermion_matches_closed_form(kind, n):
    C = 6
    assert fermion_vev(kind, n, C).terms == closed_series(closed_vev(kind, n), C)


@pytest.mark.parametrize("kind,charges", [("A", (1, -1)), ("A", (1, -1, -1, 1)), ("B", (1, 1)),
                                          ("B", (1, 1, 1, 1)), ("D", (-1, 1)), ("D", (1, 1, -1, -1))])
def test_boson_matches_closed_form(kind, charges):
    C = 6
    assert boson_vertex_vev(kind, charges, C).terms == closed_series(closed_vev(kind, charges), C)


def test_boson_D_pair():
    # alternating e^{-alpha}, e^{alpha} gives 1/(z1^2 - z2^2)
    got = boson_vertex_vev("D", (-1, 1), 8).terms
    assert got == {(-2 * k - 2, 2 * k): 1 for k in range(4)}


def test_boson_charge_conservation():
    assert boson_vertex_vev("A", (1, 1), 6).terms == {}


def test_oracle_equivalence_small():
    rep = oracle_equivalence(C=6, max_points=2)
    assert rep.passed, rep.summary()
    obj = rep.to_json()
    assert obj["schema"] == 1 and obj["check"] == "oracle-equivalence"


# Heisenberg modes -----------------------------------------------------------------------------

@given(st.sampled_from(["A", "D"]), st.integers(-4, 4), st.integers(-4, 4))
def test_bracket_A_D(kind, m, n):
    assert mode_bracket(kind, m, n) == (m if m + n == 0 else 0)


@given(st.sampled_from([-5, -3, -1, 1, 3, 5]), st.sampled_from([-5, -3, -1, 1, 3, 5]))
def test_bracket_B(m, n):
    assert mode_bracket("B", m, n) == (Fraction(m, 2) if m + n == 0 else 0)


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_bracket_order_three(m, n):
    assert mode_bracket("D-N", m, n, N=3) == (m if m + n == 0 else 0)


@given(st.sampled_from("AD"), st.integers(-4, 4), st.integers(-4, 4))
def test_boson_brackets(kind, m, n):
    assert boson_bracket(kind, m, n) == (m if m + n == 0 else 0)


def test_bracket_examples():
    assert mode_bracket("D", 2, -2) == 2
    assert mode_bracket("B", 3, -3) == Fraction(3, 2)
    assert mode_bracket("D", 1, 2) == 0
    with pytest.raises(ValueError):
        mode_bracket("B", 2, -2)


def test_oscillators():
    osc = Oscillators("A")
    vac = {(0, ()): 1}
    x2 = osc.h(-2, vac)
    assert osc.h(2, x2) == {(0, ()): 2}
    assert osc.h(1, vac) == {}


def test_heisenberg_B_shift():
    rep = heisenberg_shift_check(6)
    assert rep.passed, [c for c in rep.cases if not c[1]][:3]
    ferm = heisenberg_vev("B", 6)
    latt = lattice_heisenberg_vev("B", 6)
    assert ferm[(-1, 1)] == latt[(-2, 0)] == Fraction(1, 2)
    assert ferm[(-3, 3)] == latt[(-4, 2)] == Fraction(3, 2)


# order N ---------------------------------------------------------------------------------------

def test_order_three_two_point():
    h = order_n_heisenberg(3)
    r = preset("Df", 3)
    assert extend_eval(r, h, h) == order_n_target(3)


def test_order_two_matches_D():
    h = order_n_heisenberg(2)
    r = preset("Df", 2)
    assert extend_eval(r, h, h) == order_n_target(2)


def test_order_n_scales():
    assert heisenberg_scale(2) == Fraction(1, 4)
    e = eps(1, 3)
    assert heisenberg_scale(3) * (1 - e) * 3 == e
    with pytest.raises(ValueError):
        heisenberg_scale(4)


def test_order_n_unnormalized_ratio():
    # the literal 1/N normalization differs from the target by exactly (scale * N)^-2
    r = preset("Df", 3)
    h = order_n_heisenberg(3, normalized=False)
    k = heisenberg_scale(3) * 3
    assert extend_eval(r, h, h) * (k * k) == order_n_target(3)
    assert extend_eval(r, h, h) != order_n_target(3)


def test_correspondence_small():
    for kind in ("A", "B", "D"):
        rep = correspondence_check(kind, 2, 6)
        assert rep.passed, rep.summary()
    rep = correspondence_check("D-N", 2, 6, 3)
    assert rep.passed
    with pytest.raises(ValueError):
        correspondence_check("E")


# normal order and highest weights -------------------------------------------------------------

def test_normal_order_modes():
    rep = normal_order_check(6)
    assert rep.passed, rep.cases


def test_highest_weight_vectors_shape():
    even, odd = highest_weight_vectors(2)
    assert len(even.terms) == len(odd.terms) == 1
    (key,), = [list(even.terms)]
    assert [g[2] for g in key[1]] == [0, 2, 4]
    (key,), = [list(odd.terms)]
    assert [g[2] for g in key[1]] == [1, 3]


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_highest_weight_vectors(n):
    rep = highest_weight_check(n)
    structural = [c for c in rep.cases if "weight" not in c[0]]
    assert structural and all(ok for _, ok, _ in structural), [c for c in structural if not c[1]]


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_highest_weight_stated_values(n):
    # weights -2n (even) and n (odd); the even vector measures -(n + 1), so n >= 2 fails
    rep = highest_weight_check(n)
    assert rep.passed, [(i, d) for i, ok, d in rep.cases if not ok]


def test_highest_weight_values():
    assert highest_weights(0) == (0, 0)
    assert highest_weights(1) == (-2, 1)
    # n + 1 even factors, n odd factors
    assert highest_weights(2) == (-3, 2)
    assert highest_weights(3) == (-4, 3)


def test_report_json():
    rep = highest_weight_check(1)
    obj = json.loads(json.dumps(rep.to_json()))
    assert {c["instance"] for c in obj["cases"]} >= {"h_0 a^even_1 weight -2", "h_0 a^odd_1 weight 1"}
    assert obj["passed"] and all("instance" in c for c in obj["cases"])

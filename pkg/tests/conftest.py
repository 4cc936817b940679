import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from twistva.bicharacter import preset, random_element
from twistva.hopf import HopfElement
from twistva.rational import LaurentPoly, RatFn, eps
from twistva.rational.ratfn import lin_factor

settings.register_profile(
    "twistva", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("twistva")


def scalars(N):
    """Random elements of Q(eps_N)."""
    coef = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return st.lists(coef, min_size=1, max_size=max(N, 1)).map(
        lambda cs: sum((c * eps(k, N) for k, c in enumerate(cs)), 0))


@st.composite
def laurent_polys(draw, nvars=2, N=2, lo=-2, hi=2, max_terms=3, nonneg=False):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        e = tuple(draw(st.integers(0 if nonneg else lo, hi)) for _ in range(nvars))
        terms[e] = terms.get(e, 0) + draw(scalars(N))
    return LaurentPoly(nvars, terms)


@st.composite
def ratfns(draw, nvars=2, N=2, max_factors=2, allow_var=True):
    """Normalized rational functions with poles on the admissible set."""
    num = draw(laurent_polys(nvars, N, nonneg=True))
    den = {}
    for _ in range(draw(st.integers(0, max_factors))):
        if allow_var and draw(st.booleans()) and draw(st.booleans()):
            f = (0, draw(st.integers(0, nvars - 1)))
        else:
            i, j = draw(st.permutations(range(nvars)))[:2]
            _, f = lin_factor(i, j, draw(st.integers(0, N - 1)), N)
        den[f] = den.get(f, 0) + 1
    return RatFn(N, nvars, num, den)


PRESET_NAMES = ("Af", "Ab", "Bf", "Bb", "Df", "Db", "C", "id")


@st.composite
def monomials(draw, name, max_len=2, max_d=2):
    """Random homogeneous monomials of a preset's ambient algebra (seeded through hypothesis)."""
    r = preset(name)
    rng = random.Random(draw(st.integers(0, 2 ** 32)))
    return random_element(r, rng, max_len=max_len, max_d=max_d)


def homogeneous_parts(a: HopfElement):
    return list(a.homogeneous_parts().values())


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])

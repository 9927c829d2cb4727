import sys
from fractions import Fraction

from hypothesis import strategies as st

from mga.poly import FinPoly, LinearForm, Poly2

small_q = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def poly2s(draw, max_deg=4, max_terms=5):
    terms = draw(
        st.dictionaries(
            st.tuples(st.integers(0, max_deg), st.integers(0, max_deg)),
            small_q,
            max_size=max_terms,
        )
    )
    return Poly2(terms)


@st.composite
def finpolys(draw, max_deg=4):
    return FinPoly(draw(st.dictionaries(st.integers(0, max_deg), small_q, max_size=4)))


@st.composite
def alpha_forms(draw):
    a = draw(st.sampled_from([1, -1, 2, Fraction(1, 2), -3]))
    return LinearForm(a, draw(st.integers(-5, 5)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(mod.RESULTS, key=lambda r: r.number):
        terminalreporter.write_line(r.line())

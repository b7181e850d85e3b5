from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qkwhitney.coefficients import LaurentPoly
from qkwhitney.polynomials import Poly, VarTable

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def laurent(nvars, max_terms=4, span=2):
    exps = st.tuples(*[st.integers(-span, span)] * nvars)
    return st.dictionaries(exps, st.integers(-5, 5), max_size=max_terms).map(
        lambda d: LaurentPoly(nvars, d)
    )


small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))

XYZ = VarTable(["x", "y", "z"])


def polys(table=XYZ, max_terms=4, max_exp=2):
    exps = st.tuples(*[st.integers(0, max_exp)] * len(table.names))
    return st.dictionaries(exps, small_fractions, max_size=max_terms).map(
        lambda d: Poly(table, d)
    )


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

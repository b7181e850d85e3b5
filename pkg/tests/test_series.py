import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_fractions
from qkwhitney.exceptions import DimensionError, NonUnitConstantTerm
from qkwhitney.polynomials import VarTable
from qkwhitney.series import QSeries, q_monomials, series_invert_unit, series_to_q_poly, extend_table_with_q

TAB = VarTable(["x"])
K, D = 2, 4


def series(D=D):
    mons = st.sampled_from(q_monomials(K, D))
    return st.dictionaries(mons, small_fractions, max_size=5).map(lambda d: QSeries(TAB, K, D, d))


def q(j, D=D):
    return QSeries.q(TAB, K, D, j)


def test_q_monomials_graded():
    mons = q_monomials(2, 2)
    assert mons[0] == (0, 0)
    assert [sum(m) for m in mons] == sorted(sum(m) for m in mons)
    assert len(mons) == 6


@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(series())
def test_inverse_of_units(a):
    u = a - QSeries.from_poly(a.classical_limit(), K, D) + 3
    assert u * series_invert_unit(u) == u.one()


def test_geometric_series():
    inv = series_invert_unit(1 - q(0))
    assert inv == sum((q(0) ** m for m in range(D + 1)), inv.zero())
    assert str(q(0) * inv) == "q1 + q1^2 + q1^3 + q1^4"


def test_non_units_rejected():
    x = QSeries.from_poly(TAB.var("x"), K, D)
    with pytest.raises(NonUnitConstantTerm):
        series_invert_unit(q(1))
    with pytest.raises(NonUnitConstantTerm):
        series_invert_unit(1 + x)


@given(series(6), series(6))
def test_truncation_coherence(a, b):
    assert (a * b).truncate(3) == a.truncate(3) * b.truncate(3)


def test_truncation_errors():
    with pytest.raises(DimensionError):
        q(0, 3) + q(0, 4)
    with pytest.raises(DimensionError):
        q(0, 3).truncate(5)


def test_total_degree_truncation():
    s = q(0, 2) * q(1, 2) * q(1, 2)
    assert not s
    assert (q(0, 2) * q(1, 2)).qdegree() == 2


def test_to_q_poly():
    qt = extend_table_with_q(TAB, K)
    s = QSeries.from_poly(TAB.var("x"), K, D) * (1 - q(1))
    p = series_to_q_poly(s, qt)
    assert p == qt.var("x") - qt.var("x") * qt.var("q2")
    assert QSeries.from_q_poly(p, TAB, ["q1", "q2"], D) == s

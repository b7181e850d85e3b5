from fractions import Fraction

import pytest
from hypothesis import given

from conftest import XYZ, polys
from qkwhitney.coefficients import RationalFunctionField
from qkwhitney.exceptions import DimensionError
from qkwhitney.polynomials import Poly, VarTable, grevlex_key, lex_key

x, y, z = XYZ.gens()


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == XYZ.zero()


def test_orders():
    # grevlex: x > y > z, degree first, ties broken by the smallest last exponent
    assert grevlex_key((1, 0, 1)) < grevlex_key((0, 2, 0))
    assert grevlex_key((0, 0, 2)) < grevlex_key((1, 0, 1))
    assert lex_key((0, 5, 5)) < lex_key((1, 0, 0))
    f = x * z + y**2
    assert f.leading("grevlex") == ((0, 2, 0), 1)
    assert f.leading("lex") == ((1, 0, 1), 1)


def test_rendering():
    f = 3 * x**2 * y - Fraction(1, 2) * z + 1
    assert str(f) == "3*x^2*y - 1/2*z + 1"
    assert str(XYZ.zero()) == "0"
    assert str(-x) == "-x"


def test_coefficients_in_rational_functions():
    F = RationalFunctionField(2)
    t = VarTable(["a"], F)
    a = t.var("a")
    f = a * F.gen(0) + F.gen(1) + F.gen(0)
    assert str(f) == "T1*a + (T1 + T2)"
    assert f.evaluate([F.one]) == F.gen(0) * 2 + F.gen(1)


def test_degree_and_variables():
    f = x**2 * y + z
    assert f.total_degree() == 3
    assert f.variables() == ["x", "y", "z"]
    assert f.coeff((2, 1, 0)) == 1
    assert (f - z).is_constant() is False
    assert XYZ.const(5).is_constant()


def test_change_table_and_subs():
    big = XYZ.extended(["w"])
    f = x * y + 2
    g = f.change_table(big)
    assert g.table == big
    assert g.change_table(XYZ) == f
    assert f.subs({"x": y + 1}) == y**2 + y + 2
    assert f.evaluate({"x": 2, "y": 3, "z": 0}) == 8


def test_mixing_tables_is_an_error():
    other = VarTable(["x", "y"])
    with pytest.raises(DimensionError):
        x + other.var("x")


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        Poly(XYZ, {(-1, 0, 0): 1})

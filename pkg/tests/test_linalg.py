from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_fractions
from qkwhitney.coefficients import QQ_FIELD
from qkwhitney.exceptions import SingularSystem
from qkwhitney.linalg import IncrementalBasis, identity, inverse, matmul, matvec, rank, solve

F = QQ_FIELD


def square(n):
    return st.lists(st.lists(small_fractions, min_size=n, max_size=n), min_size=n, max_size=n)


@given(square(3), st.lists(small_fractions, min_size=3, max_size=3))
def test_solve_or_singular(a, b):
    if rank(a, F) < 3:
        with pytest.raises(SingularSystem):
            solve(a, b, F)
    else:
        x = solve(a, b, F)
        assert matvec(a, x, F) == b
        assert matmul(a, inverse(a, F), F) == identity(3, F)


def test_incremental_basis_combinations():
    ib = IncrementalBasis(F)
    assert ib.add([1, 0, 0]) is None
    assert ib.add([0, 1, 0]) is None
    combo = ib.add([2, Fraction(1, 3), 0])
    assert combo == [2, Fraction(1, 3)]
    assert ib.dimension == 2

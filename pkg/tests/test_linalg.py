from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qmatrix import Q
from qmatrix.errors import AmbientMismatch
from qmatrix.linalg import LinearSpace, compare_spaces, kernel, rref, solve


def dot(row, vec):
    return sum((row[c] * v for c, v in vec.items() if c in row), 0)


def test_rref_basic():
    rows, piv = rref([{0: 2, 1: 4}, {0: 1, 1: 2}, {1: 3}])
    assert piv == [0, 1]
    assert rows == [{0: 1}, {1: 1}]


def test_kernel_over_rational_functions():
    rows = [{0: Q, 1: -1}, {1: Q, 2: -1}]
    (v,) = kernel(rows, 3, Q ** 0)
    assert all(not dot(r, v) for r in rows)


def test_solve():
    x = solve([{0: 1, 1: 1}, {0: 1, 1: -1}], [3, 1], 2)
    assert x == {0: 2, 1: 1}
    assert solve([{0: 1}, {0: 1}], [1, 2], 1) is None


def test_compare_examples():
    A = LinearSpace(["e1", "e2"], [{0: 1}])
    B = LinearSpace(["e1", "e2"], [{0: 1}, {1: 1}])
    assert compare_spaces(A, A).relation == "equal"
    cmp = compare_spaces(A, B)
    assert cmp.relation == "A<B" and cmp.in_b_not_a == {1: 1}
    assert compare_spaces(B, A).relation == "B<A"
    C = LinearSpace(["e1", "e2"], [{1: 1}])
    assert compare_spaces(A, C).relation == "incomparable"
    with pytest.raises(AmbientMismatch):
        compare_spaces(A, LinearSpace(["e1"], []))


def test_canonical_basis():
    a = LinearSpace("xyz", [{0: 1, 1: 2}, {1: 1, 2: 1}])
    b = LinearSpace("xyz", [{0: 1, 1: 3, 2: 1}, {0: 2, 1: 4}])
    assert a == b and a.dim == 2


mat = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4)


@settings(max_examples=80, deadline=None)
@given(mat)
def test_kernel_is_kernel(m):
    rows = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in m]
    ker = kernel(rows, 4)
    _, piv = rref(rows)
    assert len(ker) + len(piv) == 4
    for v in ker:
        assert all(dot(r, v) == 0 for r in rows)

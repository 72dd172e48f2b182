import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from qmatrix import Q, QuantumMatrixAlgebra
from qmatrix.errors import IndexOutOfRange, ShapeMismatch
from qmatrix.pbw import AlgebraShape, monomial_count, multiply, straighten_word, homogeneous_component

import oracles
from acceptance_checks import random_element

A2 = QuantumMatrixAlgebra(2)
A3 = QuantumMatrixAlgebra(3)


def Y(A, i, a):
    return A.gen(i, a)


def test_relation_examples():
    assert Y(A3, 1, 2) * Y(A3, 1, 1) == (Y(A3, 1, 1) * Y(A3, 1, 2)).scale(1 / Q)
    assert Y(A3, 2, 1) * Y(A3, 1, 2) == A3.word([(1, 2), (2, 1)])
    expected = A2.word([(1, 1), (2, 2)]) - A2.word([(1, 2), (2, 1)]).scale(Q - 1 / Q)
    assert Y(A2, 2, 2) * Y(A2, 1, 1) == expected


def test_canonical_text():
    x = Y(A2, 2, 2) * Y(A2, 1, 1)
    assert x.to_text() == "Y[1,1]*Y[2,2] - (q - q^-1)*Y[1,2]*Y[2,1]"
    assert A2.zero().to_text() == "0"
    assert (Y(A2, 1, 1) ** 2).to_text() == "Y[1,1]^2"


@pytest.mark.parametrize("m,n", [(2, 2), (3, 3), (3, 4), (4, 4), (2, 3), (1, 4)])
def test_relations_against_hand_coded(m, n):
    A = QuantumMatrixAlgebra(m, n)
    for upper, lower, expected in oracles.relation_instances(m, n):
        rhs = sum((A.word(w).scale(c) for c, w in expected), A.zero())
        assert Y(A, *upper) * Y(A, *lower) == rhs


def test_multiply_examples():
    x = A2.word([(1, 1), (2, 2)]) - A2.word([(1, 2), (2, 1)]).scale(Q)
    assert multiply(A2.one(), x) == x
    assert multiply(Y(A2, 1, 1), Y(A2, 2, 2)) == A2.word([(1, 1), (2, 2)])
    words = [((1, 1), (2, 2), (1, 1)), ((1, 2), (2, 1), (1, 1))]
    direct = straighten_word(words[0], A2) - straighten_word(words[1], A2).scale(Q)
    assert multiply(x, Y(A2, 1, 1)) == direct


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        multiply(A2.one(), A3.one())


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        A2.gen(3, 1)
    with pytest.raises(IndexOutOfRange):
        straighten_word([(1, 1), (0, 2)], A2)


def test_element_arithmetic():
    x = Y(A3, 1, 1) + Y(A3, 1, 2)
    assert x - x == A3.zero()
    assert x.scale(1) == x
    assert (Y(A3, 1, 1) + Y(A3, 1, 2)) + (Y(A3, 1, 1) - Y(A3, 1, 2)) == Y(A3, 1, 1).scale(2)


def test_homogeneous_components():
    x = Y(A3, 1, 1) + Y(A3, 1, 1) * Y(A3, 2, 2)
    assert homogeneous_component(x, 1) == Y(A3, 1, 1)
    det = A3.word([(1, 1), (2, 2), (3, 3)])
    assert homogeneous_component(det, 3) == det
    assert homogeneous_component(A3.zero(), 4) == A3.zero()
    with pytest.raises(ValueError):
        homogeneous_component(x, -1)


@pytest.mark.parametrize("m,n,d,expected", [(3, 3, 1, 9), (3, 3, 2, 45), (3, 3, 3, 165), (2, 2, 0, 1)])
def test_monomial_count(m, n, d, expected):
    assert monomial_count(AlgebraShape(m, n), d) == expected == comb(d + m * n - 1, d)


words = st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), max_size=6)


@settings(max_examples=80, deadline=None)
@given(words, st.integers(0, 10**6))
def test_confluence(word, seed):
    left = straighten_word(word, A3, "leftmost")
    assert straighten_word(word, A3, "rightmost") == left
    assert straighten_word(word, A3, "random", random.Random(seed)) == left
    assert A3.word(word) == left


def test_associativity_sample():
    rng = random.Random(5)
    for _ in range(100):
        a, b, c = (random_element(A3, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_degree_additivity(seed):
    rng = random.Random(seed)
    a = random_element(A3, rng).homogeneous_component(2)
    b = random_element(A3, rng).homogeneous_component(1)
    if a and b:
        p = a * b
        assert p and p.is_homogeneous() and p.degree() == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, Fraction(1, 2), -5]))
def test_specialization_commutes_with_product(seed, v):
    rng = random.Random(seed)
    a, b = random_element(A3, rng), random_element(A3, rng)
    assert (a * b).specialize(v) == a.specialize(v) * b.specialize(v)


def test_specialized_algebra_rejects_bad_values():
    with pytest.raises(ValueError):
        A2.specialized(0)
    with pytest.raises(ValueError):
        A2.specialized(-1)


def test_cache_is_invisible():
    A = QuantumMatrixAlgebra(3)
    x = Y(A, 3, 3) * Y(A, 2, 2) * Y(A, 1, 1)
    A.clear_cache()
    assert Y(A, 3, 3) * Y(A, 2, 2) * Y(A, 1, 1) == x


def test_concurrent_products_agree():
    from concurrent.futures import ThreadPoolExecutor

    A = QuantumMatrixAlgebra(3)
    rng = random.Random(11)
    pairs = [(random_element(A, rng), random_element(A, rng)) for _ in range(30)]
    with ThreadPoolExecutor(4) as pool:
        results = list(pool.map(lambda p: p[0] * p[1], pairs))
    B = QuantumMatrixAlgebra(3)
    assert [r.to_text() for r in results] == [(B.element(a.terms) * B.element(b.terms)).to_text()
                                             for a, b in pairs]


def test_specialized_scalars_stay_exact():
    B = A3.specialized(3)
    x = (B.q() * B.gen(1, 1)).scale(Fraction(1, 3))
    inv = B.scalar(B.field.one / B.field.q)
    for _, c in (x + inv * B.gen(2, 2)).items():
        assert isinstance(c, Fraction)
    assert inv.scalar_value() == Fraction(1, 3)

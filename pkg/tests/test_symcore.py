from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cspoly.errors import LengthMismatch, NotDivisible
from cspoly.symcore import (
    BiSymmetricPoly,
    ExpandedPoly,
    SymmetricPoly,
    block_symmetrize,
    conjugate,
    divided_difference,
    is_block_symmetric,
    order_key,
    partitions,
    proportionality,
    tail_order_leq,
    tail_sums,
    tail_valid,
    trim,
)

small_vectors = st.lists(st.integers(-3, 4), min_size=1, max_size=4).map(tuple)
partitions_st = st.lists(st.integers(1, 5), max_size=5).map(lambda xs: tuple(sorted(xs, reverse=True)))
coeffs = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def _sym_poly(nvars):
    keys = st.lists(st.integers(0, 3), min_size=nvars, max_size=nvars).map(
        lambda xs: tuple(sorted(xs, reverse=True)))
    return st.dictionaries(keys, coeffs, max_size=4).map(lambda d: SymmetricPoly(nvars, d))


def test_partition_counts():
    assert [sum(1 for _ in partitions(d)) for d in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert sorted(partitions(4, 2)) == [(2, 2), (3, 1), (4,)]


@given(partitions_st)
def test_conjugate_is_an_involution(lam):
    assert conjugate(conjugate(lam)) == trim(lam)
    assert sum(conjugate(lam)) == sum(lam)


def test_tail_sums_example():
    assert tail_sums((2, -1, 3)) == [4, 2, 3]
    assert tail_valid((1, 1, -1, 1))
    assert not tail_valid((1, 2, -1))


@settings(max_examples=80)
@given(small_vectors, small_vectors)
def test_order_key_refines_tail_order(m, n):
    if len(m) != len(n):
        with pytest.raises(LengthMismatch):
            tail_order_leq(m, n)
        return
    if tail_order_leq(m, n) and m != n:
        assert order_key(m) < order_key(n)


@settings(max_examples=40, deadline=None)
@given(_sym_poly(3), _sym_poly(3), st.tuples(coeffs, coeffs, coeffs))
def test_monomial_product_matches_evaluation(P, Q, point):
    assert (P * Q).evaluate(point) == P.evaluate(point) * Q.evaluate(point)


@settings(max_examples=40, deadline=None)
@given(_sym_poly(3), _sym_poly(3))
def test_product_commutes(P, Q):
    assert P * Q == Q * P


def test_m1_squared():
    m1 = SymmetricPoly.monomial(3, (1,))
    assert m1 * m1 == SymmetricPoly(3, {(2,): 1, (1, 1): 2})


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)), coeffs, max_size=5))
def test_divided_difference_inverts_multiplication(terms):
    Q = ExpandedPoly(3, terms)
    P = Q * (ExpandedPoly.variable(3, 0) - ExpandedPoly.variable(3, 1))
    assert divided_difference(P, 0, 1) == Q


def test_divided_difference_rejects_non_multiple():
    with pytest.raises(NotDivisible):
        divided_difference(ExpandedPoly.variable(2, 0), 0, 1)


def test_block_symmetrize_round_trip():
    B = BiSymmetricPoly(2, 1, {(2, 0, 1): Fraction(1, 2), (1, 1, 0): 3})
    E = B.to_expanded()
    assert is_block_symmetric(E, 2, 1)
    assert block_symmetrize(E, 2, 1) == B
    assert not is_block_symmetric(ExpandedPoly(3, {(1, 0, 0): 1}), 2, 1)


def test_proportionality():
    P = SymmetricPoly(2, {(2,): 2, (1, 1): 4})
    Q = SymmetricPoly(2, {(2,): 3, (1, 1): 6})
    assert proportionality(P, Q) == Fraction(2, 3)
    assert proportionality(P, SymmetricPoly(2, {(2,): 1})) is None

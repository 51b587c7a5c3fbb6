import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaspec import (
    CoeffTable,
    MultiPoly,
    bernoulli_eval,
    bernoulli_number,
    bernoulli_poly,
    bernoulli_substitute,
    inverse_raabe,
    parse_poly,
    raabe_transform,
    shift,
)

KNOWN = {0: 1, 1: Fraction(-1, 2), 2: Fraction(1, 6), 3: 0, 4: Fraction(-1, 30), 6: Fraction(1, 42), 8: Fraction(-1, 30), 12: Fraction(-691, 2730)}


@pytest.mark.parametrize("j,b", sorted(KNOWN.items()))
def test_bernoulli_numbers(j, b):
    assert bernoulli_number(j) == b


def test_bernoulli_poly_low():
    assert bernoulli_poly(2) == parse_poly("x1^2 - x1 + 1/6", 1)
    assert bernoulli_eval(3, Fraction(1, 2)) == 0


@pytest.mark.parametrize("j", range(1, 12))
def test_difference_identity(j):
    # B_j(x+1) - B_j(x) = j x^(j-1)
    B = bernoulli_poly(j)
    x = MultiPoly.variable(1, 1)
    assert shift(B, [1]) - B == j * x ** (j - 1)


@pytest.mark.parametrize("j", range(0, 10))
def test_mean_zero(j):
    assert raabe_transform(bernoulli_poly(j)) == (MultiPoly.constant(1, 1) if j == 0 else MultiPoly.variable(1, 1) ** j)


def test_raabe_of_bernoulli_products():
    p = 2
    for L in itertools.product(range(4), repeat=p):
        Q = MultiPoly.constant(1, p)
        for i, Li in enumerate(L):
            Q = Q * _embed(bernoulli_poly(Li), p, i)
        mono = MultiPoly(p, {L: 1})
        assert raabe_transform(Q) == mono


def _embed(b, p, i):
    return MultiPoly(p, {tuple(e[0] if k == i else 0 for k in range(p)): c for e, c in b.items()})


def test_substitute_riemann():
    # Z(0; x+1+a) = -(1+a), so zeta(0) = -(1 + B_1) = -1/2
    table = CoeffTable(1, {(0,): Fraction(-1), (1,): Fraction(-1)}, 1)
    assert bernoulli_substitute(table) == Fraction(-1, 2)


def test_table_degree_bound():
    with pytest.raises(ValueError):
        CoeffTable(1, {(3,): 1}, 2)


@settings(max_examples=50, deadline=None)
@given(
    st.dictionaries(
        st.tuples(st.integers(0, 4), st.integers(0, 4)),
        st.fractions(-4, 4, max_denominator=7),
        max_size=5,
    )
)
def test_inverse_raabe_round_trip(d):
    P = MultiPoly(2, d)
    assert inverse_raabe(raabe_transform(P)) == P
    assert raabe_transform(inverse_raabe(P)) == P

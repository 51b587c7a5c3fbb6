import math
from fractions import Fraction

import numpy as np
import pytest

from zetaspec import (
    INTEGRAL,
    SERIES,
    bernoulli_eval,
    bernoulli_number,
    direct_sum,
    parse_poly,
    product_rule_zeta,
    raabe_check,
    shift,
    shift_value_poly,
    z_special,
    zeta_shift,
    zeta_special,
)
from zetaspec.errors import NotConvergent, ShiftOutOfRange
from zetaspec.series import chebyshev_nodes

F = Fraction


def P(text, p=1):
    return parse_poly(text, p)


def one(p):
    return P("1", p)


def test_chebyshev_nodes_in_unit_interval():
    nodes = chebyshev_nodes(6)
    assert len(set(nodes)) == 6 and all(0 < x < 1 for x in nodes)
    assert all(isinstance(x, Fraction) for x in nodes)


@pytest.mark.parametrize(
    "N,table",
    [(0, {(0,): -1, (1,): -1}), (1, {(0,): F(-1, 2), (1,): -1, (2,): F(-1, 2)})],
)
def test_shift_poly_riemann(N, table, rule):
    res = shift_value_poly(P("x+1"), one(1), N, INTEGRAL, rule)
    assert res.table.coeffs == table
    assert res.residual == 0 and res.dropped_mass == 0 and not res.flagged


@pytest.mark.parametrize("text,p,N", [("x1+x2+1", 2, 0), ("x1+x2+1", 2, 1), ("x1^2+x2^2+1", 2, 0), ("x1+x2+x3+1", 3, 0)])
def test_shift_poly_soundness(text, p, N, rule):
    f, g = P(text, p), one(p)
    res = shift_value_poly(f, g, N, INTEGRAL, rule)
    assert res.dropped_mass < 1e-8 and not res.flagged
    rng = np.random.default_rng(11)
    poly = res.table.to_poly()
    for _ in range(5):
        a = tuple(F(float(x)) for x in rng.uniform(0, 1, size=p))
        fresh = z_special(shift(f, a), shift(g, a), N, rule, check=False).value
        assert abs(poly.evaluate(a) - fresh) < 1e-6


@pytest.mark.parametrize("N", range(6))
def test_zeta_riemann(N, rule):
    expected = (-1) ** N * bernoulli_number(N + 1) / (N + 1)
    v = zeta_special(P("x+1"), one(1), N, rule)
    assert v.value == expected and v.method == "BERNOULLI"


@pytest.mark.parametrize("c", [F(1, 2), F(1), F(2), F(1, 3)])
@pytest.mark.parametrize("N", [0, 1, 2])
def test_zeta_hurwitz(c, N, rule):
    f = parse_poly(f"x + {c}", 1)
    assert zeta_special(f, one(1), N, rule).value == -bernoulli_eval(N + 1, c) / (N + 1)


def test_zeta_two_vars(rule):
    v = zeta_special(P("x1+x2+1", 2), one(2), 0, rule)
    assert v.value == pytest.approx(-1 / 12, abs=1e-10)


def test_zeta_with_weight(rule):
    # sum_k k (k+1)^-s = zeta(s-1) - zeta(s): at s=0 gives -1/12 + 1/2
    v = zeta_special(P("x+1"), P("x"), 0, rule)
    assert v.value == F(5, 12)


def test_zeta_shift(rule):
    assert zeta_shift(P("x+1"), one(1), 0, [1], rule).value == F(-3, 2)
    assert zeta_shift(P("x+1"), one(1), 2, [0], rule).value == zeta_special(P("x+1"), one(1), 2, rule).value
    f = P("x1+x2+1", 2)
    a = (F(1, 3), F(3, 4))
    lhs = zeta_shift(f, one(2), 0, a, rule).value
    rhs = zeta_special(shift(f, a), one(2), 0, rule).value
    assert lhs == pytest.approx(rhs, abs=1e-6)
    with pytest.raises(ShiftOutOfRange):
        zeta_shift(P("x+1"), one(1), 0, [2], rule)


def test_series_kind_cross_check(rule):
    f = P("x+1")
    res = shift_value_poly(f, one(1), 1, SERIES, rule)
    # zeta(-1; x+1+a) = -B_2(1+a)/2 = -(a^2 + a + 1/6)/2
    assert res.table.coeffs == {(0,): F(-1, 12), (1,): F(-1, 2), (2,): F(-1, 2)}


@pytest.mark.parametrize("s,expected", [(2, math.pi**2 / 6), (4, math.pi**4 / 90), (3.5, 1.1267338673170566)])
def test_direct_sum_riemann(s, expected):
    v = direct_sum(P("x+1"), one(1), s)
    assert v.value == pytest.approx(expected, abs=1e-9) and v.method == "ORACLE"


def test_direct_sum_two_vars():
    # sum (k1+k2+1)^-s = zeta(s-1), here zeta(3)
    v = direct_sum(P("x1+x2+1", 2), one(2), 4, tol=1e-9)
    assert v.value == pytest.approx(1.2020569031595942, abs=1e-7)


def test_direct_sum_not_convergent():
    with pytest.raises(NotConvergent):
        direct_sum(P("x+1"), one(1), 1)


@pytest.mark.parametrize("text,p,svals", [("x1+1", 1, [3, 2.5 + 1j]), ("x1^2+1", 1, [2, 3]), ("x1+x2+1", 2, [4, 3.5])])
def test_raabe(text, p, svals, rule):
    for s in svals:
        rep = raabe_check(P(text, p), one(p), s, rule, tol=1e-5)
        assert rep.holds, (s, rep.discrepancy)


def test_raabe_not_convergent(rule):
    with pytest.raises(NotConvergent):
        raabe_check(P("x+1"), one(1), 1.05, rule)


@pytest.mark.parametrize("N", [0, 1])
def test_scaling(N, rule):
    c = F(5, 2)
    for text, p in [("x1+1", 1), ("x1+x2+1", 2)]:
        a = zeta_special(c * P(text, p), one(p), N, rule).value
        b = zeta_special(P(text, p), one(p), N, rule).value
        assert complex(a) == pytest.approx(complex(c**N * b), rel=1e-8, abs=1e-12)


def test_permutation(rule):
    f, g = P("x1+2*x2+2", 2), P("x1+1", 2)
    a = zeta_special(f, g, 0, rule).value
    b = zeta_special(f.permute([1, 0]), g.permute([1, 0]), 0, rule).value
    assert a == pytest.approx(b, abs=1e-10)


@pytest.mark.parametrize(
    "factors,p",
    [(["x+1", "x+2"], 1), (["x+1", "x^2+1"], 1), (["x+1", "x+2", "2*x+1"], 1), (["x1+x2+1", "x1+2*x2+2"], 2)],
)
def test_product_rule(factors, p, rule):
    rep = product_rule_zeta([P(t, p) for t in factors], one(p), rule)
    assert rep.discrepancy <= rep.combined_error + 1e-14


def test_equal_degree_mean(rule):
    fs = [P("x+1"), P("x+2"), P("x+1/2")]
    prod = fs[0] * fs[1] * fs[2]
    lhs = zeta_special(prod, one(1), 0, rule).value
    rhs = sum(zeta_special(f, one(1), 0, rule).value for f in fs) / 3
    assert lhs == rhs

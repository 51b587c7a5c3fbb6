"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary and by running this file directly.
"""

import itertools
import random
from fractions import Fraction

import pytest

from zetaspec import (
    MultiPoly,
    bernoulli_eval,
    bernoulli_number,
    bernoulli_poly,
    gauss_legendre,
    inverse_raabe,
    parse_poly,
    product_rule_zeta,
    raabe_check,
    raabe_transform,
    residue,
    shift_value_poly,
    z_general,
    z_special,
    z_zero_log,
    zeta_special,
)

F = Fraction
RULE = gauss_legendre(32)
RESULTS: dict[int, tuple[bool, str]] = {}

SHIPPED = [("x1+1", 1), ("x1+1/2", 1), ("x1^2+x1+1", 1), ("x1+x2+1", 2), ("x1+2*x2+2", 2), ("x1^2+x2^2+1", 2)]


def P(text, p=1):
    return parse_poly(text, p)


def one(p):
    return P("1", p)


def record(n, ok, detail):
    RESULTS[n] = (bool(ok), detail)
    assert ok, f"criterion {n}: {detail}"


def criterion_1():
    worst = 0.0
    for N in range(6):
        expected = (-1) ** N * bernoulli_number(N + 1) / (N + 1)
        worst = max(worst, abs(float(zeta_special(P("x+1"), one(1), N, RULE).value - expected)))
    return worst <= 1e-10, f"Riemann zeta(-N), N=0..5, max error {worst:.3g}"


def criterion_2():
    worst = 0.0
    for c, N in itertools.product([F(1, 2), F(1), F(2)], range(3)):
        v = zeta_special(parse_poly(f"x + {c}", 1), one(1), N, RULE).value
        worst = max(worst, abs(float(v + bernoulli_eval(N + 1, c) / (N + 1))))
    return worst <= 1e-10, f"Hurwitz values, max error {worst:.3g}"


def criterion_3():
    worst = 0.0
    for c, N in itertools.product([F(1, 2), F(1), F(2)], range(3)):
        v = z_special(parse_poly(f"x + {c}", 1), one(1), N, RULE).value
        worst = max(worst, abs(float(v + c ** (N + 1) / (N + 1))))
    return worst <= 1e-12, f"integral closed forms, max error {worst:.3g}"


def criterion_4():
    v = zeta_special(P("x1+x2+1", 2), one(2), 0, RULE)
    err = abs(v.value + 1 / 12)
    return err <= 1e-6, f"zeta(0; x1+x2+1) = {v.value!r}, error {err:.3g}"


def criterion_5():
    a = z_special(P("x1+x2+1", 2), one(2), 0, RULE).value
    b = z_zero_log(P("x1+x2+1", 2), one(2), RULE).value
    err = max(abs(a - 0.5), abs(b - 0.5))
    return err <= 1e-8, f"Z(0; x1+x2+1) valorZ {a!r}, log form {b!r}"


def criterion_6():
    r1 = product_rule_zeta([P("x+1"), P("x+2")], one(1), RULE)
    r2 = product_rule_zeta([P("x1+x2+1", 2), P("x1+2*x2+2", 2)], one(2), RULE)
    value = r1.lhs / 2
    ok = r1.discrepancy <= r1.combined_error + 1e-15 and r2.discrepancy <= r2.combined_error and abs(value + 1) <= 1e-8
    return ok, f"p=1 zeta(0) = {value}, p=2 discrepancy {r2.discrepancy:.3g} vs error {r2.combined_error:.3g}"


def criterion_7():
    f1, f2 = P("x+1"), P("x^2+1")
    lhs = 3 * zeta_special(f1 * f2, one(1), 0, RULE).value
    a = zeta_special(f1, one(1), 0, RULE)
    b = zeta_special(f2, one(1), 0, RULE)
    rhs = a.value + 2 * b.value
    rep = product_rule_zeta([f1, f2], one(1), RULE)
    ok = abs(lhs - rhs) <= rep.combined_error + 1e-15
    return ok, f"3 zeta(0; f1 f2) = {lhs}, zeta(0; f1) + 2 zeta(0; f2) = {rhs}"


def criterion_8():
    r1 = raabe_check(P("x+1"), one(1), 3, RULE, tol=1e-6)
    r2 = raabe_check(P("x1+x2+1", 2), one(2), 4, RULE, tol=1e-5)
    e1 = max(abs(r1.series_side - 0.5), abs(r1.integral_side - 0.5))
    e2 = max(abs(r2.series_side - 1 / 6), abs(r2.integral_side - 1 / 6))
    return e1 <= 1e-6 and e2 <= 1e-5, f"s=3 max error {e1:.3g}, s=4 max error {e2:.3g}"


def criterion_9():
    worst = 0.0
    for s in (3, 0.5, -0.5):
        v, _ = z_general(P("x+1"), one(1), s, RULE)
        worst = max(worst, abs(v.value - 1 / (s - 1)))
    res = [
        (residue(P("x+1"), one(1), F(1), RULE).value, 1),
        (residue(P("x1+x2+1", 2), one(2), F(2), RULE).value, 1),
        (residue(P("x1+x2+1", 2), one(2), F(1), RULE).value, -1),
    ]
    rworst = max(abs(complex(v) - e) for v, e in res)
    return worst <= 1e-7 and rworst <= 1e-6, f"Z_general max error {worst:.3g}, residue max error {rworst:.3g}"


def _embed(b, p, i):
    return MultiPoly(p, {tuple(e[0] if k == i else 0 for k in range(p)): c for e, c in b.items()})


def criterion_10():
    checked = 0
    for p in (1, 2, 3):
        for L in itertools.product(range(7), repeat=p):
            if sum(L) > 6:
                continue
            Q = MultiPoly.constant(1, p)
            for i, Li in enumerate(L):
                Q = Q * _embed(bernoulli_poly(Li), p, i)
            if raabe_transform(Q) != MultiPoly(p, {L: 1}):
                return False, f"Bernoulli product transform fails at L={L}"
            checked += 1
    rnd = random.Random(2024)
    for _ in range(50):
        p = rnd.randint(1, 3)
        terms = {
            tuple(rnd.randint(0, 4) for _ in range(p)): F(rnd.randint(-9, 9), rnd.randint(1, 9)) for _ in range(rnd.randint(1, 6))
        }
        Q = MultiPoly(p, terms)
        if inverse_raabe(raabe_transform(Q)) != Q:
            return False, f"round trip fails on {Q}"
    return True, f"{checked} Bernoulli products exact, 50 round trips exact"


def criterion_11():
    expected = {0: {(0,): -1, (1,): -1}, 1: {(0,): F(-1, 2), (1,): -1, (2,): F(-1, 2)}}
    worst = 0.0
    for N, table in expected.items():
        res = shift_value_poly(P("x+1"), one(1), N, rule=RULE)
        keys = set(table) | set(res.table.coeffs)
        worst = max(worst, max(abs(float(res.table.coeffs.get(L, 0) - table.get(L, 0))) for L in keys))
    res2 = shift_value_poly(P("x1+x2+1", 2), one(2), 0, rule=RULE, holdout=5)
    ok = worst <= 1e-10 and res2.residual < 1e-6 and res2.dropped_mass < 1e-8
    return ok, f"p=1 max coefficient error {worst:.3g}; p=2 residual {res2.residual:.3g}, dropped {res2.dropped_mass:.3g}"


def criterion_12():
    c = F(3, 2)
    worst = 0.0
    for text, p in SHIPPED:
        f, g = P(text, p), one(p)
        for N in (0, 1):
            for fn in (zeta_special, z_special):
                base = complex(fn(f, g, N, RULE).value)
                scaled = complex(fn(c * f, g, N, RULE).value)
                worst = max(worst, abs(scaled - float(c**N) * base))
                for perm in itertools.permutations(range(p)):
                    worst = max(worst, abs(complex(fn(f.permute(perm), g.permute(perm), N, RULE).value) - base))
    return worst <= 1e-8, f"scaling and permutation, max deviation {worst:.3g}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


@pytest.mark.parametrize("n", range(1, 13))
def test_criterion(n):
    ok, detail = CRITERIA[n - 1]()
    print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    record(n, ok, detail)


if __name__ == "__main__":
    for n, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

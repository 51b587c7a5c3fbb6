"""Dirichlet series ``zeta(s; f, g) = sum_{k in N_0^p} g(k) f(k)^(-s)``.

Special values at ``s = -N`` are obtained from the shifted zeta integrals:
``a -> Z(-N; f_a, g_a)`` is a polynomial of total degree at most
``D = N m + q + p``; it is recovered by tensor interpolation on Chebyshev
nodes and every ``a^L`` is replaced by the Bernoulli product ``B_L``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .bernoulli import CoeffTable, bernoulli_eval, bernoulli_substitute, inverse_raabe
from .cubical import DEFAULT_ORDER, QuadratureRule, box_integral, gauss_legendre
from .errors import (
    DimensionMismatch,
    InterpolationIllConditioned,
    NotConvergent,
    ShiftOutOfRange,
)
from .mpoly import MultiPoly, shift
from .values import ProductRuleReport, SpecialValue, require_mahler, z_general, z_special

__all__ = [
    "ShiftPolyResult",
    "RaabeReport",
    "chebyshev_nodes",
    "shift_value_poly",
    "zeta_special",
    "zeta_shift",
    "direct_sum",
    "raabe_check",
    "product_rule_zeta",
]

INTEGRAL = "INTEGRAL"
SERIES = "SERIES"


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("ZETASPEC_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn: Callable, items: list) -> list:
    n = _workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


@dataclass
class ShiftPolyResult:
    table: CoeffTable
    residual: float
    dropped_mass: float
    flagged: bool
    kind: str
    N: int
    dropped: dict = field(default_factory=dict)


@dataclass
class RaabeReport:
    s: complex
    series_side: complex
    series_error: float
    integral_side: complex
    integral_error: float
    tol: float

    @property
    def discrepancy(self) -> float:
        return abs(self.series_side - self.integral_side)

    @property
    def holds(self) -> bool:
        return self.discrepancy <= self.tol


# ---------------------------------------------------------------------------
# interpolation


def chebyshev_nodes(n: int) -> list[Fraction]:
    """First-kind Chebyshev points mapped to ``[0, 1]``, as exact binary fractions."""
    return [Fraction((1 - math.cos((2 * j + 1) * math.pi / (2 * n))) / 2) for j in range(n)]


def _lagrange_to_monomial(nodes: Sequence[Fraction]) -> np.ndarray:
    """Matrix ``M`` with ``M[k, i]`` = coefficient of ``x^k`` in the i-th Lagrange basis polynomial."""
    n = len(nodes)
    M = np.empty((n, n), dtype=object)
    for i, xi in enumerate(nodes):
        coeffs = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(nodes):
            if j == i:
                continue
            coeffs = [Fraction(0)] + coeffs
            for t in range(len(coeffs) - 1):
                coeffs[t] -= xj * coeffs[t + 1]
            denom *= xi - xj
        for k in range(n):
            M[k, i] = coeffs[k] / denom
    return M


def _apply_axes(M: np.ndarray, V: np.ndarray) -> np.ndarray:
    for axis in range(V.ndim):
        V = np.moveaxis(np.tensordot(M, V, axes=([1], [axis])), 0, axis)
    return V


def shift_value_poly(
    f: MultiPoly,
    g: MultiPoly,
    N: int,
    kind: str = INTEGRAL,
    rule: QuadratureRule | None = None,
    holdout: int = 3,
    drop_tol: float = 1e-8,
    residual_tol: float = 1e-6,
    seed: int = 0,
    check: bool = True,
) -> ShiftPolyResult:
    """Coefficients of ``a -> Z(-N; f_a, g_a)`` (or of ``zeta(-N; f_a, g_a)`` for ``kind=SERIES``).

    ``D + 1`` Chebyshev nodes per axis with ``D = N m + q + p``.  Exact
    inputs at ``p = 1`` give exact coefficients.  ``holdout`` fresh
    evaluations at random off-grid shifts measure the residual.
    """
    if f.num_vars != g.num_vars:
        raise DimensionMismatch("f and g differ in number of variables")
    if kind not in (INTEGRAL, SERIES):
        raise ValueError(f"unknown kind {kind!r}")
    rule = rule if rule is not None else gauss_legendre(DEFAULT_ORDER)
    if check:
        require_mahler(f)
    p, m = f.num_vars, f.degree
    if g.is_zero():
        return ShiftPolyResult(CoeffTable(p, {}, 0), 0.0, 0.0, False, kind, N)
    D = N * m + g.degree + p

    def value_at(a):
        fa, ga = shift(f, a), shift(g, a)
        if kind == INTEGRAL:
            v = z_special(fa, ga, N, rule, check=False)
        else:
            v = zeta_special(fa, ga, N, rule, holdout=0, check=False)
        return v.value, v.error_estimate

    nodes = chebyshev_nodes(D + 1)
    grid = list(np.ndindex(*(D + 1,) * p))
    results = _pmap(lambda idx: value_at(tuple(nodes[i] for i in idx)), grid)
    exact = all(isinstance(v, Fraction) for v, _ in results)

    M = _lagrange_to_monomial(nodes)
    shape = (D + 1,) * p
    if exact:
        V = np.empty(shape, dtype=object)
        for idx, (v, _) in zip(grid, results):
            V[idx] = v
        C = _apply_axes(M, V)
        Cerr = np.zeros(shape)
    else:
        Mf = M.astype(float)
        V = np.empty(shape, dtype=complex if any(isinstance(v, complex) for v, _ in results) else float)
        E = np.empty(shape)
        for idx, (v, e) in zip(grid, results):
            V[idx] = v
            E[idx] = e
        C = _apply_axes(Mf, V)
        # rounding in the interpolation itself, plus propagated value errors
        Cerr = _apply_axes(np.abs(Mf), E + 4 * np.finfo(float).eps * np.abs(V))

    coeffs, errors, dropped = {}, {}, {}
    for L in np.ndindex(*shape):
        c = C[L]
        if exact:
            c = Fraction(c)
        else:
            c = c.item()
        if sum(L) > D:
            if c != 0:
                dropped[L] = c
            continue
        if c != 0:
            coeffs[L] = c
            if not exact:
                errors[L] = float(Cerr[L])
    dropped_mass = max((abs(float(abs(c))) for c in dropped.values()), default=0.0)
    table = CoeffTable(p, coeffs, D, errors)

    residual = 0.0
    if holdout:
        rng = np.random.default_rng(seed)
        poly = table.to_poly()
        for _ in range(holdout):
            a = tuple(Fraction(float(x)) for x in rng.uniform(0, 1, size=p))
            v, _ = value_at(a)
            residual = max(residual, float(abs(poly.evaluate(a) - v)))
        scale = max([1.0] + [abs(complex(v)) for v, _ in results])
        if residual > residual_tol * scale:
            raise InterpolationIllConditioned(f"held-out residual {residual:.3g} exceeds {residual_tol:g}")
    flagged = dropped_mass > drop_tol
    return ShiftPolyResult(table, residual, dropped_mass, flagged, kind, N, dropped)


# ---------------------------------------------------------------------------
# special values of the series


def zeta_special(
    f: MultiPoly,
    g: MultiPoly,
    N: int,
    rule: QuadratureRule | None = None,
    holdout: int = 3,
    check: bool = True,
) -> SpecialValue:
    """``zeta(-N; f, g) = sum_L c_L B_L`` where ``Z(-N; f_a, g_a) = sum_L c_L a^L``."""
    res = shift_value_poly(f, g, N, INTEGRAL, rule, holdout=holdout, check=check)
    value, err = bernoulli_substitute(res.table, with_error=True)
    params = {
        "N": N,
        "order": (rule or gauss_legendre(DEFAULT_ORDER)).order,
        "degree_bound": res.table.degree_bound,
        "residual": res.residual,
        "dropped_mass": res.dropped_mass,
    }
    return SpecialValue(value, err, "BERNOULLI", params)


def zeta_shift(
    f: MultiPoly,
    g: MultiPoly,
    N: int,
    a: Sequence,
    rule: QuadratureRule | None = None,
    check: bool = True,
) -> SpecialValue:
    """``zeta(-N; f_a, g_a) = sum_L c_L B_L(a)`` for ``a`` in ``[0, 1]^p``."""
    if len(a) != f.num_vars:
        raise DimensionMismatch(f"shift of length {len(a)} for p={f.num_vars}")
    a = tuple(Fraction(x) for x in a)
    if any(x < 0 or x > 1 for x in a):
        raise ShiftOutOfRange(f"shift {tuple(map(str, a))} outside [0,1]^p")
    res = shift_value_poly(f, g, N, INTEGRAL, rule, check=check)
    value = inverse_raabe(res.table).evaluate(a)
    err = 0.0
    for L, e in res.table.errors.items():
        err += e * abs(float(math.prod(bernoulli_eval(Li, ai) for Li, ai in zip(L, a))))
    params = {"N": N, "a": a, "residual": res.residual}
    return SpecialValue(value, err, "BERNOULLI", params)


# ---------------------------------------------------------------------------
# direct summation oracle


def _box_partial_sums(f: MultiPoly, g: MultiPoly, s: complex, top: int) -> np.ndarray:
    """``T[M] = sum over k in [0, M]^p`` for ``M = 0..top``."""
    p = f.num_vars
    k = np.indices((top + 1,) * p, dtype=float)
    fv = f.evaluate_array(k)
    gv = g.evaluate_array(k)
    if np.any(fv <= 0):
        raise NotConvergent("f is not positive on the lattice points")
    terms = gv * np.exp(-s * np.log(fv))
    shell = k.max(axis=0).astype(int).ravel()
    re = np.bincount(shell, weights=terms.real.ravel(), minlength=top + 1)
    im = np.bincount(shell, weights=terms.imag.ravel(), minlength=top + 1)
    return np.cumsum(re + 1j * im)


def _richardson(T: np.ndarray, levels: list[int], alphas: list[complex]):
    row = [T[M] for M in levels]
    prev = row
    for alpha in alphas:
        factor = 2.0**alpha
        prev, row = row, [(row[i + 1] - factor * row[i]) / (1 - factor) for i in range(len(row) - 1)]
    return row[-1], abs(row[-1] - prev[-1])


def _check_convergent(f, g, s, margin) -> complex:
    if f.num_vars != g.num_vars:
        raise DimensionMismatch("f and g differ in number of variables")
    s = complex(s)
    q = 0 if g.is_zero() else g.degree
    bound = (q + f.num_vars) / f.degree
    if s.real <= bound + margin:
        raise NotConvergent(f"Re(s) = {s.real} must exceed (q+p)/m + {margin} = {bound + margin}")
    return s


def direct_sum(
    f: MultiPoly,
    g: MultiPoly,
    s,
    tol: float = 1e-10,
    margin: float = 0.1,
    eliminations: int = 4,
    max_points: int = 4_000_000,
) -> SpecialValue:
    """Sum the series in its half-plane of absolute convergence.

    Partial sums over boxes ``[0, M]^p`` behave like ``zeta - sum_i a_i M^(e+1-i)``
    with ``e = q + p - 1 - m s`` the decay exponent of the max-norm shells, so
    Richardson extrapolation over ``M, 2M, 4M, ...`` removes the leading tail
    terms.  The error estimate is the change from dropping one elimination;
    it is heuristic.
    """
    s = _check_convergent(f, g, s, margin)
    p, m = f.num_vars, f.degree
    q = 0 if g.is_zero() else g.degree
    e = q + p - 1 - m * s
    alphas = [e + 1 - i for i in range(eliminations)]
    M0 = 8
    while True:
        levels = [M0 * 2**j for j in range(eliminations + 1)]
        top = levels[-1]
        T = _box_partial_sums(f, g, s, top)
        value, err = _richardson(T, levels, alphas)
        err += 64 * np.finfo(float).eps * abs(T[-1])
        if err < tol or (2 * top + 1) ** p > max_points:
            break
        M0 *= 2
    if s.imag == 0 and value.imag == 0:
        value = value.real
    params = {"s": s, "box": top, "tol": tol, "converged": bool(err < tol)}
    return SpecialValue(complex(value) if isinstance(value, complex) else float(value), float(err), "ORACLE", params)


def raabe_check(
    f: MultiPoly,
    g: MultiPoly,
    s,
    rule: QuadratureRule | None = None,
    tol: float = 1e-6,
    shift_order: int = 8,
) -> RaabeReport:
    """Compare ``int_{[0,1]^p} zeta(s; f_t, g_t) dt`` with ``Z(s; f, g)``.

    The average over shifts uses a Gauss-Legendre rule of order
    ``min(rule.order, shift_order)``; the integrand is analytic in ``t``.
    """
    rule = rule if rule is not None else gauss_legendre(DEFAULT_ORDER)
    s = _check_convergent(f, g, s, 0.1)
    p = f.num_vars
    sum_tol = tol / 10

    def averaged(t):
        ft = shift(f, [float(x) for x in t])
        gt = shift(g, [float(x) for x in t])
        return direct_sum(ft, gt, s, tol=sum_tol).value

    t_rule = gauss_legendre(min(rule.order, shift_order))
    series_side, series_err = box_integral(averaged, [0] * p, [1] * p, t_rule)
    integral, _ = z_general(f, g, s, rule)
    return RaabeReport(s, series_side, float(series_err) + sum_tol, integral.value, integral.error_estimate, tol)


def product_rule_zeta(
    f_list: Sequence[MultiPoly],
    g: MultiPoly,
    rule: QuadratureRule | None = None,
) -> ProductRuleReport:
    """Both sides of ``deg(prod f_j) zeta(0; prod f_j, g) = sum_j deg(f_j) zeta(0; f_j, g)``."""
    if not f_list:
        raise ValueError("need at least one factor")
    for j, fj in enumerate(f_list):
        require_mahler(fj, index=j)
    prod = f_list[0]
    for fj in f_list[1:]:
        prod = prod * fj
    whole = zeta_special(prod, g, 0, rule, check=False)
    lhs = prod.degree * whole.value
    err = prod.degree * whole.error_estimate
    rhs = 0
    terms = []
    for fj in f_list:
        v = zeta_special(fj, g, 0, rule, check=False)
        terms.append(v)
        rhs = rhs + fj.degree * v.value
        err += fj.degree * v.error_estimate
    return ProductRuleReport(lhs, rhs, float(abs(lhs - rhs)), err, terms)

"""Zeta integrals ``Z(s; f, g) = int_{[0,inf)^p} g(x) f(x)^(-s) dx``.

Values at ``s = -N`` come from a finite sum of face integrals of expansion
coefficients; general ``s`` uses the split of the radial integral at ``w``
into a compact piece, a Taylor remainder and terms with closed-form radial
integrals.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cubical import DEFAULT_ORDER, QuadratureRule, face_integral, gauss_legendre
from .errors import DimensionMismatch, MahlerViolation, NotACandidate, PoleAt
from .expand import log_coeff, ray_powers, split_radius, tail_series
from .mpoly import MultiPoly, check_mahler, homogeneous_part

__all__ = [
    "SpecialValue",
    "ContinuationBreakdown",
    "PoleCandidate",
    "ProductRuleReport",
    "require_mahler",
    "binom_general",
    "z_special",
    "z_zero_log",
    "z_general",
    "pole_candidates",
    "residue",
    "product_rule_z",
]

POLE_TOL = 1e-9


@dataclass
class SpecialValue:
    value: object
    error_estimate: float
    method: str  # VALOR_Z | LOG_FORM | GENERAL_S | ORACLE | BERNOULLI
    params: dict = field(default_factory=dict)

    def __float__(self):
        return float(self.value)


@dataclass
class ContinuationBreakdown:
    """Pieces of the continuation at one ``s``.

    ``m_terms[lam]`` is ``binom(-s, lam) * M_lam(s, w)``, with the limit taken
    where ``s`` is a non-positive integer and ``M_lam`` has a pole there.
    """

    z1: complex
    m_terms: dict
    nk: complex
    w: float
    k: int
    N: int
    s: complex

    def recombine(self) -> complex:
        return self.z1 + self.k * binom_general(-self.s, self.k) * self.nk + sum(self.m_terms.values())


@dataclass(frozen=True)
class PoleCandidate:
    s0: Fraction
    ell: int
    excluded: bool


@dataclass
class ProductRuleReport:
    lhs: object
    rhs: object
    discrepancy: float
    combined_error: float
    terms: list

    @property
    def holds(self) -> bool:
        return self.discrepancy <= self.combined_error


def binom_general(x, k: int):
    """``x (x-1) ... (x-k+1) / k!`` for any numeric ``x``."""
    out = Fraction(1) if isinstance(x, (int, Fraction)) else 1.0
    for j in range(k):
        out = out * (x - j) / (j + 1)
    return out


def require_mahler(f: MultiPoly, index: int | None = None):
    report = check_mahler(f)
    if report.verdict == "VIOLATED":
        where = f" (factor {index})" if index is not None else ""
        at = "(" + ", ".join(str(c) for c in report.witness) + ")"
        raise MahlerViolation(
            f"{f} fails Mahler's hypothesis{where}: {report.detail} at {at}",
            witness=report.witness,
            index=index,
        )
    if report.verdict == "LIKELY":
        warnings.warn(f"Mahler's hypothesis for {f} not proven; sampling found no violation", stacklevel=3)
    return report


def _check_dims(f: MultiPoly, g: MultiPoly):
    if f.num_vars != g.num_vars:
        raise DimensionMismatch(f"f has p={f.num_vars}, g has p={g.num_vars}")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _rule(rule):
    return rule if rule is not None else gauss_legendre(DEFAULT_ORDER)


# ---------------------------------------------------------------------------
# special values


def z_special(f: MultiPoly, g: MultiPoly, N: int, rule: QuadratureRule | None = None, check: bool = True) -> SpecialValue:
    """``Z(-N; f, g)`` as a finite weighted sum of face integrals.

    Exact (``Fraction``) when ``p = 1`` and the inputs are rational.
    """
    _check_dims(f, g)
    if N < 0:
        raise ValueError("N must be non-negative")
    rule = _rule(rule)
    if check:
        require_mahler(f)
    p, m = f.num_vars, f.degree
    params = {"N": N, "order": rule.order}
    if g.is_zero():
        return SpecialValue(Fraction(0), 0.0, "VALOR_Z", params)
    q = g.degree
    lam_lo, lam_hi = N + _ceil_div(p, m), q + p + N * m
    assert lam_lo <= lam_hi
    weights = {lam: Fraction((-1) ** (lam - N), (lam - N) * math.comb(lam, N)) for lam in range(lam_lo, lam_hi + 1)}
    K = q + p + N * m

    def integrand(sigma):
        ts = tail_series(f, sigma)
        powers = ray_powers(f, g, sigma, lam_hi, K, ts)
        acc = 0
        for lam, wt in weights.items():
            c = powers[lam][K]
            if c:
                acc = acc + wt * c
        return acc * ts.ftop_value**N

    value, err = face_integral(integrand, p, rule)
    return SpecialValue(value / m, err / m, "VALOR_Z", params)


def z_zero_log(f: MultiPoly, g: MultiPoly, rule: QuadratureRule | None = None, check: bool = True) -> SpecialValue:
    """``Z(0; f, g)`` from the face integral of the log coefficient."""
    _check_dims(f, g)
    rule = _rule(rule)
    if check:
        require_mahler(f)
    value, err = face_integral(lambda sigma: log_coeff(f, g, sigma), f.num_vars, rule)
    return SpecialValue(value / f.degree, err / f.degree, "LOG_FORM", {"N": 0, "order": rule.order})


# ---------------------------------------------------------------------------
# general s


def _composite(lo: float, hi: float, rule: QuadratureRule, panels: int):
    x = np.asarray(rule.nodes)
    wt = np.asarray(rule.weights)
    width = (hi - lo) / panels
    starts = lo + width * np.arange(panels)
    nodes = (starts[:, None] + width * x[None, :]).ravel()
    weights = np.tile(width * wt, panels)
    return nodes, weights


def _parts_at(poly: MultiPoly, sigma, deg: int) -> np.ndarray:
    pt = tuple(float(c) for c in sigma.embed())
    return np.array([float(homogeneous_part(poly, j).evaluate(pt)) for j in range(deg + 1)])


def _classify_s(s: complex, p: int, m: int, q: int):
    """Return ``(s, N, integer_case)``; raises PoleAt near an unexcluded candidate."""
    ell = q + p - m * s
    ell_r = round(ell.real)
    if ell_r >= 0 and abs(ell - ell_r) <= m * POLE_TOL:
        s0 = Fraction(q + p - ell_r, m)
        if s0.denominator == 1 and s0 <= 0:
            N = int(-s0)
            return complex(-N), N, True
        raise PoleAt(s0)
    return s, max(0, math.ceil(-s.real)), False


def z_general(
    f: MultiPoly,
    g: MultiPoly,
    s,
    rule: QuadratureRule | None = None,
    w: float | None = None,
    check: bool = True,
) -> tuple[SpecialValue, ContinuationBreakdown]:
    """Analytic continuation of ``Z(s; f, g)`` to a general complex ``s``.

    ``Z = Z1 + k binom(-s,k) N_k + sum_lam binom(-s,lam) M_lam`` with the
    radial integral split at ``w`` and ``k = N m + q + p + 1``, where
    ``N = max(0, ceil(-Re s))``.  ``M_lam`` is evaluated in closed form in the
    radius; ``Z1`` and ``N_k`` by quadrature (``N_k`` after ``rho = w e^tau``).
    """
    _check_dims(f, g)
    rule = _rule(rule)
    if check:
        require_mahler(f)
    p, m = f.num_vars, f.degree
    s = complex(s)
    if g.is_zero():
        zero = SpecialValue(0.0, 0.0, "GENERAL_S", {"s": s})
        return zero, ContinuationBreakdown(0j, {}, 0j, 1.0, 0, 0, s)
    q = g.degree
    s, N, integer_case = _classify_s(s, p, m, q)
    k = N * m + q + p + 1
    L = N * m + q + p
    w = float(w) if w is not None else split_radius(f, rule)
    Kmax = q + m * L
    hmax = q + (m - 1) * L

    gamma = m * (N + s.real) + 1
    tau_max = 40.0 / gamma

    def radial_grids(r_):
        rho1, wt1 = _composite(0.0, w, r_, max(1, math.ceil(w)))
        tau, wt_tau = _composite(0.0, tau_max, r_, max(1, math.ceil(tau_max / 2)))
        t_nodes = np.asarray(r_.nodes)
        return rho1, wt1, w * np.exp(tau), wt_tau, t_nodes, np.asarray(r_.weights), (1 - t_nodes) ** (k - 1)

    grids = (radial_grids(rule), radial_grids(rule.halved()))

    def radial(fpart, gpart, ftop_s, grid):
        rho1, wt1, rho2, wt_tau, t_nodes, t_wts, one_minus_t = grid
        # compact piece over [0, w]
        fv = np.polyval(fpart[::-1], rho1)
        gv = np.polyval(gpart[::-1], rho1)
        z1 = np.sum(wt1 * rho1 ** (p - 1) * gv * np.exp(-s * np.log(fv.astype(complex))))
        # Taylor remainder beyond w
        rc = fpart[::-1][1:] / fpart[m]  # coefficient of u^j, j = 1..m
        r = np.polyval(np.concatenate([rc[::-1], [0.0]]), 1.0 / rho2)
        gv2 = np.polyval(gpart[::-1], rho2)
        base = (1 + np.outer(r, t_nodes)).astype(complex)
        inner = (one_minus_t[None, :] * np.exp(-(s + k) * np.log(base))) @ t_wts
        nk = ftop_s * np.sum(wt_tau * np.exp((p - m * s) * np.log(rho2)) * gv2 * r**k * inner)
        return z1, nk

    n_slots = 4 + (L + 1) * (hmax + 1)

    def integrand(sigma):
        out = np.zeros(n_slots, dtype=complex)
        fpart = _parts_at(f, sigma, m)
        gpart = _parts_at(g, sigma, q)
        ftop_s = np.exp(-s * np.log(complex(fpart[m])))
        out[0], out[1] = radial(fpart, gpart, ftop_s, grids[0])
        out[2], out[3] = radial(fpart, gpart, ftop_s, grids[1])
        ts = tail_series(f, sigma)
        powers = ray_powers(f, g, sigma, L, Kmax, ts)
        for lam in range(L + 1):
            for h in range(q + (m - 1) * lam + 1):
                out[4 + lam * (hmax + 1) + h] = float(powers[lam][lam + h]) * ftop_s
        return out

    integrals, errs = face_integral(integrand, p, rule)
    integrals = np.asarray(integrals, dtype=complex)
    errs = np.broadcast_to(np.asarray(errs, dtype=float), integrals.shape)

    z1 = integrals[0]
    nk = integrals[1]
    nk_coef = k * binom_general(-s, k)
    total_err = float(errs[0] + abs(integrals[0] - integrals[2]))
    total_err += float(abs(nk_coef) * (errs[1] + abs(integrals[1] - integrals[3])))
    m_terms = {}
    for lam in range(L + 1):
        b = binom_general(-s, lam)
        acc = 0j
        for h in range(q + (m - 1) * lam + 1):
            idx = 4 + lam * (hmax + 1) + h
            ell = lam + h
            expo = q + p - ell - m * s
            if integer_case and ell == q + p + m * N:
                assert lam > N
                coef = Fraction((-1) ** (lam - N), (lam - N) * math.comb(lam, N)) / m
                coef = float(coef)
            else:
                coef = b * w**expo / (-expo)
            acc += coef * integrals[idx]
            total_err += abs(coef) * float(errs[idx])
        m_terms[lam] = acc

    breakdown = ContinuationBreakdown(complex(z1), m_terms, complex(nk), w, k, N, s)
    value = complex(breakdown.recombine())
    if s.imag == 0 and abs(value.imag) <= 1e-14 * max(1.0, abs(value)):
        value = value.real
    params = {"s": s, "order": rule.order, "w": w, "k": k, "N": N}
    return SpecialValue(value, total_err, "GENERAL_S", params), breakdown


# ---------------------------------------------------------------------------
# poles


def pole_candidates(f: MultiPoly, g: MultiPoly, ell_max: int) -> list[PoleCandidate]:
    _check_dims(f, g)
    p, m = f.num_vars, f.degree
    q = 0 if g.is_zero() else g.degree
    out = []
    for ell in range(ell_max + 1):
        s0 = Fraction(q + p - ell, m)
        out.append(PoleCandidate(s0, ell, s0.denominator == 1 and s0 <= 0))
    return out


def residue(f: MultiPoly, g: MultiPoly, s0, rule: QuadratureRule | None = None, check: bool = True) -> SpecialValue:
    """Residue of ``Z(s; f, g)`` at a pole candidate ``s0``.

    Only the closed-form radial terms can be singular; the residue of
    ``w^(q+p-ell-ms) / (ms+ell-q-p)`` is ``1/m``.
    """
    _check_dims(f, g)
    rule = _rule(rule)
    s0 = Fraction(s0)
    p, m = f.num_vars, f.degree
    if g.is_zero():
        raise NotACandidate("g = 0 has no poles")
    q = g.degree
    ell = q + p - m * s0
    if ell.denominator != 1 or ell < 0:
        raise NotACandidate(f"{s0} is not of the form (q+p-l)/m")
    if s0.denominator == 1 and s0 <= 0:
        raise NotACandidate(f"{s0} is a non-positive integer, where Z is regular")
    if check:
        require_mahler(f)
    ell = int(ell)
    N = max(0, math.ceil(-s0))
    L = N * m + q + p
    lams = [lam for lam in range(L + 1) if 0 <= ell - lam <= q + (m - 1) * lam]
    exact_power = s0.denominator == 1

    def integrand(sigma):
        ts = tail_series(f, sigma)
        powers = ray_powers(f, g, sigma, max(lams), ell, ts) if lams else []
        ftop_s = ts.ftop_value ** (-int(s0)) if exact_power else float(ts.ftop_value) ** float(-s0)
        acc = 0
        for lam in lams:
            acc = acc + binom_general(-s0, lam) * powers[lam][ell]
        return acc * ftop_s

    value, err = face_integral(integrand, p, rule)
    params = {"s0": s0, "ell": ell, "order": rule.order}
    return SpecialValue(value / m, err / m, "RESIDUE", params)


# ---------------------------------------------------------------------------
# product rule


def product_rule_z(f_list: Sequence[MultiPoly], g: MultiPoly, rule: QuadratureRule | None = None) -> ProductRuleReport:
    """Both sides of ``deg(prod f_j) Z(0; prod f_j, g) = sum_j deg(f_j) Z(0; f_j, g)``."""
    if not f_list:
        raise ValueError("need at least one factor")
    rule = _rule(rule)
    for j, fj in enumerate(f_list):
        require_mahler(fj, index=j)
    prod = f_list[0]
    for fj in f_list[1:]:
        prod = prod * fj
    whole = z_special(prod, g, 0, rule, check=False)
    lhs = prod.degree * whole.value
    err = prod.degree * whole.error_estimate
    rhs = 0
    terms = []
    for fj in f_list:
        v = z_special(fj, g, 0, rule, check=False)
        terms.append(v)
        rhs = rhs + fj.degree * v.value
        err += fj.degree * v.error_estimate
    return ProductRuleReport(lhs, rhs, float(abs(lhs - rhs)), err, terms)

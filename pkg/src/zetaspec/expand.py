"""Expansions along a ray ``rho * sigma`` in powers of ``u = 1/rho``.

With ``m = deg f`` and ``q = deg g``::

    f(rho sigma) = rho^m f_top(sigma) (1 + r),   r = sum_{j=1}^m c_j(sigma) u^j
    g(rho sigma) = rho^q sum_{j=0}^q g_(q-j)(sigma) u^j

so ``g r^lam = rho^q * (series in u)`` and the coefficient of ``rho^t`` is the
coefficient of ``u^(q-t)``.  Everything is evaluated pointwise at a numeric
``sigma``; exact inputs give exact outputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cubical import FacePoint, QuadratureRule, face_points
from .errors import TopVanishes
from .mpoly import MultiPoly, homogeneous_part

__all__ = [
    "TailSeries",
    "tail_series",
    "g_series",
    "ray_powers",
    "coeff_A",
    "coeff_C",
    "log_coeff",
    "split_radius",
    "series_mul",
]


@dataclass(frozen=True)
class TailSeries:
    """``u_coeffs[j-1]`` is the coefficient of ``u^j`` in ``r(rho sigma)``."""

    sigma: FacePoint
    ftop_value: object
    u_coeffs: tuple

    def full(self) -> list:
        return [0, *self.u_coeffs]

    def value(self, rho):
        u = Fraction(1, rho) if isinstance(rho, int) else 1 / rho
        return sum(c * u ** (j + 1) for j, c in enumerate(self.u_coeffs))


def _point(sigma) -> tuple:
    return sigma.embed() if isinstance(sigma, FacePoint) else tuple(sigma)


def tail_series(f: MultiPoly, sigma) -> TailSeries:
    pt = _point(sigma)
    m = f.degree
    ftop = homogeneous_part(f, m).evaluate(pt)
    if ftop == 0:
        raise TopVanishes(f"f_top vanishes at {pt}")
    coeffs = tuple(homogeneous_part(f, m - j).evaluate(pt) / ftop for j in range(1, m + 1))
    return TailSeries(sigma, ftop, coeffs)


def g_series(g: MultiPoly, sigma) -> list:
    """``[g_(q)(sigma), g_(q-1)(sigma), ..., g_(0)]``: g(rho sigma) / rho^q in powers of u."""
    pt = _point(sigma)
    if g.is_zero():
        return []
    q = g.degree
    return [homogeneous_part(g, q - j).evaluate(pt) for j in range(q + 1)]


def series_mul(a: Sequence, b: Sequence, K: int) -> list:
    """Product of two u-series truncated after ``u^K``."""
    out = [0] * (K + 1)
    for i, x in enumerate(a[: K + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: K + 1 - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def ray_powers(f: MultiPoly, g: MultiPoly, sigma, lam_max: int, K: int, ts: TailSeries | None = None):
    """u-series of ``g(rho sigma) r^lam / rho^q`` for ``lam = 0..lam_max``, truncated at ``u^K``."""
    ts = ts or tail_series(f, sigma)
    r = ts.full()
    gs = g_series(g, sigma)
    current = (gs + [0] * (K + 1))[: K + 1]
    out = [current]
    for _ in range(lam_max):
        current = series_mul(current, r, K)
        out.append(current)
    return out


def _coeff(series: list, n: int):
    return series[n] if 0 <= n < len(series) else 0


def coeff_A(f: MultiPoly, g: MultiPoly, lam: int, h: int, sigma):
    """Coefficient of ``rho^(q - lam - h)`` in ``g(rho sigma) r(rho sigma)^lam``."""
    m, q = f.degree, g.degree
    if g.is_zero() or h < 0 or h > q + (m - 1) * lam:
        return 0
    n = lam + h
    return _coeff(ray_powers(f, g, sigma, lam, n)[lam], n)


def coeff_C(f: MultiPoly, g: MultiPoly, lam: int, N: int, sigma):
    """Coefficient of ``rho^(-p - m N)`` in ``g r^lam``, i.e. ``A_{lam, q+p+Nm-lam}``."""
    if g.is_zero():
        return 0
    p, m, q = f.num_vars, f.degree, g.degree
    return coeff_A(f, g, lam, q + p + N * m - lam, sigma)


def log_coeff(f: MultiPoly, g: MultiPoly, sigma):
    """Integrand whose face integral is ``deg(f) * Z(0; f, g)``.

    This is minus the coefficient of ``rho^(-p)`` in ``g log(1 + r)``; only
    ``lam <= q + p`` can reach that power, so the log series is truncated there.
    """
    if g.is_zero():
        return 0
    p, q = f.num_vars, g.degree
    K = q + p
    powers = ray_powers(f, g, sigma, K, K)
    total = 0
    for lam in range(1, K + 1):
        c = powers[lam][K]
        if c:
            total = total + Fraction((-1) ** lam, lam) * c
    return total


def split_radius(f: MultiPoly, rule: QuadratureRule) -> float:
    """Radius ``w`` beyond which ``|r(rho sigma)| <= 1/2`` at the sampled face points, doubled.

    ``c_j`` is the largest ``|f_(m-j)/f_top|`` over the face nodes of ``rule``
    and the cube corners; the smallest ``w`` with ``sum_j c_j / w^j <= 1/2`` is
    found by bisection.  At least 1.
    """
    p, m = f.num_vars, f.degree
    samples = [sigma for sigma, _ in face_points(p, rule)]
    if p > 1:
        for face in range(1, p + 1):
            for corner in _corners(p - 1):
                samples.append(FacePoint(face, corner))
    c = [0.0] * m
    for sigma in samples:
        ts = tail_series(f, sigma)
        for j, v in enumerate(ts.u_coeffs):
            c[j] = max(c[j], abs(float(v)))
    if not any(c):
        return 1.0

    def bound(w):
        return sum(cj / w ** (j + 1) for j, cj in enumerate(c))

    lo, hi = 1e-12, 1.0
    while bound(hi) > 0.5:
        hi *= 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if bound(mid) > 0.5:
            lo = mid
        else:
            hi = mid
    return max(1.0, 2 * hi)


def _corners(d: int):
    if d == 0:
        return [()]
    return [tuple(bits) for bits in itertools.product((0, 1), repeat=d)]

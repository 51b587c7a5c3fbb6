"""Cubical coordinates on the octant and tensor Gauss-Legendre quadrature.

A nonzero ``x`` in ``[0, inf)^p`` is written ``x = rho * sigma`` with ``rho``
the max-norm and ``sigma`` on the part of the unit cube boundary where some
coordinate equals 1.  That face domain is a union of ``p`` flat unit cubes of
dimension ``p - 1``, so integrals over it are sums of tensor rules.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatch, ZeroPoint

__all__ = [
    "FacePoint",
    "QuadratureRule",
    "gauss_legendre",
    "decompose",
    "face_points",
    "face_integral",
    "box_integral",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 32
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class FacePoint:
    """Point on the face domain: coordinate ``face`` (1-based) equals 1."""

    face: int
    coords: tuple

    def __post_init__(self):
        if self.face < 1:
            raise ValueError("face index is 1-based")

    @property
    def num_vars(self) -> int:
        return len(self.coords) + 1

    def embed(self) -> tuple:
        pt = list(self.coords)
        pt.insert(self.face - 1, 1)
        return tuple(pt)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre rule on ``[0, 1]``; weights sum to 1."""

    order: int
    nodes: tuple
    weights: tuple

    def halved(self) -> "QuadratureRule":
        return gauss_legendre(max(1, self.order // 2))


@lru_cache(maxsize=64)
def gauss_legendre(order: int = DEFAULT_ORDER) -> QuadratureRule:
    if order < 1:
        raise ValueError("quadrature order must be positive")
    x, w = np.polynomial.legendre.leggauss(order)
    return QuadratureRule(order, tuple(float(v) for v in (x + 1) / 2), tuple(float(v) for v in w / 2))


def decompose(x: Sequence) -> tuple:
    """Return ``(rho, sigma)`` with ``rho * embed(sigma) == x``; ties go to the lowest face."""
    if any(xi < 0 for xi in x):
        raise ValueError("point must lie in the closed octant")
    rho = max(x) if len(x) else 0
    if rho == 0:
        raise ZeroPoint("the origin has no cubical coordinates")
    face = list(x).index(rho) + 1
    if isinstance(rho, int):
        rho = Fraction(rho)
    coords = tuple(xi / rho for i, xi in enumerate(x) if i != face - 1)
    return rho, FacePoint(face, coords)


def face_points(p: int, rule: QuadratureRule):
    """Yield ``(FacePoint, weight)`` for the tensor rule on every face."""
    if p == 1:
        yield FacePoint(1, ()), 1.0
        return
    for face in range(1, p + 1):
        for idx in itertools.product(range(rule.order), repeat=p - 1):
            coords = tuple(rule.nodes[i] for i in idx)
            weight = math.prod(rule.weights[i] for i in idx)
            yield FacePoint(face, coords), weight


def _face_sum(h, p, rule):
    total = 0
    magnitude = 0.0
    for sigma, weight in face_points(p, rule):
        v = h(sigma)
        total = total + weight * v
        magnitude += weight * abs(v)
    return total, magnitude


def face_integral(h: Callable[[FacePoint], object], p: int, rule: QuadratureRule) -> tuple:
    """Integrate ``h`` over the face domain with its natural ``(p-1)``-volume.

    Returns ``(value, error_estimate)``; the estimate is the change from the
    half-order rule plus a rounding allowance.  For ``p = 1`` the domain is the
    single point ``1`` and the result is ``h(1)`` with zero error.
    """
    if p == 1:
        return h(FacePoint(1, ())), 0.0
    value, magnitude = _face_sum(h, p, rule)
    coarse, _ = _face_sum(h, p, rule.halved())
    return value, abs(value - coarse) + 16 * _EPS * magnitude


def _box_nodes(lower, upper, rule, panels):
    axes = []
    for lo, hi in zip(lower, upper):
        lo, hi = float(lo), float(hi)
        width = (hi - lo) / panels
        pts, wts = [], []
        for k in range(panels):
            a = lo + k * width
            pts.extend(a + width * t for t in rule.nodes)
            wts.extend(width * w for w in rule.weights)
        axes.append((pts, wts))
    return axes


def _box_sum(h, lower, upper, rule, panels):
    axes = _box_nodes(lower, upper, rule, panels)
    total = 0
    magnitude = 0.0
    for combo in itertools.product(*(range(len(a[0])) for a in axes)):
        point = tuple(axes[d][0][i] for d, i in enumerate(combo))
        weight = math.prod(axes[d][1][i] for d, i in enumerate(combo))
        v = h(point)
        total = total + weight * v
        magnitude += weight * abs(v)
    return total, magnitude


def box_integral(
    h: Callable[[tuple], object],
    lower: Sequence,
    upper: Sequence,
    rule: QuadratureRule,
    panels: int = 1,
) -> tuple:
    """Tensor (composite) Gauss-Legendre over a box; returns ``(value, error_estimate)``."""
    if len(lower) != len(upper):
        raise DimensionMismatch("bounds differ in length")
    if any(lo > hi for lo, hi in zip(lower, upper)):
        raise ValueError("lower bound exceeds upper bound")
    value, magnitude = _box_sum(h, lower, upper, rule, panels)
    coarse, _ = _box_sum(h, lower, upper, rule.halved(), panels)
    return value, abs(value - coarse) + 16 * _EPS * magnitude

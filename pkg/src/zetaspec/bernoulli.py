"""Bernoulli numbers and polynomials, and the Raabe transform on polynomials.

``B_j(t)`` is built from ``B_0 = 1``, ``B_j' = j B_{j-1}`` and
``int_0^1 B_j = 0`` (so ``B_1 = -1/2``).  The Raabe transform
``R(Q)(a) = int_{[0,1]^p} Q(a+t) dt`` maps the product basis
``B_L(a) = prod_i B_{L_i}(a_i)`` onto the monomials ``a^L``; its inverse is
therefore monomial-by-monomial Bernoulli substitution.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number
from typing import Mapping

from .mpoly import MultiPoly

__all__ = [
    "bernoulli_number",
    "bernoulli_poly",
    "bernoulli_coeffs",
    "CoeffTable",
    "raabe_transform",
    "inverse_raabe",
    "bernoulli_substitute",
]


class _BernoulliTable:
    """Append-only cache of coefficient lists of ``B_j(t)`` (index = power of t)."""

    def __init__(self):
        self._polys: list[tuple[Fraction, ...]] = [(Fraction(1),)]
        self._lock = threading.Lock()

    def get(self, j: int) -> tuple[Fraction, ...]:
        if j < 0:
            raise ValueError("Bernoulli index must be non-negative")
        with self._lock:
            while len(self._polys) <= j:
                n = len(self._polys)
                prev = self._polys[-1]
                # antiderivative of n * B_{n-1}, then fix the constant so the mean over [0,1] is 0
                anti = [Fraction(0)] + [n * c / (i + 1) for i, c in enumerate(prev)]
                mean = sum(c / (i + 1) for i, c in enumerate(anti))
                anti[0] = -mean
                self._polys.append(tuple(anti))
            return self._polys[j]


_TABLE = _BernoulliTable()


def bernoulli_coeffs(j: int) -> tuple[Fraction, ...]:
    """Coefficients of ``B_j(t)``, lowest power first."""
    return _TABLE.get(j)


def bernoulli_number(j: int) -> Fraction:
    return _TABLE.get(j)[0]


def bernoulli_poly(j: int) -> MultiPoly:
    """``B_j(t)`` as a univariate :class:`MultiPoly`."""
    return MultiPoly(1, {(k,): c for k, c in enumerate(_TABLE.get(j))})


def bernoulli_eval(j: int, t):
    coeffs = _TABLE.get(j)
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


@dataclass
class CoeffTable:
    """Coefficients ``c_L`` of a polynomial in the shift vector ``a``.

    ``errors`` holds optional per-coefficient error estimates (float); exact
    tables leave it empty.
    """

    num_vars: int
    coeffs: dict[tuple, Number]
    degree_bound: int
    errors: dict[tuple, float] = field(default_factory=dict)

    def __post_init__(self):
        for L in self.coeffs:
            if len(L) != self.num_vars:
                raise ValueError(f"multi-index {L} has wrong length")
            if sum(L) > self.degree_bound:
                raise ValueError(f"multi-index {L} exceeds degree bound {self.degree_bound}")

    @classmethod
    def from_poly(cls, P: MultiPoly, degree_bound: int | None = None) -> "CoeffTable":
        bound = P.degree if degree_bound is None else degree_bound
        if P.is_zero():
            bound = 0 if degree_bound is None else degree_bound
        return cls(P.num_vars, dict(P.items()), int(bound))

    def to_poly(self) -> MultiPoly:
        return MultiPoly(self.num_vars, self.coeffs)

    def evaluate(self, a):
        return self.to_poly().evaluate(a)

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs.values())


def _as_table(P) -> CoeffTable:
    if isinstance(P, CoeffTable):
        return P
    if isinstance(P, MultiPoly):
        return CoeffTable.from_poly(P)
    raise TypeError(f"expected CoeffTable or MultiPoly, got {type(P).__name__}")


def raabe_transform(Q: MultiPoly) -> MultiPoly:
    """Exact ``P(a) = int_{[0,1]^p} Q(a+t) dt``."""
    p = Q.num_vars
    out: dict[tuple, Number] = {}
    for exps, c in Q.items():
        # int_0^1 (a+t)^e dt = sum_{k<=e} C(e+1, k) a^k / (e+1)
        partial: dict[tuple, Number] = {(): c}
        for e in exps:
            nxt: dict[tuple, Number] = {}
            for key, val in partial.items():
                for k in range(e + 1):
                    nxt[key + (k,)] = val * Fraction(math.comb(e + 1, k), e + 1)
            partial = nxt
        for key, val in partial.items():
            out[key] = out.get(key, 0) + val
    return MultiPoly(p, out)


def inverse_raabe(P) -> MultiPoly:
    """``Q(a) = sum_L d_L prod_i B_{L_i}(a_i)`` for ``P(a) = sum_L d_L a^L``."""
    table = _as_table(P)
    out: dict[tuple, Number] = {}
    for L, d in table.coeffs.items():
        partial: dict[tuple, Number] = {(): d}
        for Li in L:
            bc = bernoulli_coeffs(Li)
            nxt: dict[tuple, Number] = {}
            for key, val in partial.items():
                for k, b in enumerate(bc):
                    if b:
                        nxt[key + (k,)] = val * b
            partial = nxt
        for key, val in partial.items():
            out[key] = out.get(key, 0) + val
    return MultiPoly(table.num_vars, out)


def bernoulli_substitute(C, with_error: bool = False):
    """Replace every ``a^L`` by ``B_L = prod_i B_{L_i}`` and sum.

    With ``with_error=True`` returns ``(value, error)`` where the error is the
    per-coefficient estimates weighted by ``|B_L|``.
    """
    table = _as_table(C)
    value = 0
    err = 0.0
    for L, c in table.coeffs.items():
        BL = Fraction(1)
        for Li in L:
            BL *= bernoulli_number(Li)
        value = value + c * BL
        err += abs(float(BL)) * table.errors.get(L, 0.0)
    if not table.coeffs:
        value = Fraction(0)
    return (value, err) if with_error else value

"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`MultiPoly` maps exponent tuples to nonzero coefficients.  The
coefficients are normally :class:`fractions.Fraction`; tables produced by
quadrature may carry floats, in which case evaluation is no longer exact.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Number, Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ConstantPolynomial,
    DimensionMismatch,
    NegativeExponent,
    PolySyntaxError,
    VarOutOfRange,
)

NEG_INF = float("-inf")

__all__ = [
    "MultiPoly",
    "MahlerReport",
    "parse_poly",
    "shift",
    "homogeneous_part",
    "top_part",
    "check_mahler",
    "NEG_INF",
]


def _as_exact(c):
    if isinstance(c, bool):
        raise TypeError("boolean coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Fraction):
        return c
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    return c


class MultiPoly:
    """Immutable sparse polynomial in ``num_vars`` variables ``x1..xp``."""

    __slots__ = ("num_vars", "_terms", "__dict__")

    def __init__(self, num_vars: int, terms: Mapping[tuple, Number] | None = None):
        if num_vars < 1:
            raise ValueError("num_vars must be positive")
        clean: dict[tuple, Number] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars:
                raise DimensionMismatch(f"exponent {exps} has wrong length for p={num_vars}")
            if any(e < 0 for e in exps):
                raise NegativeExponent(f"negative exponent in {exps}")
            c = _as_exact(c)
            total = clean.get(exps, 0) + c
            if total == 0:
                clean.pop(exps, None)
            else:
                clean[exps] = total
        self.num_vars = num_vars
        self._terms = clean

    # -- construction ---------------------------------------------------

    @classmethod
    def constant(cls, c, num_vars: int) -> "MultiPoly":
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, i: int, num_vars: int) -> "MultiPoly":
        """The coordinate ``x_i`` (1-based)."""
        if not 1 <= i <= num_vars:
            raise VarOutOfRange(f"x{i} with p={num_vars}")
        exps = [0] * num_vars
        exps[i - 1] = 1
        return cls(num_vars, {tuple(exps): 1})

    @classmethod
    def zero(cls, num_vars: int) -> "MultiPoly":
        return cls(num_vars)

    # -- basic properties -------------------------------------------------

    @property
    def terms(self) -> dict[tuple, Number]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @cached_property
    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._terms.values())

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), Fraction(0))

    def constant_term(self):
        return self.coefficient((0,) * self.num_vars)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.num_vars != self.num_vars:
                raise DimensionMismatch(f"p={self.num_vars} vs p={other.num_vars}")
            return other
        if isinstance(other, Number):
            return MultiPoly.constant(other, self.num_vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.num_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[tuple, Number] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.num_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise NegativeExponent(f"power {k!r}")
        result = MultiPoly.constant(1, self.num_vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Number):
            other = MultiPoly.constant(other, self.num_vars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self._terms == other._terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self._terms.items())))

    # -- evaluation -------------------------------------------------------

    @cached_property
    def _float_terms(self):
        return [(e, complex(c) if isinstance(c, complex) else float(c)) for e, c in self._terms.items()]

    def evaluate(self, point: Sequence):
        """Evaluate at ``point``; exact when the point and coefficients are rational."""
        if len(point) != self.num_vars:
            raise DimensionMismatch(f"point of length {len(point)} for p={self.num_vars}")
        inexact = any(isinstance(x, (float, complex, np.floating, np.complexfloating)) for x in point)
        terms = self._float_terms if inexact else self._terms.items()
        total = 0
        for exps, c in terms:
            term = c
            for x, e in zip(point, exps):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        """Vectorised float evaluation; ``points`` has shape ``(p, ...)``."""
        points = np.asarray(points, dtype=float)
        if points.shape[0] != self.num_vars:
            raise DimensionMismatch("leading axis must equal num_vars")
        out = np.zeros(points.shape[1:], dtype=float)
        for exps, c in self._float_terms:
            term = np.full(points.shape[1:], c)
            for x, e in zip(points, exps):
                if e:
                    term = term * x**e
            out = out + term
        return out

    # -- structure --------------------------------------------------------

    @cached_property
    def homogeneous_parts(self) -> dict[int, "MultiPoly"]:
        parts: dict[int, dict] = {}
        for e, c in self._terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: MultiPoly(self.num_vars, t) for d, t in parts.items()}

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        """Relabel variables: new variable ``k`` is old variable ``perm[k]`` (0-based)."""
        if sorted(perm) != list(range(self.num_vars)):
            raise ValueError(f"not a permutation: {perm}")
        return MultiPoly(self.num_vars, {tuple(e[i] for i in perm): c for e, c in self._terms.items()})

    def scale(self, c) -> "MultiPoly":
        return self * c

    # -- printing ---------------------------------------------------------

    def sorted_terms(self):
        """Terms in graded lexicographic order, highest first."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exps) if e
            )
            neg = c < 0 if not isinstance(c, complex) else False
            mag = -c if neg else c
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({self.num_vars}, {str(self)!r})"


# ---------------------------------------------------------------------------
# Parsing


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<var>x\d+|[xyz])|(?P<op>[-+*^()]))"
)
_ALIASES = {"x": 1, "y": 2, "z": 3}


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, tokens = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, num_vars: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.p = num_vars

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise PolySyntaxError(f"expected {value or 'token'}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise PolySyntaxError("empty expression")
        out = self.expr()
        if self.i != len(self.tokens):
            raise PolySyntaxError(f"unexpected token {self.peek()[1]!r}")
        return out

    def expr(self) -> MultiPoly:
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> MultiPoly:
        out = self.unary()
        while self.peek()[1] == "*":
            self.take()
            out = out * self.unary()
        return out

    def unary(self) -> MultiPoly:
        if self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            inner = self.unary()
            return -inner if op == "-" else inner
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            expo = self.unary()
            if expo.degree > 0:
                raise NegativeExponent("exponent must be a constant")
            k = expo.constant_term()
            if k < 0 or Fraction(k).denominator != 1:
                raise NegativeExponent(f"exponent {k} is not a non-negative integer")
            return base ** int(k)
        return base

    def atom(self) -> MultiPoly:
        kind, value = self.peek()
        if kind == "num":
            self.take()
            num, _, den = value.replace(" ", "").partition("/")
            if den and int(den) == 0:
                raise PolySyntaxError("zero denominator")
            return MultiPoly.constant(Fraction(int(num), int(den) if den else 1), self.p)
        if kind == "var":
            self.take()
            idx = _ALIASES[value] if value in _ALIASES else int(value[1:])
            if not 1 <= idx <= self.p:
                raise VarOutOfRange(f"{value} with p={self.p}")
            return MultiPoly.variable(idx, self.p)
        if value == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if value is None:
            raise PolySyntaxError("unexpected end of expression")
        raise PolySyntaxError(f"unexpected token {value!r}")


def parse_poly(text: str, num_vars: int) -> MultiPoly:
    """Parse an expression such as ``"x1^2 + 5/2*x2 + 1"`` into a polynomial."""
    if num_vars < 1:
        raise ValueError("num_vars must be positive")
    return _Parser(text, num_vars).parse()


# ---------------------------------------------------------------------------
# Shifts and homogeneous parts


def shift(f: MultiPoly, a: Sequence) -> MultiPoly:
    """Return ``f_a`` with ``f_a(x) = f(x + a)``."""
    if len(a) != f.num_vars:
        raise DimensionMismatch(f"shift of length {len(a)} for p={f.num_vars}")
    a = [_as_exact(x) for x in a]
    terms: dict[tuple, Number] = {}
    for exps, c in f.items():
        # (x_i + a_i)^e_i expanded per variable, then multiplied out
        factors = [
            [(k, math.comb(e, k) * ai ** (e - k)) for k in range(e + 1)] for e, ai in zip(exps, a)
        ]
        for combo in itertools.product(*factors):
            coef = c
            for _, b in combo:
                coef = coef * b
            key = tuple(k for k, _ in combo)
            terms[key] = terms.get(key, 0) + coef
    return MultiPoly(f.num_vars, terms)


def homogeneous_part(f: MultiPoly, j: int) -> MultiPoly:
    return f.homogeneous_parts.get(j, MultiPoly.zero(f.num_vars))


def top_part(f: MultiPoly) -> MultiPoly:
    if f.is_zero():
        return f
    return homogeneous_part(f, f.degree)


# ---------------------------------------------------------------------------
# Mahler's hypothesis


@dataclass(frozen=True)
class MahlerReport:
    verdict: str  # PROVEN | LIKELY | VIOLATED
    witness: tuple | None
    min_abs_sampled: tuple  # (min |f| on octant samples, min |f_top| on face samples)
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict != "VIOLATED"


def _sufficient_condition(f: MultiPoly) -> bool:
    m = f.degree
    if f.constant_term() <= 0:
        return False
    if any(c < 0 for _, c in f.items()):
        return False
    for i in range(f.num_vars):
        pure = [0] * f.num_vars
        pure[i] = m
        if not f.coefficient(pure) > 0:
            return False
    return True


def _face_grid(p: int, density: int):
    ticks = [Fraction(k, density - 1) for k in range(density)]
    for face in range(p):
        for coords in itertools.product(ticks, repeat=p - 1):
            pt = list(coords)
            pt.insert(face, Fraction(1))
            yield tuple(pt)


@lru_cache(maxsize=256)
def check_mahler(f: MultiPoly, grid_density: int = 9) -> MahlerReport:
    """Three-tier check of Mahler's hypothesis for real ``f`` positive on the octant.

    PROVEN when every coefficient is non-negative, the constant term is
    positive and ``f_top`` has a positive coefficient on each pure power
    ``x_i^m``.  Otherwise ``f_top`` is sampled on the faces of the unit cube and
    ``f`` along rays through those face points; a non-positive sample gives
    VIOLATED with its location as witness.
    """
    if grid_density < 2:
        raise ValueError("grid_density must be >= 2")
    if f.is_zero() or f.degree == 0:
        raise ConstantPolynomial("Mahler's hypothesis requires a non-constant f")
    if any(isinstance(c, complex) for _, c in f.items()):
        raise TypeError("complex coefficients are not supported")
    ftop = top_part(f)
    proven = _sufficient_condition(f)

    min_top = math.inf
    top_witness = None
    for pt in _face_grid(f.num_vars, grid_density):
        v = ftop.evaluate(pt)
        if abs(v) < min_top:
            min_top = abs(v)
        if v <= 0 and top_witness is None:
            top_witness = pt

    radii = [Fraction(0)] + [Fraction(2) ** k for k in range(-3, 7)]
    min_f = math.inf
    f_witness = None
    for pt in _face_grid(f.num_vars, grid_density):
        for rho in radii:
            x = tuple(rho * c for c in pt)
            v = f.evaluate(x)
            if abs(v) < min_f:
                min_f = abs(v)
            if v <= 0 and f_witness is None:
                f_witness = x
    mins = (float(min_f), float(min_top))

    if top_witness is not None:
        return MahlerReport("VIOLATED", top_witness, mins, "f_top is non-positive on the face domain")
    if f_witness is not None:
        return MahlerReport("VIOLATED", f_witness, mins, "f is non-positive on the octant")
    if proven:
        return MahlerReport("PROVEN", None, mins, "coefficient condition holds")
    return MahlerReport("LIKELY", None, mins, "no violation found by sampling")

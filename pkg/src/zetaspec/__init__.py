"""Special values of multivariate Dirichlet series and their integral counterparts.

For polynomials ``f, g`` in ``p`` variables::

    zeta(s; f, g) = sum over k in N_0^p of g(k) f(k)^(-s)
    Z(s; f, g)    = integral over [0, inf)^p of g(x) f(x)^(-s) dx

``Z`` is continued to the whole plane through cubical coordinates; ``zeta``
at non-positive integers follows from the polynomial ``a -> Z(-N; f_a, g_a)``
by a Bernoulli substitution.
"""

from .bernoulli import (
    CoeffTable,
    bernoulli_coeffs,
    bernoulli_eval,
    bernoulli_number,
    bernoulli_poly,
    bernoulli_substitute,
    inverse_raabe,
    raabe_transform,
)
from .cubical import DEFAULT_ORDER, FacePoint, QuadratureRule, box_integral, decompose, face_integral, gauss_legendre
from .errors import (
    ZetaError,
    PolySyntaxError,
    NegativeExponent,
    VarOutOfRange,
    DimensionMismatch,
    ConstantPolynomial,
    ZeroPoint,
    TopVanishes,
    MahlerViolation,
    PoleAt,
    NotACandidate,
    InterpolationIllConditioned,
    NotConvergent,
    ShiftOutOfRange,
)
from .expand import coeff_A, coeff_C, log_coeff, split_radius, tail_series
from .mpoly import MahlerReport, MultiPoly, check_mahler, homogeneous_part, parse_poly, shift, top_part
from .series import (
    INTEGRAL,
    SERIES,
    RaabeReport,
    ShiftPolyResult,
    direct_sum,
    product_rule_zeta,
    raabe_check,
    shift_value_poly,
    zeta_shift,
    zeta_special,
)
from .values import (
    ContinuationBreakdown,
    PoleCandidate,
    ProductRuleReport,
    SpecialValue,
    pole_candidates,
    product_rule_z,
    residue,
    z_general,
    z_special,
    z_zero_log,
)

__version__ = "0.1.0"

import math
from fractions import Fraction

import numpy as np
import pytest

from zetaspec import FacePoint, box_integral, decompose, face_integral, gauss_legendre
from zetaspec.errors import ZeroPoint


@pytest.mark.parametrize(
    "x,rho,face,coords",
    [
        ((3, 1), 3, 1, (Fraction(1, 3),)),
        ((Fraction(1, 2), 2), 2, 2, (Fraction(1, 4),)),
        ((2, 2), 2, 1, (1,)),
        ((5,), 5, 1, ()),
    ],
)
def test_decompose(x, rho, face, coords):
    r, sigma = decompose(x)
    assert r == rho and sigma.face == face and sigma.coords == coords
    assert tuple(r * c for c in sigma.embed()) == tuple(Fraction(v) for v in x)


def test_decompose_origin():
    with pytest.raises(ZeroPoint):
        decompose((0, 0))


def test_rule_properties():
    for order in (1, 4, 17, 32):
        rule = gauss_legendre(order)
        assert all(w > 0 for w in rule.weights)
        assert math.isclose(sum(rule.weights), 1.0, rel_tol=1e-14)
    rule = gauss_legendre(5)
    for d in range(10):
        approx = sum(w * x**d for x, w in zip(rule.nodes, rule.weights))
        assert approx == pytest.approx(1 / (d + 1), rel=1e-13)


def test_face_integral_examples(rule):
    assert face_integral(lambda s: 1.0, 2, rule)[0] == pytest.approx(2.0, abs=1e-14)
    assert face_integral(lambda s: sum(s.embed()), 2, rule)[0] == pytest.approx(3.0, abs=1e-13)
    v, err = face_integral(lambda s: 7.5, 1, rule)
    assert v == 7.5 and err == 0.0
    # p = 3: three unit squares, x1*x2*x3 integrates to 1/4 on each
    assert face_integral(lambda s: math.prod(s.embed()), 3, rule)[0] == pytest.approx(0.75, abs=1e-13)


def test_box_integral_examples(rule):
    assert box_integral(lambda x: 1.0, [0, 0], [1, 1], rule)[0] == pytest.approx(1.0)
    assert box_integral(lambda x: x[0] * x[1], [0, 0], [1, 1], rule)[0] == pytest.approx(0.25)
    assert box_integral(lambda x: (x[0] + 1) ** -2, [0], [2], rule)[0] == pytest.approx(2 / 3, abs=1e-14)


def test_order_doubling_within_estimate():
    h = lambda s: 1.0 / (1.0 + sum(s.embed())) ** 3
    v16, e16 = face_integral(h, 3, gauss_legendre(8))
    v32, _ = face_integral(h, 3, gauss_legendre(16))
    assert abs(v32 - v16) <= e16


@pytest.mark.parametrize(
    "h,exact",
    [
        (lambda x: math.exp(-x[0] - 2 * x[1]), 0.5),
        (lambda x: x[0] * x[1] * math.exp(-x[0] - x[1]), 1.0),
        (lambda x: 1.0 / (1 + x[0] + x[1]) ** 4, 1 / 6),
    ],
)
def test_jacobian_identity(h, exact):
    # int h dx = int_faces int_0^inf rho^(p-1) h(rho sigma) drho dsigma (p = 2),
    # with the radial integral mapped to [0, 1] via rho = t / (1 - t)
    x, w = np.polynomial.legendre.leggauss(200)
    t, w = (x + 1) / 2, w / 2
    rho, jac = t / (1 - t), 1 / (1 - t) ** 2

    def radial(sigma):
        e = sigma.embed()
        return sum(wi * ji * r * h((r * e[0], r * e[1])) for r, ji, wi in zip(rho, jac, w))

    val, _ = face_integral(radial, 2, gauss_legendre(48))
    assert val == pytest.approx(exact, rel=1e-6)


def test_facepoint_embed():
    assert FacePoint(2, (Fraction(1, 3), 0)).embed() == (Fraction(1, 3), 1, 0)
    with pytest.raises(ValueError):
        FacePoint(0, ())

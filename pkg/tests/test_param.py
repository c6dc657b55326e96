import random
from fractions import Fraction

from xns9.exactalg import (INFINITY, QQ, QS3, RHO, RHO_INV, SQRT_M3, Poly,
                           QSqrt3, RationalFunction)
from xns9.param import (build_tower, cubic_factors_over_q, denominator_cubic,
                        fiber_checks, t_of_y_formula, verify_tower_identities)
from xns9.thue import parametrization_t


def test_tower_layer_degrees():
    tower = build_tower()
    degrees = (tower.t_of_w.degree, tower.w_of_u.degree, tower.t_of_u.degree,
               tower.u_of_y.degree, tower.t_of_y.degree, tower.j_of_y.degree)
    assert degrees == (3, 3, 9, 1, 9, 27)


def test_tower_reproduces_closed_formula():
    tower = build_tower()
    assert tower.t_of_y == t_of_y_formula()
    assert tower.j_of_y == tower.t_of_y ** 3


def test_anchor_values():
    tower = build_tower()
    assert tower.eval_t(0) == -96
    assert tower.eval_j(0) == -(2 ** 15) * 27 == -884736
    assert tower.t_of_y.at_infinity() == -15
    assert tower.eval_t(INFINITY) == -15
    assert tower.eval_t(-1) == 12
    assert tower.eval_j(-1) == 1728


def test_verify_tower_identities_all_pass():
    report = verify_tower_identities()
    assert report.passed, report.failures
    assert [c.name for c in report] == [
        "shifted-twist-equation", "slope-substitution", "t-of-u",
        "conjugate-reciprocal", "ramified-fiber-values", "cube-root-fiber"]


def test_negative_control_wrong_twist_scalar():
    # replacing rho^-1 by rho on one side of the twist equation must break
    # the constant-12 normal form
    th = Poly.x(QS3)
    cubic = Poly(QS3, (-6, 9, 0, 1))
    shifted = cubic.compose(th + Poly.constant(QS3, SQRT_M3))
    wrong = shifted * RHO - (th**3 + 3 * SQRT_M3 * th**2) * RHO_INV
    assert wrong.degree > 0  # not a constant, so the identity fails


def test_fiber_checks_pass_and_witness_values():
    report = fiber_checks()
    assert report.passed, report.failures
    assert report["cusp-denominator"].witness == {1: 3}
    assert report["fiber-over-1728"].witness == {1: 1, 2: 4}


def test_numerator_cubics_are_the_published_factors():
    f1, f2, f3 = cubic_factors_over_q()
    y = Poly.x(QQ)
    assert f1 == y**3 + 3 * y**2 - 6 * y + 4
    assert f2 == y**3 + 3 * y**2 + 3 * y + 4
    assert f3 == 5 * y**3 - 3 * y**2 - 3 * y + 2
    assert denominator_cubic() == y**3 - 3 * y + 1


def test_sigma_twist_of_u():
    tower = build_tower()
    sigma_u = tower.u_of_y.map_coefficients(lambda c: c.conjugate())
    assert sigma_u * tower.u_of_y == RationalFunction.constant(QS3, 1)


def test_ramified_point_values():
    tower = build_tower()
    twelve_rho = 12 * RHO
    assert tower.t_of_w(QSqrt3(0, 2)) == twelve_rho
    assert tower.t_of_w(-SQRT_M3) == twelve_rho
    assert twelve_rho == QSqrt3(-6, 6)


def test_layerwise_evaluation_agrees_with_formula():
    tower = build_tower()
    rng = random.Random(11)
    for _ in range(100):
        y = Fraction(rng.randint(-60, 60), rng.randint(1, 25))
        through_layers = tower.eval_through_layers(y)
        assert through_layers.is_rational
        assert through_layers.rational_part() == tower.eval_t(y)


def test_formula_is_homogenization_of_t():
    import math
    tower = build_tower()
    rng = random.Random(12)
    checked = 0
    while checked < 60:
        m = rng.randint(-40, 40)
        n = rng.randint(1, 40)
        if math.gcd(m, n) != 1:
            continue
        assert parametrization_t(m, n) == tower.eval_t(Fraction(m, n))
        checked += 1
    assert parametrization_t(1, 0) == tower.eval_t(INFINITY) == -15


def test_tower_coefficients_are_rational():
    tower = build_tower()
    ext = tower.t_of_u.compose(tower.u_of_y)
    assert all(c.is_rational for c in ext.num.coeffs + ext.den.coeffs)

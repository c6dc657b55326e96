"""The uniformizer tower that parametrizes the level-9 curve over Q.

Layer by layer: j = t^3 identifies the level-3 curve over the j-line; the
intermediate curve carries a uniformizer w with t = rho^-1 (w^3 + 9w - 6); the
slope substitution produces w and t as degree-3 and degree-9 functions of a
uniformizer u of the level-9 curve; the Galois twist sigma(u) = 1/u descends u
to a uniformizer y with u = (y + rho)/(rho*y + 1); composing everything yields
a degree-9 expression for t in y with rational coefficients,

    t = -3 (y^3+3y^2-6y+4)(y^3+3y^2+3y+4)(5y^3-3y^2-3y+2) / (y^3-3y+1)^3,

which build_tower() reproduces symbolically and verifies coefficient by
coefficient on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactalg import (INFINITY, QQ, QS3, RHO, RHO_INV, SQRT_M3, Poly, QSqrt3,
                       RationalFunction, squarefree_profile)
from .report import CheckReport


class TowerError(RuntimeError):
    """A symbolic identity failed while assembling the tower."""

    def __init__(self, layer: str, message: str):
        super().__init__(f"layer {layer}: {message}")
        self.layer = layer


def _x3_cubic(field=QS3) -> Poly:
    """w^3 + 9w - 6, the cubic relating the intermediate uniformizer to t."""
    return Poly(field, (-6, 9, 0, 1))


def cubic_factors_over_q() -> tuple[Poly, Poly, Poly]:
    """The three cubic factors of the numerator of t(y)."""
    y = Poly.x(QQ)
    return (y**3 + 3 * y**2 - 6 * y + 4,
            y**3 + 3 * y**2 + 3 * y + 4,
            5 * y**3 - 3 * y**2 - 3 * y + 2)


def denominator_cubic() -> Poly:
    """y^3 - 3y + 1, whose cube is the denominator of t(y)."""
    y = Poly.x(QQ)
    return y**3 - 3 * y + 1


def t_of_y_formula() -> RationalFunction:
    """The closed formula for t(y), stated directly over Q."""
    f1, f2, f3 = cubic_factors_over_q()
    return RationalFunction(-3 * f1 * f2 * f3, denominator_cubic() ** 3)


@dataclass(frozen=True)
class ParamTower:
    t_of_w: RationalFunction    # degree 3, over Q(sqrt-3)
    w_of_u: RationalFunction    # degree 3, over Q(sqrt-3)
    t_of_u: RationalFunction    # degree 9, over Q(sqrt-3)
    u_of_y: RationalFunction    # degree 1, over Q(sqrt-3)
    t_of_y: RationalFunction    # degree 9, over Q
    j_of_y: RationalFunction    # degree 27, over Q

    def eval_t(self, y) -> Fraction:
        """Exact value of t at a rational y (or at INFINITY)."""
        val = self.t_of_y(Fraction(y) if y is not INFINITY else INFINITY)
        return val

    def eval_j(self, y):
        val = self.eval_t(y)
        return val if val is INFINITY else val ** 3

    def eval_through_layers(self, y):
        """Evaluate t by walking u -> w -> t through Q(sqrt-3); used to
        cross-check the composed formula numerically."""
        yv = QSqrt3(Fraction(y)) if y is not INFINITY else INFINITY
        u = self.u_of_y(yv)
        w = self.w_of_u(u)
        t = self.t_of_w(w)
        return t


def _build_w_of_u() -> RationalFunction:
    u = RationalFunction.x(QS3)
    core = (-u**2 - RHO_INV) / (u**3 - RHO_INV)
    return 3 * u * SQRT_M3 * core + SQRT_M3


@lru_cache(maxsize=None)
def build_tower() -> ParamTower:
    """Assemble the tower symbolically and verify each layer on the way up."""
    w = RationalFunction.x(QS3)
    t_of_w = RHO_INV * (w**3 + 9 * w - 6)
    if t_of_w.degree != 3:
        raise TowerError("t_of_w", f"degree {t_of_w.degree}, expected 3")

    w_of_u = _build_w_of_u()
    if w_of_u.degree != 3:
        raise TowerError("w_of_u", f"degree {w_of_u.degree}, expected 3")

    t_of_u = t_of_w.compose(w_of_u)
    if t_of_u.degree != 9:
        raise TowerError("t_of_u", f"degree {t_of_u.degree}, expected 9")

    y = RationalFunction.x(QS3)
    u_of_y = (y + RHO) / (RHO * y + 1)
    if u_of_y.degree != 1:
        raise TowerError("u_of_y", f"degree {u_of_y.degree}, expected 1")

    t_ext = t_of_u.compose(u_of_y)
    coeffs = list(t_ext.num.coeffs) + list(t_ext.den.coeffs)
    if not all(c.is_rational for c in coeffs):
        raise TowerError("t_of_y", "sqrt(-3) parts did not cancel in the descent")
    t_of_y = t_ext.map_coefficients(lambda c: c.rational_part(), QQ)
    if t_of_y != t_of_y_formula():
        raise TowerError("t_of_y", "composition does not match the closed formula")

    j_of_y = t_of_y ** 3
    if j_of_y.degree != 27:
        raise TowerError("j_of_y", f"degree {j_of_y.degree}, expected 27")
    return ParamTower(t_of_w, w_of_u, t_of_u, u_of_y, t_of_y, j_of_y)


def verify_tower_identities() -> CheckReport:
    """Exact symbolic checks for every derivation step behind the tower."""
    tower = build_tower()
    report = CheckReport("uniformizer tower identities")
    th = Poly.x(QS3)           # reuse as both substitution variables
    s3 = SQRT_M3
    cubic = _x3_cubic()

    # (a) both sides of the twist equation, after the shifts w = th + s3 and
    # w' = tau - s3, reduce to the same normal form plus the constant 12:
    # lhs(th) - rho^-1 * (th^3 + 3 s3 th^2) == 12 == rhs(tau) - rho^-1 * B(tau).
    lhs = cubic.compose(th + Poly.constant(QS3, s3)) * RHO_INV
    norm_lhs = (th**3 + 3 * s3 * th**2) * RHO_INV
    tau_coeff = (QSqrt3(-9) + 3 * s3) / 2
    rhs = cubic.compose(th - Poly.constant(QS3, s3)) * RHO
    norm_rhs = (th**3 * RHO_INV + tau_coeff * th**2) * RHO_INV
    const12 = Poly.constant(QS3, 12)
    ok = (lhs - norm_lhs == const12) and (rhs - norm_rhs == const12)
    report.add("shifted-twist-equation", ok,
               "shifting both uniformizers moves the twist equation into the "
               "normal form th^3 + 3*sqrt(-3)*th^2 = rho^-1*tau^3 + c*tau^2, "
               "with the same constant 12 on both sides")

    # (b) the slope substitution th = u*tau solves the normal form for tau;
    # back-substituting reproduces w(u), and the twisted pair (w, w') still
    # satisfies the original equation.
    u = RationalFunction.x(QS3)
    tau_of_u = (tau_coeff - 3 * s3 * u**2) / (u**3 - RHO_INV)
    theta_of_u = u * tau_of_u
    w_check = theta_of_u + s3
    w_of_u = tower.w_of_u
    normal_form_holds = (theta_of_u**3 + 3 * s3 * theta_of_u**2
                         == RHO_INV * tau_of_u**3 + tau_coeff * tau_of_u**2)
    wprime_of_u = tau_of_u - s3
    t_from_w = RHO_INV * (w_check**3 + 9 * w_check - 6)
    t_from_wprime = RHO * (wprime_of_u**3 + 9 * wprime_of_u - 6)
    ok = (w_check == w_of_u) and normal_form_holds and (t_from_w == t_from_wprime)
    report.add("slope-substitution", ok,
               "solving the normal form along th = u*tau reproduces w(u), and "
               "both twisted uniformizers give the same t(u)")

    # (c) the composed t(u) agrees with direct evaluation of the cubic in w(u).
    tower_t_of_u = tower.t_of_u
    direct = RHO_INV * (w_of_u**3 + 9 * w_of_u - 6)
    report.add("t-of-u", tower_t_of_u == direct,
               "composing t(w) with w(u) equals the direct degree-9 formula")

    # (d) conjugating the coefficients of u(y) inverts it, so y is fixed by
    # the twist and lives over Q.
    u_of_y = tower.u_of_y
    sigma_u = u_of_y.map_coefficients(lambda c: c.conjugate())
    product = sigma_u * u_of_y
    report.add("conjugate-reciprocal", product == RationalFunction.constant(QS3, 1),
               "sigma(u)(y) * u(y) == 1 as rational functions")

    # (e) the two distinguished points of the intermediate curve over the
    # ramified level-3 point: both values equal 12*rho, with a double zero at
    # the ramified one.
    twelve_rho = 12 * RHO
    v1 = tower.t_of_w(QSqrt3(0, 2))    # w = 2*sqrt(-3)
    v2 = tower.t_of_w(-s3)             # w = -sqrt(-3)
    shifted = cubic - Poly.constant(QS3, 12 * RHO**2)
    double_root = Poly(QS3, (s3, QSqrt3(1))) ** 2     # (w + sqrt(-3))^2
    _, rem = divmod(shifted, double_root)
    ok = v1 == twelve_rho and v2 == twelve_rho and rem.is_zero
    report.add("ramified-fiber-values", ok,
               "t = 12*rho at both points over the ramified level-3 point, "
               "with a double zero at w = -sqrt(-3)",
               witness={"value": str(v1)})

    # (f) the fiber of j = t^3 over 1728 on the level-3 curve: the three roots
    # of T^3 - 12^3 are 12, 12*rho, 12*rho^-1.
    big_t = Poly.x(QS3)
    product_form = (big_t - Poly.constant(QS3, QSqrt3(12))) \
        * (big_t - Poly.constant(QS3, twelve_rho)) \
        * (big_t - Poly.constant(QS3, 12 * RHO_INV))
    target = big_t**3 - Poly.constant(QS3, 12**3)
    report.add("cube-root-fiber", product_form == target,
               "T^3 - 12^3 factors as (T-12)(T-12*rho)(T-12*rho^-1)")

    return report


def fiber_checks() -> CheckReport:
    """Squarefree structure of the formula versus the branching figure."""
    tower = build_tower()
    report = CheckReport("formula fibers match the branching figure")

    den = denominator_cubic()
    report.add("cusp-denominator", squarefree_profile(den) == {1: 3},
               "y^3 - 3y + 1 has three simple roots: three cusps, each cubed "
               "in the denominator (width 9 over width 3)",
               witness=squarefree_profile(den))

    f1, f2, f3 = cubic_factors_over_q()
    one = Poly.constant(QQ, 1)
    pairwise = (f1.gcd(f2) == one and f1.gcd(f3) == one and f2.gcd(f3) == one)
    squarefree = all(squarefree_profile(f) == {1: 3} for f in (f1, f2, f3))
    report.add("zero-numerator", pairwise and squarefree,
               "the three cubic factors are squarefree and pairwise coprime: "
               "nine simple zeros of t over the order-3 point")

    shifted_num = (tower.t_of_y - RationalFunction.constant(QQ, 12)).num
    profile = squarefree_profile(shifted_num)
    report.add("fiber-over-1728", profile == {1: 1, 2: 4},
               "t - 12 has one simple and four double zeros, matching the "
               "fiber over the rational point above j = 1728",
               witness=profile)

    degrees = (tower.t_of_y.degree, tower.j_of_y.degree)
    report.add("map-degrees", degrees == (9, 27),
               "t has degree 9 over the level-3 line and j = t^3 degree 27",
               witness={"degrees": degrees})
    return report

"""The class-number-one pipeline.

Integral points of the level-9 curve are assembled from the Thue solutions,
their j-invariants computed exactly, and each matched against the imaginary
quadratic orders of class number one in which 3 is inert.  Class numbers are
recomputed from scratch by reduced-form enumeration, and CM j-invariants by a
high-precision q-expansion with a runtime-checked tail bound; nothing is taken
from tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import mpmath
from mpmath import mp

from .exactalg import factorize, kronecker, primes_upto
from .report import CheckReport
from .thue import DENOMINATOR_FORM, parametrization_t, solve_bounded

#: Absolute accuracy demanded of every CM j-value (far below the 0.5 window
#: that separates distinct integer j-invariants).
CM_TOLERANCE = 1e-5

#: Matching window: a CM value within 0.5 of an integer j pins that integer.
MATCH_WINDOW = 0.5


class PrecisionError(ArithmeticError):
    """The requested tolerance is not reachable at the given precision."""


# -------------------- integral points --------------------

@dataclass(frozen=True)
class IntegralPoint:
    """A rational point of the level-9 curve with integral t and j."""

    m: int
    n: int
    t: int
    j: int
    matched_discriminant: int | None = None

    @property
    def y_label(self) -> str:
        return f"{self.m}/{self.n}" if self.n else "infinity"

    def as_dict(self) -> dict:
        return {
            "discriminant": self.matched_discriminant,
            "j": self.j,
            "m": self.m,
            "n": self.n,
            "t": self.t,
        }


def integral_points(bound: int) -> list[IntegralPoint]:
    """All integral points found below the Thue search bound.

    Solves the four form equations, keeps the pairs where the exact t value is
    an integer, and identifies (m, n) with (-m, -n) (same y), keeping the
    representative with positive form value.  Exactly nine points for any
    bound >= 4.  Discriminants are left unmatched here; see match_point.
    """
    if bound < 4:
        raise ValueError("bound must be at least 4 to reach every solution")
    solutions = solve_bounded(DENOMINATOR_FORM, {1, -1, 3, -3}, bound)
    points = []
    for sol in solutions:
        if sol.value < 0:
            continue  # (-m, -n) carries the positive value and the same y
        t = parametrization_t(sol.m, sol.n)
        if t.denominator != 1:
            continue
        t_int = int(t)
        points.append(IntegralPoint(sol.m, sol.n, t_int, t_int ** 3))
    return sorted(points, key=lambda p: (p.n, p.m))


# -------------------- binary quadratic forms and class numbers --------------------

class QuadForm(NamedTuple):
    """Positive definite integral form a*x^2 + b*x*y + c*y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    @property
    def is_reduced(self) -> bool:
        if self.a <= 0:
            return False
        if not (abs(self.b) <= self.a <= self.c):
            return False
        if abs(self.b) == self.a or self.a == self.c:
            return self.b >= 0
        return True


def _validate_discriminant(d: int):
    if d >= 0:
        raise ValueError("discriminant must be negative")
    if d % 4 not in (0, 1):
        raise ValueError("discriminant must be 0 or 1 mod 4")


def reduced_forms(d: int, b_limit: int | None = None) -> list[QuadForm]:
    """All primitive reduced forms of discriminant d < 0.

    Enumerates b with b = d (mod 2) up to sqrt(|d|/3) (the reduction bound;
    ``b_limit`` can widen the window, which must not change the result), then
    splits b^2 - d = 4ac over divisor pairs with b <= a <= c.  Imprimitive
    forms (gcd(a, b, c) > 1) do not represent classes and are dropped.
    """
    _validate_discriminant(d)
    if b_limit is None:
        b_limit = math.isqrt(-d // 3)
    forms = []
    for b in range(abs(d) % 2, b_limit + 1, 2):
        quarter = (b * b - d) // 4
        a = max(b, 1)
        while a * a <= quarter:
            if quarter % a == 0:
                c = quarter // a
                form = QuadForm(a, b, c)
                if form.is_primitive:
                    forms.append(form)
                    if 0 < b < a < c:
                        forms.append(QuadForm(a, -b, c))
            a += 1
    assert all(f.is_reduced and f.discriminant == d for f in forms)
    return sorted(forms)


def class_number(d: int) -> int:
    """h(d): the number of reduced forms of discriminant d."""
    return len(reduced_forms(d))


def _has_second_form(d: int) -> bool:
    """Early-exit test for h(d) > 1, same enumeration as reduced_forms."""
    count = 0
    for b in range(abs(d) % 2, math.isqrt(-d // 3) + 1, 2):
        quarter = (b * b - d) // 4
        a = max(b, 1)
        while a * a <= quarter:
            if quarter % a == 0 and QuadForm(a, b, quarter // a).is_primitive:
                count += 2 if 0 < b < a < quarter // a else 1
                if count > 1:
                    return True
            a += 1
    return False


class ClassNumberOneLists(NamedTuple):
    all_discriminants: tuple[int, ...]
    three_inert: tuple[int, ...]


@lru_cache(maxsize=None)
def class_number_one_list(bound: int) -> ClassNumberOneLists:
    """Discriminants d with |d| <= bound and h(d) = 1, plus the sublist where
    3 is inert (kronecker(d, 3) = -1); the latter feeds the CM matching."""
    if bound < 163:
        raise ValueError("bound must cover at least |d| = 163")
    ones = []
    for ad in range(3, bound + 1):
        d = -ad
        if d % 4 not in (0, 1):
            continue
        if not _has_second_form(d):
            ones.append(d)
    ones.sort(reverse=True)
    inert = tuple(d for d in ones if kronecker(d, 3) == -1)
    return ClassNumberOneLists(tuple(ones), inert)


# -------------------- CM j-invariants via the q-expansion --------------------

@lru_cache(maxsize=None)
def j_q_coefficients(order: int) -> tuple[int, ...]:
    """Integer coefficients c(-1..order) of j = 1/q + 744 + 196884 q + ...

    Computed exactly as the series of E4^3 / Delta: E4 = 1 + 240 sum
    sigma_3(k) q^k, and Delta/q is the 24th power of the Euler product,
    expanded by the pentagonal number recurrence and inverted over Z.
    """
    size = order + 2  # series length for q * j
    sigma3 = [0] * size
    for div in range(1, size):
        cube = div ** 3
        for mult in range(div, size, div):
            sigma3[mult] += cube
    e4 = [1] + [240 * sigma3[k] for k in range(1, size)]

    def series_mul(f: list[int], g: list[int]) -> list[int]:
        out = [0] * size
        for i, fi in enumerate(f):
            if not fi:
                continue
            for jdx in range(min(size - i, len(g))):
                out[i + jdx] += fi * g[jdx]
        return out

    e4_cubed = series_mul(series_mul(e4, e4), e4)

    euler = [0] * size
    euler[0] = 1
    k = 1
    while True:
        p1 = k * (3 * k - 1) // 2
        p2 = k * (3 * k + 1) // 2
        if p1 >= size and p2 >= size:
            break
        sign = -1 if k % 2 else 1
        if p1 < size:
            euler[p1] += sign
        if p2 < size:
            euler[p2] += sign
        k += 1
    # 24th power of the Euler product by binary exponentiation: 24 = 16 + 8
    sq = series_mul(euler, euler)                    # ^2
    sq4 = series_mul(sq, sq)                         # ^4
    sq8 = series_mul(sq4, sq4)                       # ^8
    sq16 = series_mul(sq8, sq8)                      # ^16
    delta24 = series_mul(sq16, sq8)                  # ^24

    inv = [0] * size
    inv[0] = 1
    for idx in range(1, size):
        acc = 0
        for k2 in range(1, idx + 1):
            acc += delta24[k2] * inv[idx - k2]
        inv[idx] = -acc
    qj = series_mul(e4_cubed, inv)
    return tuple(qj[: order + 2])  # qj[i] = c(i - 1)


def _series_tail_bound(order: int, qabs: mpmath.mpf) -> mpmath.mpf:
    """Rigorous bound for |sum_{k > order} c(k) q^k|.

    Every coefficient is positive, so the Cauchy bound c(k) <= M(x) / x^(k+1)
    holds for any 0 < x < 1, with M(x) >= x * j(x).  We take x = 1/16 and
    elementary overestimates: E4(x) <= 1 + 289 * x(1+4x+x^2)/(1-x)^4 (from
    sigma_3(k) <= 1.2021 k^3) and the Euler-product inverse at x is at most
    exp(4 pi^2 / ln(1/x)).  Requires qabs < 1/16, true for every |d| >= 3.
    """
    x = mp.mpf(1) / 16
    if qabs >= x:
        return mp.inf
    e4_bound = 1 + 289 * (x * (1 + 4 * x + x * x)) / (1 - x) ** 4
    euler_inv_bound = mp.exp(4 * mp.pi ** 2 / mp.log(1 / x))
    m_bound = e4_bound ** 3 * euler_inv_bound
    ratio = qabs / x
    return (m_bound / x) * ratio ** (order + 1) / (1 - ratio)


_MAX_SERIES_ORDER = 200


def cm_j(d: int, digits: int = 40, tolerance: float = CM_TOLERANCE) -> mpmath.mpf:
    """j of the CM point of discriminant d, to within ``tolerance``.

    Evaluates the q-expansion at tau = (-b0 + sqrt(d))/2, b0 = d mod 2, where
    q is real with |q| = exp(-pi sqrt(|d|)).  The truncation order is chosen
    at runtime so a rigorous tail bound falls below the tolerance; if the
    bound (or the round-off allowance) cannot be met, PrecisionError is raised
    rather than returning a silently degraded value.
    """
    _validate_discriminant(d)
    if digits < 30:
        raise ValueError("digits must be at least 30 for the matching window")
    with mp.workdps(digits + 15):
        root = mp.sqrt(-d)
        qabs = mp.exp(-mp.pi * root)
        order = 4
        while order <= _MAX_SERIES_ORDER and _series_tail_bound(order, qabs) >= tolerance / 2:
            order += 4
        tail = _series_tail_bound(order, qabs)
        roundoff = (1 / qabs) * mp.mpf(10) ** (-(digits + 10))
        if tail + roundoff >= tolerance:
            raise PrecisionError(
                f"cannot reach tolerance {tolerance} for d={d} at {digits} digits "
                f"(tail bound {mp.nstr(tail, 5)}, round-off {mp.nstr(roundoff, 5)})")
        q = -qabs if d % 2 else qabs
        coeffs = j_q_coefficients(order)
        acc = mp.mpf(0)
        for c in reversed(coeffs[1:]):   # c(order) down to c(0)
            acc = acc * q + c
        value = acc + 1 / q
        return +value


def match_point(point: IntegralPoint, disc_bound: int = 10_000,
                digits: int = 40) -> int | None:
    """The unique 3-inert class-number-one discriminant whose CM j-invariant
    is within the matching window of the point's j, or None."""
    matches = [d for d in class_number_one_list(disc_bound).three_inert
               if abs(cm_j(d, digits) - point.j) < MATCH_WINDOW]
    if len(matches) > 1:
        raise AssertionError(f"j = {point.j} matched several discriminants: {matches}")
    return matches[0] if matches else None


def build_table(bound: int = 10_000, digits: int = 40,
                disc_bound: int = 10_000) -> list[IntegralPoint]:
    """The full integral-point table: nine rows, matched discriminants filled,
    CM rows ordered by |d| and the non-CM row last.

    ``bound`` limits the Thue search for the points; ``disc_bound`` limits the
    class-number-one scan the matching runs against.
    """
    rows = [replace(p, matched_discriminant=match_point(p, disc_bound, digits))
            for p in integral_points(bound)]
    return sorted(rows, key=lambda p: (p.matched_discriminant is None,
                                       -(p.matched_discriminant or 0)))


# -------------------- the inertness criterion --------------------

def is_fundamental(d: int) -> bool:
    """Whether d is the discriminant of an imaginary quadratic field."""
    _validate_discriminant(d)

    def squarefree(x: int) -> bool:
        return all(e == 1 for e in factorize(x).values())

    if d % 4 == 1:
        return squarefree(-d)
    quarter = d // 4
    return quarter % 4 in (2, 3) and squarefree(-quarter)


def inertness_criterion(d: int) -> CheckReport:
    """Check that every prime below (1 + |d|)/4 not dividing d is inert.

    For a class-number-one field discriminant this must hold; it is the fact
    that rules out a tenth field once the integral points are known.
    """
    if not is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    report = CheckReport(f"small primes inert for d = {d}")
    threshold = Fraction(1 + abs(d), 4)
    tested = 0
    for p in primes_upto(int(threshold)):
        if p >= threshold or d % p == 0:
            continue
        tested += 1
        symbol = kronecker(d, p)
        report.add(f"p={p}", symbol == -1,
                   f"kronecker({d}, {p}) = {symbol}", witness=symbol)
    if tested == 0:
        report.add("vacuous", True, f"no prime below {threshold} to test")
    return report

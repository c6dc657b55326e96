"""Bounded solution of the cubic Thue equations behind the integral points.

The denominator of the degree-9 parametrization is the cube of the binary
cubic form m^3 - 3mn^2 + n^3; an integral value of t forces that form to take
one of the values +-1, +-3 (the mod-9 obstruction closes the remaining prime).
This module evaluates binary cubic forms exactly, enumerates every coprime
solution with |m|, |n| <= bound, and packages the obstruction checks.

Completeness of the solution lists is certified only inside the search bound;
the solver exists so the bound can be pushed far enough (10^5 in seconds) that
bound-stability is observable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, NamedTuple

from .exactalg import QQ, Poly, resultant
from .report import CheckReport


class BinaryCubicForm(NamedTuple):
    """a*X^3 + b*X^2*Y + c*X*Y^2 + d*Y^3 with integer coefficients."""

    a: int
    b: int
    c: int
    d: int

    def value(self, m: int, n: int) -> int:
        return ((self.a * m + self.b * n) * m + self.c * n * n) * m + self.d * n ** 3


class ThueSolution(NamedTuple):
    m: int
    n: int
    value: int


#: The form whose cube divides the parametrization denominator.
DENOMINATOR_FORM = BinaryCubicForm(1, 0, -3, 1)


def form_value(form: BinaryCubicForm, m: int, n: int) -> int:
    """Exact value of the form at (m, n)."""
    return form.value(m, n)


def parametrization_t(m: int, n: int) -> Fraction:
    """Exact t at y = m/n: the homogenized degree-9 parametrization value.

    Valid for any coprime pair including (1, 0), which encodes y at infinity.
    """
    f1 = (m + 3 * n) * m * m - 6 * m * n * n + 4 * n ** 3
    f2 = (m + 3 * n) * m * m + 3 * m * n * n + 4 * n ** 3
    f3 = (5 * m - 3 * n) * m * m - 3 * m * n * n + 2 * n ** 3
    den = DENOMINATOR_FORM.value(m, n)
    if den == 0:
        raise ZeroDivisionError("the pair lies over a cusp")
    return Fraction(-3 * f1 * f2 * f3, den ** 3)


def _isqrt_ceil(x: int) -> int:
    r = math.isqrt(x)
    return r if r * r == x else r + 1


def _icbrt_ceil(x: int) -> int:
    if x <= 0:
        return 0
    r = round(x ** (1.0 / 3.0))
    while r ** 3 > x:
        r -= 1
    while (r + 1) ** 3 <= x:
        r += 1
    return r if r ** 3 == x else r + 1


def _root_clip(a: int, b: int, c: int, dmax: int) -> int:
    """Upper bound for |m| over all real roots of a*m^3 + b*m^2 + c*m + d0
    with |d0| <= dmax, from the leading-coefficient root bound."""
    aa = abs(a)
    q1 = abs(b) // aa + 1
    q2 = _isqrt_ceil(abs(c) // aa + 1)
    q3 = _icbrt_ceil(dmax // aa + 1)
    return 2 * max(q1, q2, q3) + 2


# Half-width of the brute-scan window wrapped around each critical point; the
# integer proxies below are within 2 of the true critical points, so width 3
# leaves every remaining segment strictly monotone.
_CRIT_WINDOW = 3


def _band_hits(a: int, b: int, c: int, d: int, m_lo: int, m_hi: int,
               lo: int, hi: int) -> Iterator[tuple[int, int]]:
    """All (m, p(m)) with lo <= p(m) <= hi and m_lo <= m <= m_hi, for the
    integer polynomial p(m) = a*m^3 + b*m^2 + c*m + d.

    Splits [m_lo, m_hi] at integer proxies for the critical points of p; the
    windows around the proxies are scanned directly and the complementary
    segments, where p is strictly monotone, are binary searched for the band.
    """
    if m_lo > m_hi:
        return

    def p(m: int) -> int:
        return ((a * m + b) * m + c) * m + d

    if a == 0 and b == 0 and c == 0:
        if lo <= d <= hi:
            for m in range(m_lo, m_hi + 1):
                yield (m, d)
        return

    crit: list[int] = []
    if a != 0:
        e = b * b - 3 * a * c
        if e >= 0:
            s = math.isqrt(e)
            crit = [(-b - s) // (3 * a), (-b + s) // (3 * a)]
    elif b != 0:
        crit = [(-c) // (2 * b)]

    windows: list[tuple[int, int]] = []
    for cpt in sorted(set(crit)):
        w_lo = max(m_lo, cpt - _CRIT_WINDOW)
        w_hi = min(m_hi, cpt + _CRIT_WINDOW)
        if w_lo > w_hi:
            continue
        if windows and w_lo <= windows[-1][1] + 1:
            windows[-1] = (windows[-1][0], max(windows[-1][1], w_hi))
        else:
            windows.append((w_lo, w_hi))

    for w_lo, w_hi in windows:
        for m in range(w_lo, w_hi + 1):
            v = p(m)
            if lo <= v <= hi:
                yield (m, v)

    segments: list[tuple[int, int]] = []
    cursor = m_lo
    for w_lo, w_hi in windows:
        if cursor <= w_lo - 1:
            segments.append((cursor, w_lo - 1))
        cursor = w_hi + 1
    if cursor <= m_hi:
        segments.append((cursor, m_hi))

    for s_lo, s_hi in segments:
        if s_lo == s_hi:
            v = p(s_lo)
            if lo <= v <= hi:
                yield (s_lo, v)
            continue
        ascending = p(s_lo) <= p(s_hi)
        if ascending:
            if p(s_hi) < lo or p(s_lo) > hi:
                continue
            left, right = s_lo, s_hi
            while left < right:
                mid = (left + right) // 2
                if p(mid) >= lo:
                    right = mid
                else:
                    left = mid + 1
            m = left
            while m <= s_hi:
                v = p(m)
                if v > hi:
                    break
                yield (m, v)
                m += 1
        else:
            if p(s_lo) < lo or p(s_hi) > hi:
                continue
            left, right = s_lo, s_hi
            while left < right:
                mid = (left + right) // 2
                if p(mid) <= hi:
                    right = mid
                else:
                    left = mid + 1
            m = left
            while m <= s_hi:
                v = p(m)
                if v < lo:
                    break
                yield (m, v)
                m += 1


def solve_bounded(form: BinaryCubicForm, targets: set[int], bound: int,
                  n_range: tuple[int, int] | None = None) -> list[ThueSolution]:
    """All coprime (m, n) with |m|, |n| <= bound and form value in targets.

    Iterates n >= 0 and recovers n < 0 through form(-m, -n) = -form(m, n);
    both of (m, n) and (-m, -n) are reported when both values hit targets.
    ``n_range`` restricts the base n >= 0 loop, so disjoint ranges can run on
    independent workers and merge into exactly the single-run result.
    """
    target_set = frozenset(int(t) for t in targets)
    if not target_set:
        raise ValueError("targets must be non-empty")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    mirrored = target_set | {-t for t in target_set}
    band_lo, band_hi = min(mirrored), max(mirrored)
    vmax = max(abs(band_lo), abs(band_hi))
    n_lo, n_hi = n_range if n_range is not None else (0, bound)
    if n_lo < 0 or n_hi > bound:
        raise ValueError("n_range must lie inside [0, bound]")
    found: set[ThueSolution] = set()
    for n in range(n_lo, n_hi + 1):
        bb = form.b * n
        cc = form.c * n * n
        dd = form.d * n ** 3
        clip = bound
        if form.a != 0:
            clip = min(bound, _root_clip(form.a, bb, cc, abs(dd) + vmax))
        for m, v in _band_hits(form.a, bb, cc, dd, -clip, clip, band_lo, band_hi):
            if math.gcd(m, n) != 1:
                continue
            if v in target_set:
                found.add(ThueSolution(m, n, v))
            if n > 0 and -v in target_set:
                found.add(ThueSolution(-m, -n, -v))
    return sorted(found, key=lambda s: (s.n, s.m))


def mod9_obstruction() -> CheckReport:
    """The congruence and resultant facts that force the form values +-1, +-3."""
    report = CheckReport("mod-9 obstruction")

    cubic = lambda y: y ** 3 - 3 * y + 1
    residues = {y: cubic(y) % 9 for y in range(9)}
    report.add("no-root-mod-9", all(v != 0 for v in residues.values()),
               "y^3 - 3y + 1 has no root mod 9", witness=residues)

    mod3 = [y for y in range(3) if cubic(y) % 3 == 0]
    report.add("root-mod-3-exists", bool(mod3),
               "y^3 - 3y + 1 does have a root mod 3, so the mod-9 step is "
               "what rules the prime 3 out", witness={"roots_mod_3": mod3})

    y = Poly.x(QQ)
    numerator = (y**3 + 3 * y**2 - 6 * y + 4) * (y**3 + 3 * y**2 + 3 * y + 4) \
        * (5 * y**3 - 3 * y**2 - 3 * y + 2)
    res = resultant(numerator, y**3 - 3 * y + 1)
    report.add("resultant-power-of-3", res == 3 ** 15,
               "the numerator/denominator resultant is 3^15, so any prime "
               "dividing both evaluated parts is 3", witness={"resultant": int(res)})
    return report

"""Elliptic curves over Q and their reductions mod p.

Standard Weierstrass invariants, exact point counting over prime fields, the
a_p table of the exceptional non-CM curve attached to the ninth integral
point, and the mod-9 congruence its inert primes satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .exactalg import is_prime, kronecker, primes_upto


class WeierstrassCurve(NamedTuple):
    """y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 with integer a_i."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int


#: The curve with j = 1117947^3 carrying the ninth integral point.
EXCEPTIONAL_CURVE = WeierstrassCurve(1, -1, 1, -408865825, -3182038133498)

#: The quadratic field whose inert primes satisfy the mod-9 congruence.
EXCEPTIONAL_DISCRIMINANT = -3511


class SingularCurveError(ValueError):
    """The Weierstrass equation has vanishing discriminant."""


@dataclass(frozen=True)
class CurveInvariants:
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    disc: int
    j: Fraction

    def as_dict(self) -> dict:
        return {"b2": self.b2, "b4": self.b4, "b6": self.b6, "b8": self.b8,
                "c4": self.c4, "c6": self.c6, "disc": self.disc,
                "j_den": self.j.denominator, "j_num": self.j.numerator}


def invariants(curve: WeierstrassCurve) -> CurveInvariants:
    """b2, b4, b6, b8, c4, c6, discriminant and j, all exact."""
    a1, a2, a3, a4, a6 = curve
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    assert 4 * b8 == b2 * b6 - b4 * b4
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    if disc == 0:
        raise SingularCurveError(f"{curve} is singular")
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc, Fraction(c4 ** 3, disc))


def count_points_naive(curve: WeierstrassCurve, p: int) -> int:
    """|E(F_p)| by scanning all (x, y) pairs; the small-p oracle."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a1, a2, a3, a4, a6 = (a % p for a in curve)
    count = 1  # the point at infinity
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y) % p == rhs:
                count += 1
    return count


def count_points(curve: WeierstrassCurve, p: int) -> int:
    """|E(F_p)| including infinity.

    For p <= 3 the general equation is scanned directly (completing the square
    or cube needs 2 and 3 invertible).  For p >= 5 the curve is taken to short
    form y^2 = x^3 - 27*c4*x - 54*c6 and the count is p + 1 plus the sum of
    quadratic characters of the right-hand side, O(p) with a squares table.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p <= 3:
        return count_points_naive(curve, p)
    inv = invariants(curve)
    a = (-27 * inv.c4) % p
    b = (-54 * inv.c6) % p
    squares = set()
    for r in range(1, p):
        squares.add(r * r % p)
        if 2 * len(squares) >= p - 1:
            break
    count = p + 1
    for x in range(p):
        v = (x * x * x + a * x + b) % p
        if v == 0:
            continue
        count += 1 if v in squares else -1
    return count


class ApRecord(NamedTuple):
    p: int
    count: int
    a_p: int
    inert: bool
    good: bool

    def as_dict(self) -> dict:
        return {"a_p": self.a_p, "count": self.count, "good": self.good,
                "inert": self.inert, "p": self.p}


def ap_table(curve: WeierstrassCurve, pmax: int,
             inert_disc: int = EXCEPTIONAL_DISCRIMINANT) -> list[ApRecord]:
    """Frobenius traces a_p = p + 1 - |E(F_p)| for all primes p <= pmax.

    Bad primes (p dividing the discriminant) are flagged good=False; their raw
    solution counts are still recorded but carry no trace claim.  For good
    primes the Hasse bound a_p^2 <= 4p is asserted outright.  The inert flag
    tracks kronecker(inert_disc, p) = -1.
    """
    if pmax < 2:
        raise ValueError("pmax must be at least 2")
    disc = invariants(curve).disc
    records = []
    for p in primes_upto(pmax):
        count = count_points(curve, p)
        a_p = p + 1 - count
        good = disc % p != 0
        if good and a_p * a_p > 4 * p:
            raise AssertionError(f"Hasse bound violated at p={p}: a_p={a_p}")
        records.append(ApRecord(p, count, a_p, kronecker(inert_disc, p) == -1, good))
    return records


def inert_congruence_failures(records: list[ApRecord], modulus: int = 9) -> list[ApRecord]:
    """Good inert primes whose trace is not divisible by the modulus."""
    return [r for r in records if r.good and r.inert and r.a_p % modulus != 0]

"""Exact arithmetic kernel.

Arbitrary-precision integers and rationals (stdlib ``int``/``Fraction``), the
quadratic field Q(sqrt(-3)), univariate polynomials and normalized rational
functions over either field, resultants, squarefree structure, and small
number-theoretic helpers (Kronecker symbol, primes, factorization).

Every value is immutable after construction and every operation is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable

Rational = Fraction


# -------------------- number-theoretic helpers --------------------

def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for every n != 0.

    Extends the Jacobi symbol by (a|2) = 0, 1, -1 for a even, a = +-1 (mod 8),
    a = +-3 (mod 8), and (a|-1) = sign of a.  Completely multiplicative in n.
    """
    if n == 0:
        raise ValueError("kronecker symbol is undefined for n = 0")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_prime(n: int) -> bool:
    """Trial-division primality, adequate for the desk-scale inputs used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_upto(limit: int) -> list[int]:
    """All primes <= limit, by sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n > 0 by trial division."""
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p = 3 if p == 2 else p + 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# -------------------- the field Q(sqrt(-3)) --------------------

class QSqrt3:
    """Element a + b*sqrt(-3) with rational a, b.

    The ring involution ``conjugate`` sends sqrt(-3) to -sqrt(-3); the cube
    root of unity RHO = (-1 + sqrt(-3))/2 satisfies RHO**3 == 1.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: Any = 0, b: Any = 0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name: str, value: Any):
        raise AttributeError("QSqrt3 values are immutable")

    @staticmethod
    def _coerce(x: Any) -> "QSqrt3":
        if isinstance(x, QSqrt3):
            return x
        if isinstance(x, (int, Fraction)):
            return QSqrt3(x)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Any) -> "QSqrt3":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QSqrt3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "QSqrt3":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QSqrt3(self.a - other.a, self.b - other.b)

    def __rsub__(self, other: Any) -> "QSqrt3":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: Any) -> "QSqrt3":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # (a + b s)(c + d s) with s^2 = -3
        return QSqrt3(self.a * other.a - 3 * self.b * other.b,
                      self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def inverse(self) -> "QSqrt3":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt(-3))")
        return QSqrt3(self.a / n, -self.b / n)

    def __truediv__(self, other: Any) -> "QSqrt3":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "QSqrt3":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "QSqrt3":
        if k < 0:
            return self.inverse() ** (-k)
        out = QSqrt3(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self) -> "QSqrt3":
        return QSqrt3(-self.a, -self.b)

    def conjugate(self) -> "QSqrt3":
        return QSqrt3(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + 3 * self.b * self.b

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational_part(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self!r} has a nonzero sqrt(-3) part")
        return self.a

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QSqrt3):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"QSqrt3({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*s3"
        return f"{self.a} + {self.b}*s3"


SQRT_M3 = QSqrt3(0, 1)
RHO = QSqrt3(Fraction(-1, 2), Fraction(1, 2))      # primitive cube root of unity
RHO_INV = RHO.conjugate()                           # RHO**2 == RHO**-1


# -------------------- coefficient fields --------------------

@dataclass(frozen=True)
class Field:
    """Minimal field descriptor used by Poly and RationalFunction."""

    name: str
    zero: Any
    one: Any
    coerce: Callable[[Any], Any]

    def __repr__(self) -> str:
        return f"Field({self.name})"


def _coerce_qsqrt3(x: Any) -> QSqrt3:
    return x if isinstance(x, QSqrt3) else QSqrt3(x)


QQ = Field("Q", Fraction(0), Fraction(1), Fraction)
QS3 = Field("Q(sqrt-3)", QSqrt3(0), QSqrt3(1), _coerce_qsqrt3)


# -------------------- polynomials --------------------

class Poly:
    """Univariate polynomial over a Field, coefficients stored low degree first.

    The zero polynomial has an empty coefficient tuple and degree -1; for any
    other polynomial the top coefficient is nonzero.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[Any] = ()):
        cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: Any):
        raise AttributeError("Poly values are immutable")

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: Field, c: Any) -> "Poly":
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Any:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _wrap(self, coeffs: Iterable[Any]) -> "Poly":
        return Poly(self.field, coeffs)

    def _as_poly(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise TypeError("polynomials over different fields")
            return other
        return Poly.constant(self.field, other)

    def __add__(self, other: Any) -> "Poly":
        other = self._as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.field.zero
        a = list(self.coeffs) + [zero] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = a[i] + c
        return self._wrap(a)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Poly":
        return self + (-self._as_poly(other))

    def __rsub__(self, other: Any) -> "Poly":
        return self._as_poly(other) - self

    def __neg__(self) -> "Poly":
        return self._wrap([-c for c in self.coeffs])

    def __mul__(self, other: Any) -> "Poly":
        other = self._as_poly(other)
        if self.is_zero or other.is_zero:
            return self._wrap(())
        zero = self.field.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if not ci:
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] = out[i + j] + ci * cj
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Poly.constant(self.field, self.field.one)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = self._as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [self.field.zero] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        rem = list(self.coeffs)
        dlc = other.lc
        dd = other.degree
        while len(rem) - 1 >= dd and rem:
            c = rem[-1] / dlc
            shift = len(rem) - 1 - dd
            q[shift] = c
            for i, oc in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * oc
            while rem and not rem[-1]:
                rem.pop()
        return self._wrap(q), self._wrap(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        inv = self.field.one / self.lc
        return self._wrap([c * inv for c in self.coeffs])

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor (monic f for gcd(f, 0))."""
        a, b = self, self._as_poly(other)
        if a.is_zero and b.is_zero:
            raise ValueError("gcd(0, 0) is undefined")
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Poly":
        return self._wrap([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: Any) -> Any:
        x = self.field.coerce(x)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        other = self._as_poly(other)
        acc = Poly(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def map(self, func: Callable[[Any], Any], field: Field | None = None) -> "Poly":
        return Poly(field or self.field, [func(c) for c in self.coeffs])

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field.name, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"({c})*x")
            else:
                terms.append(f"({c})*x^{i}")
        return "Poly(" + " + ".join(terms) + ")"


def poly(field: Field, *coeffs: Any) -> Poly:
    """Convenience constructor, coefficients low degree first."""
    return Poly(field, coeffs)


# -------------------- resultant and squarefree structure --------------------

def _det(field: Field, rows: list[list[Any]]) -> Any:
    """Determinant by Gaussian elimination with exact field arithmetic."""
    n = len(rows)
    m = [row[:] for row in rows]
    det = field.one
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            return field.zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        pv = m[col][col]
        det = det * pv
        inv = field.one / pv
        for r in range(col + 1, n):
            if not m[r][col]:
                continue
            factor = m[r][col] * inv
            for c in range(col, n):
                m[r][c] = m[r][c] - factor * m[col][c]
    return det


def resultant(f: Poly, g: Poly) -> Any:
    """Res(f, g) = lc(f)^deg(g) * product of g over the roots of f.

    Computed as the Sylvester determinant, which realizes exactly that sign
    convention.  Zero iff f and g share a root; resultant(f, f) = 0 for
    deg f >= 1.
    """
    if f.is_zero and g.is_zero:
        raise ValueError("resultant(0, 0) is undefined")
    if f.is_zero or g.is_zero:
        return f.field.zero
    m, n = f.degree, g.degree
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    field = f.field
    size = m + n
    zero = field.zero
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - i - len(fc)))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - i - len(gc)))
    return _det(field, rows)


def squarefree_profile(f: Poly) -> dict[int, int]:
    """Multiplicity profile of f over the algebraic closure.

    Returns {multiplicity: number of distinct roots of that multiplicity},
    counted with degrees, so sum(k * count_k) == deg f.  Uses the repeated
    gcd-with-derivative ladder (valid in characteristic zero).
    """
    if f.is_zero:
        raise ValueError("squarefree profile of the zero polynomial is undefined")
    if f.degree == 0:
        return {}
    rep = f.gcd(f.derivative())          # product of a_i^(i-1)
    current = (f // rep).monic()         # product of the distinct roots' factors
    out: dict[int, int] = {}
    k = 1
    while current.degree > 0:
        nxt = current.gcd(rep) if not rep.is_zero and rep.degree > 0 else Poly.constant(f.field, f.field.one)
        exact = current // nxt           # factors of multiplicity exactly k
        if exact.degree > 0:
            out[k] = exact.degree
        if nxt.degree > 0:
            rep = (rep // nxt).monic()
        current = nxt
        k += 1
    assert sum(mult * count for mult, count in out.items()) == f.degree
    return out


# -------------------- rational functions --------------------

class AtInfinity:
    """Singleton marker for the point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = AtInfinity()


class RationalFunction:
    """Quotient of polynomials in normal form: gcd(num, den) = 1, den monic.

    The normal form is canonical, so == on two independently built
    representations of the same function holds structurally.  A distinguished
    infinite value (den = 0) can arise from evaluation and composition; it is
    never produced by the public constructor.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.constant(num.field, num.field.one)
        if not isinstance(num, Poly) or not isinstance(den, Poly):
            raise TypeError("RationalFunction expects Poly numerator and denominator")
        if num.field is not den.field:
            raise TypeError("numerator and denominator over different fields")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        num, den = self._normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name: str, value: Any):
        raise AttributeError("RationalFunction values are immutable")

    @staticmethod
    def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
        if num.is_zero:
            return num, Poly.constant(den.field, den.field.one)
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        inv = den.field.one / den.lc
        return num * inv, den.monic()

    @classmethod
    def _make_infinite(cls, field: Field) -> "RationalFunction":
        rf = object.__new__(cls)
        object.__setattr__(rf, "num", Poly.constant(field, field.one))
        object.__setattr__(rf, "den", Poly(field, ()))
        return rf

    @classmethod
    def constant(cls, field: Field, value: Any) -> "RationalFunction":
        if value is INFINITY:
            return cls._make_infinite(field)
        return cls(Poly.constant(field, value))

    @classmethod
    def x(cls, field: Field) -> "RationalFunction":
        return cls(Poly.x(field))

    @property
    def field(self) -> Field:
        return self.num.field

    @property
    def is_infinite(self) -> bool:
        return self.den.is_zero

    @property
    def is_constant(self) -> bool:
        return self.is_infinite or (self.num.degree <= 0 and self.den.degree == 0)

    def constant_value(self) -> Any:
        if self.is_infinite:
            return INFINITY
        if not self.is_constant:
            raise ValueError("not a constant rational function")
        if self.num.is_zero:
            return self.field.zero
        return self.num.coeffs[0] / self.den.coeffs[0]

    @property
    def degree(self) -> int:
        """Degree as a map of the projective line: max(deg num, deg den)."""
        if self.is_infinite:
            return 0
        return max(self.num.degree, self.den.degree, 0)

    def _check_finite(self, *others: "RationalFunction"):
        for rf in (self,) + others:
            if rf.is_infinite:
                raise ZeroDivisionError("arithmetic with the infinite rational function")

    def _as_rf(self, other: Any) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(Poly.constant(self.field, other))

    def __add__(self, other: Any) -> "RationalFunction":
        other = self._as_rf(other)
        self._check_finite(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "RationalFunction":
        return self + (-self._as_rf(other))

    def __rsub__(self, other: Any) -> "RationalFunction":
        return self._as_rf(other) - self

    def __neg__(self) -> "RationalFunction":
        self._check_finite()
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other: Any) -> "RationalFunction":
        other = self._as_rf(other)
        self._check_finite(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "RationalFunction":
        other = self._as_rf(other)
        self._check_finite(other)
        if other.num.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Any) -> "RationalFunction":
        return self._as_rf(other) / self

    def __pow__(self, k: int) -> "RationalFunction":
        self._check_finite()
        if k < 0:
            return (RationalFunction(self.den, self.num)) ** (-k)
        return RationalFunction(self.num ** k, self.den ** k)

    def __call__(self, x: Any) -> Any:
        if self.is_infinite:
            return INFINITY
        if x is INFINITY:
            return self.at_infinity()
        nv = self.num(x)
        dv = self.den(x)
        if not dv:
            if not nv:
                raise ArithmeticError("0/0 after normalization, inconsistent state")
            return INFINITY
        return nv / dv

    def at_infinity(self) -> Any:
        """Value at infinity: leading-coefficient ratio when degrees agree."""
        if self.is_infinite:
            return INFINITY
        dn, dd = self.num.degree, self.den.degree
        if dn > dd:
            return INFINITY
        if dn < dd:
            return self.field.zero
        if self.num.is_zero:
            return self.field.zero
        return self.num.lc / self.den.lc

    def compose(self, other: "RationalFunction") -> "RationalFunction":
        """Normalized composite self(other); degrees multiply when both maps
        are non-constant.  Composing into a pole yields the infinite value."""
        if not isinstance(other, RationalFunction):
            other = self._as_rf(other)
        if self.is_infinite:
            return self
        if other.is_infinite:
            return RationalFunction.constant(self.field, self.at_infinity())
        if other.is_constant:
            return RationalFunction.constant(self.field, self(other.constant_value()))
        p, q = other.num, other.den
        d = max(self.num.degree, self.den.degree)
        pk = [Poly.constant(self.field, self.field.one)]
        qk = [Poly.constant(self.field, self.field.one)]
        for _ in range(d):
            pk.append(pk[-1] * p)
            qk.append(qk[-1] * q)
        zero = Poly(self.field, ())
        num = zero
        for i, c in enumerate(self.num.coeffs):
            num = num + pk[i] * qk[d - i] * c
        den = zero
        for i, c in enumerate(self.den.coeffs):
            den = den + pk[i] * qk[d - i] * c
        if den.is_zero:
            rf = RationalFunction._make_infinite(self.field)
            return rf
        return RationalFunction(num, den)

    def map_coefficients(self, func: Callable[[Any], Any],
                         field: Field | None = None) -> "RationalFunction":
        target = field or self.field
        if self.is_infinite:
            return RationalFunction._make_infinite(target)
        return RationalFunction(self.num.map(func, target), self.den.map(func, target))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.is_infinite:
            return "RationalFunction(INFINITY)"
        return f"RationalFunction({self.num!r} / {self.den!r})"


def ratfunc_compose(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    """Normalized composite f(g)."""
    return f.compose(g)

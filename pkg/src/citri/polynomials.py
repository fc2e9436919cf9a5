"""Exact polynomial arithmetic used throughout the package.

Two small polynomial types, both immutable and exact:

* ``QPoly`` -- dense integer-coefficient polynomials in the deformation
  variable q.  All counting results (T_2(n;q), P_n(q), the classical
  q-analogs, Hankel determinants) live here.
* ``NPoly`` -- polynomials in the palette size n with exact rational
  coefficients, used for coefficient fits and the moment/cumulant
  transform.

Everything is plain Python integers / fractions; there is no floating
point anywhere except the explicit ``eval_float`` helpers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


def _trim(coeffs: Iterable[int]) -> tuple:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class QPoly:
    """Dense polynomial over the integers, coefficients low-to-high.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def zero(cls) -> "QPoly":
        return cls(())

    @classmethod
    def one(cls) -> "QPoly":
        return cls((1,))

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "QPoly":
        return cls((0,) * power + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)})"

    def coefficient(self, power: int) -> int:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    def __add__(self, other: "QPoly") -> "QPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    def __sub__(self, other: "QPoly") -> "QPoly":
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return QPoly(out)

    def __neg__(self) -> "QPoly":
        return QPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return QPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, QPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return QPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def shift(self, power: int) -> "QPoly":
        """Multiply by q**power."""
        if self.is_zero():
            return self
        return QPoly((0,) * power + self.coeffs)

    def exact_div_int(self, d: int) -> "QPoly":
        """Divide every coefficient by d; raise if any division is inexact."""
        if d == 0:
            raise ZeroDivisionError("division of polynomial by zero")
        out = []
        for c in self.coeffs:
            q, r = divmod(c, d)
            if r:
                raise ExactDivisionError(f"coefficient {c} not divisible by {d}")
            out.append(q)
        return QPoly(out)

    def exact_div(self, other: "QPoly") -> "QPoly":
        """Exact polynomial division over the integers.

        Raises ExactDivisionError if other does not divide self exactly
        (including when a leading-coefficient division is inexact).
        """
        if other.is_zero():
            raise ZeroDivisionError("division of polynomial by zero polynomial")
        if self.is_zero():
            return QPoly.zero()
        rem = list(self.coeffs)
        dn = other.coeffs
        dd = len(dn) - 1
        lead = dn[-1]
        qd = len(rem) - 1 - dd
        if qd < 0:
            raise ExactDivisionError("degree of divisor exceeds degree of dividend")
        quot = [0] * (qd + 1)
        for i in range(qd, -1, -1):
            c = rem[i + dd]
            if c == 0:
                continue
            q, r = divmod(c, lead)
            if r:
                raise ExactDivisionError("leading coefficient division inexact")
            quot[i] = q
            for j, d in enumerate(dn):
                rem[i + j] -= q * d
        if any(rem):
            raise ExactDivisionError("nonzero remainder in exact polynomial division")
        return QPoly(quot)

    def eval_int(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversed_coefficients(self) -> "QPoly":
        """The polynomial q**deg * p(1/q)."""
        return QPoly(tuple(reversed(self.coeffs)))


def is_palindromic(poly: QPoly, degree: int | None = None) -> bool:
    """True iff coeff[j] == coeff[d-j] for all j, with d the given degree.

    When degree is omitted, the polynomial's own degree is used.
    """
    if poly.is_zero():
        return True
    d = poly.degree if degree is None else degree
    if d < poly.degree:
        return False
    c = [poly.coefficient(j) for j in range(d + 1)]
    return c == c[::-1]


def is_log_concave(poly: QPoly) -> bool:
    """a_k^2 >= a_{k-1} a_{k+1} for every interior index of the support."""
    c = poly.coeffs
    for k in range(1, len(c) - 1):
        if c[k] * c[k] < c[k - 1] * c[k + 1]:
            return False
    return True


class NPoly:
    """Polynomial in one variable with exact Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        out = [Fraction(c) for c in coeffs]
        while out and out[-1] == 0:
            out.pop()
        self.coeffs = tuple(out)

    @classmethod
    def constant(cls, c) -> "NPoly":
        return cls((Fraction(c),))

    @classmethod
    def variable(cls) -> "NPoly":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, NPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"NPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other: "NPoly") -> "NPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return NPoly(out)

    def __sub__(self, other: "NPoly") -> "NPoly":
        out = list(self.coeffs) + [Fraction(0)] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return NPoly(out)

    def __neg__(self) -> "NPoly":
        return NPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, NPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return NPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return NPoly(out)

    __rmul__ = __mul__

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def eval(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @classmethod
    def interpolate(cls, points: Sequence[tuple]) -> "NPoly":
        """Lagrange interpolation through (x, y) points with distinct x."""
        xs = [Fraction(x) for x, _ in points]
        ys = [Fraction(y) for _, y in points]
        if len(set(xs)) != len(xs):
            raise ValueError("interpolation points must have distinct x values")
        result = cls(())
        for i, (xi, yi) in enumerate(zip(xs, ys)):
            basis = cls.constant(1)
            denom = Fraction(1)
            for j, xj in enumerate(xs):
                if i == j:
                    continue
                basis = basis * cls((-xj, Fraction(1)))
                denom *= xi - xj
            result = result + basis * (yi / denom)
        return result

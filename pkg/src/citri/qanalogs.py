"""Three classical q-analogs of the Genocchi medians.

* ``q_analog_randrianarivony``: weight each Dumont derangement by q to
  the power of its inversion number.
* ``q_analog_han_zeng``: the value at x = 1 of the polynomials defined
  by the q-Gandhi recurrence C_1 = 1,
  C_m(x, q) = (1 + qx) * D_q(x * C_{m-1}(x, q)), where
  D_q f(x) = (f(1 + qx) - f(x)) / (1 + (q - 1) x).
  All divisions are exact in the bivariate integer polynomial ring and
  are checked; an inexact division signals a transcription bug.
* ``q_analog_zeng_zhou``: the first entry of row 2n of a q-deformed
  Seidel triangle, with
  g(1,1) = g(2,1) = 1,
  odd rows  g(2i+1, j) = g(2i+1, j-1) + q^(j-1) g(2i, j), filled left
  to right for j = 1..i+1,
  even rows g(2i, j) = g(2i, j+1) + q^(j-1) g(2i-1, j), filled right to
  left for j = i..1.
  Out-of-range entries are zero; the index bounds are pinned by the
  published small-n values.

All three evaluate to the Genocchi median H_n at q = 1 and are pairwise
distinct from n = 3 on.
"""

from __future__ import annotations

from .dumont import dumont_derangements, inversions
from .polynomials import ExactDivisionError, QPoly


def q_analog_randrianarivony(n: int) -> QPoly:
    """Sum of q^inv(s) over Dumont derangements s in S_{2n}."""
    if n < 1:
        raise ValueError("n must be at least 1")
    coeffs = [0] * (n * (2 * n - 1) + 1)  # inv is at most C(2n, 2)
    for sigma in dumont_derangements(n):
        coeffs[inversions(sigma)] += 1
    return QPoly(coeffs)


# Bivariate polynomials in x with QPoly (in q) coefficients, low-to-high in x.

def _xq_trim(f: list) -> list:
    while f and f[-1].is_zero():
        f.pop()
    return f


def _xq_sub(f: list, g: list) -> list:
    out = [QPoly(p.coeffs) for p in f] + [QPoly.zero()] * max(0, len(g) - len(f))
    for i, p in enumerate(g):
        out[i] = out[i] - p
    return _xq_trim(out)


def _xq_mul_x(f: list) -> list:
    return [QPoly.zero()] + list(f) if f else []


def _xq_mul_one_plus_qx(f: list) -> list:
    """Multiply by (1 + qx)."""
    if not f:
        return []
    q = QPoly((0, 1))
    out = [QPoly(p.coeffs) for p in f] + [QPoly.zero()]
    for i, p in enumerate(f):
        out[i + 1] = out[i + 1] + p * q
    return _xq_trim(out)


def _xq_subst_one_plus_qx(f: list) -> list:
    """Compute f(1 + q*x) by Horner in x."""
    acc: list = []
    for coeff in reversed(f):
        acc = _xq_mul_one_plus_qx(acc)
        if not acc:
            acc = [QPoly.zero()]
        acc[0] = acc[0] + coeff
        acc = _xq_trim(acc)
    return acc


def _xq_div_exact(f: list) -> list:
    """Divide f by (1 + (q-1)x), requiring exactness in Z[q][x]."""
    if not f:
        return []
    qm1 = QPoly((-1, 1))
    rem = [QPoly(p.coeffs) for p in f]
    deg = len(rem) - 1
    if deg < 1:
        if rem and not rem[0].is_zero():
            raise ExactDivisionError("divisor degree exceeds dividend degree")
        return []
    quot = [QPoly.zero()] * deg
    for i in range(deg - 1, -1, -1):
        c = rem[i + 1]
        if c.is_zero():
            continue
        qc = c.exact_div(qm1)
        quot[i] = qc
        rem[i + 1] = rem[i + 1] - qc * qm1  # now zero
        rem[i] = rem[i] - qc
    if any(not p.is_zero() for p in rem):
        raise ExactDivisionError("inexact division in the q-Gandhi recurrence")
    return _xq_trim(quot)


def q_analog_han_zeng(n: int) -> QPoly:
    """The q-Gandhi polynomial value C_n(1, q)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    c: list = [QPoly.one()]  # C_1(x, q) = 1
    for _ in range(n - 1):
        xc = _xq_mul_x(c)
        delta = _xq_div_exact(_xq_sub(_xq_subst_one_plus_qx(xc), xc))
        c = _xq_mul_one_plus_qx(delta)
    total = QPoly.zero()
    for p in c:
        total = total + p
    return total


def q_analog_zeng_zhou(n: int) -> QPoly:
    """The q-Seidel triangle entry g(2n, 1)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    prev = [QPoly.one()]  # row 2: g(2,1) = 1; row 1 only feeds it trivially
    if n == 1:
        return prev[0]
    row_even = prev
    for i in range(1, n):
        # odd row 2i+1 with entries j = 1..i+1, left to right
        odd = [QPoly.zero()] * (i + 1)
        left = QPoly.zero()
        for j in range(1, i + 2):
            feed = row_even[j - 1] if j - 1 < len(row_even) else QPoly.zero()
            left = left + feed.shift(j - 1)
            odd[j - 1] = left
        # even row 2i+2 with entries j = 1..i+1, right to left
        even = [QPoly.zero()] * (i + 1)
        right = QPoly.zero()
        for j in range(i + 1, 0, -1):
            right = right + odd[j - 1].shift(j - 1)
            even[j - 1] = right
        row_even = even
    return row_even[0]

"""Coefficient fits, the moment-cumulant transform, and Hankel tests.

These consume the exact q-polynomials: fitting the growth of fixed
coefficients of P_n(q) as polynomials in n, transforming the normalized
moments k! a_k into cumulants, and probing the Stieltjes moment
property of n -> T2(n;q) through two families of Hankel determinants.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .polynomials import NPoly, QPoly


def fit_coefficient_polynomial(k: int, samples: Sequence[tuple]) -> NPoly:
    """Exact degree-at-most-k interpolation of samples (n, a_k(n)).

    At least k+1 samples with distinct n are required; extra samples
    must lie on the interpolated polynomial, otherwise the data is not
    polynomial of this degree and a ValueError is raised.
    """
    if len(samples) < k + 1:
        raise ValueError(f"need at least {k + 1} samples, got {len(samples)}")
    base = samples[: k + 1]
    poly = NPoly.interpolate(base)
    if poly.degree > k:
        raise ValueError("interpolation exceeded the requested degree")
    for x, y in samples[k + 1 :]:
        if poly.eval(x) != Fraction(y):
            raise ValueError(
                f"sample ({x}, {y}) inconsistent with degree-{k} interpolation"
            )
    return poly


def leading_coefficient_check(poly: NPoly, k: int) -> bool:
    """k! * poly has integer coefficients and leading coefficient 5^k."""
    if poly.degree != k:
        return False
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    scaled = [c * fact for c in poly.coeffs]
    if any(c.denominator != 1 for c in scaled):
        return False
    return scaled[-1] == 5**k


def moments_to_cumulants(moments: Sequence[NPoly]) -> list:
    """Cumulants from raw moments, exactly, in polynomial arithmetic.

    moments[0] must be the constant 1; moments[j] is the j-th raw
    moment.  Uses kappa_m = m_m - sum_{j<m} C(m-1, j-1) kappa_j m_{m-j}.
    Returns [kappa_1, ..., kappa_K].
    """
    if not moments or moments[0] != NPoly.constant(1):
        raise ValueError("moments[0] must be the constant polynomial 1")
    kappas: list = [None]
    for m in range(1, len(moments)):
        acc = moments[m]
        for j in range(1, m):
            acc = acc - kappas[j] * moments[m - j] * comb(m - 1, j - 1)
        kappas.append(acc)
    return kappas[1:]


def hankel_determinant(seq: Sequence[QPoly], k: int, offset: int) -> QPoly:
    """det of the k x k matrix with entries seq[i + j + offset], 0-based.

    Computed by fraction-free Bareiss elimination over the integer
    polynomial ring; every division is exact by construction.
    """
    if offset not in (0, 1):
        raise ValueError("offset must be 0 or 1")
    need = 2 * k - 1 + offset
    if len(seq) < need:
        raise ValueError(f"need {need} sequence entries, got {len(seq)}")
    m = [[seq[i + j + offset] for j in range(k)] for i in range(k)]
    sign = 1
    prev = QPoly.one()
    for p in range(k - 1):
        if m[p][p].is_zero():
            for r in range(p + 1, k):
                if not m[r][p].is_zero():
                    m[p], m[r] = m[r], m[p]
                    sign = -sign
                    break
            else:
                return QPoly.zero()
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                m[i][j] = (m[p][p] * m[i][j] - m[i][p] * m[p][j]).exact_div(prev)
            m[i][p] = QPoly.zero()
        prev = m[p][p]
    det = m[k - 1][k - 1]
    return det if sign == 1 else -det


def smallest_positive_root(
    poly: QPoly, tolerance: float = 1e-6, grid: int = 10_000
) -> float | None:
    """Smallest root of poly in (0, 1), or None if no sign change shows.

    Scans a uniform grid over (0, 1) for the first sign change (exact
    rational evaluation, so signs are certain), then bisects the
    bracketing interval down to the requested width.
    """
    if poly.is_zero():
        raise ValueError("polynomial must be nonzero")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    prev_x = None
    prev_sign = None
    bracket = None
    for j in range(1, grid + 1):
        x = Fraction(j, grid)
        if x >= 1:
            break
        v = poly.eval_fraction(x)
        if v == 0:
            return float(x)
        s = 1 if v > 0 else -1
        if prev_sign is not None and s != prev_sign:
            bracket = (prev_x, x)
            break
        prev_x, prev_sign = x, s
    if bracket is None:
        return None
    lo, hi = bracket
    flo = poly.eval_fraction(lo)
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        fmid = poly.eval_fraction(mid)
        if fmid == 0:
            return float(mid)
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return float((lo + hi) / 2)

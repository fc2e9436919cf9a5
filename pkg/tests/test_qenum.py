import itertools
import math

import pytest

from citri.dumont import count_dumont, inversions
from citri.enumeration import count_extensions, extensions
from citri.golden import load_table
from citri.polynomials import ExactDivisionError, QPoly, is_log_concave, is_palindromic
from citri.psi import psi_vertex_flat
from citri.qenum import (
    a1_check,
    exhaustive_q_polynomial,
    h_sigma_polynomial,
    low_coefficients,
    p_polynomial,
    t2_q_polynomial,
    t2_q_polynomial_enum,
    t2_q_polynomial_scan,
)


def test_published_polynomials():
    table = load_table("p_polynomials")["full"]
    for n in range(1, 8):
        assert list(p_polynomial(n).coeffs) == table[str(n)], n


def test_routes_agree():
    for n in range(1, 7):
        assert t2_q_polynomial_enum(n) == t2_q_polynomial_scan(n)


def test_exhaustive_oracle_depth2():
    for n in (1, 2, 3, 4):
        assert exhaustive_q_polynomial(2, n) == t2_q_polynomial(n)


def test_exhaustive_oracle_depth3_two_colors():
    poly = exhaustive_q_polynomial(3, 2)
    # depth-3, two colors: 8 triangles, degree C(2,2)*C(3,2)
    assert poly.eval_int(1) == 8
    assert poly.degree == 3
    assert is_palindromic(poly, 3)


def test_degree_palindromicity_divisibility():
    for n in range(1, 8):
        t2 = t2_q_polynomial(n)
        assert t2.degree == n * (n - 1) // 2
        assert is_palindromic(t2, n * (n - 1) // 2)
        t2.exact_div_int(1 << (n - 1))  # must not raise


def test_value_at_one():
    for n in range(1, 7):
        assert t2_q_polynomial(n).eval_int(1) == math.factorial(n) * count_dumont(n)


def test_canonical_count_benchmarks():
    want = load_table("genocchi")["canonical_counts"]
    for n_str, count in want.items():
        n = int(n_str)
        identity = tuple(range(1, n + 1))
        assert count_extensions(identity, n, 1, canonical_top=True) == count
        assert count == count_dumont(n) >> (n - 1)


def test_h_sigma_published():
    table = load_table("h_sigma")
    for n_str, want in table["identity"].items():
        n = int(n_str)
        assert list(h_sigma_polynomial(tuple(range(1, n + 1))).coeffs) == want
    for sigma_str, want in table["witnesses"].items():
        sigma = tuple(int(t) for t in sigma_str.split())
        assert list(h_sigma_polynomial(sigma).coeffs) == want


def test_h_sigma_partition_of_t2():
    for n in range(1, 6):
        total = QPoly.zero()
        for sigma in itertools.permutations(range(1, n + 1)):
            total = total + h_sigma_polynomial(sigma)
        assert total == t2_q_polynomial(n)


def test_h_sigma_complement_reverses():
    for n in range(1, 6):
        deg = n * (n - 1) // 2
        for sigma in itertools.permutations(range(1, n + 1)):
            bar = tuple(n + 1 - s for s in sigma)
            a = h_sigma_polynomial(sigma)
            b = h_sigma_polynomial(bar)
            padded = list(a.coeffs) + [0] * (deg + 1 - len(a.coeffs))
            assert list(b.coeffs) + [0] * (deg + 1 - len(b.coeffs)) == padded[::-1]


def test_h_sigma_value_at_one():
    for n in range(1, 6):
        for sigma in itertools.permutations(range(1, n + 1)):
            assert h_sigma_polynomial(sigma).eval_int(1) == count_dumont(n)


def test_h_sigma_divisibility():
    for sigma in itertools.permutations(range(1, 6)):
        h_sigma_polynomial(sigma).exact_div_int(1 << 4)


def test_psi_two_needs_inversions_two():
    # whenever the bottom row has at least two inversions, psi >= 2
    for n in (3, 4, 5):
        for sigma in itertools.permutations(range(1, n + 1)):
            if inversions(sigma) < 2:
                continue
            low = min(
                psi_vertex_flat(sigma, top, n, 1) for top in extensions(sigma, n, 1)
            )
            assert low >= 2, sigma


def test_psi_not_bounded_by_inversions():
    # inv = 3 but psi = 2 occurs at n = 3
    sigma = (3, 2, 1)
    assert inversions(sigma) == 3
    values = {psi_vertex_flat(sigma, top, 3, 1) for top in extensions(sigma, 3, 1)}
    assert 2 in values


def test_low_coefficients_match_full():
    for n in range(1, 10):
        deg = n * (n - 1) // 2
        kmax = min(6, deg + 1)
        want = [p_polynomial(n).coefficient(k) for k in range(kmax)]
        assert list(low_coefficients(n, kmax).values) == want
        assert list(low_coefficients(n, kmax, method="backtrack").values) == want


def test_low_coefficients_published_prefixes():
    table = load_table("p_polynomials")["prefixes"]
    for n_str, want in table.items():
        got = low_coefficients(int(n_str), len(want))
        assert list(got.values) == want
        assert not got.heuristic


def test_low_coefficients_kmax_beyond_degree():
    got = low_coefficients(2, 10)
    assert list(got.values) == [1, 1] + [0] * 8


def test_inv_cap_flags_heuristic():
    exact = low_coefficients(6, 4)
    capped = low_coefficients(6, 4, inv_cap=20)
    assert capped.heuristic and not exact.heuristic
    # a cap at the maximum inversion count loses nothing
    assert list(capped.values) == list(exact.values)
    tight = low_coefficients(6, 4, inv_cap=1)
    assert tight.values[0] == exact.values[0]  # identity bottom kept
    assert tight.values[3] < exact.values[3]


def test_a1_linear_law():
    for n in range(3, 13):
        assert a1_check(n)
    assert low_coefficients(3, 2).values[1] == 5
    assert low_coefficients(6, 2).values[1] == 20
    assert low_coefficients(12, 2).values[1] == 50


def test_log_concavity_published_range():
    for n in range(1, 10):
        assert is_log_concave(p_polynomial(n))


def test_log_concavity_counterexample_shape():
    assert is_palindromic(QPoly((1, 1, 0, 1)), 3)
    assert not is_log_concave(QPoly((1, 1, 0, 1)))
    assert is_log_concave(QPoly((1,)))
    assert is_palindromic(QPoly((1,)), 0)


def test_p8_published():
    table = load_table("p_polynomials")["full"]
    assert list(p_polynomial(8).coeffs) == table["8"]


def test_p9_published():
    table = load_table("p_polynomials")["full"]
    assert list(p_polynomial(9).coeffs) == table["9"]


@pytest.mark.slow
def test_routes_agree_eight():
    assert t2_q_polynomial_enum(8) == t2_q_polynomial_scan(8)


def test_enum_threads_equivalence():
    assert t2_q_polynomial_enum(6, threads=3) == t2_q_polynomial_enum(6)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        t2_q_polynomial(0)
    with pytest.raises(ValueError):
        low_coefficients(3, 0)
    with pytest.raises(ValueError):
        h_sigma_polynomial((1, 1, 2))
    with pytest.raises(ValueError):
        low_coefficients(3, 2, inv_cap=1, method="stream")

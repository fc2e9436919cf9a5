import pytest

from citri.dumont import count_dumont
from citri.golden import load_table
from citri.polynomials import ExactDivisionError, QPoly
from citri.qanalogs import (
    q_analog_han_zeng,
    q_analog_randrianarivony,
    q_analog_zeng_zhou,
)

PRODUCERS = {
    "R": q_analog_randrianarivony,
    "HZ": q_analog_han_zeng,
    "ZZ": q_analog_zeng_zhou,
}


@pytest.mark.parametrize("which", sorted(PRODUCERS))
def test_published_values(which):
    table = load_table("q_analogs")[which]
    for n_str, want in table.items():
        got = PRODUCERS[which](int(n_str))
        assert list(got.coeffs) == want, (which, n_str)


@pytest.mark.parametrize("which", sorted(PRODUCERS))
def test_value_at_one_is_genocchi_median(which):
    for n in range(1, 7):
        assert PRODUCERS[which](n).eval_int(1) == count_dumont(n)


def test_pairwise_distinct_from_three_on():
    for n in (3, 4):
        r = q_analog_randrianarivony(n)
        hz = q_analog_han_zeng(n)
        zz = q_analog_zeng_zhou(n)
        assert r != hz and hz != zz and r != zz


def test_distinct_from_conditioned_families_at_four():
    # even after clearing prefactors, none of the classical analogs
    # coincides with any bottom-row-conditioned polynomial at n = 4
    import itertools

    from citri.qenum import h_sigma_polynomial

    n = 4
    conditioned = set()
    for sigma in itertools.permutations(range(1, n + 1)):
        poly = h_sigma_polynomial(sigma)
        conditioned.add(poly.coeffs)
        conditioned.add(poly.exact_div_int(1 << (n - 1)).coeffs)
    for which, producer in PRODUCERS.items():
        poly = producer(n)
        assert poly.coeffs not in conditioned, which
        # also compare with the (1+q)-cleared forms where exact
        candidates = [poly]
        one_plus_q = QPoly((1, 1))
        while True:
            try:
                candidates.append(candidates[-1].exact_div(one_plus_q))
            except ExactDivisionError:
                break
        for cand in candidates:
            assert cand.coeffs not in conditioned, which


def test_rejects_nonpositive_n():
    for producer in PRODUCERS.values():
        with pytest.raises(ValueError):
            producer(0)

import itertools

import pytest

from citri.core import Row, Triangle, identity_staircase
from citri.enumeration import extensions
from citri.psi import (
    PsiContractError,
    psi_formula,
    psi_total,
    psi_vertex,
    psi_vertex_flat,
)

EX_ROWS = ((2, 3, 1), (2, 1, 3, 3, 2, 1), (2, 1, 2, 3, 3, 1, 3, 2, 1))


def interlacing_pairs(n, k):
    """All (bottom, top) pairs at levels k, k+1, over every row with the
    right color multiplicities (including rows no triangle reaches)."""
    multiset = tuple(c for c in range(1, n + 1) for _ in range(k))
    bottoms = sorted(set(itertools.permutations(multiset)))
    for bottom in bottoms:
        for top in extensions(bottom, n, k):
            yield bottom, top


def test_worked_example_values():
    assert psi_vertex(Row(3, 1, EX_ROWS[0]), Row(3, 2, EX_ROWS[1])) == 2
    assert psi_vertex(Row(3, 2, EX_ROWS[1]), Row(3, 3, EX_ROWS[2])) == 3
    assert psi_formula(Row(3, 1, EX_ROWS[0]), Row(3, 2, EX_ROWS[1])) == 2


def test_worked_example_four_colors():
    bottom, top = (3, 1, 4, 2), (3, 1, 4, 2, 3, 4, 1, 2)
    assert psi_vertex_flat(bottom, top, 4, 1) == 3
    assert psi_formula(Row(4, 1, bottom), Row(4, 2, top)) == 3


def test_reversed_bottom_three_colors():
    # bottom (3,2,1) with top read as (3|12|23|1) in merged order
    assert psi_vertex_flat((3, 2, 1), (3, 1, 2, 2, 3, 1), 3, 1) == 2


def test_staircase_psi_zero():
    for n in (1, 2, 3, 5):
        bottom = tuple(range(1, n + 1))
        top = tuple(c for c in range(1, n + 1) for _ in range(2))
        assert psi_vertex_flat(bottom, top, n, 1) == 0


def test_single_color_always_zero():
    for k in (1, 2, 3):
        base = identity_staircase(1, k).rows[-1]
        for top in extensions(base, 1, k):
            assert psi_vertex_flat(base, top, 1, k) == 0


def test_vertex_equals_formula_exhaustive():
    # n <= 4 at level 1, n <= 3 at level 2
    for n in (1, 2, 3, 4):
        for bottom, top in interlacing_pairs(n, 1):
            assert psi_vertex_flat(bottom, top, n, 1) == psi_formula(
                Row(n, 1, bottom), Row(n, 2, top)
            )
    for n in (1, 2, 3):
        for bottom, top in interlacing_pairs(n, 2):
            assert psi_vertex_flat(bottom, top, n, 2) == psi_formula(
                Row(n, 2, bottom), Row(n, 3, top)
            )


def test_complement_identity():
    # psi(pair) + psi(complemented pair) = k * C(n, 2)
    for n, k in [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2)]:
        target = k * n * (n - 1) // 2
        for bottom, top in interlacing_pairs(n, k):
            cb = tuple(n + 1 - c for c in bottom)
            ct = tuple(n + 1 - c for c in top)
            assert psi_vertex_flat(bottom, top, n, k) + psi_vertex_flat(cb, ct, n, k) == target


def test_range_and_attained():
    for n, k in [(2, 1), (3, 1), (4, 1), (3, 2)]:
        hi = k * n * (n - 1) // 2
        values = {
            psi_vertex_flat(b, t, n, k) for b, t in interlacing_pairs(n, k)
        }
        assert min(values) == 0
        assert max(values) == hi


def test_psi_total_example():
    assert psi_total(Triangle(3, 3, EX_ROWS)) == 5


def test_psi_total_depth_one():
    assert psi_total(identity_staircase(4, 1)) == 0


def test_psi_total_maximum_depth2():
    best = 0
    for sigma in itertools.permutations((1, 2, 3)):
        for top in extensions(sigma, 3, 1):
            best = max(best, psi_total(Triangle(3, 2, (sigma, top))))
    assert best == 3  # C(3,2) * C(2,2)


def test_boundary_involution_preserves_psi():
    from citri.core import boundary_involution

    for n in (2, 3, 4):
        for bottom, top in interlacing_pairs(n, 1):
            t = Triangle(n, 2, (bottom, top))
            base = psi_total(t)
            for i in range(1, n):
                assert psi_total(boundary_involution(t, i)) == base


def test_contract_violation_raises():
    with pytest.raises(PsiContractError):
        psi_vertex_flat((1, 2), (2, 2, 1, 1), 2, 1)
    with pytest.raises(PsiContractError):
        psi_formula(Row(2, 1, (1, 2)), Row(2, 2, (2, 2, 1, 1)))

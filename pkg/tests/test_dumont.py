import itertools

import pytest

from citri.core import Row
from citri.dumont import (
    count_dumont,
    dumont_derangements,
    dumont_to_top_row,
    inversions,
    is_dumont,
    top_row_to_dumont,
)
from citri.enumeration import extensions


def test_is_dumont_basics():
    assert is_dumont((2, 1))
    assert not is_dumont((1, 2))
    assert is_dumont((2, 1, 4, 3, 6, 5))
    assert is_dumont((2, 1, 4, 3))
    with pytest.raises(ValueError):
        is_dumont((2, 1, 3))
    with pytest.raises(ValueError):
        is_dumont((1, 1, 2, 2))


def test_s4_has_exactly_two():
    hits = [p for p in itertools.permutations(range(1, 5)) if is_dumont(p)]
    assert len(hits) == 2


def test_count_small_values():
    assert [count_dumont(k) for k in range(6)] == [1, 1, 2, 8, 56, 608]


def test_count_matches_generator():
    for n in range(5):
        assert count_dumont(n) == sum(1 for _ in dumont_derangements(n))


def test_generator_yields_dumont():
    for sigma in dumont_derangements(4):
        assert is_dumont(sigma)


def test_partitioned_count():
    for n in (2, 3, 4):
        total = sum(count_dumont(n, first_value=v) for v in range(2, 2 * n + 1))
        assert total == count_dumont(n)


def test_count_six():
    assert count_dumont(6) == 9440


def test_bijection_examples():
    assert top_row_to_dumont(Row(1, 2, (1, 1))) == (2, 1)
    assert top_row_to_dumont(Row(2, 2, (1, 1, 2, 2))) == (2, 1, 4, 3)
    assert dumont_to_top_row((2, 1)).entries == (1, 1)
    assert dumont_to_top_row((2, 1, 4, 3)).entries == (1, 1, 2, 2)


def test_bijection_roundtrip_exhaustive():
    for n in range(1, 6):
        identity = tuple(range(1, n + 1))
        tops = list(extensions(identity, n, 1))
        assert len(tops) == count_dumont(n)
        images = set()
        for top in tops:
            sigma = top_row_to_dumont(Row(n, 2, top))
            assert is_dumont(sigma)
            images.add(sigma)
            assert dumont_to_top_row(sigma).entries == top
        # surjectivity onto Dumont derangements
        assert images == set(dumont_derangements(n))


def test_bijection_rejects_bad_input():
    with pytest.raises(ValueError):
        top_row_to_dumont(Row(2, 2, (2, 2, 1, 1)))
    with pytest.raises(ValueError):
        dumont_to_top_row((1, 2))


def test_inversions():
    assert inversions((1, 2, 3)) == 0
    assert inversions((3, 2, 1)) == 3
    assert inversions((2, 1, 4, 3)) == 2


@pytest.mark.slow
def test_count_eight_matches_benchmark():
    assert count_dumont(8) == 42271 * (1 << 7)

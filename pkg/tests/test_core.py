import itertools

import pytest
from hypothesis import given, strategies as st

from citri.core import (
    Row,
    Triangle,
    apply_color_permutation,
    boundary_involution,
    canonicalize_bottom,
    color_complement,
    identity_staircase,
    inverse_permutation,
    is_interlacing,
    is_valid_triangle,
    merge_rows,
    triangle_from_json,
    triangle_from_text,
    triangle_to_json,
    triangle_to_text,
    validate_triangle,
)
from citri.enumeration import extensions

# the running depth-3 example with three colors
EX_ROWS = ((2, 3, 1), (2, 1, 3, 3, 2, 1), (2, 1, 2, 3, 3, 1, 3, 2, 1))
EX = Triangle(3, 3, EX_ROWS)


def test_merge_rows_example():
    m = merge_rows(Row(3, 1, EX_ROWS[0]), Row(3, 2, EX_ROWS[1]))
    assert m.slots == (
        ("T", 2), ("B", 2), ("T", 1),
        ("T", 3), ("B", 3), ("T", 3),
        ("T", 2), ("B", 1), ("T", 1),
    )


def test_merge_rows_single_color():
    m = merge_rows(Row(1, 1, (1,)), Row(1, 2, (1, 1)))
    assert m.slots == (("T", 1), ("B", 1), ("T", 1))


def test_merge_rows_staircase():
    m = merge_rows(Row(2, 1, (1, 2)), Row(2, 2, (1, 1, 2, 2)))
    assert m.slots == (("T", 1), ("B", 1), ("T", 1), ("T", 2), ("B", 2), ("T", 2))


def test_merge_rows_errors():
    with pytest.raises(ValueError):
        merge_rows(Row(2, 1, (1, 2)), Row(2, 3, (1, 1, 1, 2, 2, 2)))
    with pytest.raises(ValueError):
        merge_rows(Row(2, 1, (1, 2)), Row(3, 2, (1, 1, 2, 2, 3, 3)))
    with pytest.raises(ValueError):
        merge_rows(Row(2, 1, (1, 2)), Row(2, 2, (1, 1, 2)))


def test_is_interlacing_examples():
    assert is_interlacing(Row(3, 1, EX_ROWS[0]), Row(3, 2, EX_ROWS[1]))
    # (1,2,1,2) alternates T,B,T for both colors: one of the two valid
    # identity-bottom tops at n=2
    assert is_interlacing(Row(2, 1, (1, 2)), Row(2, 2, (1, 2, 1, 2)))
    assert not is_interlacing(Row(2, 1, (1, 2)), Row(2, 2, (2, 2, 1, 1)))
    assert not is_interlacing(Row(2, 1, (1, 2)), Row(2, 2, (2, 1, 1, 2)))
    assert is_interlacing(Row(1, 1, (1,)), Row(1, 2, (1, 1)))


def test_interlacing_counts_per_color():
    # merged slots of a valid pair carry k+1 tops and k bottoms per color
    for n, k in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)]:
        base = identity_staircase(n, k).rows[-1]
        for top in extensions(base, n, k):
            m = merge_rows(Row(n, k, base), Row(n, k + 1, top))
            for c in range(1, n + 1):
                origins = [o for o, col in m.slots if col == c]
                assert origins == ["T", "B"] * k + ["T"]


def test_validate_triangle_example():
    assert validate_triangle(EX).ok


def test_validate_triangle_locates_failure():
    bad = Triangle(2, 2, ((1, 2), (2, 2, 1, 1)))
    d = validate_triangle(bad)
    assert not d.ok
    assert d.level == 1
    assert d.color is not None


def test_validate_all_identity_staircases():
    for n in range(1, 4):
        for N in range(1, 4):
            assert is_valid_triangle(identity_staircase(n, N))


def test_equal_adjacent_top_level_colors_invalid():
    # brute force at n=2, N=2: no valid triangle has equal boundary entries
    for bottom in itertools.permutations((1, 2)):
        for top in extensions(bottom, 2, 1):
            assert top[1] != top[2]


def test_color_complement_involution():
    t2 = color_complement(EX)
    assert is_valid_triangle(t2)
    assert color_complement(t2) == EX
    assert t2.rows[0] == (2, 1, 3)


def test_color_complement_entrywise():
    t = Triangle(3, 1, ((2, 3, 1),))
    assert color_complement(t).rows[0] == (2, 1, 3)


def test_apply_color_permutation():
    assert apply_color_permutation(EX, (1, 2, 3)) == EX
    rev = apply_color_permutation(EX, (3, 2, 1))
    assert rev == color_complement(EX)
    with pytest.raises(ValueError):
        apply_color_permutation(EX, (1, 1, 2))


def test_color_permutation_orbit_distinct():
    base = Triangle(3, 2, ((1, 2, 3), next(iter(extensions((1, 2, 3), 3, 1)))))
    images = {
        apply_color_permutation(base, pi).rows
        for pi in itertools.permutations((1, 2, 3))
    }
    assert len(images) == 6
    for rows in images:
        assert is_valid_triangle(Triangle(3, 2, rows))


def test_boundary_involution_small():
    t = Triangle(2, 2, ((1, 2), (1, 1, 2, 2)))
    swapped = boundary_involution(t, 1)
    assert swapped.rows[1] == (1, 2, 1, 2)
    assert is_valid_triangle(swapped)
    assert boundary_involution(swapped, 1) == t


def test_boundary_involution_orbit_size():
    # all involutions commute and generate orbits of size 2^(n-1)
    for n in (2, 3, 4):
        bottom = tuple(range(1, n + 1))
        for top in extensions(bottom, n, 1):
            t = Triangle(n, 2, (bottom, top))
            orbit = {t.rows}
            frontier = [t]
            while frontier:
                s = frontier.pop()
                for i in range(1, n):
                    u = boundary_involution(s, i)
                    assert is_valid_triangle(u)
                    if u.rows not in orbit:
                        orbit.add(u.rows)
                        frontier.append(u)
            assert len(orbit) == 1 << (n - 1)


def test_boundary_involution_errors():
    with pytest.raises(ValueError):
        boundary_involution(EX, 3)
    with pytest.raises(ValueError):
        boundary_involution(identity_staircase(2, 1), 1)


def test_canonicalize_bottom():
    t2, pi = canonicalize_bottom(EX)
    assert t2.rows[0] == (1, 2, 3)
    assert pi == (3, 1, 2)  # color 2 -> 1, 3 -> 2, 1 -> 3
    assert apply_color_permutation(t2, inverse_permutation(pi)) == EX
    same, ident = canonicalize_bottom(identity_staircase(3, 2))
    assert ident == (1, 2, 3)


def test_validity_preserved_by_symmetries_exhaustive():
    for n in (2, 3):
        for bottom in itertools.permutations(range(1, n + 1)):
            for top in extensions(bottom, n, 1):
                t = Triangle(n, 2, (bottom, top))
                assert is_valid_triangle(color_complement(t))
                for pi in itertools.permutations(range(1, n + 1)):
                    assert is_valid_triangle(apply_color_permutation(t, pi))


def test_text_round_trip():
    text = triangle_to_text(EX)
    assert text.splitlines()[0] == "3 3"
    assert triangle_from_text(text) == EX


def test_json_round_trip():
    blob = triangle_to_json(EX)
    assert triangle_from_json(blob) == EX


def test_text_format_errors():
    with pytest.raises(ValueError):
        triangle_from_text("")
    with pytest.raises(ValueError):
        triangle_from_text("2 2\n1 2\n1 1 2\n")


@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_serialization_round_trip_random(n, N, data):
    # random valid triangles round-trip through both formats
    rows = [tuple(range(1, n + 1))]
    for k in range(1, N):
        exts = list(extensions(rows[-1], n, k))
        rows.append(data.draw(st.sampled_from(exts)))
    pi = data.draw(st.permutations(list(range(1, n + 1))))
    t = apply_color_permutation(Triangle(n, N, tuple(rows)), tuple(pi))
    assert triangle_from_text(triangle_to_text(t)) == t
    assert triangle_from_json(triangle_to_json(t)) == t

"""Dumont derangements, Genocchi medians, and the depth-2 top-row bijection.

A Dumont derangement (of the second kind) is a permutation s of
{1..2n} with s(i) > i at every odd i and s(i) < i at every even i.
Their count is the n-th Genocchi median H_n (OEIS A005439):
1, 1, 2, 8, 56, 608, 9440, ...

Valid level-2 top rows over the identity bottom row correspond
bijectively to Dumont derangements: if color c occupies top positions
p1 < p2, set s(2c) = p1 and s(2c-1) = p2.  Interlacing of color c says
its bottom dot sits strictly between its two top dots, i.e. p1 < 2c and
p2 > 2c - 1, which are exactly the two Dumont inequalities.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .core import Row, is_interlacing


def is_dumont(sigma: Sequence[int]) -> bool:
    """True iff sigma (one-line, 1-based values) is a Dumont derangement."""
    m = len(sigma)
    if m % 2 != 0:
        raise ValueError("a Dumont derangement has even length")
    if sorted(sigma) != list(range(1, m + 1)):
        raise ValueError(f"not a permutation of 1..{m}: {sigma!r}")
    for i, v in enumerate(sigma, start=1):
        if i % 2 == 1:
            if v <= i:
                return False
        else:
            if v >= i:
                return False
    return True


def dumont_derangements(n: int, first_value: int | None = None) -> Iterator[tuple]:
    """Generate all Dumont derangements in S_{2n} by backtracking.

    Positions are filled left to right; position i admits unused values
    above i (i odd) or below i (i even).  Restricting ``first_value``
    fixes s(1), giving independent partitions for parallel counting.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    m = 2 * n
    if n == 0:
        yield ()
        return
    used = [False] * (m + 1)
    out = [0] * m

    def place(i: int) -> Iterator[tuple]:
        if i > m:
            yield tuple(out)
            return
        lo, hi = (i + 1, m) if i % 2 == 1 else (1, i - 1)
        for v in range(lo, hi + 1):
            if not used[v]:
                used[v] = True
                out[i - 1] = v
                yield from place(i + 1)
                used[v] = False

    if first_value is not None:
        if not (2 <= first_value <= m):
            return
        used[first_value] = True
        out[0] = first_value
        yield from place(2)
    else:
        yield from place(1)


def count_dumont(n: int, first_value: int | None = None) -> int:
    """The Genocchi median H_n, by backtracking enumeration."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    m = 2 * n
    if n == 0:
        return 1
    used = [False] * (m + 1)

    def count_from(i: int) -> int:
        if i > m:
            return 1
        total = 0
        lo, hi = (i + 1, m) if i % 2 == 1 else (1, i - 1)
        for v in range(lo, hi + 1):
            if not used[v]:
                used[v] = True
                total += count_from(i + 1)
                used[v] = False
        return total

    if first_value is not None:
        if not (2 <= first_value <= m):
            return 0
        used[first_value] = True
        return count_from(2)
    return count_from(1)


def top_row_to_dumont(top: Row) -> tuple:
    """Map a valid level-2 top row over the identity bottom to a permutation."""
    n = top.n
    if top.level != 2:
        raise ValueError("expected a level-2 row")
    identity = Row(n, 1, tuple(range(1, n + 1)))
    if not is_interlacing(identity, top):
        raise ValueError("top row does not interlace with the identity bottom row")
    sigma = [0] * (2 * n)
    seen_first = [0] * (n + 1)
    for pos, c in enumerate(top.entries, start=1):
        if seen_first[c]:
            sigma[2 * c - 2] = pos  # s(2c-1) = later position
        else:
            sigma[2 * c - 1] = pos  # s(2c) = earlier position
            seen_first[c] = pos
    result = tuple(sigma)
    assert is_dumont(result)
    return result


def dumont_to_top_row(sigma: Sequence[int]) -> Row:
    """Inverse of top_row_to_dumont."""
    if not is_dumont(sigma):
        raise ValueError("input is not a Dumont derangement")
    n = len(sigma) // 2
    top = [0] * (2 * n)
    for c in range(1, n + 1):
        top[sigma[2 * c - 1] - 1] = c  # earlier occurrence
        top[sigma[2 * c - 2] - 1] = c  # later occurrence
    return Row(n, 2, tuple(top))


def inversions(sigma: Sequence[int]) -> int:
    """Number of inversions of a permutation in one-line notation."""
    count = 0
    m = len(sigma)
    for i in range(m):
        for j in range(i + 1, m):
            if sigma[i] > sigma[j]:
                count += 1
    return count

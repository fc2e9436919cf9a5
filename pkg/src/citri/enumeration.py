"""Exact counting of colored interlacing triangles by frontier dynamic
programming.

The count over all depth-N triangles factors as n! times the count over
triangles with identity bottom row, so the frontier starts from the
single row (1, 2, ..., n).  Level by level, each distinct row is
extended to all rows interlacing above it; extensions of a row that
starts with color 1 and ends with color n again start with 1 and end
with n (the first top slot of a color must precede its first bottom
slot, and symmetrically at the right edge), so the frontier never
leaves that set.

At the final level only, rows are counted modulo the n-1 independent
boundary involutions: each orbit has exactly 2^(n-1) members and
exactly one canonical representative (every boundary pair ascending),
so counting canonical extensions and multiplying by 2^(n-1) is exact.
The reduction is unsound at intermediate levels, where higher rows
constrain the swapped slots.

Frontier keys pack row entries into fixed-width bit fields; values are
multiplicities.  When a target frontier would exceed the configured
batch size, targets are partitioned by residue of the packed key and
each partition is processed to completion, with partial sums
accumulated (sources are re-extended once per partition).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterator, Sequence


class ResourceLimitError(RuntimeError):
    """An explicit state budget was exhausted; carries partial statistics."""

    def __init__(self, message: str, states_checked: int = 0):
        super().__init__(message)
        self.states_checked = states_checked


@dataclass
class CountReport:
    N: int
    n: int
    total: int
    normalized: int        # total / n!
    two_adic: int          # 2-adic valuation of normalized
    elapsed: float
    states_checked: int

    def to_dict(self) -> dict:
        return {
            "depth": self.N,
            "colors": self.n,
            "total": str(self.total),
            "normalized": str(self.normalized),
            "two_adic": self.two_adic,
            "elapsed": self.elapsed,
            "states_checked": self.states_checked,
        }


def two_adic_valuation(x: int) -> int:
    """Largest e with 2**e dividing x; requires x >= 1."""
    if x <= 0:
        raise ValueError("2-adic valuation defined here for positive integers")
    return (x & -x).bit_length() - 1


def divisor_check(x: int, d: int) -> bool:
    if x < 1 or d < 1:
        raise ValueError("arguments must be positive")
    return x % d == 0


def bits_per_color(n: int) -> int:
    return max(1, (n - 1).bit_length())


def pack_row(row: Sequence[int], n: int) -> int:
    b = bits_per_color(n)
    key = 0
    for c in reversed(row):
        key = (key << b) | (c - 1)
    return key


def unpack_row(key: int, n: int, length: int) -> tuple:
    b = bits_per_color(n)
    mask = (1 << b) - 1
    out = []
    for _ in range(length):
        out.append((key & mask) + 1)
        key >>= b
    return tuple(out)


def extensions(row: Sequence[int], n: int, k: int, canonical_top: bool = False) -> Iterator[tuple]:
    """Yield every level-(k+1) row interlacing above the given level-k row.

    With canonical_top, only rows with ascending boundary pairs are
    produced (top positions m(k+1)-1, m(k+1) in 0-based indexing, for
    m = 1..n-1).

    The generator walks the merged linear order left to right.  At a
    top slot it branches over colors whose occurrence pattern can
    accept another top here (equal counts of tops and bottoms so far,
    and top budget remaining); at a bottom slot the color is fixed and
    must currently lead by one top, or the branch dies.
    """
    L = n * (k + 1)
    top = [0] * L
    # diff[c] = tops minus bottoms seen so far for color c; valid in {0, 1}
    diff = [0] * (n + 1)
    tops_used = [0] * (n + 1)

    # Merged slot schedule: list of (is_top, payload); payload is the top
    # index for top slots and the bottom color for bottom slots.
    schedule = []
    for i in range(n):
        schedule.append((True, i * (k + 1)))
        for j in range(k):
            schedule.append((False, row[i * k + j]))
            schedule.append((True, i * (k + 1) + j + 1))

    S = len(schedule)

    def walk(s: int) -> Iterator[tuple]:
        if s == S:
            yield tuple(top)
            return
        is_top, payload = schedule[s]
        if not is_top:
            c = payload
            if diff[c] != 1:
                return
            diff[c] = 0
            yield from walk(s + 1)
            diff[c] = 1
            return
        t = payload
        lo = 1
        if canonical_top and t > 0 and t % (k + 1) == 0:
            # second member of a boundary pair: must exceed its left neighbor
            lo = top[t - 1] + 1
        for c in range(lo, n + 1):
            if diff[c] == 0 and tops_used[c] <= k:
                diff[c] = 1
                tops_used[c] += 1
                top[t] = c
                yield from walk(s + 1)
                diff[c] = 0
                tops_used[c] -= 1

    yield from walk(0)


def count_extensions(row: Sequence[int], n: int, k: int, canonical_top: bool = False) -> int:
    """Number of interlacing extensions, without materializing them."""
    count = 0
    for _ in extensions(row, n, k, canonical_top):
        count += 1
    return count


def _final_chunk(args) -> tuple:
    """Worker: count (canonical) extensions of a chunk of sources."""
    chunk, n, k, canonical = args
    yields = 0
    total = 0
    for key, mult in chunk:
        row = unpack_row(key, n, n * k)
        cnt = count_extensions(row, n, k, canonical)
        yields += cnt
        total += mult * cnt
    return total, yields


def _extend_chunk(args) -> tuple:
    """Worker: extend sources one level, keeping targets in a residue class.

    Aborts with (None, yields) as soon as the target dict would exceed
    the row limit, signalling the caller to split the residue class.
    """
    chunk, n, k, mod, residue, limit = args
    yields = 0
    target: dict = {}
    get = target.get
    for key, mult in chunk:
        row = unpack_row(key, n, n * k)
        for ext in extensions(row, n, k):
            tkey = pack_row(ext, n)
            if mod > 1 and tkey % mod != residue:
                continue
            yields += 1
            target[tkey] = get(tkey, 0) + mult
            if limit is not None and len(target) > limit:
                return None, yields
    return target, yields


def count_triangles(
    N: int,
    n: int,
    use_top_symmetry: bool = True,
    batch_size: int | None = 10_000_000,
    threads: int = 1,
    max_states: int | None = None,
) -> CountReport:
    """Compute the number of depth-N colored interlacing n-triangles.

    The frontier maps each reachable identity-bottom row at the current
    level to its multiplicity.  The final answer is n! times the sum of
    final-level extension counts (times 2^(n-1) when counting canonical
    extensions only, which use_top_symmetry enables).

    When a target frontier would exceed batch_size rows, its residue
    class splits in two (key mod 2m refines key mod m) and each half is
    carried to completion independently; the partial chain sums add up.
    Memory then stays within one batch per level at the cost of
    re-extending the sources of split passes.
    """
    if N < 1 or n < 1:
        raise ValueError("depth and palette size must be at least 1")
    start = time.monotonic()
    states_checked = 0

    pool = None
    if threads > 1:
        import multiprocessing

        pool = multiprocessing.get_context("fork").Pool(threads)

    def bump_states(amount: int, k: int) -> None:
        nonlocal states_checked
        states_checked += amount
        if max_states is not None and states_checked > max_states:
            raise ResourceLimitError(
                f"state budget {max_states} exhausted at level {k + 1}",
                states_checked,
            )

    def chunked(items: list) -> list:
        if pool is None or len(items) < 2 * threads:
            return [items]
        size = math.ceil(len(items) / threads)
        return [items[i : i + size] for i in range(0, len(items), size)]

    def final_level(items: list, k: int) -> int:
        canonical = use_top_symmetry
        jobs = [(c, n, k, canonical) for c in chunked(items)]
        parts = pool.map(_final_chunk, jobs) if len(jobs) > 1 else [_final_chunk(jobs[0])]
        bump_states(sum(p[1] for p in parts), k)
        return sum(p[0] for p in parts)

    def extend_pass(items: list, k: int, mod: int, residue: int) -> dict | None:
        limit = batch_size if mod < 1 << 30 else None
        jobs = [(c, n, k, mod, residue, limit) for c in chunked(items)]
        parts = pool.map(_extend_chunk, jobs) if len(jobs) > 1 else [_extend_chunk(jobs[0])]
        bump_states(sum(p[1] for p in parts), k)
        if any(p[0] is None for p in parts):
            return None
        target = parts[0][0]
        for extra, _ in parts[1:]:
            get = target.get
            for key, mult in extra.items():
                target[key] = get(key, 0) + mult
        return target

    def chains(items: list, k: int) -> int:
        if k == N - 1:
            return final_level(items, k)
        total = 0
        stack = [(1, 0)]
        while stack:
            mod, residue = stack.pop()
            part = extend_pass(items, k, mod, residue)
            if part is None:
                stack.append((2 * mod, residue + mod))
                stack.append((2 * mod, residue))
                continue
            total += chains(list(part.items()), k + 1)
        return total

    identity = tuple(range(1, n + 1))
    try:
        chain_total = 1 if N == 1 else chains([(pack_row(identity, n), 1)], 1)
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    total = math.factorial(n) * chain_total
    if N >= 2 and use_top_symmetry:
        total *= 1 << (n - 1)
    normalized = total // math.factorial(n)
    return CountReport(
        N=N,
        n=n,
        total=total,
        normalized=normalized,
        two_adic=two_adic_valuation(normalized),
        elapsed=time.monotonic() - start,
        states_checked=states_checked,
    )

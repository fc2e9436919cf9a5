"""The inter-level transition statistic psi, computed two independent ways.

``psi_vertex`` is the production path: a single right-to-left scan of
the merged linear order keeping a bitmask of active colors.  The scan
starts with every color active; a top slot of color j deactivates j, a
bottom slot of color j counts the active colors greater than j and then
activates j.  The accumulated count is psi.

``psi_formula`` is the independent reference: a double sum over bottom
positions p and colors c' greater than the color at p of
(tops of c' left of p) - (bottoms of c' left of p), all counted in the
merged linear order.  Both functions agree on every interlacing pair.

Python integers are arbitrary width, so the bitmask path works for any
palette size; popcounts use int.bit_count.
"""

from __future__ import annotations

from .core import Row, Triangle, is_interlacing


class PsiContractError(ValueError):
    """The input rows were not interlacing (caller bug, not a data state)."""


def psi_vertex_flat(bottom, top, n: int, k: int) -> int:
    """Right-to-left scan over flattened rows (no shape checks)."""
    active = (1 << n) - 1
    acc = 0
    for i in range(n - 1, -1, -1):
        t0 = i * (k + 1)
        b0 = i * k
        # per triangle, right-to-left: top_{k+1}, bottom_k, top_k, ..., top_1
        for j in range(k, 0, -1):
            bit = 1 << (top[t0 + j] - 1)
            if not active & bit:
                raise PsiContractError("rows are not interlacing (top slot inactive)")
            active ^= bit
            c = bottom[b0 + j - 1]
            bit = 1 << (c - 1)
            if active & bit:
                raise PsiContractError("rows are not interlacing (bottom slot active)")
            acc += (active >> c).bit_count()
            active ^= bit
        bit = 1 << (top[t0] - 1)
        if not active & bit:
            raise PsiContractError("rows are not interlacing (top slot inactive)")
        active ^= bit
    if active:
        raise PsiContractError("rows are not interlacing (colors left active)")
    return acc


def psi_vertex(bottom: Row, top: Row) -> int:
    """psi via the arrow-conservation scan; O(length) with O(1) set queries."""
    if bottom.n != top.n or bottom.level + 1 != top.level:
        raise ValueError("rows do not form a consecutive-level pair")
    return psi_vertex_flat(bottom.entries, top.entries, bottom.n, bottom.level)


def psi_formula(bottom: Row, top: Row) -> int:
    """psi via the prefix-count double sum; reference oracle for psi_vertex."""
    if not is_interlacing(bottom, top):
        raise PsiContractError("rows are not interlacing")
    return psi_formula_flat(bottom.entries, top.entries, bottom.n, bottom.level)


def psi_formula_flat(bottom_entries, top_entries, n: int, k: int) -> int:
    """Double-sum evaluation over flattened rows.

    Each summand (tops of c' left of p) - (bottoms of c' left of p) is
    nonnegative for interlacing input; a negative value is a contract
    violation and the basis of pruning correctness downstream.
    """
    tops_left = [0] * (n + 1)
    bots_left = [0] * (n + 1)
    acc = 0
    for i in range(n):
        t0 = i * (k + 1)
        b0 = i * k
        tops_left[top_entries[t0]] += 1
        for j in range(k):
            c = bottom_entries[b0 + j]
            for cp in range(c + 1, n + 1):
                term = tops_left[cp] - bots_left[cp]
                if term < 0:
                    raise PsiContractError(
                        "negative prefix difference; rows are not interlacing"
                    )
                acc += term
            bots_left[c] += 1
            tops_left[top_entries[t0 + j + 1]] += 1
    return acc


def psi_total(t: Triangle) -> int:
    """Sum of psi over all consecutive level pairs of the triangle."""
    acc = 0
    for k in range(1, t.N):
        acc += psi_vertex_flat(t.rows[k - 1], t.rows[k], t.n, k)
    return acc

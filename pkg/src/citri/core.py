"""Colored interlacing triangles: the row/triangle model and its symmetries.

A triangle with palette size n and depth N is a stack of rows, one per
level k = 1..N.  The level-k row is stored flattened in linear-order
reading: a tuple of n*k colors in {1..n}, each color appearing exactly
k times.  The per-triangle view of entry (i, k, j) is the flattened
index (i-1)*k + j.

Two consecutive rows merge into a single line by interleaving, per
triangle index i: top_1, bottom_1, top_2, bottom_2, ..., bottom_k,
top_{k+1}.  A pair of rows interlaces when, for every color, the merged
occurrences strictly alternate top, bottom, top, ..., top.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

TOP = "T"
BOTTOM = "B"


@dataclass(frozen=True)
class Row:
    """A flattened level-k row over palette {1..n}."""

    n: int
    level: int
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    def multiplicities_ok(self) -> bool:
        if self.n < 1 or self.level < 1:
            return False
        if len(self.entries) != self.n * self.level:
            return False
        counts = [0] * (self.n + 1)
        for c in self.entries:
            if not (1 <= c <= self.n):
                return False
            counts[c] += 1
        return all(counts[c] == self.level for c in range(1, self.n + 1))

    def entry(self, i: int, j: int) -> int:
        """Color of the dot in triangle i, position j (both 1-based)."""
        return self.entries[(i - 1) * self.level + (j - 1)]


@dataclass(frozen=True)
class MergedRow:
    """The linear-order interleave of a level-k and a level-(k+1) row."""

    n: int
    level: int  # level of the bottom row
    slots: tuple  # of (origin, color) pairs, origin in {"T", "B"}


@dataclass(frozen=True)
class Triangle:
    """A full depth-N colored triangle; rows[k-1] is the level-k row."""

    n: int
    N: int
    rows: tuple  # of tuple[int, ...], flattened per level

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    def row(self, k: int) -> Row:
        return Row(self.n, k, self.rows[k - 1])


@dataclass(frozen=True)
class Diagnostic:
    """Outcome of a validation; pinpoints the first violated constraint."""

    ok: bool
    message: str = ""
    level: int | None = None
    color: int | None = None
    slot: int | None = None


def _check_pair_shape(bottom: Row, top: Row) -> None:
    if bottom.n != top.n:
        raise ValueError(f"palette mismatch: {bottom.n} vs {top.n}")
    if bottom.level + 1 != top.level:
        raise ValueError(f"level mismatch: {bottom.level} then {top.level}")
    if len(bottom.entries) != bottom.n * bottom.level:
        raise ValueError("bottom row has wrong length")
    if len(top.entries) != top.n * top.level:
        raise ValueError("top row has wrong length")


def merged_slots(bottom: Sequence[int], top: Sequence[int], n: int, k: int) -> Iterator[tuple]:
    """Yield (origin, color) in linear order, without building objects.

    bottom has length n*k, top has length n*(k+1).
    """
    for i in range(n):
        t0 = i * (k + 1)
        b0 = i * k
        yield (TOP, top[t0])
        for j in range(k):
            yield (BOTTOM, bottom[b0 + j])
            yield (TOP, top[t0 + j + 1])


def merge_rows(bottom: Row, top: Row) -> MergedRow:
    """Interleave two consecutive rows into their linear order."""
    _check_pair_shape(bottom, top)
    slots = tuple(merged_slots(bottom.entries, top.entries, bottom.n, bottom.level))
    return MergedRow(n=bottom.n, level=bottom.level, slots=slots)


def interlacing_diagnostic(bottom: Row, top: Row) -> Diagnostic:
    """Check the per-color alternation rule, locating the first failure.

    For each color the merged occurrences must read T, B, T, B, ..., T
    (k+1 tops, k bottoms).  Equivalently: scanning left to right, a
    bottom occurrence of c must be preceded by one more top occurrence
    of c than bottom occurrences, and prefix tops never lead by two.
    """
    _check_pair_shape(bottom, top)
    if not bottom.multiplicities_ok():
        return Diagnostic(False, "bottom row fails multiplicity constraint", level=bottom.level)
    if not top.multiplicities_ok():
        return Diagnostic(False, "top row fails multiplicity constraint", level=top.level)
    n, k = bottom.n, bottom.level
    # diff[c] = tops seen minus bottoms seen; must stay in {0, 1} with
    # bottoms arriving only at diff 1.
    diff = [0] * (n + 1)
    for pos, (origin, c) in enumerate(merged_slots(bottom.entries, top.entries, n, k), start=1):
        if origin == TOP:
            if diff[c] == 1:
                return Diagnostic(
                    False,
                    f"color {c}: two level-{k + 1} dots with no level-{k} dot between",
                    level=k,
                    color=c,
                    slot=pos,
                )
            diff[c] += 1
        else:
            if diff[c] == 0:
                return Diagnostic(
                    False,
                    f"color {c}: level-{k} dot not between level-{k + 1} dots",
                    level=k,
                    color=c,
                    slot=pos,
                )
            diff[c] -= 1
    # multiplicities guarantee diff[c] == 1 for every color here
    return Diagnostic(True)


def is_interlacing(bottom: Row, top: Row) -> bool:
    return interlacing_diagnostic(bottom, top).ok


def validate_triangle(t: Triangle) -> Diagnostic:
    """Validate all row multiplicities and all consecutive interlacings."""
    if t.n < 1 or t.N < 1:
        return Diagnostic(False, "palette size and depth must be at least 1")
    if len(t.rows) != t.N:
        return Diagnostic(False, f"expected {t.N} rows, got {len(t.rows)}")
    for k in range(1, t.N + 1):
        if not t.row(k).multiplicities_ok():
            return Diagnostic(False, f"level-{k} row fails multiplicity constraint", level=k)
    for k in range(1, t.N):
        d = interlacing_diagnostic(t.row(k), t.row(k + 1))
        if not d.ok:
            return d
    return Diagnostic(True)


def is_valid_triangle(t: Triangle) -> bool:
    return validate_triangle(t).ok


def color_complement(t: Triangle) -> Triangle:
    """Relabel every color c as n+1-c.  An involution preserving validity."""
    n = t.n
    return Triangle(n, t.N, tuple(tuple(n + 1 - c for c in row) for row in t.rows))


def apply_color_permutation(t: Triangle, pi: Sequence[int]) -> Triangle:
    """Relabel colors by c -> pi[c-1].  pi must be a bijection of {1..n}."""
    if sorted(pi) != list(range(1, t.n + 1)):
        raise ValueError(f"not a permutation of 1..{t.n}: {pi!r}")
    return Triangle(t.n, t.N, tuple(tuple(pi[c - 1] for c in row) for row in t.rows))


def boundary_involution(t: Triangle, i: int) -> Triangle:
    """Swap the adjacent top-level entries of triangles i and i+1.

    The swapped slots are the flattened top-row positions i*N and
    i*N + 1 (1-based); they are neighbors in the linear order with no
    level-(N-1) entry between them, hence always hold distinct colors
    in a valid triangle, and the swap preserves validity.
    """
    if t.N < 2:
        raise ValueError("boundary involution requires depth at least 2")
    if not (1 <= i <= t.n - 1):
        raise ValueError(f"boundary index {i} out of range 1..{t.n - 1}")
    top = list(t.rows[-1])
    a = i * t.N - 1  # 0-based index of entry (i, N)
    top[a], top[a + 1] = top[a + 1], top[a]
    return Triangle(t.n, t.N, t.rows[:-1] + (tuple(top),))


def canonicalize_bottom(t: Triangle) -> tuple:
    """Return (t', pi) where pi relabels colors so t' has bottom (1..n).

    pi is returned in one-line form: pi[c-1] is the new name of color c.
    Applying the inverse permutation to t' recovers t.
    """
    bottom = t.rows[0]
    pi = [0] * t.n
    for pos, c in enumerate(bottom, start=1):
        pi[c - 1] = pos
    return apply_color_permutation(t, pi), tuple(pi)


def inverse_permutation(pi: Sequence[int]) -> tuple:
    inv = [0] * len(pi)
    for i, v in enumerate(pi, start=1):
        inv[v - 1] = i
    return tuple(inv)


def identity_staircase(n: int, N: int) -> Triangle:
    """The triangle with rows (1^k, 2^k, ..., n^k) grouped per triangle."""
    rows = tuple(tuple(c for c in range(1, n + 1) for _ in range(k)) for k in range(1, N + 1))
    return Triangle(n, N, rows)


# --- serialization -----------------------------------------------------------

def triangle_to_text(t: Triangle) -> str:
    lines = [f"{t.n} {t.N}"]
    for row in t.rows:
        lines.append(" ".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


def triangle_from_text(text: str) -> Triangle:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty triangle file")
    try:
        n, N = map(int, lines[0].split())
    except Exception as exc:
        raise ValueError(f"bad header line {lines[0]!r}") from exc
    if len(lines) != N + 1:
        raise ValueError(f"expected {N} row lines, got {len(lines) - 1}")
    rows = []
    for k in range(1, N + 1):
        row = tuple(int(tok) for tok in lines[k].split())
        if len(row) != n * k:
            raise ValueError(f"level-{k} row must have {n * k} entries, got {len(row)}")
        rows.append(row)
    return Triangle(n, N, tuple(rows))


def triangle_to_json(t: Triangle) -> str:
    return json.dumps({"n": t.n, "N": t.N, "rows": [list(r) for r in t.rows]})


def triangle_from_json(text: str) -> Triangle:
    obj = json.loads(text)
    rows = tuple(tuple(int(c) for c in row) for row in obj["rows"])
    return Triangle(int(obj["n"]), int(obj["N"]), rows)

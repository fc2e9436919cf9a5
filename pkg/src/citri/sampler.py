"""Metropolis-Hastings sampling of depth-2 triangles under the q^psi weight.

A depth-2 state is a bottom permutation and a top row in which every
color appears twice, each color's bottom dot sitting strictly between
its two top dots in merged order.  Two local move families drive the
chain:

* level-2 swaps exchange adjacent top entries; the move is valid when
  the two touched colors still interlace (a local check), and an
  equal-color swap is a valid no-op;
* level-1 swaps exchange adjacent bottom entries and deterministically
  repair the top row using the two top slots between the swapped
  bottom positions (the between region).  At depth 2 the repair rule
  has unique targets: the color moving right has exactly one top copy
  right of the region, and symmetrically on the left.  The move is
  always valid and is an involution at fixed position, so the proposal
  kernel is symmetric.

Each step draws a move index uniformly from the 3n-2 possibilities and
an acceptance variate, whether or not the proposal turns out valid, so
the random stream is identical across accepted, rejected, and invalid
steps.  The generator is SplitMix64 (documented in output metadata),
giving bit-reproducible runs for a fixed seed.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import Triangle, triangle_to_json
from .enumeration import extensions
from .psi import psi_vertex_flat

RNG_ID = "splitmix64"

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    x = z
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


class SplitMix64:
    """Seedable, splittable 64-bit generator; next() yields a u64."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        return _mix(self.state)

    def next_float(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


@dataclass(frozen=True)
class Depth2State:
    n: int
    bottom: tuple
    top: tuple
    psi: int

    @classmethod
    def make(cls, n: int, bottom: Sequence[int], top: Sequence[int]) -> "Depth2State":
        b, t = tuple(bottom), tuple(top)
        return cls(n, b, t, psi_vertex_flat(b, t, n, 1))

    def triangle(self) -> Triangle:
        return Triangle(self.n, 2, (self.bottom, self.top))


def initial_state(n: int) -> Depth2State:
    """The identity staircase: bottom (1..n), top (1,1,2,2,...,n,n); psi 0."""
    bottom = tuple(range(1, n + 1))
    top = tuple(c for c in range(1, n + 1) for _ in range(2))
    return Depth2State(n, bottom, top, 0)


def _color_ok(bottom: list, top: list, c: int) -> bool:
    """Interlacing of one color: first top at or left of the bottom slot's
    left neighbor, second top at or right of its right neighbor."""
    j = bottom.index(c)
    t1 = top.index(c)
    t2 = top.index(c, t1 + 1)
    return t1 <= 2 * j and t2 >= 2 * j + 1


def _level2_swap_inplace(bottom: list, top: list, p: int) -> bool:
    """Swap top[p], top[p+1]; revert and report False when invalid.

    Only the two swapped colors' constraints can change, so the check
    is local to them.  Equal colors are a valid no-op.
    """
    a, b = top[p], top[p + 1]
    if a == b:
        return True
    top[p], top[p + 1] = b, a
    if _color_ok(bottom, top, a) and _color_ok(bottom, top, b):
        return True
    top[p], top[p + 1] = a, b
    return False


def _level1_swap_inplace(bottom: list, top: list, i: int) -> None:
    """Swap bottom[i], bottom[i+1] and repair the top row; always valid.

    The between region is top slots 2i+1 and 2i+2 (0-based): exactly
    the top entries between the two swapped bottom positions in merged
    order.  a = bottom[i] can only have its second copy there, b only
    its first.
    """
    a, b = bottom[i], bottom[i + 1]
    r1, r2 = 2 * i + 1, 2 * i + 2
    a_in = r1 if top[r1] == a else (r2 if top[r2] == a else -1)
    b_in = r1 if top[r1] == b else (r2 if top[r2] == b else -1)
    if a_in >= 0 and b_in >= 0:
        # both in region: swap a's left copy with b's right copy
        pa = r1 - 1
        while top[pa] != a:
            pa -= 1
        pb = r2 + 1
        while top[pb] != b:
            pb += 1
        top[pa], top[pb] = b, a
    elif a_in >= 0:
        # a's second copy leaves the region; b's right copy becomes a
        top[a_in] = b
        pb = r2 + 1
        while top[pb] != b:
            pb += 1
        top[pb] = a
    elif b_in >= 0:
        # b's first copy leaves the region; a's left copy becomes b
        top[b_in] = a
        pa = r1 - 1
        while top[pa] != a:
            pa -= 1
        top[pa] = b
    bottom[i], bottom[i + 1] = b, a


def level2_swap(state: Depth2State, p: int) -> Depth2State | None:
    """Apply the level-2 swap at 1-based position p; None when invalid."""
    if not (1 <= p <= 2 * state.n - 1):
        raise ValueError(f"position {p} out of range 1..{2 * state.n - 1}")
    bottom, top = list(state.bottom), list(state.top)
    if not _level2_swap_inplace(bottom, top, p - 1):
        return None
    return Depth2State.make(state.n, bottom, top)


def level1_swap(state: Depth2State, i: int) -> Depth2State:
    """Apply the level-1 swap with reconciliation at 1-based position i."""
    if not (1 <= i <= state.n - 1):
        raise ValueError(f"position {i} out of range 1..{state.n - 1}")
    bottom, top = list(state.bottom), list(state.top)
    _level1_swap_inplace(bottom, top, i - 1)
    return Depth2State.make(state.n, bottom, top)


def mh_step(state: Depth2State, rng: SplitMix64, q: float) -> Depth2State:
    """One Metropolis step: uniform move choice, min(1, q^dpsi) acceptance.

    Move indices 0..2n-2 are level-2 positions, 2n-1..3n-3 level-1
    positions.  Two RNG draws are consumed on every call.
    """
    n = state.n
    moves = 3 * n - 2
    m = int(rng.next_float() * moves)
    if m >= moves:  # guards the measure-zero u == 1.0 edge
        m = moves - 1
    u = rng.next_float()
    bottom, top = list(state.bottom), list(state.top)
    if m < 2 * n - 1:
        if not _level2_swap_inplace(bottom, top, m):
            return state
    else:
        _level1_swap_inplace(bottom, top, m - (2 * n - 1))
    new_psi = psi_vertex_flat(bottom, top, n, 1)
    delta = new_psi - state.psi
    if delta > 0 and u >= q**delta:
        return state
    return Depth2State(n, tuple(bottom), tuple(top), new_psi)


@dataclass
class SamplerConfig:
    n: int
    q: float
    steps: int
    burn_in: int = 0
    thinning: int = 1
    seed: int = 0
    collect_final_state: bool = False
    track_states: bool = False     # per-state visit counts (small n only)

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError("palette size must be at least 1")
        if not (0 < self.q <= 1):
            raise ValueError("q must lie in (0, 1]")
        if self.steps < self.burn_in:
            raise ValueError("steps must be at least burn_in")
        if self.thinning < 1:
            raise ValueError("thinning must be at least 1")


@dataclass
class SamplerStats:
    config: SamplerConfig
    level1_heatmap: list          # n x n counts, [color-1][position-1]
    level2_heatmap: list          # n x 2n counts
    psi_histogram: dict           # psi value -> count
    samples: int
    accepted: int
    acceptance_rate: float
    final_state: Depth2State | None = None
    state_histogram: dict | None = None   # (bottom, top) -> count
    rng_id: str = RNG_ID


def _state_track_bits(n: int) -> int:
    """Bits needed to pack a whole state; tracking uses a dense array."""
    per = max(1, (n - 1).bit_length())
    return 3 * n * per


def _chain_python(n, qpow, steps, burn_in, thinning, seed, bottom, top, l1, l2, hist, states, track):
    """Reference chain kernel on plain Python data structures.

    Mirrors the jitted kernel exactly: two SplitMix64 draws per step
    (move index, acceptance variate) whether or not the proposal is
    valid, and acceptance thresholds from the shared q-power table.
    """
    mask = _MASK
    moves = 3 * n - 2
    level2_moves = 2 * n - 1
    z = seed & mask
    psi = psi_vertex_flat(bottom, top, n, 1)
    accepted = 0
    samples = 0
    per = max(1, (n - 1).bit_length())
    for step in range(1, steps + 1):
        z = (z + _GAMMA) & mask
        x = z
        x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & mask
        x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & mask
        x ^= x >> 31
        m = int((x >> 11) * 2.0**-53 * moves)
        if m >= moves:
            m = moves - 1
        z = (z + _GAMMA) & mask
        x = z
        x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & mask
        x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & mask
        x ^= x >> 31
        u = (x >> 11) * 2.0**-53
        if m < level2_moves:
            if _level2_swap_inplace(bottom, top, m):
                new_psi = psi_vertex_flat(bottom, top, n, 1)
                if new_psi <= psi or u < qpow[new_psi - psi]:
                    psi = new_psi
                    accepted += 1
                else:
                    top[m], top[m + 1] = top[m + 1], top[m]
        else:
            i = m - level2_moves
            saved_b, saved_t = bottom[:], top[:]
            _level1_swap_inplace(bottom, top, i)
            new_psi = psi_vertex_flat(bottom, top, n, 1)
            if new_psi <= psi or u < qpow[new_psi - psi]:
                psi = new_psi
                accepted += 1
            else:
                bottom[:] = saved_b
                top[:] = saved_t
        rel = step - burn_in
        if rel > 0 and rel % thinning == 0:
            samples += 1
            for j in range(n):
                l1[bottom[j] - 1][j] += 1
            for j in range(2 * n):
                l2[top[j] - 1][j] += 1
            hist[psi] += 1
            if track:
                key = 0
                for j in range(n - 1, -1, -1):
                    key = (key << per) | (bottom[j] - 1)
                for j in range(2 * n - 1, -1, -1):
                    key = (key << per) | (top[j] - 1)
                states[key] += 1
    return accepted, samples, psi


def _build_numba_kernel():
    """Compile the jitted twin of _chain_python, or return None."""
    try:
        import numba
        import numpy as np
    except ImportError:
        return None

    u64 = np.uint64
    C30, C27, C31, C11 = u64(30), u64(27), u64(31), u64(11)
    GAMMA = u64(_GAMMA)
    MIX1 = u64(0xBF58476D1CE4E5B9)
    MIX2 = u64(0x94D049BB133111EB)
    INV53 = 2.0**-53

    @numba.njit(cache=False)
    def kernel(n, qpow, steps, burn_in, thinning, seed, bottom, top, l1, l2, hist, states, track, per):
        moves = 3 * n - 2
        level2_moves = 2 * n - 1
        z = u64(seed)
        accepted = 0
        samples = 0
        saved_b = bottom.copy()
        saved_t = top.copy()
        # psi scan (kept inline for the jitted path)
        full = (u64(1) << u64(n)) - u64(1)

        def scan(bottom, top):
            active = full
            acc = 0
            for i in range(n - 1, -1, -1):
                active ^= u64(1) << u64(top[2 * i + 1] - 1)
                c = bottom[i]
                a = active >> u64(c)
                a = a - ((a >> u64(1)) & u64(0x5555555555555555))
                a = (a & u64(0x3333333333333333)) + ((a >> u64(2)) & u64(0x3333333333333333))
                a = (a + (a >> u64(4))) & u64(0x0F0F0F0F0F0F0F0F)
                acc += int((a * u64(0x0101010101010101)) >> u64(56))
                active ^= u64(1) << u64(c - 1)
                active ^= u64(1) << u64(top[2 * i] - 1)
            return acc

        psi = scan(bottom, top)
        for step in range(1, steps + 1):
            z = z + GAMMA
            x = z
            x = (x ^ (x >> C30)) * MIX1
            x = (x ^ (x >> C27)) * MIX2
            x = x ^ (x >> C31)
            m = int(float(x >> C11) * INV53 * moves)
            if m >= moves:
                m = moves - 1
            z = z + GAMMA
            x = z
            x = (x ^ (x >> C30)) * MIX1
            x = (x ^ (x >> C27)) * MIX2
            x = x ^ (x >> C31)
            u = float(x >> C11) * INV53
            if m < level2_moves:
                a = top[m]
                b = top[m + 1]
                ok = True
                if a != b:
                    top[m] = b
                    top[m + 1] = a
                    for idx in range(2):
                        c = a if idx == 0 else b
                        j = 0
                        while bottom[j] != c:
                            j += 1
                        t1 = 0
                        while top[t1] != c:
                            t1 += 1
                        t2 = t1 + 1
                        while top[t2] != c:
                            t2 += 1
                        if t1 > 2 * j or t2 < 2 * j + 1:
                            ok = False
                    if not ok:
                        top[m] = a
                        top[m + 1] = b
                if ok:
                    new_psi = scan(bottom, top)
                    if new_psi <= psi or u < qpow[new_psi - psi]:
                        psi = new_psi
                        accepted += 1
                    elif a != b:
                        top[m] = a
                        top[m + 1] = b
            else:
                i = m - level2_moves
                for j in range(n):
                    saved_b[j] = bottom[j]
                for j in range(2 * n):
                    saved_t[j] = top[j]
                a = bottom[i]
                b = bottom[i + 1]
                r1 = 2 * i + 1
                r2 = 2 * i + 2
                a_in = r1 if top[r1] == a else (r2 if top[r2] == a else -1)
                b_in = r1 if top[r1] == b else (r2 if top[r2] == b else -1)
                if a_in >= 0 and b_in >= 0:
                    pa = r1 - 1
                    while top[pa] != a:
                        pa -= 1
                    pb = r2 + 1
                    while top[pb] != b:
                        pb += 1
                    top[pa] = b
                    top[pb] = a
                elif a_in >= 0:
                    top[a_in] = b
                    pb = r2 + 1
                    while top[pb] != b:
                        pb += 1
                    top[pb] = a
                elif b_in >= 0:
                    top[b_in] = a
                    pa = r1 - 1
                    while top[pa] != a:
                        pa -= 1
                    top[pa] = b
                bottom[i] = b
                bottom[i + 1] = a
                new_psi = scan(bottom, top)
                if new_psi <= psi or u < qpow[new_psi - psi]:
                    psi = new_psi
                    accepted += 1
                else:
                    for j in range(n):
                        bottom[j] = saved_b[j]
                    for j in range(2 * n):
                        top[j] = saved_t[j]
            rel = step - burn_in
            if rel > 0 and rel % thinning == 0:
                samples += 1
                for j in range(n):
                    l1[bottom[j] - 1, j] += 1
                for j in range(2 * n):
                    l2[top[j] - 1, j] += 1
                hist[psi] += 1
                if track:
                    key = 0
                    for j in range(n - 1, -1, -1):
                        key = (key << per) | (bottom[j] - 1)
                    for j in range(2 * n - 1, -1, -1):
                        key = (key << per) | (top[j] - 1)
                    states[key] += 1
        return accepted, samples, psi

    return kernel


_NUMBA_KERNEL = None
_NUMBA_TRIED = False


def _numba_kernel():
    global _NUMBA_KERNEL, _NUMBA_TRIED
    if not _NUMBA_TRIED:
        _NUMBA_TRIED = True
        _NUMBA_KERNEL = _build_numba_kernel()
    return _NUMBA_KERNEL


def run(config: SamplerConfig, engine: str = "auto") -> SamplerStats:
    """Run the chain: burn-in, then one sample every thinning steps.

    engine selects the jitted kernel ("numba"), the pure-Python
    reference ("python"), or the jitted kernel when available ("auto").
    Both kernels consume the identical SplitMix64 stream and produce
    identical statistics for a given config.
    """
    config.validate()
    n = config.n
    deg = n * (n - 1) // 2
    qpow = [float(config.q) ** d for d in range(deg + 1)]
    track_bits = _state_track_bits(n)
    if config.track_states and track_bits > 26:
        raise ValueError("state tracking is limited to small palettes")
    track = config.track_states

    state0 = initial_state(n)
    kernel = None
    if engine in ("auto", "numba") and n <= 64:
        kernel = _numba_kernel()
    if engine == "numba" and kernel is None:
        raise RuntimeError("numba is not available")

    if kernel is not None:
        import numpy as np

        bottom = np.array(state0.bottom, dtype=np.int64)
        top = np.array(state0.top, dtype=np.int64)
        l1 = np.zeros((n, n), dtype=np.int64)
        l2 = np.zeros((n, 2 * n), dtype=np.int64)
        hist = np.zeros(deg + 1, dtype=np.int64)
        states = np.zeros(1 << track_bits if track else 1, dtype=np.int64)
        accepted, samples, psi = kernel(
            n,
            np.array(qpow),
            config.steps,
            config.burn_in,
            config.thinning,
            config.seed & _MASK,
            bottom,
            top,
            l1,
            l2,
            hist,
            states,
            track,
            max(1, (n - 1).bit_length()),
        )
        l1_out = [list(map(int, row)) for row in l1]
        l2_out = [list(map(int, row)) for row in l2]
        hist_out = {d: int(c) for d, c in enumerate(hist) if c}
        state_hist = _unpack_state_counts(states, n) if track else None
        final = Depth2State(n, tuple(map(int, bottom)), tuple(map(int, top)), int(psi))
    else:
        bottom, top = list(state0.bottom), list(state0.top)
        l1 = [[0] * n for _ in range(n)]
        l2 = [[0] * (2 * n) for _ in range(n)]
        hist_arr = [0] * (deg + 1)
        states = [0] * ((1 << track_bits) if track else 1)
        accepted, samples, psi = _chain_python(
            n,
            qpow,
            config.steps,
            config.burn_in,
            config.thinning,
            config.seed & _MASK,
            bottom,
            top,
            l1,
            l2,
            hist_arr,
            states,
            track,
        )
        l1_out, l2_out = l1, l2
        hist_out = {d: c for d, c in enumerate(hist_arr) if c}
        state_hist = _unpack_state_counts(states, n) if track else None
        final = Depth2State(n, tuple(bottom), tuple(top), psi)

    return SamplerStats(
        config=config,
        level1_heatmap=l1_out,
        level2_heatmap=l2_out,
        psi_histogram=hist_out,
        samples=samples,
        accepted=int(accepted),
        acceptance_rate=int(accepted) / config.steps if config.steps else 0.0,
        final_state=final if config.collect_final_state else None,
        state_histogram=state_hist,
    )


def _unpack_state_counts(states, n: int) -> dict:
    # pack order pushes earlier entries left, so tops occupy the low bits
    per = max(1, (n - 1).bit_length())
    mask = (1 << per) - 1
    out = {}
    for key, count in enumerate(states):
        if not count:
            continue
        k = int(key)
        top = []
        for _ in range(2 * n):
            top.append((k & mask) + 1)
            k >>= per
        bottom = []
        for _ in range(n):
            bottom.append((k & mask) + 1)
            k >>= per
        out[(tuple(bottom), tuple(top))] = int(count)
    return out


# --- exact reference distribution and state-space checks ---------------------

def all_states(n: int) -> Iterator[Depth2State]:
    """Every depth-2 state, by bottom permutation and top extension."""
    import itertools

    for perm in itertools.permutations(range(1, n + 1)):
        for top in extensions(perm, n, 1):
            yield Depth2State(n, perm, top, psi_vertex_flat(perm, top, n, 1))


def exact_distribution(n: int, q) -> dict:
    """Probabilities q^psi / T2(n;q) for every state, as exact Fractions
    when q is rational.  Keys are (bottom, top) pairs."""
    if n > 6:
        raise ValueError("exact distribution is exhaustive; limited to n <= 6")
    qf = Fraction(q) if not isinstance(q, float) else Fraction(q).limit_denominator(10**9)
    weights = {}
    for st in all_states(n):
        weights[(st.bottom, st.top)] = qf**st.psi
    total = sum(weights.values())
    return {k: v / total for k, v in weights.items()}


def connectivity_check(n: int) -> bool:
    """BFS over valid moves reaches every state from the staircase."""
    if n > 6:
        raise ValueError("connectivity check is exhaustive; limited to n <= 6")
    start = initial_state(n)
    seen = {(start.bottom, start.top)}
    frontier = [start]
    while frontier:
        nxt = []
        for st in frontier:
            neighbors = []
            for p in range(1, 2 * n):
                s2 = level2_swap(st, p)
                if s2 is not None:
                    neighbors.append(s2)
            for i in range(1, n):
                neighbors.append(level1_swap(st, i))
            for s2 in neighbors:
                key = (s2.bottom, s2.top)
                if key not in seen:
                    seen.add(key)
                    nxt.append(s2)
        frontier = nxt
    total = sum(1 for _ in all_states(n))
    return len(seen) == total


def total_variation(empirical: dict, exact: dict) -> float:
    """TV distance between an empirical count histogram and exact
    probabilities over the same key space."""
    total = sum(empirical.values())
    acc = Fraction(0)
    for key, p in exact.items():
        phat = Fraction(empirical.get(key, 0), total) if total else Fraction(0)
        acc += abs(phat - p)
    return float(acc) / 2


# --- output files -------------------------------------------------------------

def write_heatmap_csv(path: str, matrix: list) -> None:
    with open(path, "w") as fh:
        for row in matrix:
            fh.write(",".join(str(v) for v in row) + "\n")


def write_psi_histogram_csv(path: str, hist: dict) -> None:
    with open(path, "w") as fh:
        fh.write("value,count\n")
        for value in sorted(hist):
            fh.write(f"{value},{hist[value]}\n")


def write_pgm(path: str, matrix: list) -> None:
    """8-bit binary grayscale, row-major, linearly rescaled to 0..255."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    peak = max((max(r) for r in matrix), default=0)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{cols} {rows}\n255\n".encode())
        for row in matrix:
            if peak:
                fh.write(bytes(round(255 * v / peak) for v in row))
            else:
                fh.write(bytes(cols))


def write_outputs(stats: SamplerStats, out_dir: str, pgm: bool = False) -> None:
    os.makedirs(out_dir, exist_ok=True)
    write_heatmap_csv(os.path.join(out_dir, "level1.csv"), stats.level1_heatmap)
    write_heatmap_csv(os.path.join(out_dir, "level2.csv"), stats.level2_heatmap)
    write_psi_histogram_csv(os.path.join(out_dir, "psi_hist.csv"), stats.psi_histogram)
    cfg = stats.config
    meta = {
        "colors": cfg.n,
        "q": cfg.q,
        "steps": cfg.steps,
        "burn_in": cfg.burn_in,
        "thinning": cfg.thinning,
        "seed": cfg.seed,
        "samples": stats.samples,
        "accepted": stats.accepted,
        "acceptance_rate": stats.acceptance_rate,
        "rng": stats.rng_id,
    }
    with open(os.path.join(out_dir, "meta.json"), "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if pgm:
        write_pgm(os.path.join(out_dir, "level1.pgm"), stats.level1_heatmap)
        write_pgm(os.path.join(out_dir, "level2.pgm"), stats.level2_heatmap)
    if stats.final_state is not None:
        with open(os.path.join(out_dir, "final_state.json"), "w") as fh:
            fh.write(triangle_to_json(stats.final_state.triangle()))
            fh.write("\n")

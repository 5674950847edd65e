"""Fallback kernels: vectorized numpy where the loop vectorizes, pure
Python big-int bitsets where it does not.

Selected by HOMALG_NO_NUMBA=1 or when numba is unavailable.  The Python
backtracking path is also the arbitrary-precision route used whenever a
component's count bound does not fit in int64.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 18


def brute_force_count(eu, ev, n_g, n_h, hadj, n_maps):
    """Chunked numpy evaluation of all candidate maps."""
    if n_maps <= 0:
        return 0
    if n_g == 0:
        return 1
    pows = n_h ** np.arange(n_g, dtype=np.int64)
    total = 0
    for start in range(0, n_maps, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, n_maps), dtype=np.int64)
        digs = [(idx // pows[v]) % n_h for v in range(n_g)]
        ok = np.ones(idx.size, dtype=bool)
        for u, v in zip(eu, ev):
            ok &= hadj[digs[u], digs[v]]
            if not ok.any():
                break
        total += int(np.count_nonzero(ok))
    return total


def backtrack_count(row_ints, assign_base, assign_prev, def_base, def_nbrs):
    """Python-int bitset mirror of the jit backtracking kernel.

    row_ints:    target adjacency rows as int bitsets
    assign_base: base candidate bitset per branch vertex (assignment order)
    assign_prev: per branch vertex, positions of earlier assigned neighbors
    def_base:    base candidate bitset per deferred vertex
    def_nbrs:    per deferred vertex, positions of its (assigned) neighbors
    """
    n_assign = len(assign_base)
    choice = [0] * n_assign

    def deferred_product():
        prod = 1
        for base, nbrs in zip(def_base, def_nbrs):
            mask = base
            for q in nbrs:
                mask &= row_ints[choice[q]]
                if not mask:
                    return 0
            prod *= mask.bit_count()
        return prod

    if n_assign == 0:
        return deferred_product()

    total = 0
    stack = [(0, _bits(assign_base[0]))]
    while stack:
        level, it = stack[-1]
        v = next(it, -1)
        if v < 0:
            stack.pop()
            continue
        choice[level] = v
        if level == n_assign - 1:
            total += deferred_product()
        else:
            nxt = level + 1
            mask = assign_base[nxt]
            for q in assign_prev[nxt]:
                mask &= row_ints[choice[q]]
                if not mask:
                    break
            if mask:
                stack.append((nxt, _bits(mask)))
    return total


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def power_adjacency(F, aadj, bu, bv):
    """Broadcast AND over the ordered exponent edges."""
    N = F.shape[0]
    out = np.ones((N, N), dtype=bool)
    for u, v in zip(bu, bv):
        out &= aadj[F[:, u]][:, F[:, v]]
    return out

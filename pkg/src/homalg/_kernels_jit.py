"""numba kernels for the hot counting loops.

Only imported when numba is available and HOMALG_NO_NUMBA is unset.  All
counts produced here are bounded by the caller (candidate-map caps, or the
|V(h)|^|V(g)| < 2^62 guard), so int64 accumulation is exact.
"""

import numpy as np
from numba import njit

_ONE = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S56 = np.uint64(56)


@njit(cache=True, inline="always")
def _popcount64(x):
    x = x - ((x >> _S1) & _M1)
    x = (x & _M2) + ((x >> _S2) & _M2)
    x = (x + (x >> _S4)) & _M4
    return np.int64((x * _H01) >> _S56)


@njit(cache=True)
def brute_force_count(eu, ev, n_g, n_h, hadj, n_maps):
    """Count edge-preserving maps by odometer enumeration of all n_h^n_g maps."""
    dig = np.zeros(n_g, dtype=np.int64)
    m = eu.shape[0]
    count = np.int64(0)
    for _ in range(n_maps):
        ok = True
        for e in range(m):
            if not hadj[dig[eu[e]], dig[ev[e]]]:
                ok = False
                break
        if ok:
            count += 1
        i = 0
        while i < n_g:
            dig[i] += 1
            if dig[i] == n_h:
                dig[i] = 0
                i += 1
            else:
                break
    return count


@njit(cache=True)
def backtrack_count(h_rows, assign_base, ap_indptr, ap_idx, def_base, dp_indptr, dp_idx, n_h):
    """Backtracking count over one connected source component.

    Branch vertices are assigned in the precomputed order with candidate
    bitsets (uint64 words) intersected against the target rows of already
    assigned neighbors; deferred vertices (an independent set whose
    neighbors are all branch vertices) contribute a product of candidate
    popcounts at each complete assignment.
    """
    n_assign = assign_base.shape[0]
    n_def = def_base.shape[0]
    W = assign_base.shape[1] if n_assign > 0 else def_base.shape[1]
    tmp = np.empty(W, dtype=np.uint64)

    if n_assign == 0:
        prod = np.int64(1)
        for dv in range(n_def):
            pc = np.int64(0)
            for w in range(W):
                pc += _popcount64(def_base[dv, w])
            prod *= pc
            if prod == 0:
                return np.int64(0)
        return prod

    cand = np.empty((n_assign, max(1, n_h)), dtype=np.int64)
    cnt = np.zeros(n_assign, dtype=np.int64)
    ptr = np.zeros(n_assign, dtype=np.int64)
    choice = np.empty(n_assign, dtype=np.int64)
    total = np.int64(0)

    # seed level 0
    level = 0
    c = 0
    for w in range(W):
        word = assign_base[0, w]
        while word != np.uint64(0):
            b = word & (~word + _ONE)
            cand[0, c] = np.int64(w * 64) + _popcount64(b - _ONE)
            c += 1
            word ^= b
    cnt[0] = c
    ptr[0] = 0

    while level >= 0:
        if ptr[level] >= cnt[level]:
            level -= 1
            continue
        v = cand[level, ptr[level]]
        ptr[level] += 1
        choice[level] = v
        if level == n_assign - 1:
            prod = np.int64(1)
            for dv in range(n_def):
                for w in range(W):
                    tmp[w] = def_base[dv, w]
                for t in range(dp_indptr[dv], dp_indptr[dv + 1]):
                    q = dp_idx[t]
                    hv = choice[q]
                    for w in range(W):
                        tmp[w] &= h_rows[hv, w]
                pc = np.int64(0)
                for w in range(W):
                    pc += _popcount64(tmp[w])
                if pc == 0:
                    prod = np.int64(0)
                    break
                prod *= pc
            total += prod
        else:
            nxt = level + 1
            for w in range(W):
                tmp[w] = assign_base[nxt, w]
            for t in range(ap_indptr[nxt], ap_indptr[nxt + 1]):
                q = ap_idx[t]
                hv = choice[q]
                for w in range(W):
                    tmp[w] &= h_rows[hv, w]
            c = 0
            for w in range(W):
                word = tmp[w]
                while word != np.uint64(0):
                    b = word & (~word + _ONE)
                    cand[nxt, c] = np.int64(w * 64) + _popcount64(b - _ONE)
                    c += 1
                    word ^= b
            if c > 0:
                cnt[nxt] = c
                ptr[nxt] = 0
                level = nxt
    return total


@njit(cache=True)
def power_adjacency(F, aadj, bu, bv):
    """Dense boolean adjacency of the function graph.

    F[i] decodes vertex i to a tuple of base-graph images; (bu, bv) hold all
    ordered adjacent pairs of the exponent graph.  i ~ j iff every ordered
    exponent edge (u, v) maps to an edge F[i][u] ~ F[j][v].
    """
    N = F.shape[0]
    m = bu.shape[0]
    out = np.zeros((N, N), dtype=np.bool_)
    for i in range(N):
        for j in range(i, N):
            ok = True
            for e in range(m):
                if not aadj[F[i, bu[e]], F[j, bv[e]]]:
                    ok = False
                    break
            if ok:
                out[i, j] = True
                out[j, i] = True
    return out

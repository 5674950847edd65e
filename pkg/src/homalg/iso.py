"""Canonical forms and isomorphism testing for small graphs.

Two graphs get equal canonical forms exactly when they are isomorphic
(loops respected).  Orders up to 8 take a vectorized minimum over all
permutations; larger orders (up to the configured cap) run color
refinement with individualization, pruning branches through twin
vertices whose transposition is an automorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .config import active_config
from .errors import ResourceCapError
from .graphs import Graph

# all-permutations minimum stays cheap through 8! = 40320
_ALL_PERMS_LIMIT = 8


@dataclass(frozen=True)
class CanonicalForm:
    """Order plus the minimal upper-triangle adjacency bit string."""

    order: int
    bits: bytes

    def id(self) -> str:
        """Compact stable identifier, e.g. '6:1c80a0'."""
        return f"{self.order}:{self.bits.hex()}"


@lru_cache(maxsize=16)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


@lru_cache(maxsize=32)
def _tri_weights(m: int) -> np.ndarray:
    # big-endian bit weights so integer order equals bit-string order
    return np.uint64(1) << np.arange(m - 1, -1, -1, dtype=np.uint64)


def _bits_from_int(value: int, m: int) -> bytes:
    bits = np.array([(value >> (m - 1 - k)) & 1 for k in range(m)], dtype=np.uint8)
    return np.packbits(bits).tobytes()


def _canon_small(g: Graph) -> bytes:
    n = g.order
    if n == 0:
        return b""
    a = g.bool_matrix()
    perms = _perm_table(n)
    sub = a[perms[:, :, None], perms[:, None, :]]
    iu, ju = np.triu_indices(n)
    flat = sub[:, iu, ju]
    vals = (flat * _tri_weights(flat.shape[1])).sum(axis=1, dtype=np.uint64)
    return _bits_from_int(int(vals.min()), flat.shape[1])


def _canon_search(g: Graph) -> bytes:
    n = g.order
    nbr = [tuple(int(w) for w in g.neighbors(v)) for v in range(n)]
    looped = np.zeros(n, dtype=bool)
    looped[g.loops()] = True
    rows = [g.row_int(v) for v in range(n)]
    full = (1 << n) - 1

    def refine(colors: list) -> list:
        ncls = len(set(colors))
        while True:
            sigs = [
                (colors[v], tuple(sorted(colors[w] for w in nbr[v])))
                for v in range(n)
            ]
            rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
            colors = [rank[s] for s in sigs]
            if len(rank) == ncls:
                return colors
            ncls = len(rank)

    def emit(colors: list) -> bytes:
        order = sorted(range(n), key=colors.__getitem__)
        bits = []
        for i in range(n):
            r = rows[order[i]]
            for j in range(i, n):
                bits.append((r >> order[j]) & 1)
        return np.packbits(np.array(bits, dtype=np.uint8)).tobytes()

    def twin_reps(cell: list) -> list:
        # transposing two vertices with identical neighborhoods away from the
        # pair (and equal loop status) is an automorphism, so one branch per
        # union-find class suffices
        parent = {v: v for v in cell}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, u in enumerate(cell):
            for v in cell[i + 1:]:
                mask = full ^ (1 << u) ^ (1 << v)
                if looped[u] == looped[v] and (rows[u] & mask) == (rows[v] & mask):
                    parent[find(u)] = find(v)
        reps, seen = [], set()
        for v in cell:
            r = find(v)
            if r not in seen:
                seen.add(r)
                reps.append(v)
        return reps

    best: Optional[bytes] = None

    def descend(colors: list):
        nonlocal best
        colors = refine(colors)
        cells: dict = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            cand = emit(colors)
            if best is None or cand < best:
                best = cand
            return
        for v in twin_reps(target):
            child = [2 * c for c in colors]
            child[v] = 2 * colors[v] - 1
            descend(child)

    degs = g.degrees()
    initial = [(bool(looped[v]), int(degs[v])) for v in range(n)]
    rank = {s: i for i, s in enumerate(sorted(set(initial)))}
    descend([rank[s] for s in initial])
    assert best is not None
    return best


@lru_cache(maxsize=1 << 15)
def _canonical_bits(g: Graph) -> bytes:
    if g.order <= _ALL_PERMS_LIMIT:
        return _canon_small(g)
    return _canon_search(g)


def canonical_form(g: Graph, cap: Optional[int] = None) -> CanonicalForm:
    """Relabeling-invariant form; equal forms mean isomorphic graphs."""
    if cap is None:
        cap = active_config().iso_cap
    if g.order > cap:
        raise ResourceCapError(f"canonical form capped at order {cap}, got {g.order}")
    return CanonicalForm(g.order, _canonical_bits(g))


def _invariants(g: Graph):
    degs = g.degrees()
    looped = np.zeros(g.order, dtype=bool)
    looped[g.loops()] = True
    return (
        g.order,
        g.n_edges,
        int(g.loops().size),
        tuple(sorted(zip(degs.tolist(), looped.tolist()))),
    )


def is_isomorphic(a: Graph, b: Graph, cap: Optional[int] = None) -> bool:
    if cap is None:
        cap = active_config().iso_cap
    for g in (a, b):
        if g.order > cap:
            raise ResourceCapError(f"isomorphism test capped at order {cap}, got {g.order}")
    if _invariants(a) != _invariants(b):
        return False
    return _canonical_bits(a) == _canonical_bits(b)

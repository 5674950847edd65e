"""Graph value type, standard families, and the two wire formats.

Vertices are 0..order-1.  Graphs are undirected, simple (no multi-edges),
and may carry loops; a loop counts once toward its vertex's degree.
Adjacency is kept as symmetric CSR-style sorted neighbor arrays (a looped
vertex lists itself once); packed 64-bit rows and Python-int bit rows are
materialized lazily for the counting kernels.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import FormatError, ParameterError, ResourceCapError

# Packed bit-matrix views are only built below this order; larger graphs are
# handled through component decomposition by the callers.
PACK_LIMIT = 8192


class Graph:
    __slots__ = ("order", "_indptr", "_indices", "_loops", "_packed", "_row_ints", "_key")

    def __init__(self, order: int, indptr: np.ndarray, indices: np.ndarray, loops: np.ndarray):
        # internal: use Graph.from_edges / the family constructors
        self.order = int(order)
        self._indptr = indptr
        self._indices = indices
        self._loops = loops
        self._packed = None
        self._row_ints = None
        self._key = None
        indptr.setflags(write=False)
        indices.setflags(write=False)
        loops.setflags(write=False)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from an iterable of (u, v) pairs; duplicates collapse."""
        if order < 0:
            raise ParameterError(f"order must be >= 0, got {order}")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ParameterError("edges must be (u, v) pairs")
        return cls._from_directed(order, arr[:, 0], arr[:, 1], check=True)

    @classmethod
    def _from_directed(cls, order: int, u: np.ndarray, v: np.ndarray, check: bool = False) -> "Graph":
        """Build from directed endpoint arrays; symmetrized and deduped."""
        n = int(order)
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        if check and u.size:
            bad = (u < 0) | (u >= n) | (v < 0) | (v >= n)
            if bad.any():
                i = int(np.argmax(bad))
                raise ParameterError(f"edge ({u[i]}, {v[i]}) out of range for order {n}")
        if u.size:
            codes = np.concatenate([u * n + v, v * n + u])
            codes = np.unique(codes)
            cu, cv = codes // n, codes % n
        else:
            cu = cv = np.empty(0, dtype=np.int64)
        counts = np.bincount(cu, minlength=n) if n else np.empty(0, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        loops = cu[cu == cv] if cu.size else np.empty(0, dtype=np.int64)
        return cls(n, indptr, cv.astype(np.int64), loops)

    # -- basic queries -------------------------------------------------------

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of v (v itself appears iff v is looped)."""
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < row.size and row[i] == v)

    def has_loop(self, v: int) -> bool:
        return self.has_edge(v, v)

    def loops(self) -> np.ndarray:
        """Sorted vertex ids carrying a loop."""
        return self._loops

    @property
    def n_edges(self) -> int:
        # each non-loop is stored twice, each loop once
        return (int(self._indices.size) + int(self._loops.size)) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Undirected edge list, u <= v, lexicographically sorted, loops once."""
        for u in range(self.order):
            row = self.neighbors(u)
            for w in row[np.searchsorted(row, u):]:
                yield (u, int(w))

    def directed_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """All ordered adjacent pairs (both orientations, loops once)."""
        src = np.repeat(np.arange(self.order, dtype=np.int64), self.degrees())
        return src, self._indices

    # -- derived views -------------------------------------------------------

    def packed(self) -> np.ndarray:
        """(order, words) uint64 adjacency bit rows.  Guarded by PACK_LIMIT."""
        if self._packed is None:
            n = self.order
            if n > PACK_LIMIT:
                raise ResourceCapError(f"packed rows unavailable above order {PACK_LIMIT}")
            w = max(1, (n + 63) // 64)
            rows = np.zeros((n, w), dtype=np.uint64)
            if self._indices.size:
                src, dst = self.directed_pairs()
                np.bitwise_or.at(rows, (src, dst >> 6), np.uint64(1) << (dst & 63).astype(np.uint64))
            self._packed = rows
            rows.setflags(write=False)
        return self._packed

    def bool_matrix(self) -> np.ndarray:
        """Dense boolean adjacency (small graphs only)."""
        n = self.order
        m = np.zeros((n, n), dtype=bool)
        if self._indices.size:
            src, dst = self.directed_pairs()
            m[src, dst] = True
        return m

    def row_int(self, v: int) -> int:
        """Neighborhood of v as a Python int bitset."""
        if self._row_ints is None:
            self._row_ints = [None] * self.order
        r = self._row_ints[v]
        if r is None:
            r = 0
            for w in self.neighbors(v):
                r |= 1 << int(w)
            self._row_ints[v] = r
        return r

    def key(self) -> bytes:
        """Stable bytes identity (equal graphs share it)."""
        if self._key is None:
            self._key = (
                self.order.to_bytes(8, "little")
                + self._indptr.tobytes()
                + self._indices.tobytes()
            )
        return self._key

    # -- transformations -----------------------------------------------------

    def relabel(self, perm) -> "Graph":
        """Image under vertex bijection old -> perm[old]."""
        perm = np.asarray(perm, dtype=np.int64)
        if perm.size != self.order or np.unique(perm).size != self.order:
            raise ParameterError("relabel needs a permutation of all vertices")
        src, dst = self.directed_pairs()
        return Graph._from_directed(self.order, perm[src], perm[dst])

    def induced(self, vertices) -> "Graph":
        """Subgraph induced on the given vertices, relabeled in sorted order."""
        keep = np.unique(np.asarray(vertices, dtype=np.int64))
        if keep.size and (keep[0] < 0 or keep[-1] >= self.order):
            raise ParameterError("induced vertex out of range")
        src, dst = self.directed_pairs()
        if src.size:
            mask = np.isin(src, keep) & np.isin(dst, keep)
            nu = np.searchsorted(keep, src[mask])
            nv = np.searchsorted(keep, dst[mask])
        else:
            nu = nv = src
        return Graph._from_directed(keep.size, nu, nv)

    def complement_simple(self) -> "Graph":
        """Loop-free complement on distinct vertex pairs (loops dropped)."""
        m = self.bool_matrix()
        c = ~m
        np.fill_diagonal(c, False)
        src, dst = np.nonzero(c)
        return Graph._from_directed(self.order, src, dst)

    def components(self) -> list[np.ndarray]:
        """Vertex sets of connected components, each sorted, ordered by minimum."""
        n = self.order
        label = np.full(n, -1, dtype=np.int64)
        comps = []
        for s in range(n):
            if label[s] >= 0:
                continue
            cid = len(comps)
            stack = [s]
            label[s] = cid
            members = [s]
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    w = int(w)
                    if label[w] < 0:
                        label[w] = cid
                        members.append(w)
                        stack.append(w)
            comps.append(np.array(sorted(members), dtype=np.int64))
        return comps

    def is_connected(self) -> bool:
        return self.order <= 1 or len(self.components()) == 1

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.order == other.order
            and np.array_equal(self._indptr, other._indptr)
            and np.array_equal(self._indices, other._indices)
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Graph(order={self.order}, edges={self.n_edges}, loops={len(self._loops)})"


def bipartition(g: Graph) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """Two-color the graph, or None if impossible (a loop always blocks it).

    Returns (side0, side1) as sorted vertex arrays; isolated vertices land
    on side0.  Deterministic: BFS from the lowest unvisited vertex.
    """
    if g._loops.size:
        return None
    n = g.order
    color = np.full(n, -1, dtype=np.int8)
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            cv = color[v]
            for w in g.neighbors(v):
                w = int(w)
                if color[w] < 0:
                    color[w] = 1 - cv
                    queue.append(w)
                elif color[w] == cv:
                    return None
    return np.nonzero(color == 0)[0], np.nonzero(color == 1)[0]


def split_components(g: Graph) -> list[Graph]:
    """Connected components as standalone graphs (sorted-vertex relabeling).

    One vectorized pass over the CSR arrays, so it stays fast for targets
    with 1e5+ components.
    """
    comps = g.components()
    if len(comps) <= 1:
        return [g]
    label = np.empty(g.order, dtype=np.int64)
    rank = np.empty(g.order, dtype=np.int64)
    for cid, members in enumerate(comps):
        label[members] = cid
        rank[members] = np.arange(members.size)
    src, dst = g.directed_pairs()
    out = []
    if src.size:
        comp_of_edge = label[src]
        order_by_comp = np.argsort(comp_of_edge, kind="stable")
        src, dst, comp_of_edge = src[order_by_comp], dst[order_by_comp], comp_of_edge[order_by_comp]
        bounds = np.searchsorted(comp_of_edge, np.arange(len(comps) + 1))
    else:
        bounds = np.zeros(len(comps) + 1, dtype=np.int64)
    for cid, members in enumerate(comps):
        lo, hi = bounds[cid], bounds[cid + 1]
        out.append(Graph._from_directed(members.size, rank[src[lo:hi]], rank[dst[lo:hi]]))
    return out


# -- standard families -------------------------------------------------------


def complete(q: int) -> Graph:
    """K_q, loop-free."""
    if q < 1:
        raise ParameterError(f"complete(q) needs q >= 1, got {q}")
    src, dst = np.nonzero(~np.eye(q, dtype=bool))
    return Graph._from_directed(q, src, dst)


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}; side A occupies vertices 0..a-1."""
    if a < 1 or b < 1:
        raise ParameterError(f"complete_bipartite(a, b) needs a, b >= 1, got ({a}, {b})")
    left = np.repeat(np.arange(a, dtype=np.int64), b)
    right = a + np.tile(np.arange(b, dtype=np.int64), a)
    return Graph._from_directed(a + b, left, right)


def cycle(n: int) -> Graph:
    """C_n, n >= 3."""
    if n < 3:
        raise ParameterError(f"cycle(n) needs n >= 3, got {n}")
    u = np.arange(n, dtype=np.int64)
    return Graph._from_directed(n, u, (u + 1) % n)


def looped_points(k: int) -> Graph:
    """l_k: k isolated vertices, each with a loop."""
    if k < 1:
        raise ParameterError(f"looped_points(k) needs k >= 1, got {k}")
    u = np.arange(k, dtype=np.int64)
    return Graph._from_directed(k, u, u)


def empty_graph(n: int) -> Graph:
    """E_n: n vertices, no edges.  E_0 is allowed."""
    if n < 0:
        raise ParameterError(f"empty_graph(n) needs n >= 0, got {n}")
    return Graph._from_directed(n, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))


def independent_set_graph() -> Graph:
    """Two vertices joined by an edge, vertex 0 looped.

    Homomorphisms into it select independent sets of the source (the looped
    vertex is 'out', the plain vertex 'in').
    """
    return Graph.from_edges(2, [(0, 0), (0, 1)])


def widom_rowlinson() -> Graph:
    """Fully looped path on 3 vertices (the Widom-Rowlinson constraint graph)."""
    return Graph.from_edges(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)])


FAMILIES = {
    "complete": (1, complete),
    "complete_bipartite": (2, complete_bipartite),
    "cycle": (1, cycle),
    "looped_points": (1, looped_points),
    "empty": (1, empty_graph),
    "independent_set": (0, independent_set_graph),
    "widom_rowlinson": (0, widom_rowlinson),
}


def make_family(name: str, *params: int) -> Graph:
    """Construct a named family member, e.g. make_family('cycle', 5)."""
    if name not in FAMILIES:
        raise ParameterError(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
    arity, fn = FAMILIES[name]
    if len(params) != arity:
        raise ParameterError(f"family {name!r} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


# -- serialization -----------------------------------------------------------


def serialize_graph(g: Graph, fmt: str = "edge-list") -> str:
    """Serialize to the edge-list text format or the JSON object format."""
    pairs = list(g.edges())
    if fmt == "edge-list":
        lines = [f"{g.order} {len(pairs)}"]
        lines.extend(f"{u} {v}" for u, v in pairs)
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps({"order": g.order, "edges": [[u, v] for u, v in pairs]}) + "\n"
    raise ParameterError(f"unknown serialization format {fmt!r}")


def parse_graph(text: str) -> Graph:
    """Parse either wire format (auto-detected; JSON starts with '{')."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(text)
    return _parse_edge_list(text)


def _parse_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON graph: {exc}") from exc
    if not isinstance(data, dict) or set(data) - {"order", "edges"}:
        raise FormatError("JSON graph must be an object with 'order' and 'edges'")
    order = data.get("order")
    edges = data.get("edges", [])
    if not isinstance(order, int) or isinstance(order, bool) or order < 0:
        raise FormatError(f"'order' must be a non-negative integer, got {order!r}")
    if not isinstance(edges, list):
        raise FormatError("'edges' must be a list of [u, v] pairs")
    cleaned = []
    for i, e in enumerate(edges):
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise FormatError(f"edge #{i} must be a pair of integers, got {e!r}")
        u, v = e
        if not (0 <= u < order and 0 <= v < order):
            raise FormatError(f"edge #{i} ({u}, {v}) out of range for order {order}")
        cleaned.append((u, v))
    return Graph.from_edges(order, cleaned)


def _parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    # header = first non-blank line
    hdr_idx = None
    for i, line in enumerate(lines):
        if line.strip():
            hdr_idx = i
            break
    if hdr_idx is None:
        raise FormatError("empty input, expected 'order edgecount' header")
    parts = lines[hdr_idx].split()
    if len(parts) != 2:
        raise FormatError("header must be 'order edgecount'", line=hdr_idx + 1)
    try:
        order, count = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError("header fields must be integers", line=hdr_idx + 1) from None
    if order < 0 or count < 0:
        raise FormatError("header fields must be non-negative", line=hdr_idx + 1)
    edges = []
    lineno = hdr_idx + 1
    for raw in lines[hdr_idx + 1:]:
        lineno += 1
        if not raw.strip():
            continue
        fields = raw.split()
        if len(fields) != 2:
            raise FormatError(f"expected 'u v', got {raw!r}", line=lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError(f"expected integers, got {raw!r}", line=lineno) from None
        if not (0 <= u < order and 0 <= v < order):
            raise FormatError(f"edge ({u}, {v}) out of range for order {order}", line=lineno)
        edges.append((u, v))
    if len(edges) != count:
        raise FormatError(f"header promised {count} edge line(s), found {len(edges)}")
    return Graph.from_edges(order, edges)

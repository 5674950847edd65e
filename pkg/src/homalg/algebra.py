"""Graph operations: tensor product, function-graph exponentiation, union,
join, loop operators, and the bipartite double cover.

Labeling is deterministic everywhere: tensor(a, b) names (i, j) as
i*|V(b)|+j, and power(a, b) names each function through PowerVertexCodec,
so serialized outputs are reproducible and the identity suite can verify
its isomorphisms through explicit relabeling witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .config import active_config
from .errors import ParameterError, ResourceCapError
from .graphs import Graph, bipartition, complete, empty_graph, looped_points
from .iso import is_isomorphic

# directed-pair workspace bound for tensor(); beyond this the product is not
# materializable in reasonable memory anyway
_TENSOR_PAIR_LIMIT = 200_000_000
# dense kernels handle powers up to this many vertices; larger ones stream
_POWER_DENSE_LIMIT = 2048
_POWER_EDGE_LIMIT = 100_000_000


@dataclass(frozen=True)
class PowerVertexCodec:
    """Mixed-radix bijection between functions V(B) -> V(A) and integers.

    A function f is the integer sum f(i) * base**i, so digit i is the image
    of exponent-graph vertex i.  base = |V(A)|, arity = |V(B)|.
    """

    base: int
    arity: int

    def __post_init__(self):
        if self.base < 0 or self.arity < 0:
            raise ParameterError("codec base and arity must be non-negative")

    @property
    def count(self) -> int:
        return self.base ** self.arity

    def encode(self, digits: Sequence[int]) -> int:
        if len(digits) != self.arity:
            raise ParameterError(f"expected {self.arity} digits, got {len(digits)}")
        idx = 0
        for i, d in enumerate(digits):
            if not 0 <= d < self.base:
                raise ParameterError(f"digit {d} out of range for base {self.base}")
            idx += d * self.base ** i
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.count:
            raise ParameterError(f"index {idx} out of range for {self.count} functions")
        out = []
        for _ in range(self.arity):
            out.append(idx % self.base)
            idx //= self.base
        return tuple(out)

    def table(self) -> np.ndarray:
        """(count, arity) int64 array of all digit tuples."""
        n = self.count
        out = np.empty((n, self.arity), dtype=np.int64)
        if n == 0:
            return out
        idx = np.arange(n, dtype=np.int64)
        p = 1
        for i in range(self.arity):
            out[:, i] = (idx // p) % self.base
            p *= self.base
        return out


def tensor(a: Graph, b: Graph) -> Graph:
    """Categorical product: (i, j) ~ (i', j') iff i ~ i' and j ~ j'."""
    au, av = a.directed_pairs()
    bu, bv = b.directed_pairs()
    if au.size * bu.size > _TENSOR_PAIR_LIMIT:
        raise ResourceCapError(
            f"tensor product needs {au.size * bu.size} directed pair products"
        )
    nb = b.order
    us = (au[:, None] * nb + bu[None, :]).ravel()
    vs = (av[:, None] * nb + bv[None, :]).ravel()
    return Graph._from_directed(a.order * b.order, us, vs)


def power(a: Graph, b: Graph, cap: Optional[int] = None) -> Graph:
    """Function graph a**b on all maps V(b) -> V(a).

    Two functions are adjacent iff every ordered adjacent pair (u, v) of b
    satisfies f1(u) ~ f2(v) in a; both orientations of each undirected edge
    are required, which makes the relation symmetric, and f1 = f2 passing
    the test yields a loop.
    """
    if cap is None:
        cap = active_config().power_cap
    n = a.order ** b.order
    if n > cap:
        raise ResourceCapError(f"power graph would have {n} vertices, cap is {cap}")
    if n == 0:
        return empty_graph(0)
    codec = PowerVertexCodec(a.order, b.order)
    F = codec.table()
    aadj = a.bool_matrix()
    bu, bv = b.directed_pairs()
    if n <= _POWER_DENSE_LIMIT:
        fn = kernels.jit_power_adjacency or kernels.py_power_adjacency
        adj = fn(F, aadj, bu, bv)
        us, vs = np.nonzero(adj)
        return Graph._from_directed(n, us, vs)
    # streamed row blocks keep memory bounded for big powers
    chunk = max(1, 4_000_000 // n)
    parts_u, parts_v = [], []
    total = 0
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        block = np.ones((hi - lo, n), dtype=bool)
        for u, v in zip(bu, bv):
            block &= aadj[F[lo:hi, u]][:, F[:, v]]
        su, sv = np.nonzero(block)
        total += su.size
        if total > _POWER_EDGE_LIMIT:
            raise ResourceCapError("power graph edge list exceeds materialization limit")
        parts_u.append(su + lo)
        parts_v.append(sv)
    return Graph._from_directed(
        n, np.concatenate(parts_u) if parts_u else np.empty(0, dtype=np.int64),
        np.concatenate(parts_v) if parts_v else np.empty(0, dtype=np.int64),
    )


def disjoint_union(a: Graph, b: Graph) -> Graph:
    """a then b, with b's vertices shifted by |V(a)|."""
    au, av = a.directed_pairs()
    bu, bv = b.directed_pairs()
    us = np.concatenate([au, bu + a.order])
    vs = np.concatenate([av, bv + a.order])
    return Graph._from_directed(a.order + b.order, us, vs)


def join(a: Graph, b: Graph) -> Graph:
    """Disjoint union plus every cross edge."""
    au, av = a.directed_pairs()
    bu, bv = b.directed_pairs()
    cu = np.repeat(np.arange(a.order, dtype=np.int64), b.order)
    cv = a.order + np.tile(np.arange(b.order, dtype=np.int64), a.order)
    us = np.concatenate([au, bu + a.order, cu])
    vs = np.concatenate([av, bv + a.order, cv])
    return Graph._from_directed(a.order + b.order, us, vs)


def loop_all(g: Graph) -> Graph:
    """Add a loop at every vertex (idempotent)."""
    us, vs = g.directed_pairs()
    ar = np.arange(g.order, dtype=np.int64)
    return Graph._from_directed(g.order, np.concatenate([us, ar]), np.concatenate([vs, ar]))


def looped_subgraph(g: Graph) -> Graph:
    """Induced subgraph on the looped vertices, relabeled in order."""
    return g.induced(g.loops())


def double_cover(g: Graph) -> Graph:
    """tensor(g, K_2): two copies of V(g) with cross edges; always bipartite."""
    return tensor(g, complete(2))


def union_power_padding(a: Graph, b: Graph, c: Graph) -> int:
    """Isolated-vertex padding that balances (a+b)**c against a**c + b**c."""
    e = c.order
    return (a.order + b.order) ** e - a.order ** e - b.order ** e


# -- randomized identity suite ------------------------------------------------


def random_graph(rng: np.random.Generator, order: int, edge_prob: float = 0.5,
                 loop_prob: float = 0.5) -> Graph:
    n = int(order)
    edges = []
    for u in range(n):
        if rng.random() < loop_prob:
            edges.append((u, u))
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def _random_order(rng, lo, hi):
    return int(rng.integers(lo, hi + 1))


def _random_odd_core(rng: np.random.Generator, max_order: int) -> Graph:
    """Connected graph containing an odd closed walk (loop or odd cycle)."""
    while True:
        g = random_graph(rng, _random_order(rng, 1, max_order), edge_prob=0.7, loop_prob=0.5)
        if g.is_connected() and bipartition(g) is None:
            return g


def _witnessed(lhs: Graph, rhs: Graph, perm) -> bool:
    """Relabel lhs through the explicit bijection and require exact equality.

    Small instances are additionally pushed through the canonical-form
    isomorphism test so that path stays exercised.
    """
    if lhs.order != rhs.order:
        return False
    if lhs.relabel(np.asarray(perm, dtype=np.int64)) != rhs:
        return False
    if lhs.order <= active_config().iso_cap:
        return is_isomorphic(lhs, rhs)
    return True


def _tensor_swap_perm(na: int, nb: int) -> np.ndarray:
    return np.arange(nb * na, dtype=np.int64).reshape(nb, na).T.ravel()


def _trial_tensor_commutes(rng) -> bool:
    a = random_graph(rng, _random_order(rng, 0, 6))
    b = random_graph(rng, _random_order(rng, 0, 6))
    return _witnessed(tensor(a, b), tensor(b, a), _tensor_swap_perm(a.order, b.order))


def _trial_tensor_associates(rng) -> bool:
    a, b, c = (random_graph(rng, _random_order(rng, 0, 4)) for _ in range(3))
    lhs = tensor(tensor(a, b), c)
    rhs = tensor(a, tensor(b, c))
    # row-major labels make both sides literally identical
    return _witnessed(lhs, rhs, np.arange(lhs.order, dtype=np.int64))


def _trial_tensor_distributes_over_union(rng) -> bool:
    a = random_graph(rng, _random_order(rng, 0, 5))
    b = random_graph(rng, _random_order(rng, 0, 4))
    c = random_graph(rng, _random_order(rng, 0, 4))
    lhs = tensor(a, disjoint_union(b, c))
    rhs = disjoint_union(tensor(a, b), tensor(a, c))
    na, nb, nc = a.order, b.order, c.order
    perm = np.empty(na * (nb + nc), dtype=np.int64)
    for i in range(na):
        for u in range(nb + nc):
            src = i * (nb + nc) + u
            perm[src] = i * nb + u if u < nb else na * nb + i * nc + (u - nb)
    return _witnessed(lhs, rhs, perm)


def _trial_unit_elements(rng) -> bool:
    a = random_graph(rng, _random_order(rng, 0, 6))
    unit = looped_points(1)
    ident = np.arange(a.order, dtype=np.int64)
    return (
        _witnessed(tensor(a, unit), a, ident)
        and _witnessed(tensor(unit, a), a, ident)
        and _witnessed(power(a, unit), a, ident)
    )


def _sized(rng, max_base: int, max_arity: int, bound: int) -> tuple[int, int]:
    while True:
        base = _random_order(rng, 1, max_base)
        arity = _random_order(rng, 1, max_arity)
        if base ** arity <= bound:
            return base, arity


def _trial_power_of_power(rng) -> bool:
    while True:
        na = _random_order(rng, 1, 3)
        nb = _random_order(rng, 1, 3)
        nc = _random_order(rng, 1, 3)
        if na ** (nb * nc) <= 800:
            break
    a = random_graph(rng, na)
    b = random_graph(rng, nb)
    c = random_graph(rng, nc)
    inner = PowerVertexCodec(na, nb)
    outer = PowerVertexCodec(inner.count, nc)
    target = PowerVertexCodec(na, nb * nc)
    perm = np.empty(outer.count, dtype=np.int64)
    for idx in range(outer.count):
        picks = outer.decode(idx)
        digits = [0] * (nb * nc)
        for ci in range(nc):
            fb = inner.decode(picks[ci])
            for bi in range(nb):
                # tensor(b, c) labels exponent vertex (bi, ci) as bi*nc + ci
                digits[bi * nc + ci] = fb[bi]
        perm[idx] = target.encode(digits)
    lhs = power(power(a, b), c)
    rhs = power(a, tensor(b, c))
    return _witnessed(lhs, rhs, perm)


def _trial_power_of_tensor(rng) -> bool:
    while True:
        na = _random_order(rng, 1, 3)
        nb = _random_order(rng, 1, 3)
        nc = _random_order(rng, 1, 2)
        if (na * nb) ** nc <= 800:
            break
    a = random_graph(rng, na)
    b = random_graph(rng, nb)
    c = random_graph(rng, nc)
    cab = PowerVertexCodec(na * nb, nc)
    ca = PowerVertexCodec(na, nc)
    cb = PowerVertexCodec(nb, nc)
    perm = np.empty(cab.count, dtype=np.int64)
    for idx in range(cab.count):
        f = cab.decode(idx)
        perm[idx] = ca.encode([p // nb for p in f]) * cb.count + cb.encode([p % nb for p in f])
    lhs = power(tensor(a, b), c)
    rhs = tensor(power(a, c), power(b, c))
    return _witnessed(lhs, rhs, perm)


def _trial_product_of_powers_merges_exponents(rng) -> bool:
    while True:
        na = _random_order(rng, 1, 3)
        nb = _random_order(rng, 1, 3)
        nc = _random_order(rng, 1, 3)
        if na ** (nb + nc) <= 800:
            break
    a = random_graph(rng, na)
    b = random_graph(rng, nb)
    c = random_graph(rng, nc)
    cb_codec = PowerVertexCodec(na, nb)
    cc_codec = PowerVertexCodec(na, nc)
    shift = na ** nb
    perm = np.empty(cb_codec.count * cc_codec.count, dtype=np.int64)
    for ib in range(cb_codec.count):
        for ic in range(cc_codec.count):
            perm[ib * cc_codec.count + ic] = ib + shift * ic
    lhs = tensor(power(a, b), power(a, c))
    rhs = power(a, disjoint_union(b, c))
    return _witnessed(lhs, rhs, perm)


def _trial_repeated_tensor_power(rng) -> bool:
    while True:
        na = _random_order(rng, 1, 4)
        k = _random_order(rng, 2, 4)
        if na ** k <= 800:
            break
    a = random_graph(rng, na)
    fold = a
    for _ in range(k - 1):
        fold = tensor(fold, a)
    # fold labels are most-significant-digit first; the codec is the reverse
    pows = [na ** e for e in range(k)]
    perm = np.empty(na ** k, dtype=np.int64)
    for idx in range(na ** k):
        val = 0
        for t in range(k):
            val += ((idx // pows[k - 1 - t]) % na) * pows[t]
        perm[idx] = val
    return _witnessed(fold, power(a, looped_points(k)), perm)


def _trial_power_of_union_padding(rng) -> bool:
    while True:
        na = _random_order(rng, 1, 3)
        nb = _random_order(rng, 1, 3)
        nc = _random_order(rng, 1, 3)
        if (na + nb) ** nc <= 800:
            break
    a = random_graph(rng, na)
    b = random_graph(rng, nb)
    c = _random_odd_core(rng, nc)
    nc = c.order
    cu = PowerVertexCodec(na + nb, nc)
    ca = PowerVertexCodec(na, nc)
    cb = PowerVertexCodec(nb, nc)
    pad = union_power_padding(a, b, c)
    if pad != cu.count - ca.count - cb.count:
        return False
    perm = np.empty(cu.count, dtype=np.int64)
    spill = ca.count + cb.count
    for idx in range(cu.count):
        digs = cu.decode(idx)
        if all(d < na for d in digs):
            perm[idx] = ca.encode(digs)
        elif all(d >= na for d in digs):
            perm[idx] = ca.count + cb.encode([d - na for d in digs])
        else:
            perm[idx] = spill
            spill += 1
    lhs = power(disjoint_union(a, b), c)
    rhs = disjoint_union(disjoint_union(power(a, c), power(b, c)), empty_graph(pad))
    return _witnessed(lhs, rhs, perm)


@dataclass(frozen=True)
class IdentityCheck:
    """One randomized isomorphism identity; trial() runs a single instance."""

    name: str
    statement: str
    trial: Callable[[np.random.Generator], bool]


IDENTITIES: tuple[IdentityCheck, ...] = (
    IdentityCheck("tensor_commutes", "A x B = B x A", _trial_tensor_commutes),
    IdentityCheck("tensor_associates", "A x (B x C) = (A x B) x C", _trial_tensor_associates),
    IdentityCheck(
        "tensor_distributes_over_union",
        "A x (B u C) = (A x B) u (A x C)",
        _trial_tensor_distributes_over_union,
    ),
    IdentityCheck("unit_elements", "A x l_1 = A = A^l_1", _trial_unit_elements),
    IdentityCheck("power_of_power", "(A^B)^C = A^(B x C)", _trial_power_of_power),
    IdentityCheck("power_of_tensor", "(A x B)^C = A^C x B^C", _trial_power_of_tensor),
    IdentityCheck(
        "product_of_powers_merges_exponents",
        "A^B x A^C = A^(B u C)",
        _trial_product_of_powers_merges_exponents,
    ),
    IdentityCheck("repeated_tensor_power", "A x ... x A (k times) = A^l_k", _trial_repeated_tensor_power),
    IdentityCheck(
        "power_of_union_padding",
        "(A u B)^C = A^C u B^C u E_n for connected C with an odd closed walk",
        _trial_power_of_union_padding,
    ),
)

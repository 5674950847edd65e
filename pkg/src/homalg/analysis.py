"""Structural predicates, extremal-inequality verdicts, and certificate
builders.

The two inequalities this module keeps comparing, for a d-regular loop-free
source G on n vertices and an arbitrary target H, are

    hom(G, H)^(2d)  vs  hom(K_{d,d}, H)^n      (the "kdd" side)
    hom(G, H)^(d+1) vs  hom(K_{d+1}, H)^n      (the "kd1" side)

Verdicts carry the compared integers verbatim so results can be re-checked
bit for bit.  All big arithmetic is exact Python int.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .algebra import disjoint_union, double_cover, join, looped_subgraph, power, tensor
from .config import active_config
from .errors import ParameterError, PreconditionError, ResourceCapError
from .graphs import (
    Graph,
    bipartition,
    complete,
    cycle,
    empty_graph,
    independent_set_graph,
    looped_points,
)
from .homcount import hom_count, hom_from_complete, hom_from_complete_bipartite
from .iso import canonical_form, is_isomorphic

STRICT_LESS = "strict-less"
EQUAL = "equal"
STRICT_GREATER = "strict-greater"

_HBST_CELL_LIMIT = 100_000_000


def _relation(lhs: int, rhs: int) -> str:
    if lhs < rhs:
        return STRICT_LESS
    return EQUAL if lhs == rhs else STRICT_GREATER


@dataclass(frozen=True)
class InequalityVerdict:
    """Outcome of one exact comparison, with both sides kept as witnesses.

    exponent_clearing records which exponent pair was used: "2d" for the
    complete-bipartite side, "d+1" for the clique side.
    """

    relation: str
    lhs_witness: int
    rhs_witness: int
    exponent_clearing: str

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "lhs_witness": str(self.lhs_witness),
            "rhs_witness": str(self.rhs_witness),
            "exponent_clearing": self.exponent_clearing,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InequalityVerdict":
        return cls(
            relation=str(d["relation"]),
            lhs_witness=int(d["lhs_witness"]),
            rhs_witness=int(d["rhs_witness"]),
            exponent_clearing=str(d["exponent_clearing"]),
        )


# -- structural predicates ----------------------------------------------------


def is_bipartite(g: Graph):
    """Bipartition (side0, side1) as vertex arrays, or None."""
    return bipartition(g)


def regularity(g: Graph) -> Optional[int]:
    """Common degree if every vertex has the same one, else None."""
    if g.order == 0:
        return None
    deg = g.degrees()
    d = int(deg[0])
    return d if np.all(deg == d) else None


def has_clique(g: Graph, q: int) -> bool:
    """Whether q pairwise-adjacent distinct vertices exist (loops ignored)."""
    if q <= 0:
        return True
    n = g.order
    if q == 1:
        return n >= 1
    if q > n:
        return False
    rows = [g.row_int(v) & ~(1 << v) for v in range(n)]

    def walk(size: int, allowed: int) -> bool:
        if size == q:
            return True
        if size + allowed.bit_count() < q:
            return False
        mask = allowed
        while mask:
            bit = mask & -mask
            v = bit.bit_length() - 1
            mask ^= bit
            if walk(size + 1, mask & rows[v]):
                return True
        return False

    return walk(0, (1 << n) - 1)


def build_hbst(h: Graph) -> Graph:
    """Pair graph on V(h)^2: (u, v) ~ (u', v') iff uu' and vv' are edges
    while uv' and u'v are not both edges.

    Vertex (u, v) gets the label u * |V(h)| + v.
    """
    n = h.order
    if n ** 4 > _HBST_CELL_LIMIT:
        raise ResourceCapError(f"pair-graph construction needs {n ** 4} cells")
    a = h.bool_matrix()
    m = (
        a[:, None, :, None]
        & a[None, :, None, :]
        & ~(a[:, None, None, :] & a.T[None, :, :, None])
    )
    us, vs = np.nonzero(m.reshape(n * n, n * n))
    return Graph._from_directed(n * n, us, vs)


def zhao_criterion(h: Graph) -> bool:
    """True iff the pair graph of h is bipartite."""
    return is_bipartite(build_hbst(h)) is not None


# -- exhaustive small-source testing ------------------------------------------


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[Graph, ...]:
    """Canonical representatives of every graph on n vertices, loops allowed.

    Grown by vertex extension: each (n-1)-vertex class acquires a new vertex
    with every neighbor subset and loop flag, then classes are deduplicated
    by canonical form.  Any n-vertex graph restricts to an (n-1)-vertex one,
    so induction gives completeness.
    """
    if n == 0:
        return (empty_graph(0),)
    seen = {}
    for g in _all_graphs(n - 1):
        base = list(g.edges())
        for subset in range(1 << (n - 1)):
            extra = [(i, n - 1) for i in range(n - 1) if subset >> i & 1]
            for loop in (False, True):
                cand = Graph.from_edges(
                    n, base + extra + ([(n - 1, n - 1)] if loop else [])
                )
                seen.setdefault(canonical_form(cand).bits, cand)
    return tuple(seen[k] for k in sorted(seen))


def enumerate_graphs_upto(limit: int):
    """All representatives of order 0..limit, smallest orders first."""
    for k in range(limit + 1):
        yield from _all_graphs(k)


@dataclass(frozen=True)
class BipRedVerdict:
    """Result of the square-versus-double-cover test battery.

    status is "no-counterexample", "counterexample", or
    "certified-by-closure"; witness is the offending source graph when one
    exists; derivation carries the closure certificate when that route was
    used instead of enumeration.
    """

    status: str
    limit: int
    witness: Optional[Graph]
    derivation: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {"status": self.status, "limit": self.limit}
        if self.witness is not None:
            out["witness"] = {
                "order": self.witness.order,
                "edges": [list(e) for e in self.witness.edges()],
            }
        if self.derivation is not None:
            out["derivation"] = self.derivation
        return out


def check_bipartite_reducible(h: Graph, max_source_order: int = 6) -> BipRedVerdict:
    """Search for a source G with hom(G, h)^2 > hom(G x K_2, h).

    Every graph with loops up to the given order is tried, smallest first.
    No counterexample is evidence, not proof; the closure certificates are
    the sound route.
    """
    if max_source_order < 0 or max_source_order > 8:
        raise ParameterError("source order limit must be between 0 and 8")
    for g in enumerate_graphs_upto(max_source_order):
        a = hom_count(g, h)
        if a * a > hom_count(double_cover(g), h):
            return BipRedVerdict("counterexample", max_source_order, g)
    return BipRedVerdict("no-counterexample", max_source_order, None)


# -- closure certificates -----------------------------------------------------


@dataclass(frozen=True)
class CertifiedGraph:
    """A graph plus the derivation that places it in the certified class."""

    graph: Graph
    derivation: dict


def certify_base(h: Graph) -> CertifiedGraph:
    """Admit h as a base member: bipartite, or the looped-point-plus-pendant
    core (independent-set target) up to isomorphism."""
    if is_bipartite(h) is not None:
        return CertifiedGraph(h, {"rule": "bipartite", "order": h.order})
    if h.order <= active_config().iso_cap and is_isomorphic(h, independent_set_graph()):
        return CertifiedGraph(h, {"rule": "independent-set-base"})
    raise PreconditionError("graph is not a recognized base member of the class")


def closure_construct(kind: str, parts) -> CertifiedGraph:
    """Build a new certified member from certified or checked parts.

    kinds:
      "tensor-of-certified": parts = (CertifiedGraph, CertifiedGraph)
      "power-of-certified-by-any": parts = (CertifiedGraph base, Graph exponent)
      "power-of-any-by-bipartite": parts = (Graph base, Graph bipartite exponent)
    """
    if kind == "tensor-of-certified":
        a, b = parts
        if not isinstance(a, CertifiedGraph) or not isinstance(b, CertifiedGraph):
            raise PreconditionError("tensor closure needs two certified operands")
        return CertifiedGraph(
            tensor(a.graph, b.graph),
            {"rule": "tensor", "parts": [a.derivation, b.derivation]},
        )
    if kind == "power-of-certified-by-any":
        base, exponent = parts
        if not isinstance(base, CertifiedGraph):
            raise PreconditionError("power closure needs a certified base")
        return CertifiedGraph(
            power(base.graph, exponent),
            {
                "rule": "power-member-base",
                "base": base.derivation,
                "exponent_order": exponent.order,
            },
        )
    if kind == "power-of-any-by-bipartite":
        base, exponent = parts
        if is_bipartite(exponent) is None:
            raise PreconditionError("exponent graph must be bipartite for this closure")
        return CertifiedGraph(
            power(base, exponent),
            {
                "rule": "power-bipartite-exponent",
                "base_order": base.order,
                "exponent_order": exponent.order,
            },
        )
    raise ParameterError(f"unknown closure kind: {kind!r}")


def certified_bipred_verdict(cert: CertifiedGraph) -> BipRedVerdict:
    """Wrap a closure certificate as a verdict (no enumeration performed)."""
    return BipRedVerdict("certified-by-closure", 0, None, cert.derivation)


# -- regular-graph enumeration ------------------------------------------------


@lru_cache(maxsize=None)
def _regular_classes(n: int, d: int) -> tuple[Graph, ...]:
    if n - 1 - d < d:
        # complementing flips to the sparse side and is a class bijection
        comp = [g.complement_simple() for g in _regular_classes(n, n - 1 - d)]
        reps = {canonical_form(g).bits: g for g in comp}
        return tuple(reps[k] for k in sorted(reps))
    level = {b"": Graph.from_edges(1, [])}
    for k in range(1, n):
        future = n - (k + 1)
        nxt = {}
        for g in level.values():
            deficit = d - g.degrees()
            open_vs = [v for v in range(k) if deficit[v] > 0]
            base = list(g.edges())
            for r in range(min(d, len(open_vs)) + 1):
                for combo in itertools.combinations(open_vs, r):
                    nd = deficit.copy()
                    nd[list(combo)] -= 1
                    # every remaining unit of deficit needs a distinct later
                    # vertex, and later vertices supply at most d units each
                    if nd.max(initial=0) > future or d - r > future:
                        continue
                    if nd.sum() + (d - r) > future * d:
                        continue
                    cand = Graph.from_edges(k + 1, base + [(v, k) for v in combo])
                    nxt.setdefault(canonical_form(cand).bits, cand)
        level = nxt
    reps = {
        key: g for key, g in level.items() if np.all(g.degrees() == d)
    }
    return tuple(reps[k] for k in sorted(reps))


def enumerate_regular(n: int, d: int, connected_only: bool = False) -> list[Graph]:
    """All d-regular simple graphs on n vertices, one per isomorphism class,
    ordered by canonical form."""
    cap = active_config().enum_cap
    if n > cap:
        raise ResourceCapError(f"regular enumeration capped at order {cap}, got {n}")
    if n < 1 or d < 0 or d >= n:
        raise ParameterError(f"need 1 <= n and 0 <= d < n, got n={n}, d={d}")
    if n * d % 2:
        raise ParameterError(f"no {d}-regular graph on {n} vertices: odd degree sum")
    reps = _regular_classes(n, d)
    if connected_only:
        return [g for g in reps if g.is_connected()]
    return list(reps)


# -- inequality verdicts ------------------------------------------------------


def _regular_source(g: Graph) -> int:
    if g.loops().size:
        raise PreconditionError("source graph must be loop-free")
    d = regularity(g)
    if d is None or d < 1:
        raise PreconditionError("source graph must be d-regular with d >= 1")
    return d


def conjecture_verdict(g: Graph, h: Graph) -> tuple[InequalityVerdict, InequalityVerdict]:
    """Both exact comparisons for a d-regular loop-free source g against h."""
    d = _regular_source(g)
    n = g.order
    a = hom_count(g, h)
    mdd = hom_from_complete_bipartite(d, d, h) ** n
    md1 = hom_from_complete(d + 1, h) ** n
    lhs_dd = a ** (2 * d)
    lhs_d1 = a ** (d + 1)
    return (
        InequalityVerdict(_relation(lhs_dd, mdd), lhs_dd, mdd, "2d"),
        InequalityVerdict(_relation(lhs_d1, md1), lhs_d1, md1, "d+1"),
    )


def wr_verdict(g: Graph, h: Graph, b: Graph) -> InequalityVerdict:
    """Clique-side comparison against the looped core of h**b for bipartite b.

    The target is looped_subgraph(power(h, b)); the comparison is
    hom(g, T)^(d+1) vs hom(K_{d+1}, T)^n.
    """
    d = _regular_source(g)
    if is_bipartite(b) is None:
        raise PreconditionError("exponent graph must be bipartite")
    t = looped_subgraph(power(h, b))
    lhs = hom_count(g, t) ** (d + 1)
    rhs = hom_from_complete(d + 1, t) ** g.order
    return InequalityVerdict(_relation(lhs, rhs), lhs, rhs, "d+1")


# -- counterexample construction ----------------------------------------------


def _graph_to_obj(g: Graph) -> dict:
    return {"order": g.order, "edges": [list(e) for e in g.edges()]}


def _graph_from_obj(d: dict) -> Graph:
    return Graph.from_edges(int(d["order"]), [tuple(e) for e in d["edges"]])


@dataclass(frozen=True)
class CounterexampleCertificate:
    """Replayable witness that scaling the target flips the kdd comparison.

    kh is the disjoint union of k copies of h; both verdicts are against kh
    and must come out strict-greater, and k must be minimal for that.
    """

    d: int
    g: Graph
    h: Graph
    k: int
    kh: Graph
    verdict_kdd: InequalityVerdict
    verdict_kd1: InequalityVerdict

    def to_json(self) -> str:
        return json.dumps(
            {
                "d": self.d,
                "g": _graph_to_obj(self.g),
                "h": _graph_to_obj(self.h),
                "k": str(self.k),
                "kh": _graph_to_obj(self.kh),
                "verdict_kdd": self.verdict_kdd.to_dict(),
                "verdict_kd1": self.verdict_kd1.to_dict(),
            },
            indent=2,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "CounterexampleCertificate":
        d = json.loads(text)
        return cls(
            d=int(d["d"]),
            g=_graph_from_obj(d["g"]),
            h=_graph_from_obj(d["h"]),
            k=int(d["k"]),
            kh=_graph_from_obj(d["kh"]),
            verdict_kdd=InequalityVerdict.from_dict(d["verdict_kdd"]),
            verdict_kd1=InequalityVerdict.from_dict(d["verdict_kd1"]),
        )


def _scale_beats(k: int, exp: int, lhs_base: int, rhs: int) -> bool:
    return k ** exp * lhs_base > rhs


def build_counterexample(d: int, h: Optional[Graph] = None,
                         g: Optional[Graph] = None) -> CounterexampleCertificate:
    """Scale h until the kdd inequality flips for the connected source g.

    For d >= 7 the stock instance is h = K_d, g = join of two (d-2)-cycles;
    lower degrees need explicit graphs (and none exist below 4).
    """
    if d < 4:
        raise ParameterError("no flipping instance exists below degree 4")
    if h is None or g is None:
        if d < 7:
            raise ParameterError("degrees 4..6 need explicit source and target graphs")
        if h is None:
            h = complete(d)
        if g is None:
            g = join(cycle(d - 2), cycle(d - 2))
    if h.loops().size:
        raise PreconditionError("target graph must be loop-free")
    if has_clique(h, d + 1):
        raise PreconditionError(f"target graph contains a clique on {d + 1} vertices")
    if g.loops().size:
        raise PreconditionError("source graph must be loop-free")
    if regularity(g) != d:
        raise PreconditionError(f"source graph must be {d}-regular")
    if not g.is_connected():
        raise PreconditionError("source graph must be connected")
    n = g.order
    if n >= 2 * d:
        raise PreconditionError("source order must be smaller than 2d")
    a = hom_count(g, h)
    if a == 0:
        raise PreconditionError("source graph admits no map into the target")
    # connected sources split over copies: hom(G, kH) = k * hom(G, H), so the
    # flip condition is k^(2d-n) * hom(G,H)^(2d) > hom(K_dd,H)^n
    exp = 2 * d - n
    lhs_base = a ** (2 * d)
    rhs = hom_from_complete_bipartite(d, d, h) ** n
    if _scale_beats(1, exp, lhs_base, rhs):
        k = 1
    else:
        lo, hi = 1, 2
        while not _scale_beats(hi, exp, lhs_base, rhs):
            lo, hi = hi, hi * 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _scale_beats(mid, exp, lhs_base, rhs):
                hi = mid
            else:
                lo = mid
        k = hi
    kh = tensor(h, looped_points(k))
    verdict_kdd, verdict_kd1 = conjecture_verdict(g, kh)
    return CounterexampleCertificate(d, g, h, k, kh, verdict_kdd, verdict_kd1)


def verify_certificate(cert: CounterexampleCertificate) -> list[str]:
    """Re-derive everything the certificate claims; empty list means valid."""
    problems = []
    d, g, h, k = cert.d, cert.g, cert.h, cert.k
    if k < 1:
        return ["copy count must be positive"]
    if cert.kh != tensor(h, looped_points(k)):
        problems.append("kh is not the disjoint union of k copies of h")
    try:
        kdd, kd1 = conjecture_verdict(g, cert.kh)
    except (ParameterError, PreconditionError) as exc:
        return problems + [f"verdicts not recomputable: {exc}"]
    if kdd != cert.verdict_kdd:
        problems.append("stored kdd verdict does not match recomputation")
    if kd1 != cert.verdict_kd1:
        problems.append("stored kd1 verdict does not match recomputation")
    if kdd.relation != STRICT_GREATER:
        problems.append("kdd comparison did not flip")
    if kd1.relation != STRICT_GREATER:
        problems.append("kd1 comparison did not flip")
    if hom_count(g, h) == 0:
        problems.append("source graph admits no map into the target")
    n = g.order
    if n >= 2 * d:
        problems.append("source order must be smaller than 2d")
    else:
        a = hom_count(g, h)
        exp = 2 * d - n
        lhs_base = a ** (2 * d)
        rhs = hom_from_complete_bipartite(d, d, h) ** n
        if not _scale_beats(k, exp, lhs_base, rhs):
            problems.append("stated copy count does not flip the comparison")
        if k > 1 and _scale_beats(k - 1, exp, lhs_base, rhs):
            problems.append("copy count is not minimal")
    return problems


def build_connected_counterexample(h: Graph, k: int, d: int) -> Graph:
    """k copies of connected h wired by fresh paths of 2d edges between the
    0-labelled roots of every copy pair.

    Copy i occupies labels [i*|V(h)|, (i+1)*|V(h)|); path interiors follow.
    """
    if not h.is_connected() or h.order == 0:
        raise PreconditionError("building block must be connected and nonempty")
    if k < 2:
        raise ParameterError("need at least two copies to wire together")
    if d < 1:
        raise ParameterError("path length parameter must be positive")
    m = h.order
    edges = []
    for i in range(k):
        off = i * m
        edges.extend((u + off, v + off) for u, v in h.edges())
    nxt = k * m
    for i, j in itertools.combinations(range(k), 2):
        prev = i * m
        for _ in range(2 * d - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, j * m))
    return Graph.from_edges(nxt, edges)


# -- survey -------------------------------------------------------------------


@dataclass(frozen=True)
class SurveyRow:
    canonical_id: str
    hom: int
    verdict_kdd: str
    verdict_kd1: str


@dataclass(frozen=True)
class SurveyReport:
    n: int
    d: int
    rows: tuple
    maximizers: tuple

    def to_csv(self) -> str:
        lines = ["canonical_id,hom_count,verdict_kdd,verdict_kd1"]
        lines.extend(
            f"{r.canonical_id},{r.hom},{r.verdict_kdd},{r.verdict_kd1}"
            for r in self.rows
        )
        lines.append("# maximizer: " + ";".join(self.maximizers))
        return "\n".join(lines) + "\n"


def survey_maximizer(n: int, d: int, h: Graph) -> SurveyReport:
    """Tabulate hom counts into h over every d-regular class on n vertices
    and flag the maximizing classes."""
    if d < 1:
        raise ParameterError("survey needs d >= 1")
    rows = []
    best = -1
    maximizers = []
    for g in enumerate_regular(n, d):
        a = hom_count(g, h)
        kdd, kd1 = conjecture_verdict(g, h)
        cid = canonical_form(g).id()
        rows.append(SurveyRow(cid, a, kdd.relation, kd1.relation))
        if a > best:
            best = a
            maximizers = [cid]
        elif a == best:
            maximizers.append(cid)
    return SurveyReport(n, d, tuple(rows), tuple(maximizers))

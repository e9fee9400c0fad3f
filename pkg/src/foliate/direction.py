"""Edge directions on a triangulation and the predicates built on them.

A direction orients every edge of the 1-skeleton.  This module checks the
three local-orientation conditions (connected outgoing/incoming link
subgraphs, a total order on each tetrahedron, recurrence), builds the
short-edge/long-edge expansion graph, lifts directions to cyclic covers and
computes the covering-walk constant used for isoperimetric comparisons.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import (
    BadWeights,
    DomainError,
    DuplicateEdge,
    MissingEdge,
    NoTotalOrder,
    NotRecurrent,
    ParseError,
    UnknownEdge,
)
from .graphs import bfs_path, reachable, strongly_connected_components
from .triangulation import Triangulation, _strip_comment


class Direction:
    """An orientation ``tail -> head`` of every edge class of ``T``."""

    def __init__(self, T: Triangulation, arrows):
        orient = {}
        for tail, head in arrows:
            tail, head = int(tail), int(head)
            key = (min(tail, head), max(tail, head))
            if tail == head or key not in T.edge_index:
                raise UnknownEdge(f"{tail} {head} is not an edge")
            if key in orient:
                raise DuplicateEdge(f"edge {key} oriented twice")
            orient[key] = (tail, head)
        missing = [e for e in T.edges if e not in orient]
        if missing:
            raise MissingEdge(f"{len(missing)} edges have no orientation, e.g. {missing[0]}")
        self.triangulation = T
        self.orient = {e: orient[e] for e in T.edges}
        succ = defaultdict(list)
        pred = defaultdict(list)
        for tail, head in self.orient.values():
            succ[tail].append(head)
            pred[head].append(tail)
        self.succ = {v: tuple(sorted(succ[v])) for v in T.vertices}
        self.pred = {v: tuple(sorted(pred[v])) for v in T.vertices}

    @classmethod
    def from_key(cls, T, key):
        """Orient every edge towards the endpoint with the larger ``key``."""
        return cls(T, [(a, b) if key(a) < key(b) else (b, a) for a, b in T.edges])

    def points(self, u, v) -> bool:
        """True if the edge {u, v} is oriented u -> v."""
        return self.orient[(min(u, v), max(u, v))] == (u, v)

    def flipped(self, *edges) -> Direction:
        flip = {(min(e), max(e)) for e in edges}
        arrows = [(h, t) if e in flip else (t, h) for e, (t, h) in self.orient.items()]
        return Direction(self.triangulation, arrows)

    def arrows(self):
        return list(self.orient.values())

    def __eq__(self, other):
        if not isinstance(other, Direction):
            return NotImplemented
        return self.triangulation == other.triangulation and self.orient == other.orient

    def __repr__(self):
        return f"Direction({len(self.orient)} edges)"


def parse_direction(T: Triangulation, text: str) -> Direction:
    """Parse a ``.dir`` document: one ``u v`` line per edge, meaning u -> v."""
    arrows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"expected 'u v', got {raw.strip()!r}", lineno)
        arrows.append((int(parts[0]), int(parts[1])))
    return Direction(T, arrows)


def render_direction(d: Direction) -> str:
    return "".join("%d %d\n" % d.orient[e] for e in d.triangulation.edges)


# -- orders on simplices ---------------------------------------------------

def simplex_order(d: Direction, simplex):
    """Sort the vertices of a simplex along the direction.

    Returns ``(order, None)`` if the restriction is a total order, else
    ``(None, cycle)`` with a directed 3-cycle ``(a, b, c)`` meaning
    a -> b -> c -> a, rotated to start at its smallest vertex.
    """
    for tri in combinations(sorted(simplex), 3):
        a, b, c = tri
        if d.points(a, b) and d.points(b, c) and d.points(c, a):
            return None, (a, b, c)
        if d.points(a, c) and d.points(c, b) and d.points(b, a):
            return None, (a, c, b)
    outdeg = {v: sum(d.points(v, w) for w in simplex if w != v) for v in simplex}
    return tuple(sorted(simplex, key=lambda v: -outdeg[v])), None


def face_order(d: Direction, face):
    order, cycle = simplex_order(d, face)
    if order is None:
        raise NoTotalOrder(tuple(sorted(face)), cycle)
    return order


def require_total_order(d: Direction):
    """Raise NoTotalOrder for the first tetrahedron carrying a 3-cycle."""
    for tet in d.triangulation.tets:
        order, cycle = simplex_order(d, tet)
        if order is None:
            raise NoTotalOrder(tet, cycle)


# -- local orientation -----------------------------------------------------

@dataclass(frozen=True)
class VertexLinkVerdict:
    vertex: int
    outgoing: tuple[int, ...]
    incoming: tuple[int, ...]
    outgoing_components: int
    incoming_components: int

    @property
    def ok(self):
        return self.outgoing_components == 1 and self.incoming_components == 1

    def to_dict(self):
        return {
            "vertex": self.vertex,
            "outgoing": list(self.outgoing),
            "incoming": list(self.incoming),
            "outgoing_connected": self.outgoing_components == 1,
            "incoming_connected": self.incoming_components == 1,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class TetVerdict:
    tet: tuple[int, int, int, int]
    order: tuple[int, ...] | None
    cycle: tuple[int, int, int] | None

    @property
    def ok(self):
        return self.cycle is None


@dataclass(frozen=True)
class RecurrenceVerdict:
    scc_count: int
    witness: tuple[int, int] | None  # (u, v) with no directed path u -> v

    @property
    def ok(self):
        return self.scc_count == 1

    def to_dict(self):
        return {
            "ok": self.ok,
            "scc_count": self.scc_count,
            "unreachable_pair": None if self.witness is None else list(self.witness),
        }


@dataclass(frozen=True)
class LocalOrientationReport:
    links: tuple[VertexLinkVerdict, ...]
    tets: tuple[TetVerdict, ...]
    recurrence: RecurrenceVerdict

    @property
    def link_ok(self):
        return all(v.ok for v in self.links)

    @property
    def tet_order_ok(self):
        return all(t.ok for t in self.tets)

    @property
    def ok(self):
        return self.link_ok and self.tet_order_ok and self.recurrence.ok

    def failed_link_vertices(self):
        return [v.vertex for v in self.links if not v.ok]

    def failed_tets(self):
        return [t for t in self.tets if not t.ok]

    def to_dict(self):
        return {
            "ok": self.ok,
            "link_condition": {
                "ok": self.link_ok,
                "failed_vertices": self.failed_link_vertices(),
                "vertices": [v.to_dict() for v in self.links],
            },
            "tet_order_condition": {
                "ok": self.tet_order_ok,
                "failures": [
                    {"tet": list(t.tet), "cycle": list(t.cycle)} for t in self.failed_tets()
                ],
            },
            "recurrence": self.recurrence.to_dict(),
        }


def check_recurrence(d: Direction) -> RecurrenceVerdict:
    T = d.triangulation
    comp = strongly_connected_components(T.vertices, d.succ)
    count = len(set(comp.values()))
    if count == 1:
        return RecurrenceVerdict(1, None)
    root = T.vertices[0]
    fwd = reachable(d.succ, root)
    for v in T.vertices:
        if v not in fwd:
            return RecurrenceVerdict(count, (root, v))
    back = reachable(d.pred, root)
    for v in T.vertices:
        if v not in back:
            return RecurrenceVerdict(count, (v, root))
    raise AssertionError("several SCCs but every vertex reaches and is reached")


def check_local_orientation(d: Direction) -> LocalOrientationReport:
    T = d.triangulation
    links = []
    for v in T.vertices:
        lk = T.link(v)
        out = tuple(w for w in lk.vertices if d.points(v, w))
        inc = tuple(w for w in lk.vertices if d.points(w, v))
        links.append(VertexLinkVerdict(
            vertex=v,
            outgoing=out,
            incoming=inc,
            outgoing_components=len(lk.induced_components(out)),
            incoming_components=len(lk.induced_components(inc)),
        ))
    tets = []
    for tet in T.tets:
        order, cycle = simplex_order(d, tet)
        tets.append(TetVerdict(tet, order, cycle))
    return LocalOrientationReport(tuple(links), tuple(tets), check_recurrence(d))


# -- expansion graph -------------------------------------------------------

@dataclass(frozen=True)
class ExpansionArc:
    short: tuple[int, int]
    long: tuple[int, int]
    tag: str  # "lower" or "upper"
    face: tuple[int, int, int]


@dataclass
class ExpansionGraph:
    nodes: tuple[tuple[int, int], ...]
    arcs: tuple[ExpansionArc, ...]
    scc: dict = field(repr=False)

    def on_loop(self, arc: ExpansionArc) -> bool:
        return self.scc[arc.short] == self.scc[arc.long]

    def successors(self):
        succ = defaultdict(list)
        for a in self.arcs:
            succ[a.short].append(a.long)
        return succ


@dataclass
class ExpansionResult:
    graph: ExpansionGraph
    expanding: bool
    witness_face: tuple[int, int, int] | None

    def to_dict(self):
        return {
            "expanding": self.expanding,
            "witness_face": None if self.witness_face is None else list(self.witness_face),
            "arcs": len(self.graph.arcs),
            "scc_count": len(set(self.graph.scc.values())),
        }


def _edge(a, b):
    return (a, b) if a < b else (b, a)


def expansion_from_orders(nodes, ordered_faces) -> ExpansionResult:
    """Expansion graph of faces given with their vertex orders ``(lo, mid, hi)``.

    ``ordered_faces`` is a sequence of ``(face, (lo, mid, hi))``; ``nodes``
    are the edge classes.  Each face contributes its lower arc
    ``lo-mid -> lo-hi`` and its upper arc ``mid-hi -> lo-hi``.
    """
    arcs = []
    for face, (lo, mid, hi) in ordered_faces:
        long = _edge(lo, hi)
        arcs.append(ExpansionArc(_edge(lo, mid), long, "lower", face))
        arcs.append(ExpansionArc(_edge(mid, hi), long, "upper", face))
    succ = defaultdict(list)
    for a in arcs:
        succ[a.short].append(a.long)
    nodes = tuple(nodes)
    scc = strongly_connected_components(nodes, succ)
    graph = ExpansionGraph(nodes, tuple(arcs), scc)
    for lower, upper in zip(arcs[::2], arcs[1::2]):
        if graph.on_loop(lower) and graph.on_loop(upper):
            return ExpansionResult(graph, True, lower.face)
    return ExpansionResult(graph, False, None)


def check_expanding(d: Direction) -> ExpansionResult:
    T = d.triangulation
    require_total_order(d)
    return expansion_from_orders(T.edges, [(f, face_order(d, f)) for f in T.faces])


# -- cyclic covers ---------------------------------------------------------

def check_face_equations(d: Direction, weights):
    """Raise BadWeights unless every face satisfies w(lo,mid) + w(mid,hi) = w(lo,hi)."""
    T = d.triangulation
    missing = [e for e in T.edges if e not in weights]
    if missing:
        raise BadWeights(f"no weight for edge {missing[0]}")
    for face in T.faces:
        lo, mid, hi = face_order(d, face)
        if weights[_edge(lo, mid)] + weights[_edge(mid, hi)] != weights[_edge(lo, hi)]:
            raise BadWeights(f"face equation fails on {face}")


@dataclass
class CyclicCover:
    triangulation: Triangulation
    direction: Direction
    components: int
    lift: dict  # (base vertex, sheet) -> cover vertex id


def cyclic_cover(d: Direction, weights, n: int) -> CyclicCover:
    """The n-fold cyclic cover defined by integer edge weights mod n.

    The directed edge u -> v of weight w lifts to (u, k) -> (v, k + w mod n).
    """
    if n < 1:
        raise DomainError("cover degree must be at least 1")
    T = d.triangulation
    check_face_equations(d, weights)
    rank = {v: i for i, v in enumerate(T.vertices)}
    lift = {(v, k): rank[v] * n + k for v in T.vertices for k in range(n)}

    def w(a, b):
        return weights[_edge(a, b)]

    tets = []
    for tet in T.tets:
        a, b, c, e = face_order(d, tet)
        for k in range(n):
            tets.append((lift[(a, k)],
                         lift[(b, (k + w(a, b)) % n)],
                         lift[(c, (k + w(a, c)) % n)],
                         lift[(e, (k + w(a, e)) % n)]))
    cover = Triangulation(tets)
    arrows = []
    for (u, v) in T.edges:
        tail, head = d.orient[(u, v)]
        for k in range(n):
            arrows.append((lift[(tail, k)], lift[(head, (k + weights[(u, v)]) % n)]))
    return CyclicCover(cover, Direction(cover, arrows), len(cover.components()), lift)


# -- covering walk and the comparison constant -----------------------------

@dataclass(frozen=True)
class IsoperimetricConstants:
    walk: tuple[int, ...]  # closed: walk[0] == walk[-1]
    c1: int
    max_edge_degree: int
    K: Fraction

    def multiplicities(self):
        return Counter(_edge(a, b) for a, b in zip(self.walk, self.walk[1:]))

    def to_dict(self):
        return {
            "walk_length": len(self.walk) - 1,
            "c1": self.c1,
            "max_edge_degree": self.max_edge_degree,
            "K": str(self.K),
        }


def isoperimetric_constant(d: Direction) -> IsoperimetricConstants:
    """A closed directed walk through every edge, and K = c1 * maxdeg / 3.

    The walk visits edges in canonical order, travelling between them along
    BFS-shortest directed paths (ties to the smallest next vertex), and
    closes up with a shortest path back to its start.
    """
    T = d.triangulation
    if not check_recurrence(d).ok:
        raise NotRecurrent("the directed 1-skeleton is not strongly connected")
    start = d.orient[T.edges[0]][0]
    walk = [start]
    for e in T.edges:
        tail, head = d.orient[e]
        walk.extend(bfs_path(d.succ, walk[-1], tail)[1:])
        walk.append(head)
    walk.extend(bfs_path(d.succ, walk[-1], start)[1:])
    counts = Counter(_edge(a, b) for a, b in zip(walk, walk[1:]))
    c1 = max(counts.values())
    deg = T.max_edge_degree()
    return IsoperimetricConstants(tuple(walk), c1, deg, Fraction(c1 * deg, 3))


def quasigeodesic_margin(c: float, eps: float):
    """Margin (pi - eps)/2 - asin(1/cosh(c/2)) and whether it is positive.

    Piecewise geodesics with segments of length c and angle defect eps are
    embedded quasigeodesics when the margin is positive.  Evaluated in double
    precision exactly as written.
    """
    if not (math.isfinite(c) and c > 0):
        raise DomainError(f"segment length must be positive and finite, got {c}")
    if not (0 <= eps < math.pi):
        raise DomainError(f"angle defect must lie in [0, pi), got {eps}")
    try:
        sech = 1.0 / math.cosh(c / 2)
    except OverflowError:
        sech = 0.0
    margin = (math.pi - eps) / 2 - math.asin(sech)
    return margin, margin > 0

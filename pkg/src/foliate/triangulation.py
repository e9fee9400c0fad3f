"""Closed simplicial triangulations of 3-manifolds.

A triangulation is given by its tetrahedra, each a 4-set of non-negative
integer vertex ids.  Faces and edges are determined by their vertex sets, so
only genuinely simplicial complexes can be represented.  Construction
validates that the complex is a closed 3-manifold: every face lies in two
tetrahedra, every edge link is a circle and every vertex link is a 2-sphere.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import BadLink, Degenerate, NotClosed, ParseError, UnknownVertex


def _components(nodes, adjacency):
    """Connected components of an undirected graph, as sorted tuples."""
    seen = set()
    comps = []
    for start in sorted(nodes):
        if start in seen:
            continue
        seen.add(start)
        stack = [start]
        comp = []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adjacency.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


@dataclass(frozen=True)
class LinkComplex:
    """The link of a vertex: a triangulated 2-sphere around ``center``."""

    center: int
    vertices: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        es = set()
        for tri in self.triangles:
            es.update(combinations(tri, 2))
        return tuple(sorted(es))

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj = defaultdict(set)
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: tuple(sorted(adj[v])) for v in self.vertices}

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    def induced_components(self, subset) -> list[tuple[int, ...]]:
        """Components of the subgraph of the link 1-skeleton induced on ``subset``."""
        subset = set(subset)
        adj = {v: [w for w in self.adjacency[v] if w in subset] for v in subset}
        return _components(subset, adj)


class Triangulation:
    """An immutable closed simplicial 3-manifold.

    Tetrahedra are stored canonically: each as an ascending 4-tuple, and the
    list sorted lexicographically.  Tetrahedron indices refer to this order.
    """

    def __init__(self, tets):
        canon = []
        for tet in tets:
            tet = tuple(int(v) for v in tet)
            if len(tet) != 4:
                raise Degenerate(f"tetrahedron {tet} does not have 4 vertices")
            if min(tet) < 0:
                raise Degenerate(f"negative vertex id in {tet}")
            if len(set(tet)) != 4:
                raise Degenerate(f"repeated vertex in tetrahedron {tet}")
            canon.append(tuple(sorted(tet)))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise Degenerate(f"tetrahedron {a} appears twice")
        if not canon:
            raise Degenerate("no tetrahedra")
        self.tets: tuple[tuple[int, int, int, int], ...] = tuple(canon)

        vertex_tets = defaultdict(list)
        edge_tets = defaultdict(list)
        face_tets = defaultdict(list)
        for i, tet in enumerate(self.tets):
            for v in tet:
                vertex_tets[v].append(i)
            for e in combinations(tet, 2):
                edge_tets[e].append(i)
            for f in combinations(tet, 3):
                face_tets[f].append(i)

        self.vertices: tuple[int, ...] = tuple(sorted(vertex_tets))
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edge_tets))
        self.faces: tuple[tuple[int, int, int], ...] = tuple(sorted(face_tets))
        self.vertex_tets = {v: tuple(ts) for v, ts in vertex_tets.items()}
        self.edge_tets = {e: tuple(ts) for e, ts in edge_tets.items()}
        self.face_tets = {f: tuple(ts) for f, ts in face_tets.items()}
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        self.face_index = {f: i for i, f in enumerate(self.faces)}

        nbrs = defaultdict(set)
        for a, b in self.edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        self.neighbors = {v: tuple(sorted(nbrs[v])) for v in self.vertices}

        self._validate()

    # -- validation ---------------------------------------------------
    def _validate(self):
        for f in self.faces:
            n = len(self.face_tets[f])
            if n != 2:
                raise NotClosed(f"face {f} lies in {n} tetrahedra")
        for e in self.edges:
            a, b = e
            adj = defaultdict(list)
            for t in self.edge_tets[e]:
                c, d = (v for v in self.tets[t] if v != a and v != b)
                adj[c].append(d)
                adj[d].append(c)
            if len(_components(adj, adj)) != 1:
                raise BadLink(f"link of edge {e} is not a single circle")
        for v in self.vertices:
            lk = self.link(v)
            if len(lk.induced_components(lk.vertices)) != 1:
                raise BadLink(f"link of vertex {v} is disconnected")
            chi = lk.euler_characteristic()
            if chi != 2:
                raise BadLink(f"link of vertex {v} has Euler characteristic {chi}")

    # -- queries ------------------------------------------------------
    def link(self, v) -> LinkComplex:
        if v not in self.vertex_tets:
            raise UnknownVertex(v)
        tris = tuple(sorted(
            tuple(w for w in self.tets[t] if w != v) for t in self.vertex_tets[v]
        ))
        return LinkComplex(center=v, vertices=self.neighbors[v], triangles=tris)

    @property
    def f_vector(self) -> tuple[int, int, int, int]:
        return (len(self.vertices), len(self.edges), len(self.faces), len(self.tets))

    def euler_characteristic(self) -> int:
        v, e, f, t = self.f_vector
        return v - e + f - t

    def components(self) -> list[tuple[int, ...]]:
        return _components(self.vertices, self.neighbors)

    def max_edge_degree(self) -> int:
        return max(len(ts) for ts in self.edge_tets.values())

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.tets == other.tets

    def __hash__(self):
        return hash(self.tets)

    def __repr__(self):
        return "Triangulation(f_vector=%r)" % (self.f_vector,)


def vertex_link(T: Triangulation, v: int) -> LinkComplex:
    return T.link(v)


def _strip_comment(line):
    return line.split("#", 1)[0].strip()


def parse_triangulation(text: str) -> Triangulation:
    """Parse a ``.tri`` document (``tet a b c d`` lines, ``#`` comments)."""
    tets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        if parts[0] != "tet" or len(parts) != 5:
            raise ParseError(f"expected 'tet v0 v1 v2 v3', got {raw.strip()!r}", lineno)
        try:
            ids = [int(p) for p in parts[1:]]
        except ValueError:
            raise ParseError(f"non-integer vertex id in {raw.strip()!r}", lineno) from None
        if any(p.startswith(("+", "-")) for p in parts[1:]) or min(ids) < 0:
            raise ParseError("vertex ids must be non-negative decimals", lineno)
        tets.append(ids)
    return Triangulation(tets)


def render_triangulation(T: Triangulation) -> str:
    return "".join("tet %d %d %d %d\n" % tet for tet in T.tets)

"""Normal surfaces in standard 7-coordinates.

Each tetrahedron (vertices v0<v1<v2<v3) carries four triangle counts, one
per corner v0..v3, and three quad counts.  Quad ``q{j-1}`` separates
``{v0, vj}`` from the other two vertices, i.e. quads are indexed by the
partner of the smallest vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidVector, ParseError
from .triangulation import Triangulation, _strip_comment


def quad_index(tet, x, y):
    """Index of the quad separating {x, y} from the other two vertices of ``tet``."""
    v0 = tet[0]
    partner = y if x == v0 else x if y == v0 else None
    if partner is None:
        # {x, y} is the complementary pair of {v0, partner}
        partner = next(v for v in tet[1:] if v not in (x, y))
    return tet.index(partner) - 1


class NormalVector:
    def __init__(self, T: Triangulation, coords):
        coords = tuple(tuple(int(c) for c in row) for row in coords)
        if len(coords) != len(T.tets) or any(len(row) != 7 for row in coords):
            raise InvalidVector(f"expected {len(T.tets)} rows of 7 coordinates")
        self.triangulation = T
        self.coords = coords

    @classmethod
    def zero(cls, T):
        return cls(T, [(0,) * 7] * len(T.tets))

    @classmethod
    def vertex_link(cls, T, v):
        rows = []
        for tet in T.tets:
            row = [0] * 7
            if v in tet:
                row[tet.index(v)] = 1
            rows.append(row)
        return cls(T, rows)

    def triangles(self, i, x):
        return self.coords[i][self.triangulation.tets[i].index(x)]

    def quads(self, i, x, y):
        return self.coords[i][4 + quad_index(self.triangulation.tets[i], x, y)]

    def corner_arcs(self, i, face, x):
        """Normal arcs cutting off corner ``x`` of ``face`` inside tetrahedron ``i``."""
        w = next(v for v in self.triangulation.tets[i] if v not in face)
        return self.triangles(i, x) + self.quads(i, x, w)

    def edge_crossings(self, i, x, y):
        z, w = (v for v in self.triangulation.tets[i] if v != x and v != y)
        return (self.triangles(i, x) + self.triangles(i, y)
                + self.quads(i, x, z) + self.quads(i, x, w))

    def piece_count(self):
        return sum(sum(row) for row in self.coords)

    def __add__(self, other):
        if self.triangulation != other.triangulation:
            raise ValueError("normal vectors on different triangulations")
        return NormalVector(self.triangulation,
                            [[a + b for a, b in zip(r, s)] for r, s in zip(self.coords, other.coords)])

    def __eq__(self, other):
        if not isinstance(other, NormalVector):
            return NotImplemented
        return self.triangulation == other.triangulation and self.coords == other.coords

    def __repr__(self):
        return f"NormalVector({self.piece_count()} pieces)"


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str | None = None  # "negative", "quad" or "matching"
    detail: tuple = ()

    def __bool__(self):
        return self.ok


def validate_normal_vector(T: Triangulation, n: NormalVector) -> Validation:
    """Non-negativity, one quad type per tetrahedron, and the matching equations."""
    for i, row in enumerate(n.coords):
        if min(row) < 0:
            return Validation(False, "negative", (i,))
    for i, row in enumerate(n.coords):
        if sum(1 for q in row[4:] if q) > 1:
            return Validation(False, "quad", (i,))
    for face in T.faces:
        t1, t2 = T.face_tets[face]
        for x in face:
            a, b = n.corner_arcs(t1, face, x), n.corner_arcs(t2, face, x)
            if a != b:
                return Validation(False, "matching", (face, x, a, b))
    return Validation(True)


@dataclass(frozen=True)
class SurfaceStats:
    euler_characteristic: int
    components: int
    pieces: int
    arcs: int
    edge_crossings: dict

    def to_dict(self):
        return {
            "euler_characteristic": self.euler_characteristic,
            "components": self.components,
            "pieces": self.pieces,
            "arcs": self.arcs,
            "crossing_total": sum(self.edge_crossings.values()),
        }


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def surface_stats(T: Triangulation, n: NormalVector) -> SurfaceStats:
    if not validate_normal_vector(T, n):
        raise InvalidVector(validate_normal_vector(T, n))
    crossings = {}
    for e in T.edges:
        crossings[e] = n.edge_crossings(T.edge_tets[e][0], *e)
    arcs = 0
    for face in T.faces:
        arcs += sum(n.corner_arcs(T.face_tets[face][0], face, x) for x in face)
    pieces = n.piece_count()

    # piece ids: per tetrahedron, triangle copies by corner, then quad copies
    start = []
    total = 0
    for row in n.coords:
        start.append(total)
        total += sum(row)

    def stack(i, face, x):
        """Piece ids along corner x of face in tet i, nearest the corner first."""
        tet = T.tets[i]
        row = n.coords[i]
        k = tet.index(x)
        base = start[i] + sum(row[:k])
        ids = list(range(base, base + row[k]))
        w = next(v for v in tet if v not in face)
        qi = quad_index(tet, x, w)
        q = row[4 + qi]
        qbase = start[i] + sum(row[:4 + qi])
        quads = list(range(qbase, qbase + q))
        # quad copy 0 lies nearest the pair containing tet[0]
        if x == tet[0] or w == tet[0]:
            ids.extend(quads)
        else:
            ids.extend(reversed(quads))
        return ids

    uf = _UnionFind(total)
    for face in T.faces:
        t1, t2 = T.face_tets[face]
        for x in face:
            for a, b in zip(stack(t1, face, x), stack(t2, face, x)):
                uf.union(a, b)
    components = len({uf.find(p) for p in range(total)})
    chi = sum(crossings.values()) - arcs + pieces
    return SurfaceStats(chi, components, pieces, arcs, crossings)


def parse_normal_vector(T: Triangulation, text: str) -> NormalVector:
    rows = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) != 8:
            raise ParseError("expected 'tet-index t0 t1 t2 t3 q0 q1 q2'", lineno)
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise ParseError("non-integer entry", lineno) from None
        if vals[0] in rows or not 0 <= vals[0] < len(T.tets):
            raise ParseError(f"bad or repeated tetrahedron index {vals[0]}", lineno)
        rows[vals[0]] = vals[1:]
    coords = [rows.get(i, [0] * 7) for i in range(len(T.tets))]
    return NormalVector(T, coords)


def render_normal_vector(n: NormalVector) -> str:
    return "".join(
        "%d %s\n" % (i, " ".join(map(str, row))) for i, row in enumerate(n.coords)
    )


def edge_crossings_agree(T: Triangulation, n: NormalVector) -> bool:
    for e in T.edges:
        if len({n.edge_crossings(i, *e) for i in T.edge_tets[e]}) != 1:
            return False
    return True


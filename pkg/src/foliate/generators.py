"""Desk-scale example triangulations.

``generate_product`` builds surface x S^1 with a height function and the
direction it induces, so its output satisfies the monotone-edge and
in/out-edge hypotheses by construction.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .direction import Direction
from .errors import BadSurface, TooFewLayers
from .triangulation import Triangulation, _components


def generate_pentachoron() -> Triangulation:
    """Boundary of the 4-simplex on vertices 0..4 (a 3-sphere)."""
    return Triangulation(combinations(range(5), 4))


def tetrahedron_boundary():
    """The 2-sphere as the boundary of a tetrahedron."""
    return [tuple(t) for t in combinations(range(4), 3)]


def seven_vertex_torus():
    """Moebius' minimal torus on Z/7."""
    tris = []
    for i in range(7):
        tris.append(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        tris.append(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return sorted(tris)


def validate_surface(triangles):
    """Check a list of triangles is a closed simplicial surface; return it canonically."""
    tris = []
    for t in triangles:
        t = tuple(int(v) for v in t)
        if len(t) != 3 or len(set(t)) != 3 or min(t) < 0:
            raise BadSurface(f"bad triangle {t}")
        tris.append(tuple(sorted(t)))
    tris.sort()
    if not tris or len(set(tris)) != len(tris):
        raise BadSurface("empty surface or repeated triangle")
    edge_count = defaultdict(int)
    star = defaultdict(list)
    for t in tris:
        for e in combinations(t, 2):
            edge_count[e] += 1
        for v in t:
            a, b = (w for w in t if w != v)
            star[v].append((a, b))
    for e, n in edge_count.items():
        if n != 2:
            raise BadSurface(f"edge {e} lies in {n} triangles")
    for v, arcs in star.items():
        adj = defaultdict(list)
        for a, b in arcs:
            adj[a].append(b)
            adj[b].append(a)
        if len(_components(adj, adj)) != 1:
            raise BadSurface(f"link of vertex {v} is not a circle")
    return tris


class ProductBundle(NamedTuple):
    triangulation: Triangulation
    direction: Direction
    heights: dict  # vertex id -> Fraction in [0, layers)


def generate_product(surface, layers: int) -> ProductBundle:
    """Triangulate surface x S^1 with ``layers`` copies of the surface.

    Surface vertices are ranked 0..V-1 by id; copy k of rank r gets id
    k*V + r and height k + r/(V+1).  Each prism over a triangle a<b<c between
    layers k and k+1 is cut into the three tetrahedra spanned by consecutive
    windows of a_k < b_k < c_k < a_{k+1} < b_{k+1} < c_{k+1}, so the diagonal
    of the side square over u<v runs from v_k to u_{k+1}.  Every edge is
    oriented up the height along its lift.
    """
    tris = validate_surface(surface)
    if layers < 3:
        raise TooFewLayers(f"need at least 3 layers for a simplicial product, got {layers}")
    verts = sorted({v for t in tris for v in t})
    V = len(verts)
    rank = {v: i for i, v in enumerate(verts)}

    def vid(v, k):
        return (k % layers) * V + rank[v]

    tets = []
    arrows = set()
    for a, b, c in tris:
        for k in range(layers):
            chain = [vid(a, k), vid(b, k), vid(c, k), vid(a, k + 1), vid(b, k + 1), vid(c, k + 1)]
            for s in range(3):
                window = chain[s:s + 4]
                tets.append(window)
                # consecutive-window vertices ascend in height, so every
                # pair inside a window is oriented from earlier to later
                arrows.update(combinations(window, 2))
    T = Triangulation(tets)
    d = Direction(T, sorted(arrows))
    heights = {vid(v, k): k + Fraction(rank[v], V + 1) for v in verts for k in range(layers)}
    return ProductBundle(T, d, heights)

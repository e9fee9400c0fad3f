"""Piecewise-affine maps to the circle and their fibers.

Positive edge weights solving the triangle equations define a map from the
triangulation to a circle that is affine on each simplex.  The circle has
circumference equal to the gcd of all cycle sums of the weights (so the
induced map on first homology is onto), and heights are reported after
dividing by it, i.e. in R/Z.  Vertices are pushed to distinct phases by a
small coboundary perturbation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd

from .direction import Direction, _edge, check_face_equations, face_order, require_total_order
from .errors import BadWeights, ThetaCollision
from .lp import FeasibilityOutcome, solve_positive_kernel
from .normal import NormalVector, quad_index
from .triangulation import Triangulation


@dataclass(frozen=True)
class TriangleSystem:
    """One row per face: x(lo,mid) + x(mid,hi) - x(lo,hi) = 0."""

    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, int, int], ...]
    rows: tuple[tuple[int, ...], ...]

    def weights_from(self, values):
        return dict(zip(self.edges, values))


def complex_system(arrows, faces) -> TriangleSystem:
    """Face-boundary rows of a directed 2-complex given by arrows and triangles.

    Each row is the boundary of its face read in the sense that agrees with
    most of its edges: ``+1, +1, -1`` for a totally ordered face and
    ``+1, +1, +1`` for a cyclically oriented one.
    """
    orient = {}
    for tail, head in arrows:
        e = _edge(tail, head)
        if e in orient or tail == head:
            raise ValueError(f"bad or repeated arrow {tail} -> {head}")
        orient[e] = (tail, head)
    edges = tuple(sorted(orient))
    col = {e: j for j, e in enumerate(edges)}
    rows = []
    faces = tuple(tuple(sorted(f)) for f in faces)
    for a, b, c in faces:
        row = [0] * len(edges)
        for x, y in ((a, b), (b, c), (c, a)):
            e = _edge(x, y)
            if e not in col:
                raise ValueError(f"face {(a, b, c)} uses missing edge {e}")
            row[col[e]] = 1 if orient[e] == (x, y) else -1
        if sum(row) < 0:
            row = [-v for v in row]
        rows.append(tuple(row))
    return TriangleSystem(edges, faces, tuple(rows))


def triangle_system(d: Direction) -> TriangleSystem:
    """Rows x(lo,mid) + x(mid,hi) - x(lo,hi) = 0, one per face."""
    T = d.triangulation
    require_total_order(d)
    return complex_system(d.arrows(), T.faces)


def solve_triangle_system(d: Direction) -> tuple[TriangleSystem, FeasibilityOutcome]:
    system = triangle_system(d)
    return system, solve_positive_kernel(system.rows, ncols=len(system.edges))


def render_weights(d: Direction, weights) -> str:
    """``.wts`` text: one ``u v w`` line per edge, u -> v."""
    return "".join(
        "%d %d %d\n" % (*d.orient[e], weights[e]) for e in d.triangulation.edges
    )


# -- the map ----------------------------------------------------------------

def _potentials(d: Direction, weights):
    """Integer potentials along a BFS spanning forest, and the gcd of cycle sums."""
    T = d.triangulation
    pot = {}
    for root in T.vertices:
        if root in pot:
            continue
        pot[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in T.neighbors[x]:
                if y in pot:
                    continue
                w = weights[_edge(x, y)]
                pot[y] = pot[x] + (w if d.points(x, y) else -w)
                queue.append(y)
    g = 0
    for e in T.edges:
        tail, head = d.orient[e]
        g = gcd(g, pot[tail] + weights[e] - pot[head])
    return pot, g


@dataclass(frozen=True)
class FibrationMap:
    direction: Direction
    weights: dict  # edge -> positive int, length of tail -> head
    offsets: dict  # vertex -> Fraction, distinct, in [0, 1/2)
    period: int  # circumference of the target circle
    potentials: dict  # vertex -> int in [0, period)

    def adjusted_length(self, tail, head) -> Fraction:
        return self.weights[_edge(tail, head)] + self.offsets[head] - self.offsets[tail]

    def phase(self, v) -> Fraction:
        """Position of v on the circle, scaled to [0, 1)."""
        return ((self.potentials[v] + self.offsets[v]) / self.period) % 1

    def phases(self):
        return {v: self.phase(v) for v in self.direction.triangulation.vertices}

    def to_dict(self):
        return {
            "period": self.period,
            "max_weight": max(self.weights.values()),
            "phases": {str(v): str(p) for v, p in self.phases().items()},
        }


def build_fibration_map(d: Direction, weights) -> FibrationMap:
    T = d.triangulation
    weights = dict(weights)
    for e in T.edges:
        w = weights.get(e)
        if not isinstance(w, int) or w <= 0:
            raise BadWeights(f"edge {e} needs a positive integer weight, got {w!r}")
    check_face_equations(d, weights)
    V = len(T.vertices)
    scale = 2 * V * max(weights.values()) + 1
    offsets = {v: Fraction(i, scale) for i, v in enumerate(T.vertices)}
    pot, g = _potentials(d, weights)
    period = g if g > 0 else 1
    potentials = {v: p % period for v, p in pot.items()}
    return FibrationMap(d, weights, offsets, period, potentials)


# -- link verification ------------------------------------------------------

@dataclass(frozen=True)
class LinkVerification:
    circles: dict  # vertex -> number of circles in the level set through it

    @property
    def ok(self):
        return all(c == 1 for c in self.circles.values())

    def to_dict(self):
        return {
            "ok": self.ok,
            "circles": {str(v): c for v, c in self.circles.items()},
            "failed_vertices": [v for v, c in self.circles.items() if c != 1],
        }


def level_circles(T: Triangulation, v, sign) -> int:
    """Circles in the zero set of a vertex-signed affine function on link(v).

    Every link triangle with mixed signs holds one segment joining its two
    sign-changing edges; these segments close up into circles.
    """
    lk = T.link(v)
    changing = [e for e in lk.edges if sign[e[0]] != sign[e[1]]]
    parent = {e: e for e in changing}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for a, b, c in lk.triangles:
        cut = [e for e in ((a, b), (a, c), (b, c)) if e in parent]
        if cut:
            # a mixed triangle has exactly two sign-changing edges
            parent[find(cut[0])] = find(cut[1])
    return len({find(e) for e in changing})


def verify_vertex_links(m: FibrationMap) -> LinkVerification:
    d = m.direction
    T = d.triangulation
    circles = {}
    for v in T.vertices:
        # the lifted height of w relative to v is +length or -length
        sign = {}
        for w in T.neighbors[v]:
            h = m.adjusted_length(v, w) if d.points(v, w) else -m.adjusted_length(w, v)
            sign[w] = h > 0
        circles[v] = level_circles(T, v, sign)
    return LinkVerification(circles)


# -- fibers -----------------------------------------------------------------

def default_theta(m: FibrationMap) -> Fraction:
    """Midpoint of the widest gap between consecutive vertex phases on R/Z."""
    ps = sorted(set(m.phases().values()))
    best = None
    for i, p in enumerate(ps):
        q = ps[i + 1] if i + 1 < len(ps) else ps[0] + 1
        gap = q - p
        if best is None or gap > best[0]:
            best = (gap, (p + q) / 2 % 1)
    return best[1]


def check_theta(m: FibrationMap, theta) -> Fraction:
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    for v, p in m.phases().items():
        if p == theta:
            raise ThetaCollision(theta, v, default_theta(m))
    return theta


def extract_fiber(m: FibrationMap, theta) -> NormalVector:
    """Normal coordinates of the preimage of ``theta`` (in R/Z)."""
    theta = check_theta(m, theta)
    d = m.direction
    T = d.triangulation
    level = theta * m.period
    rows = []
    for tet in T.tets:
        a, b, c, e = face_order(d, tet)
        ha = m.potentials[a] + m.offsets[a]
        h = {a: ha}
        for x in (b, c, e):
            h[x] = ha + m.adjusted_length(a, x)
        row = [0] * 7
        # level values level + j*period strictly between h[a] and h[e]
        t = level + m.period * ceil((h[a] - level) / m.period)
        while t < h[e]:
            if t < h[b]:
                row[tet.index(a)] += 1
            elif t < h[c]:
                row[4 + quad_index(tet, a, b)] += 1
            else:
                row[tet.index(e)] += 1
            t += m.period
        rows.append(row)
    return NormalVector(T, rows)

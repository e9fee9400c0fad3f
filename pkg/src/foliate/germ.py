"""Bounded-area path germs and the oriented-loop test.

Paths from a base vertex are undirected edge walks, taken up to backtrack
cancellation.  Two paths with the same endpoint are identified when the
loop ``P . Q^-1`` can be reduced to the trivial loop by at most ``m`` face
moves; the identification is closed up transitively.  Oriented edges of the
direction then induce arcs between the classes.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .direction import Direction, _edge
from .errors import BudgetTooLarge, LoopNotClosed, UnknownVertex
from .graphs import find_cycle
from .lp import _row_reduce
from .triangulation import Triangulation

DEFAULT_CAP = 6


def _reduce_cyclic(word):
    """Cancel backtracks ``a b a -> a`` until none remain, cyclically."""
    if len(word) <= 1:
        return ()
    stack = []
    for v in (*word, word[0]):
        if len(stack) >= 2 and stack[-2] == v:
            stack.pop()
        else:
            stack.append(v)
    # stack is now a reduced closed path; peel x y ... y x down to y ... y
    while len(stack) >= 3 and stack[1] == stack[-2]:
        stack = stack[1:-1]
    return tuple(stack[:-1])


def _canonical(word):
    """Least rotation of the word or of its reverse."""
    if not word:
        return ()
    n = len(word)
    rev = word[::-1]
    return min(min(word[i:] + word[:i] for i in range(n)),
               min(rev[i:] + rev[:i] for i in range(n)))


# -- homology prefilter ------------------------------------------------------

class _Boundaries:
    """Canonical representatives of edge chains modulo face boundaries."""

    def __init__(self, T: Triangulation):
        col = T.edge_index
        rows = []
        for a, b, c in T.faces:
            row = [0] * len(T.edges)
            row[col[(a, b)]] += 1
            row[col[(b, c)]] += 1
            row[col[(a, c)]] -= 1
            rows.append(row)
        echelon = _row_reduce(rows)
        # the remainder is linear, so reduce each edge once
        self.reduced = {}
        for e, j in col.items():
            chain = {j: Fraction(1)}
            for c, row, _ in echelon:
                f = chain.get(c)
                if f:
                    for k, v in row.items():
                        chain[k] = chain.get(k, 0) - f * v
            self.reduced[e] = {k: v for k, v in chain.items() if v}

    def key(self, path):
        chain = defaultdict(Fraction)
        for a, b in zip(path, path[1:]):
            sign = 1 if a < b else -1
            for k, v in self.reduced[_edge(a, b)].items():
                chain[k] += sign * v
        return tuple(sorted((k, v) for k, v in chain.items() if v))


class Filler:
    """Face-move search on cyclic words, memoized per triangulation."""

    def __init__(self, T: Triangulation):
        self.triangulation = T
        self.apex = defaultdict(list)
        for a, b, c in T.faces:
            self.apex[(a, b)].append(c)
            self.apex[(a, c)].append(b)
            self.apex[(b, c)].append(a)
        self.faces = frozenset(T.faces)
        self.boundaries = _Boundaries(T)
        self._area = {}  # canonical word -> exact minimal area
        self._beyond = {}  # canonical word -> largest budget known to fail

    def _moves(self, word):
        n = len(word)
        for i in range(n):
            a, b = word[i], word[(i + 1) % n]
            for c in self.apex[_edge(a, b)]:
                yield word[:i + 1] + (c,) + word[i + 1:]
            c = word[(i + 2) % n]
            if n >= 3 and tuple(sorted((a, b, c))) in self.faces:
                j = (i + 1) % n
                yield word[:j] + word[j + 1:]

    def area_at_most(self, word, budget: int) -> bool:
        start = _canonical(_reduce_cyclic(tuple(word)))
        if not start:
            return True
        known = self._area.get(start)
        if known is not None:
            return known <= budget
        if self._beyond.get(start, -1) >= budget:
            return False
        if self.boundaries.key(start + start[:1]):
            # a filling disk would make the loop a boundary
            self._beyond[start] = float("inf")
            return False
        limit = len(start) + 2 * budget
        seen = {start}
        frontier = [start]
        for cost in range(1, budget + 1):
            nxt = []
            for w in frontier:
                for child in self._moves(w):
                    child = _canonical(_reduce_cyclic(child))
                    if not child:
                        self._area[start] = cost
                        return True
                    if child not in seen and len(child) <= limit:
                        seen.add(child)
                        nxt.append(child)
            frontier = nxt
            if not frontier:
                break
        self._beyond[start] = budget
        return False


def _loop_word(T: Triangulation, loop):
    loop = [int(v) for v in loop]
    if len(loop) < 2 or loop[0] != loop[-1]:
        raise LoopNotClosed(f"loop {loop} does not return to its start")
    for a, b in zip(loop, loop[1:]):
        if a == b or _edge(a, b) not in T.edge_index:
            raise LoopNotClosed(f"{a} - {b} is not an edge")
    return tuple(loop[:-1])


def fill_area_at_most(T: Triangulation, loop, budget: int, filler: Filler | None = None) -> bool:
    """Whether the closed vertex path ``loop`` bounds a disk of area <= budget."""
    if budget < 0:
        raise ValueError("budget must be non-negative")
    word = _loop_word(T, loop)
    return (filler or Filler(T)).area_at_most(word, budget)


# -- germs -------------------------------------------------------------------

@dataclass(frozen=True)
class GermComplex:
    base: int
    budget: int
    nodes: tuple[tuple[int, ...], ...]  # least representative path per class
    arcs: tuple[tuple[int, int], ...]  # (i, j): class i -> class j
    members: tuple[int, ...]  # number of reduced paths per class

    def successors(self):
        succ = defaultdict(list)
        for i, j in self.arcs:
            succ[i].append(j)
        return succ

    def to_dot(self) -> str:
        lines = [f"germ base={self.base} m={self.budget}"]
        for i, path in enumerate(self.nodes):
            lines.append("node %d %s" % (i, "-".join(map(str, path))))
        for i, j in self.arcs:
            lines.append(f"arc {i} {j}")
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {
            "base": self.base,
            "m": self.budget,
            "nodes": len(self.nodes),
            "arcs": len(self.arcs),
        }


def _reduced_paths(T: Triangulation, p, m):
    """All backtrack-free walks from p with at most m edges, in lexicographic order."""
    out = []

    def extend(path):
        out.append(path)
        if len(path) > m:
            return
        prev = path[-2] if len(path) >= 2 else None
        for w in T.neighbors[path[-1]]:
            if w != prev:
                extend(path + (w,))

    extend((p,))
    return out


def build_germ(T: Triangulation, d: Direction, p: int, m: int, cap: int = DEFAULT_CAP,
               filler: Filler | None = None) -> GermComplex:
    if p not in T.vertex_tets:
        raise UnknownVertex(p)
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > cap:
        raise BudgetTooLarge(f"m={m} exceeds the cap {cap}")
    filler = filler or Filler(T)
    paths = _reduced_paths(T, p, m)
    index = {path: i for i, path in enumerate(paths)}
    parent = list(range(len(paths)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # a filling disk makes the two paths homologous rel endpoints
    boundaries = filler.boundaries
    groups = defaultdict(list)
    for i, path in enumerate(paths):
        groups[(path[-1], boundaries.key(path))].append(i)
    # the closure only depends on which pairs fill, so test short loops first
    # and skip pairs that are already joined
    pairs = []
    for members in groups.values():
        for k, i in enumerate(members):
            P = paths[i]
            for j in members[:k]:
                Q = paths[j]
                # length of P . Q^-1 once shared prefix and suffix cancel
                n = min(len(P), len(Q))
                head = next((t for t in range(n) if P[t] != Q[t]), n)
                tail = next((t for t in range(1, n) if P[-t] != Q[-t]), n)
                pairs.append((len(P) + len(Q) - 2 * (head + tail), j, i))
    pairs.sort()
    for _, j, i in pairs:
        ri, rj = find(i), find(j)
        if ri != rj and filler.area_at_most((paths[i] + paths[j][-2::-1])[:-1], m):
            parent[max(ri, rj)] = min(ri, rj)

    # paths are listed lexicographically, so each root is its class's least path
    roots = sorted({find(i) for i in range(len(paths))})
    node_of = {r: k for k, r in enumerate(roots)}
    counts = defaultdict(int)
    for i in range(len(paths)):
        counts[node_of[find(i)]] += 1
    arcs = set()
    for path in paths:
        if len(path) > m:
            continue
        x = path[-1]
        for w in T.neighbors[x]:
            longer = path[:-1] if len(path) >= 2 and path[-2] == w else path + (w,)
            a, b = node_of[find(index[path])], node_of[find(index[longer])]
            arcs.add((a, b) if d.points(x, w) else (b, a))
    return GermComplex(p, m, tuple(paths[r] for r in roots), tuple(sorted(arcs)),
                       tuple(counts[k] for k in range(len(roots))))


@dataclass(frozen=True)
class GermVerdict:
    acyclic: bool
    cycle: tuple[int, ...] | None = None  # node indices, first == last
    paths: tuple[tuple[int, ...], ...] | None = None  # representatives along the cycle

    @property
    def vertices(self):
        """The oriented vertex loop traced by the class endpoints."""
        return None if self.paths is None else tuple(path[-1] for path in self.paths)

    def to_dict(self):
        out = {"acyclic": self.acyclic}
        if not self.acyclic:
            out["witness"] = {
                "nodes": list(self.cycle),
                "vertices": list(self.vertices),
                "paths": [list(p) for p in self.paths],
            }
        return out


def germ_acyclic(g: GermComplex) -> GermVerdict:
    cycle = find_cycle(range(len(g.nodes)), g.successors())
    if cycle is None:
        return GermVerdict(True)
    return GermVerdict(False, tuple(cycle), tuple(g.nodes[i] for i in cycle))

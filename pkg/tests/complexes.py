"""Small 2-complexes (edges, triangles) used for the half-space equivalence check.

Every orientation of every base complex is a test case; each has at most
six edges, so there are at most 64 orientations per base.
"""

from __future__ import annotations

from itertools import combinations, product

BASES = {
    "triangle": ([(0, 1), (1, 2), (0, 2)], [(0, 1, 2)]),
    "bare-triangle": ([(0, 1), (1, 2), (0, 2)], []),
    "square": ([(0, 1), (1, 2), (2, 3), (0, 3)], []),
    "square-diagonal": ([(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)], [(0, 1, 2)]),
    "disk": ([(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)], [(0, 1, 2), (0, 2, 3)]),
    "bowtie": ([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)], [(0, 1, 2)]),
    "bare-bowtie": ([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)], []),
    "tetrahedron": (list(combinations(range(4), 2)), list(combinations(range(4), 3))),
    "punctured-tetrahedron": (list(combinations(range(4), 2)), list(combinations(range(4), 3))[:3]),
    "two-faces-of-k4": (list(combinations(range(4), 2)), [(0, 1, 2), (0, 2, 3)]),
    "k4-graph": (list(combinations(range(4), 2)), []),
    "theta": ([(0, 1), (1, 2), (0, 2), (0, 3), (2, 3)], []),
}


def orientations(edges):
    for flips in product((False, True), repeat=len(edges)):
        yield [(b, a) if f else (a, b) for (a, b), f in zip(edges, flips)]


def all_cases():
    """(name, arrows, faces) for every orientation of every base."""
    for name, (edges, faces) in BASES.items():
        for arrows in orientations(edges):
            yield name, arrows, faces

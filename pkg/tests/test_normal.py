from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliate import NormalVector, default_theta, extract_fiber, parse_triangulation, surface_stats, validate_normal_vector
from foliate.errors import InvalidVector, ParseError
from foliate.normal import edge_crossings_agree, parse_normal_vector, quad_index, render_normal_vector

from oracles import surface_oracle


@pytest.fixture(scope="module")
def manifolds(fixtures_dir):
    return {name: parse_triangulation((fixtures_dir / f"{name}.tri").read_text())
            for name in ("pentachoron", "s2xs1", "t2xs1")}


def test_quad_indexing():
    tet = (2, 5, 7, 9)
    assert quad_index(tet, 2, 5) == quad_index(tet, 7, 9) == 0
    assert quad_index(tet, 7, 2) == quad_index(tet, 5, 9) == 1
    assert quad_index(tet, 2, 9) == quad_index(tet, 5, 7) == 2


def test_every_vertex_link_is_a_sphere(manifolds):
    for T in manifolds.values():
        for v in T.vertices:
            n = NormalVector.vertex_link(T, v)
            assert validate_normal_vector(T, n)
            assert edge_crossings_agree(T, n)
            stats = surface_stats(T, n)
            assert (stats.euler_characteristic, stats.components) == (2, 1)
            assert surface_oracle(T, n.coords) == (2, 1)
            assert stats.pieces == len(T.vertex_tets[v])
            assert sum(stats.edge_crossings.values()) == len(T.neighbors[v])


def test_pentachoron_link_of_zero(pentachoron):
    n = NormalVector.vertex_link(pentachoron, 0)
    assert [row[0] for row in n.coords] == [1, 1, 1, 1, 0]
    assert all(sum(row) == (1 if 0 in tet else 0) for row, tet in zip(n.coords, pentachoron.tets))


def test_empty_surface(pentachoron):
    n = NormalVector.zero(pentachoron)
    assert validate_normal_vector(pentachoron, n)
    stats = surface_stats(pentachoron, n)
    assert (stats.euler_characteristic, stats.components, stats.pieces) == (0, 0, 0)


def test_two_quad_types_violate_the_quad_condition(pentachoron):
    rows = [[0] * 7 for _ in pentachoron.tets]
    rows[2][4] = rows[2][6] = 1
    verdict = validate_normal_vector(pentachoron, NormalVector(pentachoron, rows))
    assert not verdict and verdict.reason == "quad" and verdict.detail == (2,)


def test_lonely_triangle_violates_matching(pentachoron):
    rows = [[0] * 7 for _ in pentachoron.tets]
    rows[0][0] = 1
    verdict = validate_normal_vector(pentachoron, NormalVector(pentachoron, rows))
    assert not verdict and verdict.reason == "matching"
    with pytest.raises(InvalidVector):
        surface_stats(pentachoron, NormalVector(pentachoron, rows))


def test_negative_entry(pentachoron):
    rows = [[0] * 7 for _ in pentachoron.tets]
    rows[4][5] = -1
    verdict = validate_normal_vector(pentachoron, NormalVector(pentachoron, rows))
    assert verdict.reason == "negative"


def test_wrong_shape(pentachoron):
    with pytest.raises(InvalidVector):
        NormalVector(pentachoron, [[0] * 7] * 4)
    with pytest.raises(InvalidVector):
        NormalVector(pentachoron, [[0] * 6] * 5)


def test_nsv_round_trip(t2_map):
    T = t2_map.direction.triangulation
    fiber = extract_fiber(t2_map, default_theta(t2_map))
    text = render_normal_vector(fiber)
    assert parse_normal_vector(T, text) == fiber
    # omitted rows read as zero
    sparse = "".join(line + "\n" for line in text.splitlines() if set(line.split()[1:]) != {"0"})
    assert parse_normal_vector(T, "# fiber\n" + sparse) == fiber


@pytest.mark.parametrize("text", ["0 1 0 0 0 0 0\n", "0 1 0 0 0 0 0 x\n", "7 0 0 0 0 0 0 0\n",
                                  "1 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0\n"])
def test_nsv_errors(pentachoron, text):
    with pytest.raises(ParseError):
        parse_normal_vector(pentachoron, text)


def _pool(s2_map, t2_map, manifolds):
    pool = {}
    for key, m in (("s2xs1", s2_map), ("t2xs1", t2_map)):
        T = m.direction.triangulation
        vecs = [NormalVector.vertex_link(T, v) for v in T.vertices]
        vecs.append(extract_fiber(m, default_theta(m)))
        pool[key] = (T, vecs)
    T = manifolds["pentachoron"]
    pool["pentachoron"] = (T, [NormalVector.vertex_link(T, v) for v in T.vertices])
    return pool


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["pentachoron", "s2xs1", "t2xs1"]),
       st.lists(st.integers(0, 30), min_size=1, max_size=5))
def test_euler_characteristic_adds_on_compatible_sums(s2_map, t2_map, manifolds, key, picks):
    T, vecs = _pool(s2_map, t2_map, manifolds)[key]
    parts = [vecs[i % len(vecs)] for i in picks]
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    assert validate_normal_vector(T, total)
    assert edge_crossings_agree(T, total)
    chi = surface_stats(T, total).euler_characteristic
    assert chi == sum(surface_stats(T, p).euler_characteristic for p in parts)
    assert (chi, surface_stats(T, total).components) == surface_oracle(T, total.coords)

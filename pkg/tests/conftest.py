from __future__ import annotations

from pathlib import Path

import pytest

from foliate import (
    Direction,
    build_fibration_map,
    generate_pentachoron,
    generate_product,
    seven_vertex_torus,
    solve_triangle_system,
    tetrahedron_boundary,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def pentachoron():
    return generate_pentachoron()


@pytest.fixture(scope="session")
def global_order(pentachoron):
    return Direction(pentachoron, list(pentachoron.edges))


@pytest.fixture(scope="session")
def flipped(global_order):
    """Global order with 0-1 and 1-2 reversed: the directed triangle 1 -> 0 -> 2 -> 1."""
    return global_order.flipped((0, 1), (1, 2))


@pytest.fixture(scope="session")
def s2_bundle():
    return generate_product(tetrahedron_boundary(), 3)


@pytest.fixture(scope="session")
def t2_bundle():
    return generate_product(seven_vertex_torus(), 3)


def solved_map(direction):
    system, outcome = solve_triangle_system(direction)
    assert outcome.feasible
    return build_fibration_map(direction, system.weights_from(outcome.weights))


@pytest.fixture(scope="session")
def s2_map(s2_bundle):
    return solved_map(s2_bundle.direction)


@pytest.fixture(scope="session")
def t2_map(t2_bundle):
    return solved_map(t2_bundle.direction)


# -- acceptance summary ------------------------------------------------------

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    number = getattr(item.function, "criterion", None)
    if number is not None and (rep.when == "call" or rep.failed):
        _CRITERIA[number] = (item.function.__doc__.strip().splitlines()[0], rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")

"""
Pytest configuration and shared fixtures for the lattice invariants tests.
"""
import os
import random

import pytest

# Ensure we're using test environment
os.environ.setdefault("APP_ENV", "test")
os.environ.setdefault("LOG_LEVEL", "DEBUG")

from app.services.polytope import (  # noqa: E402
    build,
    cube,
    dilate,
    lattice_pyramid,
    lawrence_prism,
    standard_simplex,
)


def pytest_addoption(parser):
    """Add command line options for E2E tests."""
    parser.addoption(
        "--run-e2e",
        action="store_true",
        default=False,
        help="Run long enumeration campaigns and fuzz suites",
    )


def pytest_configure(config):
    """Register markers and export the E2E switch."""
    config.addinivalue_line("markers", "e2e: mark test as end-to-end test")
    config.addinivalue_line("markers", "slow: mark test as slow")

    if config.getoption("--run-e2e"):
        os.environ["RUN_E2E_TESTS"] = "1"


# =============================================================================
# Named polytopes
# =============================================================================

REFLEXIVE_TRIANGLE = [[1, 0], [0, 1], [-1, -1]]
EX_NONSPANNING_4SIMPLEX = [
    [0, 0, 0, 0],
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [1, 2, 4, 0],
    [2, 1, 0, 4],
]
CAYLEY_TETRAHEDRON = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, 1]]
OCTAHEDRON = [
    [1, 0, 0],
    [-1, 0, 0],
    [0, 1, 0],
    [0, -1, 0],
    [0, 0, 1],
    [0, 0, -1],
]


def reeve_tetrahedron(r: int):
    """conv(0, e1, e2, (1, 1, r)): empty, of volume r."""
    return build([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, r]])


@pytest.fixture(scope="session")
def corpus():
    """Small named polytopes with hand-checked invariants."""
    return {
        "point": build([[3, -1]]),
        "unit_segment": build([[0], [1]]),
        "long_segment": build([[0], [2]]),
        "unit_triangle": standard_simplex(2),
        "double_triangle": dilate(standard_simplex(2), 2),
        "reflexive_triangle": build(REFLEXIVE_TRIANGLE),
        "unit_square": cube(2),
        "unit_tetrahedron": standard_simplex(3),
        "unit_cube": cube(3),
        "big_cube": cube(3, -1, 1),
        "octahedron": build(OCTAHEDRON),
        "square_pyramid": lattice_pyramid(cube(2)),
        "double_triangle_pyramid": lattice_pyramid(dilate(standard_simplex(2), 2)),
        "lawrence_112": lawrence_prism([1, 1, 2]),
        "reeve_3": reeve_tetrahedron(3),
        "cayley_tetrahedron": build(CAYLEY_TETRAHEDRON),
    }


FIVE_SIMPLICES = {
    "low_lstar_degree": [
        [0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 1, 1, 2, 0],
        [5, 3, 3, 2, 6],
    ],
    "small_leading_lstar": [
        [0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [1, 1, 2, 0, 0],
        [3, 5, 6, 8, 0],
        [1, 1, 0, 0, 2],
    ],
}


@pytest.fixture(scope="session")
def five_simplices():
    """The named 5-simplices of the golden suite."""
    return {name: build(vertices) for name, vertices in FIVE_SIMPLICES.items()}


@pytest.fixture
def nonspanning_simplex():
    """A thin 4-simplex whose lattice points span an index-2 sublattice."""
    return build(EX_NONSPANNING_4SIMPLEX)


@pytest.fixture
def rng():
    """Seeded generator so every property run is reproducible."""
    return random.Random(20240517)


@pytest.fixture
def random_polytope(rng):
    """Sampler: conv of random points in [-radius, radius]^dim, None if degenerate."""

    def _sample(dim: int, n_points: int, radius: int = 2):
        pts = [[rng.randint(-radius, radius) for _ in range(dim)] for _ in range(n_points)]
        P = build(pts)
        return P if P.dim == dim else None

    return _sample

import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from newtonpoly import Family, UnimodularMap, apply, hull, named_polygon  # noqa: E402
from newtonpoly.enumeration import enumerate_genus_classes  # noqa: E402

TIER = os.environ.get("NEWTONPOLY_TIER", "fast")

GENUS7 = hull([(0, 0), (1, -1), (3, -2), (4, -2), (4, 2), (3, 2), (1, 1)])
GENUS9 = hull([(4, 0), (5, 0), (3, 4), (2, 5), (0, 3), (0, 2)])
GAMMA8_MAX = hull([(0, 0), (6, 2), (2, 4)])


def sigma(d=1):
    return named_polygon(Family.SIGMA_MULTIPLE, d)


def upsilon(d=1):
    return named_polygon(Family.UPSILON_MULTIPLE, d)


def gamma51(d=1):
    return named_polygon(Family.GAMMA51_MULTIPLE, d)


def square(d=1):
    return named_polygon(Family.SQUARE_MULTIPLE, d)


def random_unimodular(rng, size=2):
    while True:
        a, b, c, d = (rng.randint(-size, size) for _ in range(4))
        if a * d - b * c in (1, -1):
            return UnimodularMap(((a, b), (c, d)), (rng.randint(-5, 5), rng.randint(-5, 5)))


def random_polygons(n, seed, box=6, skew=True):
    """n random 2D lattice polygons, optionally pushed through a random unimodular map."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        k = rng.randint(3, 9)
        P = hull((rng.randint(-box, box), rng.randint(-box, box)) for _ in range(k))
        if len(P.vertices) < 3:
            continue
        if skew and rng.random() < 0.5:
            P = apply(random_unimodular(rng, 1), P)
        out.append(P)
    return out


@pytest.fixture(scope="session")
def fuzzed():
    return random_polygons(10_000, seed=20261016)


@pytest.fixture(scope="session")
def enumerated():
    """Every polygon class of genus 1..8 (4362 classes)."""
    return [hull(k) for g in range(1, 9) for k in enumerate_genus_classes(g)]


@pytest.fixture(scope="session")
def enumerated_to_10(enumerated):
    return enumerated + [hull(k) for g in (9, 10) for k in enumerate_genus_classes(g)]


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

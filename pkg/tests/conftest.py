import random

import pytest

from pentile.generators import dodecahedron, earth_map, three_v4_example
from pentile.search import enumerate_sphere


@pytest.fixture(scope="session")
def corpus18():
    return enumerate_sphere(18)


@pytest.fixture(scope="session")
def small_maps():
    maps = [dodecahedron(), three_v4_example(), three_v4_example().mirror()]
    maps += [earth_map(5, t) for t in (4, 5)]
    maps += [earth_map(d, 2) for d in (1, 2, 3, 4)]
    maps.append(earth_map(3, 2).mirror())
    return maps


def random_relabel(m, rng: random.Random):
    perm = list(range(m.n_darts))
    rng.shuffle(perm)
    return m.relabel(perm)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

"""Shared class suites for the tests.

Random classes are generated once per session from a fixed seed so every run
exercises the identical suite.
"""

import random

import pytest

from abstaindim import Domain, from_table, singleton_unions, thresholds


def make_random_classes(count, max_h, max_d, seed=0):
    """Deduplicated random classes with 1..max_h rows over 1..max_d points."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = rng.randint(1, max_d)
        n = rng.randint(1, max_h)
        dom = Domain(tuple(str(j) for j in range(1, d + 1)))
        rows = [
            (f"g{i}", [rng.choice((-1, 1)) for _ in range(d)])
            for i in range(1, n + 1)
        ]
        out.append(from_table(dom, rows, dedup=True))
    return out


@pytest.fixture(scope="session")
def random_classes():
    return make_random_classes(200, max_h=10, max_d=6, seed=0)


@pytest.fixture(scope="session")
def suite_classes(random_classes):
    """Thresholds up to 16, singleton unions up to D=6, l=2, plus randoms."""
    suite = [thresholds(n) for n in range(1, 17)]
    for d in range(1, 7):
        dom = Domain(tuple(str(j) for j in range(1, d + 1)))
        for l in range(0, min(2, d) + 1):
            suite.append(singleton_unions(dom, l))
    return suite + list(random_classes)


@pytest.fixture(scope="session")
def small_classes(random_classes):
    """A lighter slice for the more expensive per-class sweeps."""
    suite = [thresholds(n) for n in (1, 2, 3, 4, 6, 8)]
    dom = Domain(("1", "2", "3", "4", "5"))
    suite.append(singleton_unions(dom, 1))
    suite.append(singleton_unions(dom, 2))
    return suite + [h for h in random_classes[:60]]

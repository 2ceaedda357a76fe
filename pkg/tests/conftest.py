import random
from fractions import Fraction

import pytest

from detcomplex.types.matrix import RatMatrix


def random_matrix(rng: random.Random, rows: int, cols: int | None = None, bound: int = 5,
                  denominators: bool = False) -> RatMatrix:
    """Random exact matrix with entries in ``[-bound, bound]``, optionally with small denominators."""
    cols = rows if cols is None else cols

    def entry():
        den = rng.randint(1, 4) if denominators else 1
        return Fraction(rng.randint(-bound, bound), den)

    return RatMatrix([[entry() for _ in range(cols)] for _ in range(rows)], cols=cols)


def random_invertible(rng: random.Random, size: int, bound: int = 5) -> RatMatrix:
    while True:
        m = random_matrix(rng, size, bound=bound)
        if m.det() != 0:
            return m


def partitions(gamma: int, largest: int | None = None):
    """Partitions of ``gamma`` as descending tuples."""
    largest = gamma if largest is None else largest
    if gamma == 0:
        yield ()
        return
    for first in range(min(gamma, largest), 0, -1):
        for rest in partitions(gamma - first, first):
            yield (first,) + rest


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def make_matrix(rng):
    """``make_matrix(rows, cols=None, bound=5, denominators=False)``"""
    def make(rows, cols=None, bound=5, denominators=False):
        return random_matrix(rng, rows, cols, bound, denominators)

    return make


@pytest.fixture
def make_invertible(rng):
    def make(size, bound=5):
        return random_invertible(rng, size, bound)

    return make


@pytest.fixture
def all_partitions():
    """``all_partitions(lo, hi)`` lists every partition with ``lo <= gamma <= hi``."""
    def collect(lo, hi):
        return [p for g in range(lo, hi + 1) for p in partitions(g)]

    return collect


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """An empty working directory for CLI runs, so no user config leaks in."""
    monkeypatch.setenv("DETCOMPLEX_WORK_DIR", str(tmp_path))
    monkeypatch.delenv("DETCOMPLEX_LOG_LEVEL", raising=False)
    return tmp_path

import itertools
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lquasi.algebra import FiniteLeftQuasigroup, from_table
from lquasi.construct import affine_cyclic, cyclic_permutation, projection, subtraction

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def _perm(n):
    return st.permutations(list(range(n)))


@st.composite
def left_quasigroups(draw, min_order=1, max_order=5, idempotent=False):
    n = draw(st.integers(min_order, max_order))
    rows = []
    for a in range(n):
        if idempotent:
            # permute the other points among themselves, keep a fixed
            others = [x for x in range(n) if x != a]
            images = draw(st.permutations(others))
            row = list(range(n))
            for col, img in zip(others, images):
                row[col] = img
        else:
            row = draw(_perm(n))
        rows.append(list(row))
    return from_table(rows)


@st.composite
def partitions_of(draw, n):
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return labels


# named instances used throughout
@pytest.fixture
def P2():
    return projection(2)


@pytest.fixture
def P3():
    return projection(3)


@pytest.fixture
def D3():
    return affine_cyclic(3, -1)


@pytest.fixture
def Aff4():
    return affine_cyclic(4, -1)


@pytest.fixture
def Sub3():
    return subtraction(3)


@pytest.fixture
def Cyc3():
    return cyclic_permutation(3)


@pytest.fixture
def Swap3():
    return from_table([[0, 1, 2], [2, 1, 0], [0, 1, 2]], name="Swap3")


def all_tables(n):
    """Naive enumeration, independent of the package's batch kernels."""
    perms = list(itertools.permutations(range(n)))
    for rows in itertools.product(perms, repeat=n):
        yield FiniteLeftQuasigroup(np.array(rows, dtype=np.int64).reshape(n, n), _checked=True)


# one line per acceptance criterion, printed again at the end of the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

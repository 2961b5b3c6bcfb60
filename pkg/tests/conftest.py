import itertools

import numpy as np
import pytest
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from isingpart.graph import Graph


def gnp_edges(n, p, rng):
    u, v = np.triu_indices(n, k=1)
    keep = rng.random(u.size) < p
    return u[keep], v[keep]


def is_connected(n, u, v):
    if n <= 1:
        return True
    adj = coo_matrix((np.ones(u.size), (u, v)), shape=(n, n))
    return connected_components(adj, directed=False)[0] == 1


def random_connected(n, p, rng):
    while True:
        u, v = gnp_edges(n, p, rng)
        if is_connected(n, u, v):
            return Graph(n, u, v, np.ones(u.size, dtype=np.int64))


def random_weighted(n, p, rng, weights=(-1, 1, 2)):
    u, v = gnp_edges(n, p, rng)
    return Graph(n, u, v, rng.choice(np.array(weights, dtype=np.int64), size=u.size))


def all_states(n):
    for bits in itertools.product((-1, 1), repeat=n):
        yield np.array(bits, dtype=np.int8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def c4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def k4():
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def p4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def toy2():
    return Graph.from_edges(2, [(0, 1)])

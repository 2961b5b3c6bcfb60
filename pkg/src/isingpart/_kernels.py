"""Jitted sweep kernels shared by the standard and GDI strategies.

Energies are integers: ``coeff_a``/``coeff_b`` arrive pre-scaled so that the
min-cut Hamiltonian is exact in int64.
"""

import numpy as np
from numba import njit

from ._atomics import atomic_add, atomic_load

STANDARD = 0
GDI = 1

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S11 = np.uint64(11)
_S27 = np.uint64(27)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_S63 = np.uint64(63)
_ONE = np.uint64(1)
_INV53 = 1.0 / 9007199254740992.0


@njit(inline="always")
def _splitmix(state, k):
    # splitmix64; one independent stream per worker slot k
    state[k] += _GOLDEN
    z = state[k]
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(nogil=True, cache=True)
def sweep_worker(strategy, claim, chunk, indptr, indices, weights, spins, counter,
                 coeff_a, coeff_b, flip_p, rng, wid, dh_log):
    """Claim node blocks from ``claim[0]`` until exhausted, updating each node.

    Returns the number of nodes visited by this worker. When ``dh_log`` is
    non-empty, ``dh_log[i]`` receives the Hamiltonian change caused by the
    visit of node ``i`` (exact only if the balance seen was exact).
    """
    n = spins.shape[0]
    visited = 0
    logging = dh_log.shape[0] > 0
    while True:
        start = atomic_add(claim, 0, chunk)
        if start >= n:
            break
        stop = min(start + chunk, n)
        for i in range(start, stop):
            s_old = np.int64(spins[i])
            if strategy == GDI:
                balance = atomic_load(counter, 0)
            else:
                balance = np.int64(0)
                for j in range(n):
                    balance += spins[j]
            excl = balance - s_old

            field = np.int64(0)
            for p in range(indptr[i], indptr[i + 1]):
                field += weights[p] * spins[indices[p]]
            # E(+1) - E(-1) for this node with all other spins frozen
            diff = 4 * coeff_a * excl - coeff_b * field

            r_tie = _splitmix(rng, wid)
            r_flip = _splitmix(rng, wid)
            if diff < 0:
                s = np.int64(1)
            elif diff > 0:
                s = np.int64(-1)
            elif (r_tie >> _S63) == _ONE:
                s = np.int64(1)
            else:
                s = np.int64(-1)
            u = np.float64((r_flip >> _S11) + _ONE) * _INV53
            if u <= flip_p:
                s = -s

            if s != s_old:
                spins[i] = s
                if strategy == GDI:
                    atomic_add(counter, 0, s - s_old)
                if logging:
                    dh_log[i] = diff if s > 0 else -diff
            elif logging:
                dh_log[i] = 0
            visited += 1
    return visited


@njit(nogil=True, cache=True)
def spin_sum(spins):
    total = np.int64(0)
    for j in range(spins.shape[0]):
        total += spins[j]
    return total


@njit(nogil=True, cache=True)
def cut_weight(edge_u, edge_v, edge_w, spins):
    total = np.int64(0)
    for e in range(edge_u.shape[0]):
        if spins[edge_u[e]] != spins[edge_v[e]]:
            total += edge_w[e]
    return total

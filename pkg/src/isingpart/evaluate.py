"""Partition scoring and an exhaustive oracle for small graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit

from ._kernels import cut_weight, spin_sum
from .errors import CapacityError, DomainError
from .graph import Graph
from .ising import MinCutProblem, check_spins

__all__ = [
    "PartitionScore",
    "cut_value",
    "imbalance",
    "score",
    "brute_force_balanced_mincut",
    "MAX_ORACLE_NODES",
]

MAX_ORACLE_NODES = 24


@dataclass(frozen=True)
class PartitionScore:
    cut: int
    imbalance: int
    hamiltonian: Fraction


def cut_value(graph: Graph, spins) -> int:
    """Total weight of edges whose endpoints lie on different sides."""
    s = check_spins(spins, graph.num_nodes)
    return int(cut_weight(graph.edge_u, graph.edge_v, graph.edge_w, s))


def imbalance(spins) -> int:
    return abs(int(spin_sum(check_spins(spins))))


def score(problem: MinCutProblem, spins) -> PartitionScore:
    s = check_spins(spins, problem.num_nodes)
    total = int(spin_sum(s))
    cut = cut_value(problem.graph, s)
    return PartitionScore(cut, abs(total), problem.coeff_a * total * total + problem.coeff_b * cut)


@njit(cache=True)
def _lex_less(a, b):
    for k in range(a.shape[0]):
        if a[k] != b[k]:
            return a[k] < b[k]
    return False


@njit(cache=True)
def _gray_search(n, indptr, indices, weights, max_imb):
    # node 0 pinned to +1; the other n-1 spins walk a binary reflected Gray code
    spins = np.ones(n, dtype=np.int8)
    best = np.ones(n, dtype=np.int8)
    cut = np.int64(0)
    total = np.int64(n)
    found = False
    best_cut = np.int64(0)
    steps = np.int64(1) << (n - 1)
    for t in range(steps):
        if t > 0:
            # bit that changes between gray(t-1) and gray(t)
            bit = 0
            x = t
            while (x & 1) == 0:
                x >>= 1
                bit += 1
            i = bit + 1
            s_old = spins[i]
            same = np.int64(0)
            for p in range(indptr[i], indptr[i + 1]):
                if spins[indices[p]] == s_old:
                    same += weights[p]
                else:
                    same -= weights[p]
            # flipping i turns agreeing edges into cut edges and vice versa
            cut += same
            spins[i] = -s_old
            total -= 2 * s_old
        if abs(total) <= max_imb:
            if not found or cut < best_cut or (cut == best_cut and _lex_less(spins, best)):
                best_cut = cut
                best[:] = spins
                found = True
    return found, best_cut, best


def brute_force_balanced_mincut(graph: Graph, max_imbalance: int | None = None):
    """Exact minimum cut over all states with imbalance <= ``max_imbalance``.

    Returns ``(cut, spins)``. The witness has node 0 on the +1 side and is the
    lexicographically smallest optimal spin vector (with -1 < +1). Defaults to
    the tightest feasible bound, ``N mod 2``.
    """
    n = graph.num_nodes
    if n > MAX_ORACLE_NODES:
        raise CapacityError(f"oracle enumerates at most {MAX_ORACLE_NODES} nodes, graph has {n}")
    if max_imbalance is None:
        max_imbalance = n % 2
    if max_imbalance < n % 2:
        raise DomainError(f"imbalance bound {max_imbalance} infeasible for N={n} (parity)")
    found, best_cut, best = _gray_search(n, graph.indptr, graph.indices, graph.weights, max_imbalance)
    assert found
    return int(best_cut), best

"""Ising model pieces for balanced min-cut.

Spin states are plain ``int8`` numpy vectors with entries in {-1, +1}; the
first half of the partition is the +1 side.

The min-cut Hamiltonian is

    H(s) = A * (sum_i s_i)**2 + B * sum_{(i,j) in E} w_ij * (1 - s_i s_j) / 2

with the balance weight ``A`` and cut weight ``B`` kept as exact fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._kernels import cut_weight, spin_sum
from .errors import DomainError
from .graph import Graph

__all__ = [
    "MinCutProblem",
    "BalanceCounter",
    "coefficients_for",
    "default_coefficients",
    "check_spins",
    "random_spins",
    "local_field",
    "ising_local_field",
    "candidate_energies_mincut",
    "global_hamiltonian",
    "ising_hamiltonian",
    "choose_spin",
]


def _frac(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


def coefficients_for(graph: Graph, b=1) -> tuple[Fraction, Fraction]:
    """Tightest admissible ``(A, B)``: ``A = b * min(2*max_degree, N) / 8``."""
    b = _frac(b)
    if b <= 0:
        raise DomainError(f"cut weight must be positive, got {b}")
    return b * Fraction(min(2 * graph.max_degree, graph.num_nodes), 8), b


def default_coefficients(graph: Graph, b=1) -> tuple[Fraction, Fraction]:
    """Default ``(A, B)`` for annealing: ``A = b * mean(|w|) / 4``.

    Changing the spin sum by 2 then costs exactly one average edge, so a move
    that trades one cut edge for one step of imbalance is energy-neutral and
    the tie coin lets the search drift across such plateaus. The coefficient
    rule of :func:`coefficients_for` prices imbalance so high that single-spin
    updates can no longer reduce the cut at all.
    """
    b = _frac(b)
    if b <= 0:
        raise DomainError(f"cut weight must be positive, got {b}")
    w = np.abs(graph.edge_w)
    mean_w = Fraction(int(w.sum()), int(w.size)) if w.size and w.any() else Fraction(1)
    return b * mean_w / 4, b


def check_spins(spins, n: int | None = None) -> np.ndarray:
    s = np.asarray(spins)
    if s.ndim != 1:
        raise DomainError("spin state must be a 1-d vector")
    if n is not None and s.shape[0] != n:
        raise DomainError(f"spin state has length {s.shape[0]}, problem has {n} nodes")
    if not np.all((s == 1) | (s == -1)):
        raise DomainError("spins must be exactly -1 or +1")
    return s.astype(np.int8, copy=False)


def random_spins(n: int, rng: np.random.Generator) -> np.ndarray:
    return (2 * rng.integers(0, 2, size=n) - 1).astype(np.int8)


@dataclass(frozen=True)
class MinCutProblem:
    """A graph together with balance weight ``coeff_a`` and cut weight ``coeff_b``.

    By default ``coeff_a / coeff_b`` must satisfy the coefficient rule
    ``A/B >= min(2*max_degree, N)/8``; pass ``enforce_rule=False`` to use a
    weaker balance penalty.
    """

    graph: Graph
    coeff_a: Fraction
    coeff_b: Fraction
    enforce_rule: bool = True
    scale: int = field(init=False, repr=False)

    def __post_init__(self):
        a, b = _frac(self.coeff_a), _frac(self.coeff_b)
        if a <= 0 or b <= 0:
            raise DomainError(f"coefficients must be positive, got A={a}, B={b}")
        if self.enforce_rule:
            bound = Fraction(min(2 * self.graph.max_degree, self.graph.num_nodes), 8)
            if a / b < bound:
                raise DomainError(
                    f"A/B = {a / b} is below the admissible bound {bound}; "
                    "pass enforce_rule=False to opt out"
                )
        object.__setattr__(self, "coeff_a", a)
        object.__setattr__(self, "coeff_b", b)
        object.__setattr__(self, "scale", math.lcm(a.denominator, b.denominator))

    @classmethod
    def for_graph(cls, graph: Graph, b=1, rule: bool = False) -> "MinCutProblem":
        """Problem with :func:`default_coefficients`, or the rule's bound if ``rule``."""
        if rule:
            a, b = coefficients_for(graph, b)
            return cls(graph, a, b)
        a, b = default_coefficients(graph, b)
        return cls(graph, a, b, enforce_rule=False)

    @property
    def num_nodes(self) -> int:
        return self.graph.num_nodes

    @property
    def external_field(self) -> np.ndarray:
        return np.zeros(self.graph.num_nodes, dtype=np.int64)

    @property
    def int_coefficients(self) -> tuple[int, int]:
        """``(A, B)`` multiplied by ``scale`` so both are integers."""
        return int(self.coeff_a * self.scale), int(self.coeff_b * self.scale)


class BalanceCounter:
    """Shared spin sum ``G``, stored in a one-cell int64 buffer.

    Jitted workers update ``cell`` through atomic read-modify-write; from
    Python it is only read or reset between sweeps.
    """

    __slots__ = ("cell",)

    def __init__(self, spins=None):
        self.cell = np.zeros(1, dtype=np.int64)
        if spins is not None:
            self.reset(spins)

    @property
    def value(self) -> int:
        return int(self.cell[0])

    def reset(self, spins) -> None:
        self.cell[0] = spin_sum(np.asarray(spins, dtype=np.int8))

    def add(self, delta: int) -> None:
        self.cell[0] += delta

    def __repr__(self):
        return f"BalanceCounter({self.value})"


def _check_index(i: int, n: int) -> int:
    if not 0 <= i < n:
        raise DomainError(f"node index {i} outside [0, {n})")
    return int(i)


def ising_local_field(J, h, spins, i: int):
    """General-form local field ``S_i = sum_j J[i, j] s_j + h_i``.

    ``J`` is a dense symmetric coupling matrix or a scipy sparse matrix.
    """
    s = np.asarray(spins)
    i = _check_index(i, s.shape[0])
    row = J[i]
    if hasattr(row, "toarray"):
        row = row.toarray().ravel()
    row = np.asarray(row).copy()
    row[i] = 0
    return row @ s + h[i]


def local_field(problem: MinCutProblem, spins, i: int) -> Fraction:
    """Neighbour part of the min-cut local field, ``(B/2) * sum_j w_ij s_j``.

    Positive means +1 agrees with more neighbour weight.
    """
    g = problem.graph
    i = _check_index(i, g.num_nodes)
    nbr, w = g.neighbors(i)
    return problem.coeff_b / 2 * int(np.dot(w, np.asarray(spins, dtype=np.int64)[nbr]))


def candidate_energies_mincut(problem: MinCutProblem, spins, balance_excl: int, i: int):
    """Local energies ``(E(-1), E(+1))`` of node ``i``.

    ``balance_excl`` is the spin sum over every node except ``i``.
    """
    g = problem.graph
    i = _check_index(i, g.num_nodes)
    nbr, w = g.neighbors(i)
    s_nbr = np.asarray(spins, dtype=np.int64)[nbr]
    a, b = problem.coeff_a, problem.coeff_b
    out = []
    for s in (-1, 1):
        crossing = int(np.dot(w, (1 - s * s_nbr) // 2))
        out.append(a * (balance_excl + s) ** 2 + b * crossing)
    return tuple(out)


def choose_spin(e_minus, e_plus, rng: np.random.Generator) -> int:
    """Argmin of the two candidate energies; ties go to an unbiased coin."""
    if e_plus < e_minus:
        return 1
    if e_minus < e_plus:
        return -1
    return 1 if rng.integers(0, 2) else -1


def global_hamiltonian(problem: MinCutProblem, spins) -> Fraction:
    g = problem.graph
    s = check_spins(spins, g.num_nodes)
    total = int(spin_sum(s))
    cut = int(cut_weight(g.edge_u, g.edge_v, g.edge_w, s))
    return problem.coeff_a * total * total + problem.coeff_b * cut


def ising_hamiltonian(J, h, spins) -> float:
    """Generic ``-sum_{i<j} J_ij s_i s_j - sum_i h_i s_i`` for a dense symmetric ``J``."""
    s = np.asarray(spins, dtype=float)
    J = np.asarray(J, dtype=float)
    pair = (s @ J @ s - np.dot(np.diag(J), s * s)) / 2
    return -pair - float(np.dot(h, s))

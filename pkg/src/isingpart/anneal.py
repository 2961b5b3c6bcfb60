"""Ising annealing with decaying random flips.

Every sweep visits each node once. A visit sets the spin to the argmin of
its two candidate energies (ties broken by a fair coin) and then flips it
with probability ``P_f``; ``P_f`` decays geometrically between sweeps.

Two strategies differ only in how a node learns the global spin sum:

``standard``
    sums every spin in the graph on each visit (a dense, all-to-all read).
``gdi``
    reads a shared balance counter, and after the decision applies the spin's
    signed change to it with a single atomic add.

With ``workers > 1`` the sweep runs on a thread pool; workers claim blocks of
node indices from a shared atomic counter and read neighbour spins without
synchronisation. Sweeps are separated by a full barrier.
"""

from __future__ import annotations

import csv
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .errors import ConfigError, SolverRuntimeError
from .graph import Graph
from .ising import BalanceCounter, MinCutProblem, check_spins, random_spins

__all__ = [
    "STRATEGIES",
    "AnnealParams",
    "AnnealTrace",
    "flip_probability",
    "default_params_for",
    "decay_for",
    "anneal",
]

STRATEGIES = ("standard", "gdi")
_STRATEGY_CODE = {"standard": _kernels.STANDARD, "gdi": _kernels.GDI}

# base flip fraction for gdi; standard needs five times more noise
GDI_FLIP_FRACTION = 0.04
STANDARD_FLIP_MULTIPLIER = 5
DEFAULT_SWEEPS = 1000
DEFAULT_DECAY = 0.99


def available_workers() -> int:
    env = os.environ.get("ISING_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"ISING_WORKERS must be a positive integer, got {env!r}") from None
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return os.cpu_count() or 1


@dataclass(frozen=True)
class AnnealParams:
    sweeps: int = DEFAULT_SWEEPS
    flip_fraction0: float = GDI_FLIP_FRACTION
    decay_rate: float = DEFAULT_DECAY
    strategy: str = "gdi"
    workers: int = 1
    seed: int = 0
    deterministic: bool = False
    chunk: int = 64

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}")
        if not isinstance(self.sweeps, (int, np.integer)) or self.sweeps < 1:
            raise ConfigError(f"sweeps must be a positive integer, got {self.sweeps!r}")
        if not 0.0 <= self.flip_fraction0 <= 1.0:
            raise ConfigError(f"flip_fraction0 must lie in [0, 1], got {self.flip_fraction0}")
        if not 0.0 < self.decay_rate < 1.0:
            raise ConfigError(f"decay_rate must lie in (0, 1), got {self.decay_rate}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.deterministic and self.workers != 1:
            raise ConfigError("deterministic mode requires workers == 1")
        if self.chunk < 1:
            raise ConfigError(f"chunk must be >= 1, got {self.chunk}")

    @classmethod
    def from_flip_count(cls, num_nodes: int, flips: int, **kw) -> "AnnealParams":
        """Initial flip fraction from an expected number of random flips per sweep."""
        if num_nodes < 1 or not 0 <= flips <= num_nodes:
            raise ConfigError(f"flip count {flips} invalid for {num_nodes} nodes")
        return cls(flip_fraction0=flips / num_nodes, **kw)


def flip_probability(params: AnnealParams, k: int) -> float:
    """Random-flip probability used during sweep ``k`` (0-based)."""
    if not 0 <= k < params.sweeps:
        raise ConfigError(f"sweep index {k} outside [0, {params.sweeps})")
    return params.flip_fraction0 * params.decay_rate**k


def decay_for(sweeps: int, flip_fraction0: float, final: float) -> float:
    """Geometric decay that takes the flip probability from ``flip_fraction0`` to ``final``."""
    if not 0 < final < flip_fraction0 or sweeps < 2:
        raise ConfigError(f"cannot decay {flip_fraction0} to {final} over {sweeps} sweeps")
    return (final / flip_fraction0) ** (1.0 / (sweeps - 1))


def default_params_for(strategy: str, graph: Graph | None = None, *, deterministic: bool = False,
                       **overrides) -> AnnealParams:
    """Defaults per strategy. ``graph`` is accepted for future size-aware tuning."""
    if strategy not in STRATEGIES:
        raise ConfigError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    flip = GDI_FLIP_FRACTION * (STANDARD_FLIP_MULTIPLIER if strategy == "standard" else 1)
    workers = 1 if deterministic else available_workers()
    base = AnnealParams(strategy=strategy, flip_fraction0=flip, workers=workers,
                        deterministic=deterministic)
    return replace(base, **overrides) if overrides else base


@dataclass
class AnnealTrace:
    """Per-sweep measurements, one entry per sweep.

    ``hamiltonian`` is exact in units of ``1/scale``; use
    :attr:`hamiltonian_values` for floats. ``counter`` holds the shared balance
    counter read at the barrier (gdi only).
    """

    strategy: str
    scale: int
    hamiltonian: np.ndarray
    cut: np.ndarray
    imbalance: np.ndarray
    spin_sum: np.ndarray
    flip_probability: np.ndarray
    sweep_seconds: np.ndarray
    elapsed: np.ndarray
    counter: np.ndarray | None = None
    initial_hamiltonian: int = 0
    update_hamiltonians: np.ndarray | None = field(default=None, repr=False)
    visits: int = 0

    def __len__(self):
        return len(self.cut)

    @property
    def hamiltonian_values(self) -> np.ndarray:
        return self.hamiltonian / self.scale

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["sweep", "hamiltonian", "cut", "imbalance", "flip_probability",
                        "sweep_seconds", "elapsed_seconds"])
            for k in range(len(self)):
                w.writerow([k, repr(float(self.hamiltonian[k]) / self.scale), int(self.cut[k]),
                            int(self.imbalance[k]), repr(float(self.flip_probability[k])),
                            f"{self.sweep_seconds[k]:.6e}", f"{self.elapsed[k]:.6e}"])


def _stream_states(seed: int, workers: int) -> tuple[np.random.Generator, np.ndarray]:
    ss = np.random.SeedSequence(int(seed) & 0xFFFFFFFFFFFFFFFF)
    children = ss.spawn(workers + 1)
    init_rng = np.random.default_rng(children[0])
    states = np.array([c.generate_state(1, np.uint64)[0] for c in children[1:]], dtype=np.uint64)
    return init_rng, states


def anneal(problem: MinCutProblem, params: AnnealParams, *, initial=None,
           record_updates: bool = False) -> tuple[np.ndarray, AnnealTrace]:
    """Run ``params.sweeps`` sweeps and return ``(spins, trace)``.

    ``initial`` overrides the random starting state. ``record_updates`` (only
    with ``deterministic=True``) stores the Hamiltonian after every single node
    visit in ``trace.update_hamiltonians``.
    """
    if not isinstance(params, AnnealParams):
        raise ConfigError("params must be an AnnealParams")
    if record_updates and not params.deterministic:
        raise ConfigError("per-update recording needs deterministic mode")

    g = problem.graph
    n = g.num_nodes
    m = params.sweeps
    workers = 1 if params.deterministic else params.workers
    code = _STRATEGY_CODE[params.strategy]
    a_int, b_int = problem.int_coefficients

    init_rng, rng_states = _stream_states(params.seed, workers)
    if initial is None:
        spins = random_spins(n, init_rng)
    else:
        spins = check_spins(initial, n).copy()
    counter = BalanceCounter(spins)
    claim = np.zeros(1, dtype=np.int64)
    chunk = n if params.deterministic else params.chunk
    dh_log = np.zeros(n if record_updates else 0, dtype=np.int64)

    def energy(s):
        total = int(_kernels.spin_sum(s))
        cut = int(_kernels.cut_weight(g.edge_u, g.edge_v, g.edge_w, s))
        return a_int * total * total + b_int * cut, cut, total

    h0, _, _ = energy(spins)
    hs = np.empty(m, dtype=np.int64)
    cuts = np.empty(m, dtype=np.int64)
    sums = np.empty(m, dtype=np.int64)
    pfs = np.empty(m, dtype=np.float64)
    sweep_t = np.empty(m, dtype=np.float64)
    elapsed = np.empty(m, dtype=np.float64)
    counters = np.empty(m, dtype=np.int64) if params.strategy == "gdi" else None
    updates = np.empty(m * n, dtype=np.int64) if record_updates else None

    def run(wid):
        return _kernels.sweep_worker(code, claim, chunk, g.indptr, g.indices, g.weights, spins,
                                     counter.cell, a_int, b_int, pf, rng_states, wid, dh_log)

    pool = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="anneal") if workers > 1 else None
    visits = 0
    pf = params.flip_fraction0
    h_prev = h0
    t_start = time.perf_counter()
    try:
        for k in range(m):
            claim[0] = 0
            pf = flip_probability(params, k)
            t0 = time.perf_counter()
            if pool is None:
                visits += run(0)
            else:
                futures = [pool.submit(run, w) for w in range(workers)]
                try:
                    visits += sum(f.result() for f in futures)
                except Exception as exc:
                    raise SolverRuntimeError(f"worker failed during sweep {k}: {exc}") from exc
            t1 = time.perf_counter()

            h, cut, total = energy(spins)
            hs[k], cuts[k], sums[k] = h, cut, total
            pfs[k] = pf
            sweep_t[k] = t1 - t0
            elapsed[k] = t1 - t_start
            if counters is not None:
                counters[k] = counter.value
            if updates is not None:
                updates[k * n:(k + 1) * n] = h_prev + np.cumsum(dh_log)
                h_prev = h
    finally:
        if pool is not None:
            pool.shutdown(wait=True)

    trace = AnnealTrace(
        strategy=params.strategy,
        scale=problem.scale,
        hamiltonian=hs,
        cut=cuts,
        imbalance=np.abs(sums),
        spin_sum=sums,
        flip_probability=pfs,
        sweep_seconds=sweep_t,
        elapsed=elapsed,
        counter=counters,
        initial_hamiltonian=h0,
        update_hamiltonians=updates,
        visits=visits,
    )
    return spins, trace

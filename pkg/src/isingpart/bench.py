"""Best-of-R benchmark harness over G-set style instances.

Every (graph, strategy) pair gets ``runs_per_graph`` independently seeded
anneals; the reported solution is the best run. Rows are sorted by graph
density, lowest first. Results from external partitioners can be merged in
from a CSV with columns ``graph_id,cut,bal,time_seconds``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .anneal import STRATEGIES, AnnealParams, anneal, default_params_for
from .errors import ConfigError, GraphFormatError
from .graph import Graph, density, read_gset
from .ising import MinCutProblem, coefficients_for, default_coefficients

__all__ = [
    "BenchConfig",
    "RunReport",
    "ExternalResult",
    "run_benchmark",
    "load_external_results",
    "write_reports",
    "emit_plot_data",
    "build_problem",
]

_PARAM_FIELDS = {f.name for f in fields(AnnealParams)} - {"strategy", "seed"}


@dataclass
class BenchConfig:
    graphs: Sequence = ()
    strategies: Sequence[str] = ("gdi",)
    runs_per_graph: int = 10
    params: dict = field(default_factory=dict)
    output_format: str = "csv"
    external_results: str | os.PathLike | None = None
    base_seed: int = 0
    unit_weights: bool = False
    coeff_a: Fraction | None = None
    coeff_b: Fraction = Fraction(1)
    coeff_rule: bool = False
    jobs: int = 1

    def validate(self) -> None:
        if self.runs_per_graph < 1:
            raise ConfigError(f"runs_per_graph must be >= 1, got {self.runs_per_graph}")
        if not self.strategies:
            raise ConfigError("select at least one strategy")
        bad = [s for s in self.strategies if s not in STRATEGIES]
        if bad:
            raise ConfigError(f"unknown strategies {bad}; expected a subset of {STRATEGIES}")
        unknown = set(self.params) - _PARAM_FIELDS
        if unknown:
            raise ConfigError(f"unknown parameter overrides: {sorted(unknown)}")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"output format must be csv or json, got {self.output_format!r}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        for s in self.strategies:
            self.anneal_params(s, 0)

    def anneal_params(self, strategy: str, seed: int) -> AnnealParams:
        kw = {k: v for k, v in self.params.items() if k != "deterministic"}
        return default_params_for(strategy, deterministic=bool(self.params.get("deterministic")),
                                  seed=seed, **kw)


@dataclass
class RunReport:
    graph_id: str
    nodes: int | None = None
    edges: int | None = None
    density: float | None = None
    strategy: str | None = None
    best_cut: int | None = None
    best_imbalance: int | None = None
    best_seed: int | None = None
    time_best_run: float | None = None
    time_mean: float | None = None
    sweep_seconds: float | None = None
    mean_cut: float | None = None
    min_cut: int | None = None
    max_cut: int | None = None
    run_seconds: list = field(default_factory=list)
    run_cuts: list = field(default_factory=list)
    run_imbalances: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class ExternalResult:
    graph_id: str
    cut: int
    bal: int
    time_seconds: float


def load_external_results(path) -> dict[str, ExternalResult]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        expected = ["graph_id", "cut", "bal", "time_seconds"]
        if reader.fieldnames is None or [c.strip() for c in reader.fieldnames] != expected:
            raise ConfigError(f"{path}: header must be {','.join(expected)}, got {reader.fieldnames}")
        out = {}
        for lineno, row in enumerate(reader, start=2):
            try:
                r = ExternalResult(row["graph_id"].strip(), int(row["cut"]), int(row["bal"]),
                                   float(row["time_seconds"]))
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from None
            out[r.graph_id] = r
    return out


def build_problem(graph: Graph, coeff_a=None, coeff_b=1, rule: bool = False) -> MinCutProblem:
    if coeff_a is not None:
        return MinCutProblem(graph, coeff_a, coeff_b, enforce_rule=rule)
    if rule:
        a, b = coefficients_for(graph, coeff_b)
        return MinCutProblem(graph, a, b)
    a, b = default_coefficients(graph, coeff_b)
    return MinCutProblem(graph, a, b, enforce_rule=False)


def _best_index(cuts, imbalances, target) -> int:
    # balanced-enough runs first, then lowest cut, then lowest imbalance
    return min(range(len(cuts)), key=lambda r: (imbalances[r] > target, cuts[r], imbalances[r]))


def _bench_one(graph: Graph, graph_id: str, strategy: str, config: BenchConfig) -> RunReport:
    problem = build_problem(graph, config.coeff_a, config.coeff_b, config.coeff_rule)
    rep = RunReport(graph_id, graph.num_nodes, graph.num_edges,
                    density(graph) if graph.num_nodes > 1 else 0.0, strategy)
    sweep_times = []
    for r in range(config.runs_per_graph):
        seed = config.base_seed + r
        params = config.anneal_params(strategy, seed)
        t0 = time.perf_counter()
        spins, trace = anneal(problem, params)
        rep.run_seconds.append(time.perf_counter() - t0)
        rep.run_cuts.append(int(trace.cut[-1]))
        rep.run_imbalances.append(int(trace.imbalance[-1]))
        rep.seeds.append(seed)
        sweep_times.append(float(trace.sweep_seconds.mean()))
    b = _best_index(rep.run_cuts, rep.run_imbalances, graph.num_nodes % 2)
    rep.best_cut = rep.run_cuts[b]
    rep.best_imbalance = rep.run_imbalances[b]
    rep.best_seed = rep.seeds[b]
    rep.time_best_run = rep.run_seconds[b]
    rep.time_mean = sum(rep.run_seconds) / len(rep.run_seconds)
    rep.sweep_seconds = sum(sweep_times) / len(sweep_times)
    rep.mean_cut = sum(rep.run_cuts) / len(rep.run_cuts)
    rep.min_cut = min(rep.run_cuts)
    rep.max_cut = max(rep.run_cuts)
    return rep


def _resolve(item, unit_weights):
    if isinstance(item, Graph):
        g = item.with_unit_weights() if unit_weights else item
        return g, item.name or f"graph{id(item)}"
    path = Path(item)
    return read_gset(path, unit_weights=unit_weights), path.stem


def run_benchmark(config: BenchConfig) -> list[RunReport]:
    """Run the configured suite; unreadable graphs become error rows."""
    config.validate()
    tasks, reports = [], []
    for item in config.graphs:
        try:
            g, gid = _resolve(item, config.unit_weights)
        except (OSError, GraphFormatError) as exc:
            reports.append(RunReport(Path(item).stem, error=f"{type(exc).__name__}: {exc}"))
            continue
        for s in config.strategies:
            tasks.append((g, gid, s))

    if config.jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            done = list(pool.map(lambda t: _bench_one(*t, config), tasks))
    else:
        done = [_bench_one(*t, config) for t in tasks]

    order = {s: k for k, s in enumerate(config.strategies)}
    done.sort(key=lambda r: (r.density, r.graph_id, order[r.strategy]))
    return done + reports


def _csv_value(v):
    if isinstance(v, list):
        return ";".join(repr(x) if isinstance(x, float) else str(x) for x in v)
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else v


def write_reports(reports: Sequence[RunReport], fh, fmt: str = "csv") -> None:
    if fmt == "json":
        json.dump([asdict(r) for r in reports], fh, indent=2)
        fh.write("\n")
    elif fmt == "csv":
        names = [f.name for f in fields(RunReport)]
        w = csv.writer(fh, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
        w.writerow(names)
        for r in reports:
            w.writerow([_csv_value(getattr(r, n)) for n in names])
    else:
        raise ConfigError(f"unknown output format {fmt!r}")


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "NA"
    return repr(x) if isinstance(x, float) else str(x)


def emit_plot_data(reports: Sequence[RunReport], external: dict | None = None) -> dict[str, str]:
    """Tab-separated tables for plotting.

    ``timing``: graph_id, density and mean per-run seconds for each strategy.
    ``quality``: graph_id and best cut per strategy, plus the external cut if
    ``external`` is given. Missing entries are written as ``NA``.
    """
    good = [r for r in reports if r.ok]
    if not good:
        raise ConfigError("no successful reports to plot")
    by_graph: dict[str, dict] = {}
    for r in good:
        by_graph.setdefault(r.graph_id, {"density": r.density})[r.strategy] = r
    rows = sorted(by_graph.items(), key=lambda kv: (kv[1]["density"], kv[0]))

    t = io.StringIO()
    t.write("graph_id\tdensity\ttime_standard\ttime_gdi\tsweep_standard\tsweep_gdi\n")
    for gid, d in rows:
        std, gdi = d.get("standard"), d.get("gdi")
        t.write("\t".join([
            gid, _fmt(d["density"]),
            _fmt(std.time_mean if std else None), _fmt(gdi.time_mean if gdi else None),
            _fmt(std.sweep_seconds if std else None), _fmt(gdi.sweep_seconds if gdi else None),
        ]) + "\n")

    q = io.StringIO()
    head = ["graph_id", "cut_standard", "cut_gdi", "bal_standard", "bal_gdi"]
    if external is not None:
        head += ["cut_external", "bal_external"]
    q.write("\t".join(head) + "\n")
    for gid, d in rows:
        std, gdi = d.get("standard"), d.get("gdi")
        cells = [gid,
                 _fmt(std.best_cut if std else None), _fmt(gdi.best_cut if gdi else None),
                 _fmt(std.best_imbalance if std else None), _fmt(gdi.best_imbalance if gdi else None)]
        if external is not None:
            ext = external.get(gid)
            cells += [_fmt(ext.cut if ext else None), _fmt(ext.bal if ext else None)]
        q.write("\t".join(cells) + "\n")
    return {"timing": t.getvalue(), "quality": q.getvalue()}


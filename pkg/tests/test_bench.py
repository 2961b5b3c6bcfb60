import csv
import io
import json
from fractions import Fraction

import pytest

from isingpart import gset
from isingpart.bench import (
    BenchConfig,
    RunReport,
    emit_plot_data,
    load_external_results,
    run_benchmark,
    write_reports,
)
from isingpart.errors import ConfigError
from isingpart.graph import Graph

FAST = {"sweeps": 60, "deterministic": True}


def toy():
    return Graph.from_edges(2, [(0, 1)], name="toy2")


def test_toy_both_strategies():
    # A = 1 so the balanced split is the unique optimum (see README on coefficients)
    reports = run_benchmark(BenchConfig([toy()], ("gdi", "standard"), runs_per_graph=1, coeff_a=Fraction(1)))
    assert [r.strategy for r in reports] == ["gdi", "standard"]
    for r in reports:
        assert (r.best_cut, r.best_imbalance) == (1, 0)
        assert (r.nodes, r.edges, r.density) == (2, 1, 1.0)
        assert len(r.run_seconds) == 1 and r.seeds == [0]


def test_empty_graph_list():
    assert run_benchmark(BenchConfig([])) == []


def test_g47_row():
    g = gset.surrogate("G47")
    [r] = run_benchmark(BenchConfig([g], ("gdi",), runs_per_graph=10, params={"sweeps": 20}))
    assert (r.graph_id, r.nodes, r.edges) == ("G47", 1000, 9990)
    assert round(r.density, 2) == 0.02
    feasible = [c for c, i in zip(r.run_cuts, r.run_imbalances) if i == 0]
    assert r.best_cut == min(feasible or r.run_cuts)
    assert r.min_cut == min(r.run_cuts)
    assert r.seeds == list(range(10))
    assert r.min_cut <= r.mean_cut <= r.max_cut


@pytest.mark.parametrize("cfg", [
    {"runs_per_graph": 0},
    {"strategies": ()},
    {"strategies": ("metis",)},
    {"params": {"bogus": 1}},
    {"params": {"sweeps": 0}},
    {"output_format": "xml"},
    {"jobs": 0},
])
def test_invalid_config(cfg):
    with pytest.raises(ConfigError):
        run_benchmark(BenchConfig([toy()], **cfg))


def test_unreadable_file_becomes_error_row(tmp_path):
    bad = tmp_path / "broken.txt"
    bad.write_text("3 2\n1 2 1\n")
    good = tmp_path / "p3.txt"
    good.write_text("3 2\n1 2 1\n2 3 1\n")
    reports = run_benchmark(BenchConfig([bad, tmp_path / "missing.txt", good], runs_per_graph=1, params=FAST))
    assert [r.graph_id for r in reports] == ["p3", "broken", "missing"]
    assert reports[0].ok
    assert "GraphConsistencyError" in reports[1].error
    assert "FileNotFoundError" in reports[2].error


def test_sorted_by_density():
    graphs = [gset.random_graph(40, m, seed=m, name=f"m{m}") for m in (300, 60, 150)]
    reports = run_benchmark(BenchConfig(graphs, ("standard", "gdi"), runs_per_graph=1, params=FAST))
    assert [r.graph_id for r in reports] == ["m60", "m60", "m150", "m150", "m300", "m300"]
    assert [r.strategy for r in reports[:2]] == ["standard", "gdi"]


def test_best_of_monotone_and_deterministic():
    g = gset.random_graph(60, 240, seed=3, name="r")
    prev = None
    for runs in (1, 3, 6):
        [a] = run_benchmark(BenchConfig([g], runs_per_graph=runs, params=FAST))
        [b] = run_benchmark(BenchConfig([g], runs_per_graph=runs, params=FAST))
        assert (a.best_cut, a.run_cuts, a.run_imbalances, a.seeds) == (b.best_cut, b.run_cuts, b.run_imbalances, b.seeds)
        key = (a.best_imbalance > 0, a.best_cut, a.best_imbalance)
        assert prev is None or key <= prev
        prev = key


def test_best_prefers_balance():
    g = gset.random_graph(30, 90, seed=1, name="r")
    [r] = run_benchmark(BenchConfig([g], runs_per_graph=8, params=FAST))
    balanced = [c for c, i in zip(r.run_cuts, r.run_imbalances) if i == 0]
    if balanced:
        assert (r.best_imbalance, r.best_cut) == (0, min(balanced))


def test_jobs_do_not_change_results():
    graphs = [gset.random_graph(30, 60 + 10 * k, seed=k, name=f"g{k}") for k in range(3)]
    serial = run_benchmark(BenchConfig(graphs, ("gdi", "standard"), runs_per_graph=2, params=FAST))
    threaded = run_benchmark(BenchConfig(graphs, ("gdi", "standard"), runs_per_graph=2, params=FAST, jobs=3))
    key = lambda r: (r.graph_id, r.strategy, r.run_cuts, r.run_imbalances)
    assert list(map(key, serial)) == list(map(key, threaded))


def _reports():
    graphs = [gset.random_graph(30, m, seed=m, name=f"g{m}") for m in (40, 80, 120)]
    return run_benchmark(BenchConfig(graphs, ("gdi", "standard"), runs_per_graph=2, params=FAST))


def test_plot_data_shapes():
    tables = emit_plot_data(_reports())
    timing = tables["timing"].splitlines()
    assert timing[0].split("\t") == ["graph_id", "density", "time_standard", "time_gdi",
                                     "sweep_standard", "sweep_gdi"]
    assert [row.split("\t")[0] for row in timing[1:]] == ["g40", "g80", "g120"]
    assert "NA" not in tables["timing"]
    quality = tables["quality"].splitlines()
    assert len(quality) == 4 and "cut_external" not in quality[0]


def test_plot_data_missing_strategy():
    reports = [r for r in _reports() if r.strategy == "gdi"]
    rows = [line.split("\t") for line in emit_plot_data(reports)["timing"].splitlines()[1:]]
    assert all(row[2] == "NA" and row[3] != "NA" for row in rows)
    with pytest.raises(ConfigError):
        emit_plot_data([RunReport("x", error="boom")])


def test_external_results(tmp_path):
    path = tmp_path / "ext.csv"
    path.write_text("graph_id,cut,bal,time_seconds\ng40,7,0,0.5\nG70,9541,5,0.1\n")
    ext = load_external_results(path)
    assert ext["G70"].cut == 9541 and ext["G70"].bal == 5
    quality = emit_plot_data(_reports(), ext)["quality"].splitlines()
    assert quality[0].endswith("cut_external\tbal_external")
    rows = {line.split("\t")[0]: line.split("\t") for line in quality[1:]}
    assert rows["g40"][-2:] == ["7", "0"]
    assert rows["g80"][-2:] == ["NA", "NA"]


def test_bundled_external_fixture():
    ext = load_external_results(gset.resources.files("isingpart").joinpath("data/metis_reference.csv"))
    assert ext["G47"].graph_id == "G47"
    assert {r["graph_id"] for r in gset.reference_results()} == set(ext)


@pytest.mark.parametrize("text", ["id,cut,bal,time\nG1,1,0,1\n", "graph_id,cut,bal,time_seconds\nG1,x,0,1\n"])
def test_external_results_bad(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_external_results(path)


def test_csv_and_json_output():
    reports = _reports() + [RunReport("bad, \"name\"", error="OSError: x")]
    buf = io.StringIO()
    write_reports(reports, buf, "csv")
    assert "\r\n" in buf.getvalue()
    rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
    assert len(rows) == len(reports)
    assert rows[0]["graph_id"] == "g40" and int(rows[0]["best_cut"]) == reports[0].best_cut
    assert rows[0]["seeds"] == "0;1"
    assert rows[-1]["graph_id"] == 'bad, "name"' and rows[-1]["best_cut"] == ""

    buf = io.StringIO()
    write_reports(reports, buf, "json")
    data = json.loads(buf.getvalue())
    assert data[0]["run_cuts"] == reports[0].run_cuts
    assert data[-1]["error"] == "OSError: x"
    with pytest.raises(ConfigError):
        write_reports(reports, io.StringIO(), "xml")

import csv
import io
import json

import pytest

import meshcast as mc
from meshcast import bench
from meshcast.bench import ExperimentConfig, RequestSpec, run_experiment, run_property_suites
from meshcast.graph import MulticastRequest
from meshcast.reference import reference_instance, reference_requests


def reference_config(algorithms=("tssr", "spt", "st"), **overrides):
    return ExperimentConfig(
        graph_file=None,
        generator=None,
        requests=[RequestSpec(rid, req) for rid, req in reference_requests()],
        algorithms=tuple(algorithms),
        **overrides,
    )


class TestConfig:
    def test_requires_algorithms(self):
        with pytest.raises(mc.ConfigError):
            reference_config(algorithms=())

    def test_requires_requests(self):
        with pytest.raises(mc.ConfigError):
            ExperimentConfig(
                graph_file=None, generator=None, requests=[], algorithms=("tssr",)
            )

    def test_rejects_unknown_algorithm(self):
        with pytest.raises(mc.ConfigError):
            reference_config(algorithms=("tssr", "mystery"))

    def test_rejects_two_graph_sources(self):
        with pytest.raises(mc.ConfigError):
            ExperimentConfig(
                graph_file="x.json",
                generator={"nodes": 4, "radius": 0.5},
                requests=[RequestSpec("R1", MulticastRequest("a", ("F1",)))],
                algorithms=("tssr",),
            )

    def test_from_dict_roundtrip(self):
        data = {
            "generator": {"nodes": 10, "radius": 0.5, "functions": 2, "seed": 3},
            "requests": [{"id": "R1", "root": "v0", "functions": ["F1", "F2"]}],
            "algorithms": ["tssr", "exact"],
            "seed": 3,
            "threads": 2,
        }
        cfg = ExperimentConfig.from_dict(data)
        assert cfg.algorithms == ("tssr", "exact")
        assert cfg.requests[0].request_id == "R1"
        g = bench.load_experiment_graph(cfg)
        assert g.n == 10


class TestRunExperiment:
    def test_reference_table_shape_and_lengths(self):
        g = reference_instance()
        table = run_experiment(g, reference_config())
        assert len(table.rows) == 33
        for rid, _ in reference_requests():
            lengths = {table.row(rid, algo).length for algo in ("tssr", "spt", "st")}
            assert len(lengths) == 1

    def test_reference_interference_dominance(self):
        g = reference_instance()
        table = run_experiment(g, reference_config())
        for rid, _ in reference_requests():
            t = table.row(rid, "tssr").interference
            assert t <= table.row(rid, "spt").interference
            assert t <= table.row(rid, "st").interference

    def test_exact_algorithm_rows(self):
        g = reference_instance()
        table = run_experiment(g, reference_config(algorithms=("exact",)))
        row = table.row("R1", "exact")
        assert (row.length, row.interference) == (1.0, 6)
        assert row.artifact and "front" in row.artifact

    def test_rows_match_serialized_tree(self):
        g = reference_instance()
        table = run_experiment(g, reference_config())
        for row in table.rows:
            tree = row.artifact["tree"]
            assert sum(e[2] for e in tree["edges"]) == pytest.approx(row.length)
            assert mc.interference(g, tree["vertices"]) == row.interference

    def test_cell_error_not_fatal(self):
        g = mc.Graph(
            [("a", "F1", None), ("b", "F2", None), ("c", None, None)],
            [("a", "c", 1.0)],
        )
        cfg = ExperimentConfig(
            graph_file=None,
            generator=None,
            requests=[
                RequestSpec("bad", MulticastRequest("a", ("F1", "F2"))),
                RequestSpec("good", MulticastRequest("a", ("F1",))),
            ],
            algorithms=("tssr",),
        )
        table = run_experiment(g, cfg)
        assert table.row("bad", "tssr").error
        assert table.row("good", "tssr").length == 0.0

    def test_thread_counts_agree(self):
        g = reference_instance()
        tables = [
            run_experiment(g, reference_config(threads=n)).to_csv() for n in (1, 4, 8)
        ]
        assert tables[0] == tables[1] == tables[2]

    def test_csv_shape(self):
        g = reference_instance()
        text = run_experiment(g, reference_config()).to_csv()
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == list(bench.CSV_COLUMNS)
        assert len(rows) == 34
        assert rows[1][:4] == ["R1", "tssr", "1.0", "6"]

    def test_timings_toggle(self):
        g = reference_instance()
        quiet = list(csv.reader(io.StringIO(run_experiment(g, reference_config()).to_csv())))
        timed = list(
            csv.reader(io.StringIO(run_experiment(g, reference_config(timings=True)).to_csv()))
        )
        assert quiet[1][4] == ""
        assert timed[1][4] != ""

    def test_json_output_parses(self):
        g = reference_instance()
        data = json.loads(run_experiment(g, reference_config()).to_json())
        assert len(data["rows"]) == 33


class TestPropertySuites:
    def test_all_suites_pass(self):
        report = run_property_suites(trials=60, seed=1)
        assert report.passed
        assert set(report.reports) == {
            "monotone",
            "submodular",
            "prune_monotone",
            "vicinal_outside",
        }

    def test_minimal_trials(self):
        report = run_property_suites(trials=1, seed=2, suites=("lemma1",))
        assert report.passed

    def test_deterministic_reports(self):
        a = run_property_suites(trials=30, seed=3, suites=("lemma1", "prune"))
        b = run_property_suites(trials=30, seed=3, suites=("lemma1", "prune"))
        assert a.to_dict() == b.to_dict()

    def test_invalid_trials(self):
        with pytest.raises(mc.ConfigError):
            run_property_suites(trials=0, seed=0)

    def test_unknown_suite(self):
        with pytest.raises(mc.ConfigError):
            run_property_suites(trials=5, seed=0, suites=("nope",))

import json
import os

import pytest
from click.testing import CliRunner

from meshcast.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def write_config(path, **overrides):
    data = {
        "generator": {"nodes": 20, "radius": 0.45, "functions": 3, "seed": 11},
        "requests": [
            {"id": "R1", "root": "v00", "functions": ["F1", "F2"]},
            {"id": "R2", "root": "v00", "functions": ["F1", "F2", "F3"]},
        ],
        "algorithms": ["tssr", "spt", "st"],
        "seed": 11,
    }
    data.update(overrides)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh)
    return path


class TestGen:
    def test_writes_graph(self, runner, tmp_path):
        out = tmp_path / "g.json"
        result = runner.invoke(
            main, ["gen", "--nodes", "12", "--radius", "0.4", "--functions", "2",
                   "--seed", "5", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text())
        assert len(data["nodes"]) == 12

    def test_bad_radius_exit_1(self, runner, tmp_path):
        result = runner.invoke(
            main, ["gen", "--nodes", "5", "--radius", "2.0", "--out", str(tmp_path / "g.json")]
        )
        assert result.exit_code == 1


class TestSolve:
    def graph_file(self, runner, tmp_path):
        out = tmp_path / "g.json"
        runner.invoke(
            main, ["gen", "--nodes", "15", "--radius", "0.5", "--functions", "3",
                   "--seed", "2", "--out", str(out)]
        )
        return out

    def test_tssr_json_output(self, runner, tmp_path):
        gpath = self.graph_file(runner, tmp_path)
        result = runner.invoke(
            main, ["solve", "--graph", str(gpath), "--root", "v00",
                   "--request", "F1,F2", "--algo", "tssr"]
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert payload["algorithm"] == "TSSR"

    def test_exact_front_output(self, runner, tmp_path):
        gpath = self.graph_file(runner, tmp_path)
        out = tmp_path / "front.json"
        result = runner.invoke(
            main, ["solve", "--graph", str(gpath), "--root", "v00",
                   "--request", "F1,F2", "--algo", "exact", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        assert json.loads(out.read_text())["front"]

    def test_unknown_function_exit_1(self, runner, tmp_path):
        gpath = self.graph_file(runner, tmp_path)
        result = runner.invoke(
            main, ["solve", "--graph", str(gpath), "--root", "v00", "--request", "F9"]
        )
        assert result.exit_code == 1

    def test_disconnected_exit_2(self, runner, tmp_path):
        gpath = tmp_path / "disc.json"
        gpath.write_text(
            json.dumps(
                {
                    "nodes": [{"id": "a", "function": "F1"}, {"id": "b", "function": "F2"}],
                    "edges": [],
                }
            )
        )
        result = runner.invoke(
            main, ["solve", "--graph", str(gpath), "--root", "a", "--request", "F1,F2"]
        )
        assert result.exit_code == 2


class TestBench:
    def test_outputs_and_figures(self, runner, tmp_path):
        cfg = write_config(tmp_path / "cfg.json")
        out_dir = tmp_path / "out"
        result = runner.invoke(main, ["bench", "--config", str(cfg), "--out-dir", str(out_dir)])
        assert result.exit_code == 0, result.output
        assert (out_dir / "results.csv").exists()
        assert (out_dir / "results.json").exists()
        assert (out_dir / "length.png").exists()
        assert (out_dir / "interference.png").exists()

    def test_bad_config_exit_1(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{\"algorithms\": []}")
        result = runner.invoke(main, ["bench", "--config", str(cfg), "--out-dir", str(tmp_path / "o")])
        assert result.exit_code == 1

    def test_thread_override_identical_csv(self, runner, tmp_path):
        cfg = write_config(tmp_path / "cfg.json")
        outputs = []
        for threads in (1, 4):
            out_dir = tmp_path / f"out{threads}"
            result = runner.invoke(
                main, ["bench", "--config", str(cfg), "--out-dir", str(out_dir),
                       "--threads", str(threads), "--no-figures"]
            )
            assert result.exit_code == 0, result.output
            outputs.append((out_dir / "results.csv").read_bytes())
        assert outputs[0] == outputs[1]


class TestCheck:
    def test_lemma1_passes(self, runner):
        result = runner.invoke(main, ["check", "--suite", "lemma1", "--trials", "50", "--seed", "4"])
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["passed"] is True

    def test_all_suites(self, runner):
        result = runner.invoke(main, ["check", "--suite", "all", "--trials", "40", "--seed", "1"])
        assert result.exit_code == 0, result.output


class TestPaper:
    def test_reference_run(self, runner, tmp_path):
        out_dir = tmp_path / "ref"
        result = runner.invoke(main, ["paper", "--out-dir", str(out_dir)])
        assert result.exit_code == 0, result.output
        csv_text = (out_dir / "results.csv").read_text().splitlines()
        assert len(csv_text) == 1 + 11 * 4  # header + 11 requests x 4 algorithms
        assert (out_dir / "graph.json").exists()
        assert (out_dir / "network.png").exists()
        first = csv_text[1].split(",")
        assert first[:4] == ["R1", "tssr", "1.0", "6"]

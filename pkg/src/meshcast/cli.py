"""Command-line front end.

Exit codes: 0 success, 1 config or input error, 2 infeasible instance
(disconnection or exhausted exact budget), 3 property-suite failure.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from . import bench, reference
from .errors import (
    BudgetExceededError,
    ConfigError,
    GraphFormatError,
    UnknownFunctionError,
    UnknownNodeError,
    UnreachableError,
)
from .graph import MulticastRequest, generate_unit_disk, load_graph_file, save_graph_file
from .oracle import enumerate_pareto_front
from .paths import PathSolverConfig
from .steiner import spt_baseline, st_baseline, tssr

EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_SUITE_FAILED = 3


def _mapped_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ConfigError, GraphFormatError, UnknownNodeError, UnknownFunctionError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except (UnreachableError, BudgetExceededError) as exc:
            click.echo(f"infeasible: {exc}", err=True)
            sys.exit(EXIT_INFEASIBLE)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)

    return wrapper


@click.group()
def main():
    """Interference-aware multicast trees for wireless mesh networks."""


@main.command()
@click.option("--nodes", type=int, required=True, help="Number of mesh nodes.")
@click.option("--radius", type=float, required=True, help="Connection radius in (0, 1].")
@click.option("--functions", type=int, default=0, show_default=True, help="Labeled nodes F1..Fk.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_mapped_errors
def gen(nodes, radius, functions, seed, out):
    """Generate a random unit-disk mesh instance."""
    g = generate_unit_disk(nodes, radius, functions, seed)
    save_graph_file(g, out)
    click.echo(f"wrote {out}: n={g.n}, m={g.m}, functions={sorted(g.functions())}")


@main.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--root", required=True, help="Root node id.")
@click.option("--request", "request_csv", required=True, help="Comma-separated function labels.")
@click.option("--algo", type=click.Choice(["tssr", "spt", "st", "exact"]), default="tssr", show_default=True)
@click.option("--mode", type=click.Choice(["exact", "greedy", "auto"]), default="auto", show_default=True)
@click.option("--label-cap", type=int, default=200_000, show_default=True)
@click.option("--node-cap", type=int, default=16, show_default=True, help="Oracle size cap (exact only).")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write JSON here instead of stdout.")
@_mapped_errors
def solve(graph_path, root, request_csv, algo, mode, label_cap, node_cap, out):
    """Solve one multicast request on a graph file."""
    g = load_graph_file(graph_path)
    req = MulticastRequest(root=root, functions=tuple(x for x in request_csv.split(",") if x))
    if algo == "exact":
        front = enumerate_pareto_front(g, req, node_cap)
        payload = {"algorithm": "exact", "front": [p.to_dict() for p in front]}
    else:
        cfg = PathSolverConfig(mode=mode, label_cap=label_cap)
        solver = {"tssr": lambda: tssr(g, req, cfg), "st": lambda: st_baseline(g, req, cfg),
                  "spt": lambda: spt_baseline(g, req)}[algo]
        payload = solver().to_dict()
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _write_outputs(g, cfg, out_dir, figures: bool):
    table = bench.run_experiment(g, cfg)
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "results.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(table.to_csv())
    with open(os.path.join(out_dir, "results.json"), "w", encoding="utf-8") as fh:
        fh.write(table.to_json())
    if figures:
        from .plots import render_result_figures

        render_result_figures(table, out_dir)
    return table, csv_path


@main.command("bench")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out-dir", type=click.Path(file_okay=False), required=True)
@click.option("--threads", type=int, default=None, help="Override the config's thread count.")
@click.option("--figures/--no-figures", default=True, show_default=True)
@_mapped_errors
def bench_cmd(config_path, out_dir, threads, figures):
    """Run a batch experiment from a JSON config."""
    with open(config_path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid config JSON: {exc}") from exc
    if threads is not None:
        data["threads"] = threads
    cfg = bench.ExperimentConfig.from_dict(data)
    g = bench.load_experiment_graph(cfg)
    table, csv_path = _write_outputs(g, cfg, out_dir, figures)
    failed = [r for r in table.rows if r.error]
    click.echo(f"wrote {csv_path} ({len(table.rows)} rows, {len(failed)} errors)")
    if failed and len(failed) == len(table.rows):
        sys.exit(EXIT_INFEASIBLE)


@main.command()
@click.option("--suite", type=click.Choice(["lemma1", "prune", "prop1", "all"]), default="all", show_default=True)
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_mapped_errors
def check(suite, trials, seed):
    """Run the structural property suites and print a JSON report."""
    suites = ("lemma1", "prune", "prop1") if suite == "all" else (suite,)
    report = bench.run_property_suites(trials, seed, suites)
    click.echo(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    if not report.passed:
        sys.exit(EXIT_SUITE_FAILED)


@main.command()
@click.option("--out-dir", type=click.Path(file_okay=False), required=True)
@click.option("--figures/--no-figures", default=True, show_default=True)
@_mapped_errors
def paper(out_dir, figures):
    """Run the bundled reference-network experiment batch."""
    g = reference.reference_instance()
    cfg = bench.ExperimentConfig(
        graph_file=None,
        generator=None,
        requests=[bench.RequestSpec(rid, req) for rid, req in reference.reference_requests()],
        algorithms=("tssr", "spt", "st", "exact"),
    )
    os.makedirs(out_dir, exist_ok=True)
    save_graph_file(g, os.path.join(out_dir, "graph.json"))
    table, csv_path = _write_outputs(g, cfg, out_dir, figures)
    if figures:
        from .plots import render_graph_figure

        render_graph_figure(g, os.path.join(out_dir, "network.png"))
    click.echo(f"wrote {csv_path} ({len(table.rows)} rows)")


if __name__ == "__main__":
    main()

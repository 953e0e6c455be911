"""Experiment harness: batch solver runs, result tables, property suites.

Result tables are deterministic for a fixed config and seed regardless of the
thread count; per-cell wall-clock timings are therefore kept out of the CSV
unless explicitly enabled.
"""

from __future__ import annotations

import concurrent.futures
import csv
import io
import json
import random
import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import ConfigError, MeshcastError
from .graph import Graph, MulticastRequest, generate_unit_disk, load_graph_file
from .interference import (
    PropertyReport,
    VicinalRelation,
    Violation,
    check_monotone,
    check_submodular,
    closed_neighborhood,
    vicinal_compare,
)
from .oracle import enumerate_pareto_front
from .paths import PathSolverConfig
from .steiner import (
    prune_non_terminal_leaves,
    spt_baseline,
    st_baseline,
    tree_from_edges,
    tssr,
)

ALGORITHMS = ("tssr", "spt", "st", "exact")

CSV_COLUMNS = ("request_id", "algorithm", "length", "interference", "runtime_ms", "mode")


@dataclass(frozen=True)
class RequestSpec:
    request_id: str
    request: MulticastRequest


@dataclass
class ExperimentConfig:
    graph_file: Optional[str]
    generator: Optional[dict]
    requests: list[RequestSpec]
    algorithms: tuple[str, ...]
    mode: str = "auto"
    label_cap: int = 200_000
    exact_node_cap: int = 16
    seed: int = 0
    threads: int = 1
    timings: bool = False

    def __post_init__(self):
        if self.graph_file is not None and self.generator is not None:
            raise ConfigError("config needs at most one of 'graph' or 'generator'")
        if not self.requests:
            raise ConfigError("config needs at least one request")
        if not self.algorithms:
            raise ConfigError("config needs at least one algorithm")
        for algo in self.algorithms:
            if algo not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {algo!r}; pick from {ALGORITHMS}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("experiment config must be a JSON object")
        try:
            requests = [
                RequestSpec(
                    request_id=str(spec.get("id", f"R{i + 1}")),
                    request=MulticastRequest(
                        root=spec["root"], functions=tuple(spec["functions"])
                    ),
                )
                for i, spec in enumerate(data.get("requests", []))
            ]
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"bad request spec: {exc}") from exc
        return cls(
            graph_file=data.get("graph"),
            generator=data.get("generator"),
            requests=requests,
            algorithms=tuple(data.get("algorithms", ("tssr", "spt", "st"))),
            mode=data.get("mode", "auto"),
            label_cap=int(data.get("label_cap", 200_000)),
            exact_node_cap=int(data.get("exact_node_cap", 16)),
            seed=int(data.get("seed", 0)),
            threads=int(data.get("threads", 1)),
            timings=bool(data.get("timings", False)),
        )

    def path_config(self) -> PathSolverConfig:
        return PathSolverConfig(mode=self.mode, label_cap=self.label_cap)


def load_experiment_graph(cfg: ExperimentConfig) -> Graph:
    if cfg.graph_file is not None:
        return load_graph_file(cfg.graph_file)
    if cfg.generator is None:
        raise ConfigError("config needs a 'graph' path or a 'generator' spec")
    gen = dict(cfg.generator)
    try:
        return generate_unit_disk(
            n=int(gen["nodes"]),
            radius=float(gen["radius"]),
            k_functions=int(gen.get("functions", 0)),
            seed=int(gen.get("seed", cfg.seed)),
        )
    except KeyError as exc:
        raise ConfigError(f"generator spec missing {exc}") from exc


@dataclass
class ResultRow:
    request_id: str
    algorithm: str
    length: Optional[float]
    interference: Optional[int]
    runtime_ms: float
    mode: str
    error: Optional[str] = None
    artifact: Optional[dict] = None

    def to_dict(self, include_runtime: bool = True) -> dict:
        out = {
            "request_id": self.request_id,
            "algorithm": self.algorithm,
            "length": self.length,
            "interference": self.interference,
            "mode": self.mode,
            "error": self.error,
            "artifact": self.artifact,
        }
        if include_runtime:
            out["runtime_ms"] = self.runtime_ms
        return out


@dataclass
class ResultTable:
    rows: list[ResultRow]
    timings: bool = False

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(
                [
                    row.request_id,
                    row.algorithm,
                    "" if row.length is None else repr(row.length),
                    "" if row.interference is None else row.interference,
                    round(row.runtime_ms, 3) if self.timings else "",
                    row.mode,
                ]
            )
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {"rows": [row.to_dict(include_runtime=self.timings) for row in self.rows]},
            indent=2,
            sort_keys=True,
        ) + "\n"

    def row(self, request_id: str, algorithm: str) -> ResultRow:
        for row in self.rows:
            if row.request_id == request_id and row.algorithm == algorithm:
                return row
        raise KeyError((request_id, algorithm))


def _run_cell(g: Graph, cfg: ExperimentConfig, spec: RequestSpec, algo: str) -> ResultRow:
    start = time.perf_counter()
    try:
        if algo == "exact":
            front = enumerate_pareto_front(g, spec.request, cfg.exact_node_cap)
            best = front[0]  # minimum length, minimum interference among ties
            row = ResultRow(
                spec.request_id,
                algo,
                best.length,
                best.interference,
                0.0,
                "exact",
                artifact={"front": [p.to_dict() for p in front]},
            )
        else:
            solver = {"tssr": tssr, "st": st_baseline}.get(algo)
            if solver is not None:
                result = solver(g, spec.request, cfg.path_config())
            else:
                result = spt_baseline(g, spec.request)
            row = ResultRow(
                spec.request_id,
                algo,
                result.total_length,
                result.interference,
                0.0,
                result.mode,
                artifact={"tree": result.to_dict()},
            )
    except MeshcastError as exc:
        row = ResultRow(spec.request_id, algo, None, None, 0.0, "error", error=str(exc))
    row.runtime_ms = (time.perf_counter() - start) * 1000.0
    return row


def run_experiment(g: Graph, cfg: ExperimentConfig) -> ResultTable:
    """Fill every (request, algorithm) cell. Per-cell errors land in the row;
    row order follows the config, independent of scheduling.
    """
    cells = [(spec, algo) for spec in cfg.requests for algo in cfg.algorithms]
    if cfg.threads == 1:
        rows = [_run_cell(g, cfg, spec, algo) for spec, algo in cells]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(lambda cell: _run_cell(g, cfg, *cell), cells))
    return ResultTable(rows=rows, timings=cfg.timings)


# ------------------------------------------------------------- property suites


@dataclass
class SuiteReport:
    reports: dict[str, PropertyReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports.values())

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "suites": {name: r.to_dict() for name, r in self.reports.items()},
        }


def _graph_pool(seed: int, count: int = 50, max_nodes: int = 60) -> list[Graph]:
    rng = random.Random(seed)
    return [
        generate_unit_disk(
            n=rng.randint(8, max_nodes),
            radius=rng.uniform(0.2, 0.45),
            k_functions=0,
            seed=rng.randrange(2**31),
        )
        for _ in range(count)
    ]


def suite_lemma1(trials: int, seed: int, graphs: Optional[list[Graph]] = None) -> SuiteReport:
    """Monotonicity and diminishing returns of the interference metric,
    sampled across a pool of random meshes.
    """
    graphs = graphs or _graph_pool(seed)
    per_graph = max(1, -(-trials // len(graphs)))
    monotone = PropertyReport("monotone", 0)
    submodular = PropertyReport("submodular", 0)
    for i, g in enumerate(graphs):
        for target, check in ((monotone, check_monotone), (submodular, check_submodular)):
            if target.trials >= trials:
                continue
            budget = min(per_graph, trials - target.trials)
            sub = check(g, budget, seed + 7919 * i)
            target.trials += sub.trials
            target.violations.extend(sub.violations)
    return SuiteReport({"monotone": monotone, "submodular": submodular})


def _random_spanning_tree(g: Graph, rng: random.Random):
    """Random spanning tree of the component of a random node; None when the
    component is a single vertex.
    """
    start = rng.choice(g.node_ids())
    component = {start}
    frontier = [start]
    while frontier:
        u = frontier.pop()
        for v, _ in g.adj_indexed(g.index_of(u)):
            vid = g.id_of(v)
            if vid not in component:
                component.add(vid)
                frontier.append(vid)
    if len(component) < 2:
        return None
    edges = [e for e in g.edges() if e[0] in component and e[1] in component]
    rng.shuffle(edges)
    parent = {v: v for v in component}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for u, v, length in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append((u, v, length))
    return sorted(component), tree


def suite_prune(trials: int, seed: int, graphs: Optional[list[Graph]] = None) -> SuiteReport:
    """Leaf pruning never increases tree length or interference."""
    graphs = graphs or _graph_pool(seed, count=20, max_nodes=40)
    rng = random.Random(seed)
    report = PropertyReport("prune_monotone", trials)
    for _ in range(trials):
        g = rng.choice(graphs)
        sample = _random_spanning_tree(g, rng)
        if sample is None:
            continue
        component, tree_edges = sample
        root = rng.choice(component)
        terminals = set(rng.sample(component, rng.randint(1, len(component)))) | {root}
        before = tree_from_edges(g, "random", root, terminals, tree_edges)
        after = prune_non_terminal_leaves(g, before, terminals)
        if (
            after.total_length > before.total_length + 1e-9
            or after.interference > before.interference
        ):
            report.violations.append(
                Violation(
                    tuple(sorted(terminals)),
                    tuple(sorted(before.vertices)),
                    root,
                    f"pruning went from ({before.total_length}, {before.interference}) "
                    f"to ({after.total_length}, {after.interference})",
                )
            )
    return SuiteReport({"prune_monotone": report})


def suite_prop1(trials: int, seed: int) -> SuiteReport:
    """On exact Pareto witnesses, no vertex outside N[V_T] is vicinally
    dominated by a tree vertex.
    """
    rng = random.Random(seed)
    report = PropertyReport("vicinal_outside", 0)
    produced = 0
    attempts = 0
    while produced < trials and attempts < trials * 20:
        attempts += 1
        g = generate_unit_disk(
            n=rng.randint(5, 10),
            radius=rng.uniform(0.35, 0.6),
            k_functions=rng.randint(2, 3),
            seed=rng.randrange(2**31),
        )
        functions = sorted(g.functions())
        req = MulticastRequest(root=g.node_with_function(functions[0]), functions=tuple(functions))
        try:
            front = enumerate_pareto_front(g, req)
        except MeshcastError:
            continue
        produced += 1
        for point in front:
            reached = closed_neighborhood(g, point.witness_vertices)
            for v in sorted(set(g.node_ids()) - reached):
                for v_t in sorted(point.witness_vertices):
                    if vicinal_compare(g, v_t, v) is VicinalRelation.LESS_OR_EQUAL:
                        report.violations.append(
                            Violation(
                                tuple(sorted(point.witness_vertices)),
                                (v_t,),
                                v,
                                "tree vertex vicinally below an out-of-range vertex",
                            )
                        )
    report.trials = produced
    return SuiteReport({"vicinal_outside": report})


def run_property_suites(
    trials: int, seed: int, suites: tuple[str, ...] = ("lemma1", "prune", "prop1")
) -> SuiteReport:
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    merged: dict[str, PropertyReport] = {}
    if "lemma1" in suites:
        merged.update(suite_lemma1(trials, seed).reports)
    if "prune" in suites:
        merged.update(suite_prune(trials, seed).reports)
    if "prop1" in suites:
        merged.update(suite_prop1(max(1, trials // 20), seed).reports)
    if not merged:
        raise ConfigError(f"no known suite in {suites!r}")
    return SuiteReport(merged)

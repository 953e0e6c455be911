"""Interference-minimal routing over the set of shortest s-t paths.

Among all minimum-length s-t paths, find one whose vertex set has the smallest
closed neighborhood. The exact solver runs a label-setting search over the
shortest-path DAG with subset-dominance pruning; the greedy solver walks the
same DAG picking the locally cheapest successor and makes no optimality claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BudgetExceededError, UnreachableError
from .graph import LENGTH_EPSILON, Graph, NodeId, Path, _dijkstra


@dataclass(frozen=True)
class PathSolverConfig:
    """Knobs for the path stage; ``mode`` is one of exact, greedy, auto."""

    mode: str = "auto"
    label_cap: int = 200_000
    tie_epsilon: float = LENGTH_EPSILON

    def __post_init__(self):
        if self.mode not in ("exact", "greedy", "auto"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.label_cap < 1:
            raise ValueError(f"label_cap must be >= 1, got {self.label_cap}")


@dataclass(frozen=True)
class ShortestPathDag:
    """All shortest s-t paths, compactly: edge (u, v) is present iff it lies
    on some minimum-length s-t path. ``order`` is a topological order.
    """

    source: int
    target: int
    distance: float
    succ: dict[int, list[tuple[int, float]]]
    order: list[int]


@dataclass(frozen=True)
class PathResult:
    path: Path
    interference: int
    mode: str


def shortest_dag(g: Graph, s: NodeId, t: NodeId, tie_epsilon: float = LENGTH_EPSILON) -> ShortestPathDag:
    si, ti = g.index_of(s), g.index_of(t)
    dist_s = _dijkstra(g, si)
    dist_t = _dijkstra(g, ti)
    total = dist_s[ti]
    if math.isinf(total):
        raise UnreachableError(f"{t!r} is unreachable from {s!r}")

    on_dag = [
        i
        for i in range(g.n)
        if not math.isinf(dist_s[i]) and dist_s[i] + dist_t[i] <= total + tie_epsilon
    ]
    keyed = {i: (dist_s[i], g.lexrank(i)) for i in on_dag}
    succ: dict[int, list[tuple[int, float]]] = {i: [] for i in on_dag}
    for u in on_dag:
        for v, length in g.adj_indexed(u):
            if v not in succ:
                continue
            # Zero-length ties resolved by lexrank so the DAG stays acyclic.
            if abs(dist_s[u] + length + dist_t[v] - total) <= tie_epsilon and keyed[u] < keyed[v]:
                succ[u].append((v, length))
    order = sorted(on_dag, key=keyed.__getitem__)
    return ShortestPathDag(si, ti, total, succ, order)


# ----------------------------------------------------------- exact label search


def _insert_label(labels: list, mask: int, seq: tuple) -> int:
    """Dominance-aware insert. A label prunes another at the same node when
    its reached set is a subset (ties broken toward the lexicographically
    smaller node sequence). Returns the change in stored-label count.
    """
    kept = []
    for m, sq in labels:
        if m | mask == mask and (m != mask or sq <= seq):
            return 0  # dominated by an existing label
        if mask | m == m and (m != mask or seq < sq):
            continue  # existing label dominated; drop it
        kept.append((m, sq))
    delta = 1 + len(kept) - len(labels)
    kept.append((mask, seq))
    labels[:] = kept
    return delta


def _exact_search(g: Graph, dag: ShortestPathDag, label_cap: int):
    """Run the label-setting sweep; returns labels at the target.

    Raises BudgetExceededError (carrying the best target candidate seen so
    far) when more than ``label_cap`` labels would be stored at once.
    """
    labels: dict[int, list[tuple[int, tuple[NodeId, ...]]]] = {}
    labels[dag.source] = [(g.closed_mask(dag.source), (g.id_of(dag.source),))]
    count = 1
    for u in dag.order:
        for mask, seq in labels.get(u, []):
            for v, _length in dag.succ[u]:
                new_mask = mask | g.closed_mask(v)
                new_seq = seq + (g.id_of(v),)
                bucket = labels.setdefault(v, [])
                count += _insert_label(bucket, new_mask, new_seq)
                if count > label_cap:
                    best = None
                    at_target = labels.get(dag.target, [])
                    if at_target:
                        best = min((m.bit_count(), sq) for m, sq in at_target)
                    raise BudgetExceededError(
                        f"exact budget exceeded: more than {label_cap} labels", best=best
                    )
    return labels.get(dag.target, [])


def _exact_path(g: Graph, dag: ShortestPathDag, label_cap: int) -> tuple[Path, int]:
    finals = _exact_search(g, dag, label_cap)
    best_count, best_seq = min((m.bit_count(), sq) for m, sq in finals)
    return Path(best_seq, dag.distance), best_count


# ------------------------------------------------------------------ greedy walk


def _greedy_walk(g: Graph, dag: ShortestPathDag) -> tuple[Path, int]:
    current = dag.source
    mask = g.closed_mask(current)
    seq = [g.id_of(current)]
    while current != dag.target:
        # Every DAG node lies on a shortest s-t path, so successors exist.
        current = min(
            (v for v, _ in dag.succ[current]),
            key=lambda v: ((mask | g.closed_mask(v)).bit_count(), g.lexrank(v)),
        )
        mask |= g.closed_mask(current)
        seq.append(g.id_of(current))
    return Path(tuple(seq), dag.distance), mask.bit_count()


def greedy_interference_path(g: Graph, s: NodeId, t: NodeId) -> Path:
    """A shortest s-t path chosen by best-first descent on interference."""
    if g.index_of(s) == g.index_of(t):
        return Path((s,), 0.0)
    path, _ = _greedy_walk(g, shortest_dag(g, s, t))
    return path


def min_interference_shortest_path(
    g: Graph, s: NodeId, t: NodeId, cfg: PathSolverConfig | None = None
) -> PathResult:
    """Minimum-length s-t path minimizing |N[path vertices]| over all ties.

    Exact mode is optimal; greedy mode is a best-effort upper bound; auto
    tries exact and falls back to greedy when the label budget runs out,
    reporting which mode produced the answer.
    """
    cfg = cfg or PathSolverConfig()
    si, ti = g.index_of(s), g.index_of(t)
    if si == ti:
        return PathResult(Path((s,), 0.0), g.closed_mask(si).bit_count(), "exact")

    dag = shortest_dag(g, s, t, cfg.tie_epsilon)
    if cfg.mode == "greedy":
        path, count = _greedy_walk(g, dag)
        return PathResult(path, count, "greedy")
    try:
        path, count = _exact_path(g, dag, cfg.label_cap)
        return PathResult(path, count, "exact")
    except BudgetExceededError:
        if cfg.mode == "exact":
            raise
        path, count = _greedy_walk(g, dag)
        return PathResult(path, count, "greedy")


def lexicographic_shortest_path(g: Graph, s: NodeId, t: NodeId) -> Path:
    """The interference-oblivious shortest path: among all minimum-length s-t
    paths, the lexicographically smallest node-id sequence.
    """
    si, ti = g.index_of(s), g.index_of(t)
    if si == ti:
        return Path((s,), 0.0)
    dag = shortest_dag(g, s, t)
    current = dag.source
    seq = [g.id_of(current)]
    while current != dag.target:
        current = min((v for v, _ in dag.succ[current]), key=g.lexrank)
        seq.append(g.id_of(current))
    return Path(tuple(seq), dag.distance)

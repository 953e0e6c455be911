"""Multicast tree construction: the two-stage relaxation solver and the
interference-oblivious baselines.

The two-stage solver ("TSSR") builds an interference-aware metric closure on
the terminal set (one constrained path solve per terminal pair), takes a
minimum spanning tree of the closure, and expands it back into the mesh
KMB-style: union the witness paths, re-extract a spanning tree by length, and
prune non-terminal leaves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import MeshcastError, UnreachableError
from .graph import (
    LENGTH_EPSILON,
    Graph,
    MulticastRequest,
    NodeId,
    Path,
    _dijkstra,
)
from .interference import interference
from .paths import PathSolverConfig, lexicographic_shortest_path, min_interference_shortest_path

Pair = tuple[NodeId, NodeId]


def terminals_of(g: Graph, req: MulticastRequest) -> set[NodeId]:
    """The terminal set: the root plus every node hosting a requested function."""
    g.index_of(req.root)
    terminals = {req.root}
    for label in req.functions:
        terminals.add(g.node_with_function(label))
    return terminals


# -------------------------------------------------------------- metric closure


@dataclass(frozen=True)
class ClosureEntry:
    pair: Pair
    length: float
    path: Path
    interference: int
    mode: str


@dataclass(frozen=True)
class MetricClosure:
    terminals: tuple[NodeId, ...]
    entries: dict[Pair, ClosureEntry]

    def entry(self, u: NodeId, v: NodeId) -> ClosureEntry:
        return self.entries[(min(u, v), max(u, v))]


def metric_closure(
    g: Graph,
    terminals: Iterable[NodeId],
    cfg: PathSolverConfig | None = None,
    interference_aware: bool = True,
) -> MetricClosure:
    """Complete graph on the terminals, one witness path per unordered pair.

    Interference-aware witnesses come from the constrained path solver;
    oblivious witnesses are plain lexicographic shortest paths.
    """
    terms = tuple(sorted(set(terminals)))
    entries: dict[Pair, ClosureEntry] = {}
    for u, v in itertools.combinations(terms, 2):
        try:
            if interference_aware:
                res = min_interference_shortest_path(g, u, v, cfg)
                path, count, mode = res.path, res.interference, res.mode
            else:
                path = lexicographic_shortest_path(g, u, v)
                count, mode = interference(g, path.nodes), "oblivious"
        except UnreachableError:
            raise UnreachableError(f"terminal pair {u!r}-{v!r} is disconnected") from None
        entries[(u, v)] = ClosureEntry((u, v), path.length, path, count, mode)
    return MetricClosure(terms, entries)


class _UnionFind:
    def __init__(self, items):
        self._parent = {x: x for x in items}

    def find(self, x):
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self._parent[rx] = ry
        return True


def minimum_spanning_tree(mc: MetricClosure) -> list[Pair]:
    """Kruskal on the closure. Ties by length prefer the lower-interference
    witness, then the lexicographically smaller pair.
    """
    ranked = sorted(
        mc.entries.values(), key=lambda e: (e.length, e.interference, e.pair)
    )
    uf = _UnionFind(mc.terminals)
    chosen = [e.pair for e in ranked if uf.union(*e.pair)]
    if len(chosen) != max(len(mc.terminals) - 1, 0):
        raise UnreachableError("terminal set is not pairwise connected")
    return chosen


# ----------------------------------------------------------------- tree result


@dataclass(frozen=True)
class SteinerTreeResult:
    """A multicast tree with its bicriteria cost (total length, |N[V_T]|)."""

    algorithm: str
    root: NodeId
    terminals: tuple[NodeId, ...]
    vertices: frozenset[NodeId]
    edges: tuple[tuple[NodeId, NodeId, float], ...]
    total_length: float
    interference: int
    mode: str = "exact"
    witnesses: dict[str, list[NodeId]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "root": self.root,
            "terminals": list(self.terminals),
            "vertices": sorted(self.vertices),
            "edges": [[u, v, length] for u, v, length in self.edges],
            "total_length": self.total_length,
            "interference": self.interference,
            "mode": self.mode,
            "witnesses": self.witnesses,
        }

    def validate(self, g: Graph) -> None:
        """Internal consistency guard run on every solver output."""
        if self.root not in self.vertices or not set(self.terminals) <= self.vertices:
            raise MeshcastError("tree does not span root and terminals")
        if len(self.edges) != len(self.vertices) - 1:
            raise MeshcastError("edge count does not match a tree")
        uf = _UnionFind(self.vertices)
        for u, v, length in self.edges:
            if abs(g.edge_length(u, v) - length) > LENGTH_EPSILON:
                raise MeshcastError(f"edge {u}-{v} length mismatch")
            if not uf.union(u, v):
                raise MeshcastError("cycle in tree edges")
        if abs(sum(e[2] for e in self.edges) - self.total_length) > LENGTH_EPSILON:
            raise MeshcastError("total_length inconsistent with edges")
        if interference(g, self.vertices) != self.interference:
            raise MeshcastError("interference inconsistent with vertices")
        keep = set(self.terminals) | {self.root}
        degree: dict[NodeId, int] = {v: 0 for v in self.vertices}
        for u, v, _ in self.edges:
            degree[u] += 1
            degree[v] += 1
        for v, d in degree.items():
            if d == 1 and v not in keep and len(self.vertices) > 1:
                raise MeshcastError(f"non-terminal leaf {v!r} survived pruning")


def tree_from_edges(
    g: Graph,
    algorithm: str,
    root: NodeId,
    terminals: Iterable[NodeId],
    edges: Iterable[tuple[NodeId, NodeId, float]],
    mode: str = "exact",
    witnesses: Optional[dict[str, list[NodeId]]] = None,
) -> SteinerTreeResult:
    canon = tuple(sorted((min(u, v), max(u, v), length) for u, v, length in edges))
    vertices = {root} | {x for u, v, _ in canon for x in (u, v)}
    return SteinerTreeResult(
        algorithm=algorithm,
        root=root,
        terminals=tuple(sorted(set(terminals))),
        vertices=frozenset(vertices),
        edges=canon,
        total_length=sum(e[2] for e in canon),
        interference=interference(g, vertices),
        mode=mode,
        witnesses=witnesses or {},
    )


def prune_non_terminal_leaves(
    g: Graph, tree: SteinerTreeResult, terminals: Iterable[NodeId]
) -> SteinerTreeResult:
    """Repeatedly strip leaves that are neither terminals nor the root, then
    recompute both metrics from the surviving vertex set.
    """
    keep = set(terminals) | {tree.root}
    edges = list(tree.edges)
    while True:
        degree: dict[NodeId, int] = {}
        for u, v, _ in edges:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        doomed = {v for v, d in degree.items() if d == 1 and v not in keep}
        if not doomed:
            break
        edges = [e for e in edges if e[0] not in doomed and e[1] not in doomed]
    return tree_from_edges(
        g, tree.algorithm, tree.root, tree.terminals, edges, tree.mode, tree.witnesses
    )


# -------------------------------------------------------------- KMB expansion


def kmb_expand(
    g: Graph,
    mc: MetricClosure,
    mst_pairs: Iterable[Pair],
    terminals: Iterable[NodeId],
    root: NodeId,
    algorithm: str = "TSSR",
    mode: str = "exact",
) -> SteinerTreeResult:
    """Expand closure-tree edges into their witness paths, re-extract a
    spanning tree of the union by length, and prune non-terminal leaves.
    """
    witnesses: dict[str, list[NodeId]] = {}
    union_edges: dict[Pair, float] = {}
    union_vertices = {root}
    for pair in mst_pairs:
        entry = mc.entries[pair]
        witnesses[f"{pair[0]}|{pair[1]}"] = list(entry.path.nodes)
        union_vertices.update(entry.path.nodes)
        for u, v in entry.path.edges():
            key = (min(u, v), max(u, v))
            union_edges[key] = g.edge_length(u, v)

    # Spanning tree of the union subgraph; overlapping witness paths may have
    # created cycles, so total length never exceeds the witness-length sum.
    ranked = sorted(union_edges.items(), key=lambda item: (item[1], item[0]))
    uf = _UnionFind(union_vertices)
    tree_edges = [(u, v, length) for (u, v), length in ranked if uf.union(u, v)]

    result = tree_from_edges(g, algorithm, root, terminals, tree_edges, mode, witnesses)
    result = prune_non_terminal_leaves(g, result, terminals)
    result.validate(g)
    return result


# --------------------------------------------------------------------- solvers


def _closure_mode(mc: MetricClosure) -> str:
    modes = {e.mode for e in mc.entries.values()}
    if not modes or modes == {"exact"}:
        return "exact"
    if modes <= {"exact", "greedy"}:
        return "greedy" if "greedy" in modes else "exact"
    return "oblivious"


def _single_vertex_result(g: Graph, algorithm: str, root: NodeId) -> SteinerTreeResult:
    result = tree_from_edges(g, algorithm, root, [root], [])
    result.validate(g)
    return result


def tssr(
    g: Graph, req: MulticastRequest, cfg: PathSolverConfig | None = None
) -> SteinerTreeResult:
    """Interference-aware two-stage solver."""
    terminals = terminals_of(g, req)
    if len(terminals) == 1:
        return _single_vertex_result(g, "TSSR", req.root)
    mc = metric_closure(g, terminals, cfg, interference_aware=True)
    mst_pairs = minimum_spanning_tree(mc)
    return kmb_expand(g, mc, mst_pairs, terminals, req.root, "TSSR", _closure_mode(mc))


def st_baseline(
    g: Graph, req: MulticastRequest, cfg: PathSolverConfig | None = None
) -> SteinerTreeResult:
    """Classic interference-oblivious Steiner approximation (same pipeline as
    the two-stage solver, but with plain shortest-path witnesses).
    """
    terminals = terminals_of(g, req)
    if len(terminals) == 1:
        return _single_vertex_result(g, "ST", req.root)
    mc = metric_closure(g, terminals, cfg, interference_aware=False)
    mst_pairs = minimum_spanning_tree(mc)
    return kmb_expand(g, mc, mst_pairs, terminals, req.root, "ST", "oblivious")


def spt_baseline(g: Graph, req: MulticastRequest) -> SteinerTreeResult:
    """Shortest-path tree from the root: one single-source tree with
    deterministic parent choice, restricted to root-terminal chains.
    """
    terminals = terminals_of(g, req)
    if len(terminals) == 1:
        return _single_vertex_result(g, "SPT", req.root)

    root_idx = g.index_of(req.root)
    dist = _dijkstra(g, root_idx)
    parent: dict[int, int] = {}
    for i in range(g.n):
        if i == root_idx or dist[i] == float("inf"):
            continue
        candidates = [
            u
            for u, length in g.adj_indexed(i)
            if abs(dist[u] + length - dist[i]) <= LENGTH_EPSILON
        ]
        if candidates:
            parent[i] = min(candidates, key=g.lexrank)

    edges: dict[Pair, float] = {}
    witnesses: dict[str, list[NodeId]] = {}
    for term in sorted(terminals):
        ti = g.index_of(term)
        if ti != root_idx and dist[ti] == float("inf"):
            raise UnreachableError(f"terminal {term!r} is unreachable from the root")
        chain = [ti]
        while chain[-1] != root_idx:
            chain.append(parent[chain[-1]])
        chain_ids = [g.id_of(i) for i in reversed(chain)]
        witnesses[f"{req.root}|{term}"] = chain_ids
        for u, v in zip(chain_ids, chain_ids[1:]):
            edges[(min(u, v), max(u, v))] = g.edge_length(u, v)

    tree_edges = [(u, v, length) for (u, v), length in edges.items()]
    result = tree_from_edges(g, "SPT", req.root, terminals, tree_edges, "oblivious", witnesses)
    result = prune_non_terminal_leaves(g, result, terminals)
    result.validate(g)
    return result

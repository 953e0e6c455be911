"""Brute-force ground truth at desk scale.

Enumerates the full bicriteria Pareto front of the multicast-tree problem by
sweeping vertex supersets of the terminal set (the interference of a solution
depends only on its vertex set, and the cheapest tree on a fixed vertex set is
an induced-subgraph MST), and exhaustively enumerates shortest paths for the
path-stage oracle.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .errors import ConfigError, UnreachableError
from .graph import Graph, MulticastRequest, NodeId
from .paths import shortest_dag
from .steiner import terminals_of


@dataclass(frozen=True)
class ParetoPoint:
    length: float
    interference: int
    witness_vertices: frozenset[NodeId]
    witness_edges: tuple[tuple[NodeId, NodeId, float], ...]

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "interference": self.interference,
            "witness_vertices": sorted(self.witness_vertices),
            "witness_edges": [[u, v, length] for u, v, length in self.witness_edges],
        }


def _induced_mst(g: Graph, members: list[int], member_mask: int):
    """Prim over the induced subgraph. Returns (total length, edges) or None
    if the induced subgraph is disconnected.
    """
    if len(members) == 1:
        return 0.0, []
    start = members[0]
    in_tree = 1 << start
    edges = []
    total = 0.0
    heap = [
        (length, g.lexrank(start), g.lexrank(v), start, v)
        for v, length in g.adj_indexed(start)
        if member_mask >> v & 1
    ]
    heapq.heapify(heap)
    while heap and len(edges) < len(members) - 1:
        length, _, _, u, v = heapq.heappop(heap)
        if in_tree >> v & 1:
            continue
        in_tree |= 1 << v
        total += length
        edges.append((u, v, length))
        for w, wlen in g.adj_indexed(v):
            if member_mask >> w & 1 and not in_tree >> w & 1:
                heapq.heappush(heap, (wlen, g.lexrank(v), g.lexrank(w), v, w))
    if len(edges) != len(members) - 1:
        return None
    return total, edges


def enumerate_pareto_front(
    g: Graph, req: MulticastRequest, node_cap: int = 16
) -> list[ParetoPoint]:
    """All non-dominated (length, interference) points with witness trees,
    sorted by increasing length (hence decreasing interference).
    """
    if g.n > node_cap:
        raise ConfigError(f"graph has {g.n} nodes, above the oracle cap {node_cap}")
    terminals = terminals_of(g, req)
    term_mask = g.mask_of(terminals)
    free = [i for i in range(g.n) if not term_mask >> i & 1]

    candidates = []
    for bits in range(1 << len(free)):
        mask = term_mask
        for pos, i in enumerate(free):
            if bits >> pos & 1:
                mask |= 1 << i
        members = [i for i in range(g.n) if mask >> i & 1]
        mst = _induced_mst(g, members, mask)
        if mst is None:
            continue
        total, edges = mst
        nbhd = 0
        for i in members:
            nbhd |= g.closed_mask(i)
        candidates.append((total, nbhd.bit_count(), mask, edges))

    if not candidates:
        raise UnreachableError("terminal set is not connected in the graph")

    candidates.sort(key=lambda c: (c[0], c[1], c[2]))
    front: list[ParetoPoint] = []
    best = math.inf
    for total, count, mask, edges in candidates:
        if count < best:
            if front and abs(front[-1].length - total) <= 1e-12:
                # same length, strictly better interference: replace
                front.pop()
            best = count
            front.append(
                ParetoPoint(
                    length=total,
                    interference=count,
                    witness_vertices=frozenset(g.ids_of_mask(mask)),
                    witness_edges=tuple(
                        sorted(
                            (min(g.id_of(u), g.id_of(v)), max(g.id_of(u), g.id_of(v)), length)
                            for u, v, length in edges
                        )
                    ),
                )
            )
    return front


def exhaustive_min_interference_sp(g: Graph, s: NodeId, t: NodeId) -> tuple[float, int]:
    """Enumerate every shortest s-t path by DFS over the shortest-path DAG and
    return (common shortest length, minimum interference over all of them).
    """
    si, ti = g.index_of(s), g.index_of(t)
    if si == ti:
        return 0.0, g.closed_mask(si).bit_count()
    dag = shortest_dag(g, s, t)
    best = math.inf

    def dfs(node: int, mask: int):
        nonlocal best
        if node == dag.target:
            best = min(best, mask.bit_count())
            return
        for v, _length in dag.succ[node]:
            dfs(v, mask | g.closed_mask(v))

    dfs(dag.source, g.closed_mask(dag.source))
    assert best < math.inf
    return dag.distance, int(best)


@dataclass(frozen=True)
class FrontComparison:
    length_ratio: float
    interference_ratio: float
    length_bound: float
    within_length_bound: bool

    def to_dict(self) -> dict:
        return {
            "length_ratio": self.length_ratio,
            "interference_ratio": self.interference_ratio,
            "length_bound": self.length_bound,
            "within_length_bound": self.within_length_bound,
        }


def verify_tree_against_front(
    front: list[ParetoPoint], result, length_bound: float = 2.0, tol: float = 1e-9
) -> FrontComparison:
    """Empirical approximation ratios of a solver tree against the exact front."""
    if not front:
        raise ValueError("empty Pareto front")
    min_length = min(p.length for p in front)
    min_interference = min(p.interference for p in front)
    if min_length <= tol:
        length_ratio = 1.0 if result.total_length <= tol else math.inf
    else:
        length_ratio = result.total_length / min_length
    interference_ratio = result.interference / min_interference
    return FrontComparison(
        length_ratio=length_ratio,
        interference_ratio=interference_ratio,
        length_bound=length_bound,
        within_length_bound=length_ratio <= length_bound + tol,
    )

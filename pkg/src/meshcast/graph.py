"""Wireless mesh graph model: construction, file I/O, generation, distances.

Node identifiers are opaque strings in files and in the public API; internally
they map to dense integer indices so that neighborhood sets can be carried as
integer bitmasks by the rest of the package.
"""

from __future__ import annotations

import heapq
import json
import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import GraphFormatError, UnknownFunctionError, UnknownNodeError

NodeId = str

INF = math.inf

#: Absolute tolerance used when comparing path lengths for equality.
LENGTH_EPSILON = 1e-9


@dataclass(frozen=True)
class MulticastRequest:
    """A multicast session: a root node plus the function labels it needs."""

    root: NodeId
    functions: tuple[str, ...]

    def __post_init__(self):
        if not self.functions:
            raise GraphFormatError("a multicast request needs at least one function")
        if len(set(self.functions)) != len(self.functions):
            raise GraphFormatError(f"duplicate function in request: {self.functions}")


@dataclass(frozen=True)
class Path:
    """A simple path given as its node sequence plus its total length."""

    nodes: tuple[NodeId, ...]
    length: float

    def edges(self) -> list[tuple[NodeId, NodeId]]:
        return list(zip(self.nodes, self.nodes[1:]))


class Graph:
    """Undirected graph with non-negative edge lengths and optional per-node
    function labels. Immutable after construction; safe for concurrent reads.

    ``nodes`` is an iterable of (id, function-or-None, (x, y)-or-None),
    ``edges`` an iterable of (u, v, length).
    """

    def __init__(
        self,
        nodes: Iterable[tuple[NodeId, Optional[str], Optional[tuple[float, float]]]],
        edges: Iterable[tuple[NodeId, NodeId, float]],
    ):
        self._ids: list[NodeId] = []
        self._index: dict[NodeId, int] = {}
        self._function: list[Optional[str]] = []
        self._coords: dict[NodeId, tuple[float, float]] = {}
        self._fn_node: dict[str, NodeId] = {}

        for node_id, function, coords in nodes:
            if not isinstance(node_id, str) or not node_id:
                raise GraphFormatError(f"node id must be a non-empty string, got {node_id!r}")
            if node_id in self._index:
                raise GraphFormatError(f"duplicate node id {node_id!r}")
            self._index[node_id] = len(self._ids)
            self._ids.append(node_id)
            self._function.append(function)
            if function is not None:
                if function in self._fn_node:
                    raise GraphFormatError(
                        f"duplicate function {function!r} on nodes "
                        f"{self._fn_node[function]!r} and {node_id!r}"
                    )
                self._fn_node[function] = node_id
            if coords is not None:
                self._coords[node_id] = (float(coords[0]), float(coords[1]))

        n = len(self._ids)
        self._adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        self._edge_len: dict[tuple[int, int], float] = {}
        for u, v, length in edges:
            iu, iv = self.index_of(u), self.index_of(v)
            if iu == iv:
                raise GraphFormatError(f"self-loop on node {u!r}")
            length = float(length)
            if length < 0 or math.isnan(length):
                raise GraphFormatError(f"negative length {length} on edge {u!r}-{v!r}")
            key = (min(iu, iv), max(iu, iv))
            if key in self._edge_len:
                raise GraphFormatError(f"parallel edge {u!r}-{v!r}")
            self._edge_len[key] = length
            self._adj[iu].append((iv, length))
            self._adj[iv].append((iu, length))

        # Deterministic neighbor iteration order: lexicographic by node id.
        self._lexrank = [0] * n
        for rank, node_id in enumerate(sorted(self._ids)):
            self._lexrank[self._index[node_id]] = rank
        for lst in self._adj:
            lst.sort(key=lambda item: self._lexrank[item[0]])

        self._nbr_mask = [0] * n
        for (iu, iv) in self._edge_len:
            self._nbr_mask[iu] |= 1 << iv
            self._nbr_mask[iv] |= 1 << iu
        self._closed_mask = [m | (1 << i) for i, m in enumerate(self._nbr_mask)]

    # ------------------------------------------------------------------ sizes

    @property
    def n(self) -> int:
        return len(self._ids)

    @property
    def m(self) -> int:
        return len(self._edge_len)

    # ------------------------------------------------------------------ nodes

    def node_ids(self) -> list[NodeId]:
        return sorted(self._ids)

    def __contains__(self, node_id: NodeId) -> bool:
        return node_id in self._index

    def index_of(self, node_id: NodeId) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise UnknownNodeError(f"unknown node {node_id!r}") from None

    def id_of(self, index: int) -> NodeId:
        return self._ids[index]

    def lexrank(self, index: int) -> int:
        return self._lexrank[index]

    def function_of(self, node_id: NodeId) -> Optional[str]:
        return self._function[self.index_of(node_id)]

    def node_with_function(self, label: str) -> NodeId:
        try:
            return self._fn_node[label]
        except KeyError:
            raise UnknownFunctionError(f"no node hosts function {label!r}") from None

    def functions(self) -> dict[str, NodeId]:
        return dict(self._fn_node)

    def coords_of(self, node_id: NodeId) -> Optional[tuple[float, float]]:
        self.index_of(node_id)
        return self._coords.get(node_id)

    # ------------------------------------------------------------------ edges

    def edges(self) -> list[tuple[NodeId, NodeId, float]]:
        out = []
        for (iu, iv), length in self._edge_len.items():
            u, v = self._ids[iu], self._ids[iv]
            if v < u:
                u, v = v, u
            out.append((u, v, length))
        out.sort()
        return out

    def edge_length(self, u: NodeId, v: NodeId) -> float:
        iu, iv = self.index_of(u), self.index_of(v)
        key = (min(iu, iv), max(iu, iv))
        try:
            return self._edge_len[key]
        except KeyError:
            raise UnknownNodeError(f"no edge {u!r}-{v!r}") from None

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        iu, iv = self.index_of(u), self.index_of(v)
        return (min(iu, iv), max(iu, iv)) in self._edge_len

    def adj_indexed(self, index: int) -> list[tuple[int, float]]:
        return self._adj[index]

    def degree(self, node_id: NodeId) -> int:
        return len(self._adj[self.index_of(node_id)])

    # ------------------------------------------------------------ bitmask API

    def neighbor_mask(self, index: int) -> int:
        """Open neighborhood of a node, as a bitmask over internal indices."""
        return self._nbr_mask[index]

    def closed_mask(self, index: int) -> int:
        """Closed neighborhood of a node, as a bitmask over internal indices."""
        return self._closed_mask[index]

    def mask_of(self, node_ids: Iterable[NodeId]) -> int:
        mask = 0
        for node_id in node_ids:
            mask |= 1 << self.index_of(node_id)
        return mask

    def ids_of_mask(self, mask: int) -> set[NodeId]:
        out = set()
        i = 0
        while mask:
            if mask & 1:
                out.add(self._ids[i])
            mask >>= 1
            i += 1
        return out

    # ------------------------------------------------------------- comparison

    def _canonical(self):
        nodes = sorted(
            (node_id, self._function[i], self._coords.get(node_id))
            for i, node_id in enumerate(self._ids)
        )
        return nodes, self.edges()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, functions={sorted(self._fn_node)})"


# ---------------------------------------------------------------------- query


def neighbors(g: Graph, v: NodeId) -> set[NodeId]:
    """Open neighborhood N(v): adjacent nodes, excluding v itself."""
    return {g.id_of(i) for i, _ in g.adj_indexed(g.index_of(v))}


def _dijkstra(g: Graph, source: int) -> list[float]:
    dist = [INF] * g.n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, length in g.adj_indexed(u):
            nd = d + length
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def single_source_distances(g: Graph, s: NodeId) -> dict[NodeId, float]:
    dist = _dijkstra(g, g.index_of(s))
    return {g.id_of(i): d for i, d in enumerate(dist)}


def shortest_distance(g: Graph, s: NodeId, t: NodeId) -> float:
    """Minimum s-t path length; ``math.inf`` if t is unreachable from s."""
    return _dijkstra(g, g.index_of(s))[g.index_of(t)]


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    stack = [0]
    seen_mask = 1
    while stack:
        u = stack.pop()
        for v, _ in g.adj_indexed(u):
            bit = 1 << v
            if not seen_mask & bit:
                seen_mask |= bit
                seen += 1
                stack.append(v)
    return seen == g.n


# ------------------------------------------------------------------- file I/O


def graph_from_dict(data: dict) -> Graph:
    if not isinstance(data, dict):
        raise GraphFormatError(f"expected a JSON object, got {type(data).__name__}")
    for key in ("nodes", "edges"):
        if key not in data or not isinstance(data[key], list):
            raise GraphFormatError(f"missing or invalid {key!r} list")

    nodes = []
    for i, spec in enumerate(data["nodes"]):
        if not isinstance(spec, dict) or "id" not in spec:
            raise GraphFormatError(f"node #{i}: expected an object with an 'id'")
        coords = None
        if "x" in spec or "y" in spec:
            if "x" not in spec or "y" not in spec:
                raise GraphFormatError(f"node {spec['id']!r}: x and y must come together")
            coords = (spec["x"], spec["y"])
        nodes.append((spec["id"], spec.get("function"), coords))

    edges = []
    for i, spec in enumerate(data["edges"]):
        if not isinstance(spec, dict) or not {"u", "v", "length"} <= spec.keys():
            raise GraphFormatError(f"edge #{i}: expected an object with u, v, length")
        edges.append((spec["u"], spec["v"], spec["length"]))

    return Graph(nodes, edges)


def load_graph(text: str) -> Graph:
    """Parse the JSON graph file format into a Graph."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return graph_from_dict(data)


def graph_to_dict(g: Graph) -> dict:
    nodes = []
    for node_id in g.node_ids():
        spec: dict = {"id": node_id}
        function = g.function_of(node_id)
        if function is not None:
            spec["function"] = function
        coords = g.coords_of(node_id)
        if coords is not None:
            spec["x"], spec["y"] = coords
        nodes.append(spec)
    edges = [{"u": u, "v": v, "length": length} for u, v, length in g.edges()]
    return {"nodes": nodes, "edges": edges}


def dump_graph(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def load_graph_file(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_graph(fh.read())


def save_graph_file(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_graph(g))


# ----------------------------------------------------------------- generation


def generate_unit_disk(n: int, radius: float, k_functions: int, seed: int) -> Graph:
    """Random unit-disk mesh: n nodes uniform in the unit square, an edge
    between every pair at Euclidean distance <= radius, with length equal to
    that distance. ``k_functions`` distinct nodes are labeled F1..Fk.

    Pure function of its arguments; may produce a disconnected graph.
    """
    if n < 1:
        raise GraphFormatError(f"need at least one node, got n={n}")
    if not 0 < radius <= 1:
        raise GraphFormatError(f"radius must lie in (0, 1], got {radius}")
    if not 0 <= k_functions <= n:
        raise GraphFormatError(f"k_functions must lie in [0, {n}], got {k_functions}")

    rng = random.Random(seed)
    width = max(2, len(str(n - 1)))
    ids = [f"v{i:0{width}d}" for i in range(n)]
    positions = [(rng.uniform(0, 1), rng.uniform(0, 1)) for _ in range(n)]
    labeled = rng.sample(range(n), k_functions)

    function: dict[int, str] = {node: f"F{j + 1}" for j, node in enumerate(labeled)}
    nodes = [(ids[i], function.get(i), positions[i]) for i in range(n)]

    edges = []
    for i in range(n):
        xi, yi = positions[i]
        for j in range(i + 1, n):
            xj, yj = positions[j]
            d = math.hypot(xi - xj, yi - yj)
            if d <= radius:
                edges.append((ids[i], ids[j], d))
    return Graph(nodes, edges)

import pytest

from meshcast import Graph, generate_unit_disk
from meshcast.graph import is_connected


def build(node_ids, edges, functions=None):
    """Unit-length graph helper: edges as (u, v) or (u, v, length)."""
    functions = functions or {}
    nodes = [(n, functions.get(n), None) for n in node_ids]
    full = [(e[0], e[1], e[2] if len(e) > 2 else 1.0) for e in edges]
    return Graph(nodes, full)


def path_graph(ids):
    return build(ids, list(zip(ids, ids[1:])))


def star_graph(center, leaves):
    return build([center, *leaves], [(center, leaf) for leaf in leaves])


def connected_unit_disk(n, radius, k_functions, seed):
    """First connected unit-disk graph from a deterministic seed sequence."""
    for offset in range(200):
        g = generate_unit_disk(n, radius, k_functions, seed + 1_000_003 * offset)
        if is_connected(g):
            return g
    raise AssertionError(f"no connected graph found for n={n}, radius={radius}")


@pytest.fixture
def diamond_pendant():
    """Two tied shortest s-t routes; the route via 'a' sees pendant 'x'."""
    return build(list("sabtx"), [("s", "a"), ("a", "t"), ("s", "b"), ("b", "t"), ("a", "x")])


@pytest.fixture
def abcd_path():
    return path_graph(list("abcd"))

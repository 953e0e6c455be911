"""Bundled reference mesh and its multicast request batch.

A seven-node mesh with four function-hosting nodes on a unit-length backbone
path N1-N2-N3-N4, a tie route N1-N5-N3 that avoids the busy backbone, and two
pendant nodes that give N1 and N2 degree three. The eleven requests cover
every combination of two or more functions, always rooted at N1.

On this instance the interference-aware solver matches the baselines on tree
length for every request while never exceeding their interference, and beats
them strictly whenever the quiet N5 route is usable.
"""

from __future__ import annotations

from .graph import Graph, MulticastRequest

_NODES = [
    ("N1", "F1", (0.20, 0.50)),
    ("N2", "F2", (0.40, 0.50)),
    ("N3", "F3", (0.60, 0.50)),
    ("N4", "F4", (0.80, 0.50)),
    ("N5", None, (0.40, 0.68)),
    ("N6", None, (0.08, 0.38)),
    ("N7", None, (0.44, 0.32)),
]

_EDGES = [
    ("N1", "N2", 1.0),
    ("N2", "N3", 1.0),
    ("N3", "N4", 1.0),
    ("N1", "N5", 1.0),
    ("N3", "N5", 1.0),
    ("N1", "N6", 1.0),
    ("N2", "N7", 1.0),
]

_REQUESTS = [
    ("R1", ("F1", "F2")),
    ("R2", ("F1", "F3")),
    ("R3", ("F1", "F4")),
    ("R4", ("F2", "F3")),
    ("R5", ("F2", "F4")),
    ("R6", ("F3", "F4")),
    ("R7", ("F1", "F2", "F3")),
    ("R8", ("F1", "F2", "F4")),
    ("R9", ("F1", "F3", "F4")),
    ("R10", ("F2", "F3", "F4")),
    ("R11", ("F1", "F2", "F3", "F4")),
]

ROOT = "N1"


def reference_instance() -> Graph:
    return Graph(_NODES, _EDGES)


def reference_requests() -> list[tuple[str, MulticastRequest]]:
    """(request id, request) pairs, all rooted at N1."""
    return [(rid, MulticastRequest(ROOT, functions)) for rid, functions in _REQUESTS]

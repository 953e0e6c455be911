"""Closed-neighborhood interference metric and its structural checks.

Solvers query the metric exclusively through :func:`interference` /
:func:`closed_neighborhood` (value-oracle discipline): nothing outside this
module may assume the metric decomposes additively over vertices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .graph import Graph, NodeId


def closed_neighborhood(g: Graph, nodes: Iterable[NodeId]) -> set[NodeId]:
    """N[W]: every node of W together with all their neighbors."""
    mask = 0
    for node_id in nodes:
        mask |= g.closed_mask(g.index_of(node_id))
    return g.ids_of_mask(mask)


def interference(g: Graph, nodes: Iterable[NodeId]) -> int:
    """|N[W]|, the interference metric of a vertex set."""
    mask = 0
    for node_id in nodes:
        mask |= g.closed_mask(g.index_of(node_id))
    return mask.bit_count()


class VicinalRelation(Enum):
    LESS_OR_EQUAL = "less_or_equal"
    GREATER_OR_EQUAL = "greater_or_equal"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


def vicinal_compare(g: Graph, u: NodeId, v: NodeId) -> VicinalRelation:
    """Order u and v under the neighborhood-containment preorder:
    u precedes v iff N(u) is contained in N[v].
    """
    iu, iv = g.index_of(u), g.index_of(v)
    if iu == iv:
        raise ValueError(f"vicinal_compare needs two distinct nodes, got {u!r} twice")
    uv = g.neighbor_mask(iu) & ~g.closed_mask(iv) == 0
    vu = g.neighbor_mask(iv) & ~g.closed_mask(iu) == 0
    if uv and vu:
        return VicinalRelation.EQUIVALENT
    if uv:
        return VicinalRelation.LESS_OR_EQUAL
    if vu:
        return VicinalRelation.GREATER_OR_EQUAL
    return VicinalRelation.INCOMPARABLE


# ------------------------------------------------------------ property checks


@dataclass(frozen=True)
class Violation:
    """Concrete counterexample witness for a failed property trial."""

    a: tuple[NodeId, ...]
    b: tuple[NodeId, ...]
    v: NodeId | None
    detail: str

    def to_dict(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "v": self.v, "detail": self.detail}


@dataclass
class PropertyReport:
    name: str
    trials: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "passed": self.passed,
            "violations": [v.to_dict() for v in self.violations],
        }


def _sample_nested_pair(rng: random.Random, ids: Sequence[NodeId]):
    b_size = rng.randint(0, len(ids))
    b = rng.sample(list(ids), b_size)
    a = rng.sample(b, rng.randint(0, b_size))
    return a, b


def _shrink_sets(keep_violating, a: list, b: list):
    """Greedily drop elements while the violation persists, for small reports."""
    changed = True
    while changed:
        changed = False
        for x in list(b):
            nb = [y for y in b if y != x]
            na = [y for y in a if y != x]
            if keep_violating(na, nb):
                a, b = na, nb
                changed = True
    return a, b


def check_monotone(g: Graph, trials: int, seed: int) -> PropertyReport:
    """Sample nested pairs A ⊆ B and check |N[A]| <= |N[B]|."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = random.Random(seed)
    ids = g.node_ids()
    report = PropertyReport("monotone", trials)

    def violates(a, b):
        return interference(g, a) > interference(g, b)

    for _ in range(trials):
        a, b = _sample_nested_pair(rng, ids)
        if violates(a, b):
            a, b = _shrink_sets(violates, a, b)
            report.violations.append(
                Violation(
                    tuple(sorted(a)),
                    tuple(sorted(b)),
                    None,
                    f"|N[A]|={interference(g, a)} > |N[B]|={interference(g, b)}",
                )
            )
    return report


def check_submodular(g: Graph, trials: int, seed: int) -> PropertyReport:
    """Sample A ⊆ B, v ∉ B and check the diminishing-returns inequality
    |N[A∪{v}]| - |N[A]| >= |N[B∪{v}]| - |N[B]|.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = random.Random(seed)
    ids = g.node_ids()
    report = PropertyReport("submodular", trials)
    if not ids:
        return report

    def violates(a, b, v):
        gain_a = interference(g, list(a) + [v]) - interference(g, a)
        gain_b = interference(g, list(b) + [v]) - interference(g, b)
        return gain_a < gain_b

    for _ in range(trials):
        b_size = rng.randint(0, len(ids) - 1)
        b = rng.sample(ids, b_size)
        a = rng.sample(b, rng.randint(0, b_size))
        v = rng.choice(sorted(set(ids) - set(b)))
        if violates(a, b, v):
            a, b = _shrink_sets(lambda na, nb: violates(na, nb, v), a, b)
            gain_a = interference(g, a + [v]) - interference(g, a)
            gain_b = interference(g, b + [v]) - interference(g, b)
            report.violations.append(
                Violation(
                    tuple(sorted(a)),
                    tuple(sorted(b)),
                    v,
                    f"marginal at A is {gain_a} < marginal at B is {gain_b}",
                )
            )
    return report

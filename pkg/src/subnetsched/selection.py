"""Step 2: prune a temporary graph into the consolidated graph.

Two selection rules are provided. The aggressive rule lets a user sit in
several sub-networks and runs either centrally (full topology) or from one
user's 3*rho+1 hop view. The conservative rule keeps every user in exactly one
sub-network and never lets a sub-network's degree exceed the smallest
conflict-graph degree among its members.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cliques import (
    CliqueVertex,
    ConsolidatedGraph,
    build_temp_graph,
    local_temp_graph,
    temp_graph,
)
from .graph import ConflictGraph, GraphInputError, ball, degree_one_set


class InvariantViolation(RuntimeError):
    """A result broke a structural guarantee it is supposed to carry."""


@dataclass(frozen=True)
class SelectionResult:
    consolidated: ConsolidatedGraph
    representation: dict[int, tuple[int, ...]]
    algorithm: str
    rho: int
    center: int | None = None  # set for a single user's distributed view

    def a(self, u: int) -> int:
        """Number of consolidated vertices representing user ``u``."""
        return len(self.representation.get(u, ()))

    @property
    def users(self) -> list[int]:
        return sorted(self.representation)

    def to_json(self) -> dict:
        out = {"algorithm": self.algorithm, "rho": self.rho}
        if self.center is not None:
            out["center"] = self.center + 1
        out.update(self.consolidated.to_json())
        return out


def appearance_counts(vertices: Iterable[CliqueVertex]) -> Counter:
    """``counts[(u, s)]``: how many order-s vertices contain user u."""
    counts: Counter = Counter()
    for w in vertices:
        for u in w.members:
            counts[(u, w.order)] += 1
    return counts


def _representation(cg: ConsolidatedGraph, users: Iterable[int]) -> dict[int, tuple[int, ...]]:
    rep: dict[int, list[int]] = {u: [] for u in users}
    for i, w in enumerate(cg.vertices):
        for u in w.members:
            if u in rep:
                rep[u].append(i)
    return {u: tuple(ix) for u, ix in rep.items()}


def aggressive_survivors(
    vertices: Sequence[CliqueVertex], rho: int, degree_one: frozenset[int] | set[int]
) -> list[CliqueVertex]:
    """Vertices kept by the aggressive rule.

    For r = 0..rho-1 an order-r vertex is dropped when every member u appears
    in at least two vertices of each higher order s = r+1..rho (at least one
    if u has conflict-graph degree 1). Vertices containing a degree-1 user are
    never dropped. Counts always come from the full input set; the stage loop
    only ever looks at orders above the one being pruned, which are untouched
    at that point.
    """
    counts = appearance_counts(vertices)
    keep = []
    for w in vertices:
        if w.order >= rho or any(u in degree_one for u in w.members):
            keep.append(w)
            continue
        redundant = all(
            counts[(u, s)] >= (1 if u in degree_one else 2)
            for u in w.members
            for s in range(w.order + 1, rho + 1)
        )
        if not redundant:
            keep.append(w)
    return keep


def _check_rho(temp: ConsolidatedGraph, rho: int) -> None:
    if rho < 0:
        raise GraphInputError("rho must be non-negative")
    top = max((w.order for w in temp.vertices), default=0)
    if top > rho:
        raise GraphInputError(f"temporary graph has order-{top} vertices but rho={rho}")


def aggressive_centralized(temp: ConsolidatedGraph, g: ConflictGraph, rho: int) -> SelectionResult:
    _check_rho(temp, rho)
    deg1 = frozenset(u for u in range(g.n) if g.degree(u) == 1)
    cg = build_temp_graph(g, aggressive_survivors(temp.vertices, rho, deg1))
    return SelectionResult(cg, _representation(cg, range(g.n)), "aggressive", rho)


def aggressive_distributed(g: ConflictGraph, v: int, rho: int, tau: int | None = None) -> SelectionResult:
    """User ``v``'s own consolidated graph, built from its ``tau``-hop view (default 3*rho+1)."""
    tau = 3 * rho + 1 if tau is None else tau
    view = ball(g, v, tau)
    temp = local_temp_graph(g, v, rho, tau)
    cg = build_temp_graph(g, aggressive_survivors(temp.vertices, rho, degree_one_set(view)))
    return SelectionResult(cg, _representation(cg, view.id_map), "aggressive", rho, center=v)


def conservative_select(temp: ConsolidatedGraph, g: ConflictGraph, rho: int) -> SelectionResult:
    """Greedy single-representation selection.

    Candidates of order >= 1 are tried by descending order, then descending
    size, then lexicographic members. A candidate is accepted when none of
    its members is taken yet and its degree, against the accepted vertices
    plus every untaken user as a singleton, is at most the smallest
    conflict-graph degree of its members. Untaken users end as singletons.
    Later merges can only lower earlier vertices' degrees, so both
    properties survive to the end.
    """
    _check_rho(temp, rho)
    nbr = g.masks
    cands = sorted(
        (w for w in temp.vertices if w.order >= 1),
        key=lambda w: (-w.order, -len(w), w.members),
    )
    accepted: list[CliqueVertex] = []
    taken = 0
    for w in cands:
        m = w.mask
        if m & taken:
            continue
        reach = 0
        for u in w.members:
            reach |= nbr[u]
        reach &= ~m
        degree = sum(1 for a in accepted if a.mask & reach)
        degree += (reach & ~taken).bit_count()
        if degree <= min(g.degree(u) for u in w.members):
            accepted.append(w)
            taken |= m
    singles = [CliqueVertex(0, (u,)) for u in range(g.n) if not taken >> u & 1]
    cg = build_temp_graph(g, sorted(accepted + singles))
    return SelectionResult(cg, _representation(cg, range(g.n)), "conservative", rho)


def check_selection_invariants(sel: SelectionResult, g: ConflictGraph) -> list[str]:
    """Structural checks for a centralized selection; returns the failures found."""
    problems = []
    cg = sel.consolidated
    for u in range(g.n):
        a = sel.a(u)
        if a < 1:
            problems.append(f"user {u + 1} is not represented")
        if sel.algorithm == "conservative" and a != 1:
            problems.append(f"user {u + 1} represented {a} times")
    if sel.algorithm == "conservative":
        for i, w in enumerate(cg.vertices):
            if cg.degree(i) > min(g.degree(u) for u in w.members):
                problems.append(f"vertex {w.label()} degree {cg.degree(i)} exceeds member degree")
    if sel.algorithm == "aggressive":
        singles = {w.members for w in cg.vertices if w.order == 0}
        for u in range(g.n):
            if g.degree(u) == 1 and (u,) not in singles:
                problems.append(f"degree-1 user {u + 1} lost its singleton")
    rebuilt = build_temp_graph(g, list(cg.vertices))
    if rebuilt.adj != cg.adj:
        problems.append("edges differ from the clique edge rule")
    return problems


@dataclass
class ConsistencyReport:
    passed: bool
    rho: int
    tau: int
    checked: int = 0
    counterexample: dict | None = field(default=None)

    def summary(self) -> str:
        if self.passed:
            return f"consistent: {self.checked} vertex neighborhoods checked (rho={self.rho}, tau={self.tau})"
        return f"INCONSISTENT (rho={self.rho}, tau={self.tau}): {self.counterexample}"


def check_view_consistency(g: ConflictGraph, rho: int, tau: int | None = None) -> ConsistencyReport:
    """Compare every user's distributed view against the centralized aggressive result.

    For each user v and each vertex w of v's consolidated graph with v in w,
    w must exist centrally and have exactly the same neighboring member sets.
    """
    tau = 3 * rho + 1 if tau is None else tau
    central = aggressive_centralized(temp_graph(g, rho), g, rho).consolidated
    report = ConsistencyReport(True, rho, tau)
    cache: dict[tuple[int, ...], ConsolidatedGraph] = {}
    for v in range(g.n):
        key = ball(g, v, tau).id_map
        if key not in cache:
            cache[key] = aggressive_distributed(g, v, rho, tau).consolidated
        local = cache[key]
        for i, w in enumerate(local.vertices):
            if v not in w.members:
                continue
            report.checked += 1
            j = central.index.get(w.members)
            mine = local.neighbor_members(i)
            theirs = central.neighbor_members(j) if j is not None else None
            if mine != theirs:
                report.passed = False
                report.counterexample = {
                    "user": v + 1,
                    "vertex": w.label(),
                    "in_central": j is not None,
                    "local_only": sorted(_labels(mine - (theirs or frozenset()))),
                    "central_only": sorted(_labels((theirs or frozenset()) - mine)),
                }
                return report
    return report


def _labels(member_sets: Iterable[tuple[int, ...]]) -> list[str]:
    return ["{" + ",".join(str(u + 1) for u in ms) + "}" for ms in member_sets]

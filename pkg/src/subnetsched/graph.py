"""Conflict graphs, hop distances and local views.

Vertices are dense 0-based integers internally. Everything a human reads or
writes (edge lists, DOT, JSON dumps) is 1-based.
"""

from __future__ import annotations

import enum
import io
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Mapping


class Sentinel(enum.Enum):
    UNREACHABLE = "unreachable"
    DISCONNECTED = "disconnected"

    def __repr__(self) -> str:
        return self.value.upper()


UNREACHABLE = Sentinel.UNREACHABLE
DISCONNECTED = Sentinel.DISCONNECTED


class GraphInputError(ValueError):
    """Raised for malformed graphs, out-of-range vertices or bad parameters."""


@dataclass(frozen=True)
class ConflictGraph:
    """Undirected simple graph; vertex ``v`` is user ``v + 1`` in 1-based I/O."""

    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphInputError("adjacency length must equal n")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise GraphInputError(f"self-loop at vertex {v + 1}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphInputError(f"neighbor {u} of {v} out of range")
                if v not in self.adj[u]:
                    raise GraphInputError(f"asymmetric edge {v + 1}-{u + 1}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> ConflictGraph:
        """Build from 0-based edge pairs. Duplicate edges are merged."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"self-loop at vertex {u + 1}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    @classmethod
    def empty(cls, n: int) -> ConflictGraph:
        return cls(n, tuple(frozenset() for _ in range(n)))

    @classmethod
    def complete(cls, n: int) -> ConflictGraph:
        return cls(n, tuple(frozenset(u for u in range(n) if u != v) for v in range(n)))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each edge once as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield (u, v)

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Open neighborhoods as bitmasks (bit ``u`` set iff ``u`` is a neighbor)."""
        out = []
        for nbrs in self.adj:
            m = 0
            for u in nbrs:
                m |= 1 << u
            out.append(m)
        return tuple(out)

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphInputError(f"vertex {v} out of range 0..{self.n - 1}")


@dataclass(frozen=True)
class InterferenceNetwork:
    """Source/destination pairs and the transmitter-to-receiver links between them.

    ``links`` holds ``(i, j)`` whenever transmitter ``i`` reaches receiver ``j``.
    Channel gains are carried along for completeness; no algorithm reads them.
    """

    n: int
    links: frozenset[tuple[int, int]]
    tx_pos: tuple[tuple[float, float], ...] | None = None
    rx_pos: tuple[tuple[float, float], ...] | None = None
    gains: Mapping[tuple[int, int], float] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for i in range(self.n):
            if (i, i) not in self.links:
                raise GraphInputError(f"missing direct link for user {i + 1}")
        if self.gains is not None:
            extra = set(self.gains) - self.links
            if extra:
                raise GraphInputError(f"gains defined off the link set: {sorted(extra)[:3]}")

    def interferers(self, j: int) -> frozenset[int]:
        """Transmitters connected to receiver ``j`` (including its own)."""
        return frozenset(i for (i, jj) in self.links if jj == j)

    def conflict_graph(self) -> ConflictGraph:
        return ConflictGraph.from_edges(self.n, ((i, j) for (i, j) in self.links if i != j))


def neighbors(g: ConflictGraph, v: int) -> list[int]:
    g._check(v)
    return sorted(g.adj[v])


def _bfs(g: ConflictGraph, src: int, cutoff: int | None = None) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        d = dist[x]
        if cutoff is not None and d >= cutoff:
            continue
        for y in g.adj[x]:
            if y not in dist:
                dist[y] = d + 1
                queue.append(y)
    return dist


def bfs_distance(g: ConflictGraph, u: int, v: int) -> int | Sentinel:
    g._check(u)
    g._check(v)
    return _bfs(g, u).get(v, UNREACHABLE)


def distances_from(g: ConflictGraph, v: int, cutoff: int | None = None) -> dict[int, int]:
    """Hop counts to every vertex reachable from ``v`` (within ``cutoff`` if given)."""
    g._check(v)
    return _bfs(g, v, cutoff)


def max_degree(g: ConflictGraph) -> int:
    return max((len(s) for s in g.adj), default=0)


def hops_conflict_to_interference(eta: int) -> int:
    """Hops of conflict-graph knowledge expressed in interference-network hops."""
    if eta < 0:
        raise GraphInputError("eta must be non-negative")
    return 2 * eta + 1


def induced_subgraph(g: ConflictGraph, vertices: Iterable[int]) -> tuple[ConflictGraph, tuple[int, ...]]:
    """Induced subgraph relabelled to ``0..m-1``; returns it with the local-to-original map."""
    keep = tuple(sorted(set(vertices)))
    local = {v: i for i, v in enumerate(keep)}
    adj = tuple(frozenset(local[u] for u in g.adj[v] if u in local) for v in keep)
    return ConflictGraph(len(keep), adj), keep


@dataclass(frozen=True)
class LocalView:
    """What ``center`` knows with ``radius`` hops of connectivity information.

    ``true_degree`` keeps each member's degree in the full graph, since the
    ball truncates the degree of boundary vertices.
    """

    center: int
    radius: int
    subgraph: ConflictGraph
    id_map: tuple[int, ...]
    true_degree: tuple[int, ...]

    @cached_property
    def to_local(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.id_map)}

    @property
    def members(self) -> tuple[int, ...]:
        return self.id_map

    def __contains__(self, v: int) -> bool:
        return v in self.to_local


def ball(g: ConflictGraph, v: int, tau: int) -> LocalView:
    if tau < 0:
        raise GraphInputError("tau must be non-negative")
    dist = distances_from(g, v, cutoff=tau)
    sub, id_map = induced_subgraph(g, dist)
    return LocalView(v, tau, sub, id_map, tuple(g.degree(u) for u in id_map))


def degree_one_set(view: LocalView) -> frozenset[int]:
    """Users in the view whose degree in the full graph is exactly one."""
    return frozenset(u for u, d in zip(view.id_map, view.true_degree) if d == 1)


# ---------------------------------------------------------------------------
# I/O: edge lists (1-based) and DOT
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> ConflictGraph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphInputError("empty edge list")
    try:
        n = int(lines[0])
        pairs = []
        for ln in lines[1:]:
            a, b = ln.split()
            pairs.append((int(a) - 1, int(b) - 1))
    except ValueError as exc:
        raise GraphInputError(f"malformed edge list: {exc}") from None
    return ConflictGraph.from_edges(n, pairs)


def read_edge_list(path: str | Path) -> ConflictGraph:
    return parse_edge_list(Path(path).read_text())


def format_edge_list(g: ConflictGraph) -> str:
    buf = io.StringIO()
    buf.write(f"{g.n}\n")
    for u, v in g.edges():
        buf.write(f"{u + 1} {v + 1}\n")
    return buf.getvalue()


def write_edge_list(g: ConflictGraph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))


def to_dot(g: ConflictGraph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    out += [f"  {v + 1};" for v in range(g.n)]
    out += [f"  {u + 1} -- {v + 1};" for u, v in g.edges()]
    out.append("}")
    return "\n".join(out) + "\n"

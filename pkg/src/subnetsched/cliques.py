"""Step 1: diameter-bounded clique identification and temporary graphs.

An r-clique is a vertex set S whose induced subgraph G[S] has diameter exactly
r (distances measured inside G[S]) and which has no proper superset with the
same property. Singletons are the 0-cliques; the 1-cliques are the maximal
cliques with at least two members.

Sets are handled as Python int bitmasks throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .graph import (
    DISCONNECTED,
    ConflictGraph,
    GraphInputError,
    Sentinel,
    ball,
    distances_from,
)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, order=True)
class CliqueVertex:
    """A candidate sub-network: its clique order and sorted member users."""

    order: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise GraphInputError("a clique vertex needs at least one member")
        if list(self.members) != sorted(set(self.members)):
            raise GraphInputError("members must be sorted and distinct")

    @classmethod
    def of(cls, order: int, members: Iterable[int]) -> CliqueVertex:
        return cls(order, tuple(sorted(members)))

    @cached_property
    def mask(self) -> int:
        return _mask(self.members)

    @property
    def leader(self) -> int:
        """Smallest member ID."""
        return self.members[0]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, u: int) -> bool:
        return u in self.members

    def label(self) -> str:
        return "{" + ",".join(str(u + 1) for u in self.members) + "}"


# ---------------------------------------------------------------------------
# induced diameter
# ---------------------------------------------------------------------------


def _ecc(nbr: Sequence[int], mask: int, src: int) -> int | None:
    """Eccentricity of ``src`` inside the subgraph induced by ``mask``; None if it misses vertices."""
    seen = 1 << src
    frontier = seen
    depth = 0
    while True:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbr[low.bit_length() - 1]
            f ^= low
        nxt &= mask & ~seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
        depth += 1
    return depth if seen == mask else None


def _diameter(nbr: Sequence[int], mask: int) -> int | None:
    best = 0
    for v in _bits(mask):
        e = _ecc(nbr, mask, v)
        if e is None:
            return None
        best = max(best, e)
    return best


def _components(nbr: Sequence[int], mask: int) -> list[int]:
    comps = []
    rest = mask
    while rest:
        low = rest & -rest
        seen = low
        frontier = low
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= nbr[b.bit_length() - 1]
                f ^= b
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        comps.append(seen)
        rest &= ~seen
    return comps


def induced_diameter(g: ConflictGraph, S: Iterable[int]) -> int | Sentinel:
    """Diameter of G[S] with distances taken inside G[S]."""
    S = set(S)
    if not S:
        raise GraphInputError("induced_diameter of an empty set")
    for v in S:
        g._check(v)
    d = _diameter(g.masks, _mask(S))
    return DISCONNECTED if d is None else d


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _maximal_cliques(nbr: Sequence[int], universe: int) -> list[int]:
    """Bron-Kerbosch with pivoting over the vertices in ``universe``."""
    out: list[int] = []

    def expand(R: int, P: int, X: int) -> None:
        if not P and not X:
            out.append(R)
            return
        px = P | X
        pivot = max(_bits(px), key=lambda u: (nbr[u] & P).bit_count())
        for v in _bits(P & ~nbr[pivot]):
            bit = 1 << v
            expand(R | bit, P & nbr[v], X & nbr[v])
            P &= ~bit
            X |= bit

    expand(0, universe, 0)
    return out


def _power_masks(g: ConflictGraph, r: int) -> list[int]:
    """Neighborhoods in the r-th power of g (pairs within r hops), as bitmasks."""
    out = []
    for v in range(g.n):
        m = _mask(distances_from(g, v, cutoff=r))
        out.append(m & ~(1 << v))
    return out


def _has_induced_path(nbr: Sequence[int], mask: int, length: int) -> bool:
    """True if G[mask] has an induced path with ``length`` edges."""

    def grow(path_mask: int, tail: int, prev_block: int, left: int) -> bool:
        if left == 0:
            return True
        # next vertex: adjacent to tail, not adjacent to any earlier path vertex
        cand = nbr[tail] & mask & ~path_mask & ~prev_block
        for x in _bits(cand):
            if grow(path_mask | (1 << x), x, prev_block | nbr[tail], left - 1):
                return True
        return False

    for s in _bits(mask):
        if grow(1 << s, s, 0, length):
            return True
    return False


def _r_cliques_of_order(g: ConflictGraph, r: int) -> list[int]:
    """All maximal sets with induced diameter exactly ``r`` (r >= 2).

    Search runs top-down from the maximal cliques of the r-th graph power,
    since every candidate has all pairs within r hops in g. Levels are visited
    by decreasing size so a set is kept only if no kept set contains it. A
    candidate set is narrowed by three exact reductions before single-vertex
    removal: split into connected components, split into maximal groups whose
    internal distances are all <= r, and stop when no induced path of length r
    remains (no subset can then reach diameter r).
    """
    nbr = g.masks
    pw = _power_masks(g, r)
    levels: dict[int, set[int]] = {}

    def push(m: int) -> None:
        size = m.bit_count()
        if size >= r + 1:
            levels.setdefault(size, set()).add(m)

    for k in _maximal_cliques(pw, (1 << g.n) - 1):
        push(k)

    found: list[int] = []
    seen: set[int] = set()
    while levels:
        size = max(levels)
        batch = sorted(levels.pop(size))
        for m in batch:
            if m in seen:
                continue
            seen.add(m)
            if any(m & f == m for f in found):
                continue
            comps = _components(nbr, m)
            if len(comps) > 1:
                for c in comps:
                    push(c)
                continue
            ecc = {v: _ecc_map(nbr, m, v) for v in _bits(m)}
            diam = max(max(dist.values()) for dist in ecc.values())
            if diam == r:
                found.append(m)
            elif diam > r:
                # a subset of diameter <= r keeps every pair within r hops of each other here
                close = [0] * g.n
                for v, dist in ecc.items():
                    close[v] = _mask(u for u, d in dist.items() if d <= r and u != v)
                for k in _maximal_cliques(close, m):
                    push(k)
            elif _has_induced_path(nbr, m, r):
                # diameter too small: removing vertices may stretch distances
                for v in _bits(m):
                    push(m & ~(1 << v))
    return found


def _ecc_map(nbr: Sequence[int], mask: int, src: int) -> dict[int, int]:
    dist = {src: 0}
    seen = 1 << src
    frontier = seen
    depth = 0
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbr[low.bit_length() - 1]
            f ^= low
        nxt &= mask & ~seen
        depth += 1
        for v in _bits(nxt):
            dist[v] = depth
        seen |= nxt
        frontier = nxt
    return dist


def enumerate_r_cliques(g: ConflictGraph, rho: int) -> list[CliqueVertex]:
    """Every r-clique of g for r = 0..rho, sorted by (order, members)."""
    if rho < 0:
        raise GraphInputError("rho must be non-negative")
    out = [CliqueVertex(0, (v,)) for v in range(g.n)]
    if rho >= 1:
        for m in _maximal_cliques(g.masks, (1 << g.n) - 1):
            if m.bit_count() >= 2:
                out.append(CliqueVertex(1, tuple(_bits(m))))
    for r in range(2, rho + 1):
        out += [CliqueVertex(r, tuple(_bits(m))) for m in _r_cliques_of_order(g, r)]
    out.sort()
    return out


# ---------------------------------------------------------------------------
# consolidated / temporary graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConsolidatedGraph:
    """Graph over clique vertices.

    Two vertices are adjacent when they share a member or some member of one
    is adjacent in ``origin`` to some member of the other.
    """

    vertices: tuple[CliqueVertex, ...]
    adj: tuple[frozenset[int], ...]
    origin: ConflictGraph

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {w.members: i for i, w in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def neighbor_members(self, i: int) -> frozenset[tuple[int, ...]]:
        return frozenset(self.vertices[j].members for j in self.adj[i])

    def containing(self, u: int) -> list[int]:
        """Indices of vertices whose members include user ``u``."""
        return [i for i, w in enumerate(self.vertices) if u in w.members]

    def to_dot(self, name: str = "G_rho") -> str:
        out = [f"graph {name} {{"]
        out += [f'  w{i} [label="{w.label()}"];' for i, w in enumerate(self.vertices)]
        for i, nbrs in enumerate(self.adj):
            out += [f"  w{i} -- w{j};" for j in sorted(nbrs) if i < j]
        out.append("}")
        return "\n".join(out) + "\n"

    def to_json(self) -> dict:
        return {
            "vertices": [{"order": w.order, "members": [u + 1 for u in w.members]} for w in self.vertices],
            "edges": [[i, j] for i, nbrs in enumerate(self.adj) for j in sorted(nbrs) if i < j],
        }


def build_temp_graph(g: ConflictGraph, cliques: Sequence[CliqueVertex]) -> ConsolidatedGraph:
    seen: set[tuple[int, ...]] = set()
    for w in cliques:
        if w.members in seen:
            raise GraphInputError(f"duplicate clique vertex {w.label()}")
        seen.add(w.members)
        if w.members[-1] >= g.n:
            raise GraphInputError(f"clique {w.label()} out of range")
    nbr = g.masks
    closed = []
    for w in cliques:
        m = w.mask
        c = m
        for u in w.members:
            c |= nbr[u]
        closed.append(c)
    adj: list[set[int]] = [set() for _ in cliques]
    for i in range(len(cliques)):
        ci = closed[i]
        for j in range(i + 1, len(cliques)):
            if ci & cliques[j].mask:
                adj[i].add(j)
                adj[j].add(i)
    return ConsolidatedGraph(tuple(cliques), tuple(frozenset(s) for s in adj), g)


def temp_graph(g: ConflictGraph, rho: int) -> ConsolidatedGraph:
    """Centralized temporary graph: every r-clique, r <= rho, of the whole graph."""
    return build_temp_graph(g, enumerate_r_cliques(g, rho))


def singleton_graph(g: ConflictGraph) -> ConsolidatedGraph:
    """The conflict graph itself as a consolidated graph of 0-cliques."""
    return build_temp_graph(g, [CliqueVertex(0, (v,)) for v in range(g.n)])


def local_cliques(g: ConflictGraph, v: int, rho: int, tau: int) -> list[CliqueVertex]:
    """r-cliques (r <= rho) found inside the tau-ball of v, in original IDs."""
    if tau < rho + 1:
        raise GraphInputError(f"tau={tau} is below rho+1={rho + 1}")
    view = ball(g, v, tau)
    found = enumerate_r_cliques(view.subgraph, rho)
    out = [CliqueVertex(w.order, tuple(view.id_map[u] for u in w.members)) for w in found]
    out.sort()
    return out


def local_temp_graph(g: ConflictGraph, v: int, rho: int, tau: int) -> ConsolidatedGraph:
    """The temporary graph as seen by user ``v`` with ``tau`` hops of connectivity."""
    return build_temp_graph(g, local_cliques(g, v, rho, tau))
